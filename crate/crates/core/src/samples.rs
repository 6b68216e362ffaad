//! Standard small instances used throughout tests, examples and the CLI.

use num_bigint::BigInt;

use crate::abgroups::{FGAbelianGroup, GroupElement};
use crate::exactla::{vecops, Field, Scalar};
use crate::gcore::{zero_structure, AffineMonoid, GradedAlgebra, GradingMode, MonoidAlgebra};

/// Algebra with basis `1, x, …, x^{n-1}`, `x^n = a`, and `deg x = g`.
/// The caller guarantees `n·g = 0` whenever `a ≠ 0`.
pub fn monogenic(
    field: Field,
    group: FGAbelianGroup,
    g: &GroupElement,
    n: usize,
    a: &Scalar,
) -> GradedAlgebra {
    let mut c = zero_structure(n);
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                c[i][j][i + j] = field.one();
            } else {
                c[i][j][i + j - n] = a.clone();
            }
        }
    }
    let degrees = (0..n).map(|k| group.scale(g, &BigInt::from(k))).collect();
    GradedAlgebra::new(group, field, degrees, c, vecops::unit(field, n, 0))
        .expect("monogenic sample is a valid graded algebra")
}

/// `K[X]/(X^n)`, ℤ-graded with `deg X = 1`.
pub fn truncated_polynomial(field: Field, n: usize) -> GradedAlgebra {
    let z = FGAbelianGroup::free(1);
    let one = z.gen(0);
    monogenic(field, z, &one, n, &field.zero())
}

/// `K[X]/(X²)`, ℤ-graded with `deg X = 1`.
pub fn dual_numbers(field: Field) -> GradedAlgebra {
    truncated_polynomial(field, 2)
}

/// `K[X]/(X^n − a)` graded by `ℤ/n` with `deg X = 1̄`.
pub fn pure_extension(field: Field, n: usize, a: i64) -> GradedAlgebra {
    let g = FGAbelianGroup::cyclic(n as u64);
    let one = g.gen(0);
    monogenic(field, g, &one, n, &field.from_i64(a))
}

/// `ℚ[X]/(X²+1)` graded by `ℤ/2` with `deg X = 1̄`.
pub fn gaussian_rationals() -> GradedAlgebra {
    pure_extension(Field::Rational, 2, -1)
}

/// Group algebra `K[ℤ/n]` with its fine `ℤ/n`-grading.
pub fn cyclic_group_algebra(field: Field, n: usize) -> GradedAlgebra {
    pure_extension(field, n, 1)
}

/// The field `K` concentrated in degree 0 of `group`.
pub fn trivial_field(field: Field, group: FGAbelianGroup) -> GradedAlgebra {
    let zero = group.zero();
    GradedAlgebra::new(
        group,
        field,
        vec![zero],
        vec![vec![vec![field.one()]]],
        vec![field.one()],
    )
    .expect("field sample")
}

/// `K × K` trivially graded by `group`, with basis the two idempotents.
pub fn split_product_over(field: Field, group: FGAbelianGroup) -> GradedAlgebra {
    let mut c = zero_structure(2);
    c[0][0][0] = field.one();
    c[1][1][1] = field.one();
    let zero = group.zero();
    GradedAlgebra::new(
        group,
        field,
        vec![zero.clone(), zero],
        c,
        vec![field.one(), field.one()],
    )
    .expect("product sample")
}

/// `K × K` trivially ℤ-graded.
pub fn split_product(field: Field) -> GradedAlgebra {
    split_product_over(field, FGAbelianGroup::free(1))
}

/// `K[X,Y]/(X², Y²)`, ℤ²-graded with `deg X = (1,0)`, `deg Y = (0,1)`.
pub fn exterior_like(field: Field) -> GradedAlgebra {
    let g = FGAbelianGroup::free(2);
    // basis 1, x, y, xy
    let mut c = zero_structure(4);
    let table = [(0, 0, 0), (0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 2, 3)];
    for &(i, j, k) in &table {
        c[i][j][k] = field.one();
        c[j][i][k] = field.one();
    }
    let degrees = [[0, 0], [1, 0], [0, 1], [1, 1]]
        .iter()
        .map(|d| g.element(d.to_vec()).unwrap())
        .collect();
    GradedAlgebra::new(g, field, degrees, c, vecops::unit(field, 4, 0)).expect("sample")
}

/// Laurent algebra `K[ℤ]` with its fine ℤ-grading, as a monoid algebra of
/// the monoid generated by `1` and `−1`.
pub fn laurent(field: Field) -> MonoidAlgebra {
    let base = trivial_field(field, FGAbelianGroup::trivial());
    let m = AffineMonoid::new(1, vec![vec![1], vec![-1]]).expect("monoid");
    MonoidAlgebra::new(base, m, GradingMode::Fine).expect("laurent sample")
}

/// Polynomial algebra `K[ℕ] = K[X]` with the given grading mode over a
/// trivially graded field.
pub fn polynomial(field: Field, mode: GradingMode, group: FGAbelianGroup) -> MonoidAlgebra {
    let base = trivial_field(field, group);
    let m = AffineMonoid::new(1, vec![vec![1]]).expect("monoid");
    MonoidAlgebra::new(base, m, mode).expect("polynomial sample")
}
