//! Exact feasibility for `A x = b, x ≥ 0` by the two-phase simplex method
//! (phase one only) with Bland's anti-cycling rule.

use num_traits::{Signed, Zero};

use super::field::{Field, Scalar};
use super::matrix::Matrix;

/// Some `x ≥ 0` with `A x = b` over ℚ, or `None` if the system is infeasible.
pub fn feasible_point(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(
        a.field(),
        Field::Rational,
        "linear programs are solved over Q"
    );
    assert_eq!(a.rows(), b.len());
    let m = a.rows();
    let n = a.cols();
    // Tableau columns: n originals, m artificials, then the right-hand side.
    let width = n + m + 1;
    let mut t: Vec<Vec<Scalar>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let mut row = vec![Scalar::zero(); width];
            for j in 0..n {
                row[j] = if flip { -&a[(i, j)] } else { a[(i, j)].clone() };
            }
            row[n + i] = Scalar::from_integer(1.into());
            row[n + m] = if flip { -&b[i] } else { b[i].clone() };
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Objective: minimize the sum of artificials, i.e. reduced costs
    // c_j = -Σ_i t[i][j] over original columns.
    loop {
        let reduced = |j: usize, t: &Vec<Vec<Scalar>>, basis: &Vec<usize>| -> Scalar {
            let mut c = if j >= n && j < n + m {
                Scalar::from_integer(1.into())
            } else {
                Scalar::zero()
            };
            for (i, &bi) in basis.iter().enumerate() {
                if bi >= n {
                    c -= &t[i][j];
                }
            }
            c
        };
        let entering =
            (0..n + m).find(|&j| !basis.contains(&j) && reduced(j, &t, &basis).is_negative());
        let Some(e) = entering else { break };
        // Ratio test, ties broken by smallest basis index (Bland).
        let mut leave: Option<(usize, Scalar)> = None;
        for i in 0..m {
            if t[i][e].is_positive() {
                let ratio = &t[i][n + m] / &t[i][e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // Unbounded direction cannot occur for the phase-one objective.
            unreachable!("phase-one objective is bounded below");
        };
        let piv = t[r][e].clone();
        for v in t[r].iter_mut() {
            *v = &*v / &piv;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == r || row[e].is_zero() {
                continue;
            }
            let factor = row[e].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        basis[r] = e;
    }
    let mut x = vec![Scalar::zero(); n + m];
    for (i, &bi) in basis.iter().enumerate() {
        x[bi] = t[i][n + m].clone();
    }
    if x[n..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    x.truncate(n);
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rational.from_i64(v)
    }

    #[test]
    fn feasible_and_infeasible() {
        let a = Matrix::from_i64(Field::Rational, &[vec![1, 1]]);
        let x = feasible_point(&a, &[q(3)]).unwrap();
        assert_eq!(&x[0] + &x[1], q(3));
        assert!(feasible_point(&a, &[q(-1)]).is_none());
    }

    #[test]
    fn cone_pointedness_system() {
        // λ1(1,1) + λ2(1,-1) = 0, λ1 + λ2 = 1 has no nonnegative solution.
        let a = Matrix::from_i64(Field::Rational, &[vec![1, 1], vec![1, -1], vec![1, 1]]);
        assert!(feasible_point(&a, &[q(0), q(0), q(1)]).is_none());
        // With generators 1 and -1 in ℤ it does.
        let a = Matrix::from_i64(Field::Rational, &[vec![1, -1], vec![1, 1]]);
        assert!(feasible_point(&a, &[q(0), q(1)]).is_some());
    }
}
