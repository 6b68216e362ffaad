use serde::Serialize;

use crate::abgroups::{FGAbelianGroup, GroupElement, GroupHom};
use crate::exactla::{Field, Matrix};
use crate::gcore::{GradedAlgebra, GradingMode, MonoidAlgebra};
use crate::oracles;
use crate::{Error, Result};

use super::functors::{
    corestrict, corestrict_morphism, extend, extend_morphism, restrict, restrict_morphism,
    RingMorphism,
};

/// Largest sample dimension for which morphism sets are enumerated.
pub const ENUMERATION_MAX_DIM: usize = 4;

#[derive(Clone, Debug, Serialize)]
pub struct TriangleCheck {
    pub sample: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BijectionCheck {
    pub left: String,
    pub right: String,
    pub left_size: usize,
    pub right_size: usize,
    pub bijective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionReport {
    pub triangles: Vec<TriangleCheck>,
    pub bijections: Vec<BijectionCheck>,
    /// Samples skipped for enumeration (field not finite or too large).
    pub skipped: Vec<String>,
    pub all_hold: bool,
}

/// Unit of `corestriction ⊣ extension` at `R`: `α: R → (R_((φ)))^(φ)`.
fn unit_cor(r: &GradedAlgebra, phi: &GroupHom) -> Result<RingMorphism> {
    let cor = corestrict(r, phi)?;
    RingMorphism::new(r.clone(), extend(&cor.ring, phi)?, cor.alpha)
}

/// Counit of `extension ⊣ restriction` at `R`: `(R_(φ))^(φ) → R`.
fn counit_res(r: &GradedAlgebra, phi: &GroupHom) -> Result<RingMorphism> {
    let res = restrict(r, phi)?;
    let f = r.field();
    let mut m = Matrix::zeros(f, r.dim(), res.kept.len());
    for (c, &k) in res.kept.iter().enumerate() {
        m[(k, c)] = f.one();
    }
    RingMorphism::new(extend(&res.ring, phi)?, r.clone(), m)
}

/// Identity-matrix morphism between two algebras that must coincide
/// (`(S^(φ))_((φ)) = S`, `(S^(φ))_(φ) = S`).
fn canonical_identity(source: GradedAlgebra, target: GradedAlgebra) -> Result<RingMorphism> {
    let f = source.field();
    let n = source.dim();
    RingMorphism::new(source, target, Matrix::identity(f, n))
}

fn is_identity(u: &RingMorphism) -> bool {
    u.source() == u.target() && u.matrix().is_identity()
}

/// Triangle identities of both adjunctions at `R` (G-graded).
fn triangles_at_g(r: &GradedAlgebra, phi: &GroupHom) -> Result<bool> {
    // ε_{R_((φ))} ∘ (η_R)_((φ)) = id
    let eta = unit_cor(r, phi)?;
    let cor_eta = corestrict_morphism(&eta, phi)?;
    let cor_r = corestrict(r, phi)?.ring;
    let eps = canonical_identity(cor_eta.target().clone(), cor_r.clone())?;
    let first = is_identity(&eps.compose(&cor_eta)?);
    // (ε_R)_(φ) ∘ η_{R_(φ)} = id
    let res_r = restrict(r, phi)?.ring;
    let eta_res = canonical_identity(res_r.clone(), restrict(&extend(&res_r, phi)?, phi)?.ring)?;
    let eps_r = counit_res(r, phi)?;
    let second = is_identity(&restrict_morphism(&eps_r, phi)?.compose(&eta_res)?);
    Ok(first && second)
}

/// Triangle identities of both adjunctions at `S` (F-graded).
fn triangles_at_f(s: &GradedAlgebra, phi: &GroupHom) -> Result<bool> {
    let ext = extend(s, phi)?;
    // (ε_S)^(φ) ∘ η_{S^(φ)} = id
    let eta = unit_cor(&ext, phi)?;
    let eps = canonical_identity(corestrict(&ext, phi)?.ring, s.clone())?;
    let first = is_identity(&extend_morphism(&eps, phi)?.compose(&eta)?);
    // ε_{S^(φ)} ∘ (η_S)^(φ) = id
    let eta_s = canonical_identity(s.clone(), restrict(&ext, phi)?.ring)?;
    let eps_ext = counit_res(&ext, phi)?;
    let second = is_identity(&eps_ext.compose(&extend_morphism(&eta_s, phi)?)?);
    Ok(first && second)
}

fn enumerable(r: &GradedAlgebra) -> bool {
    r.field().is_finite() && r.dim() <= ENUMERATION_MAX_DIM
}

fn to_matrix(field: Field, rows: &[Vec<u64>], cols: usize) -> Matrix {
    Matrix::from_fn(field, rows.len(), cols, |i, j| {
        field.from_i64(rows[i][j] as i64)
    })
}

/// Image of every left-hand morphism under `f`; bijective when the images
/// are distinct and exhaust the right-hand set.
fn bijection(
    left: Vec<Vec<Vec<u64>>>,
    right: Vec<Vec<Vec<u64>>>,
    map: impl Fn(&[Vec<u64>]) -> Result<Vec<Vec<u64>>>,
) -> Result<(usize, usize, bool)> {
    let mut images = Vec::with_capacity(left.len());
    for u in &left {
        images.push(map(u)?);
    }
    images.sort();
    images.dedup();
    let mut right_sorted = right.clone();
    right_sorted.sort();
    Ok((
        left.len(),
        right.len(),
        images.len() == left.len() && images == right_sorted,
    ))
}

fn residues(m: &Matrix) -> Vec<Vec<u64>> {
    let p = match m.field() {
        Field::Prime(p) => p,
        Field::Rational => unreachable!("enumeration only over prime fields"),
    };
    m.to_rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| {
                    let v = c.numer().clone() % num_bigint::BigInt::from(p);
                    u64::try_from(v).expect("canonical residue")
                })
                .collect()
        })
        .collect()
}

/// Checks the adjoint triple along a monomorphism `φ: F → G` on sample
/// algebras graded by `F` and by `G`.
pub fn adjunction_check(
    phi: &GroupHom,
    f_samples: &[GradedAlgebra],
    g_samples: &[GradedAlgebra],
) -> Result<AdjunctionReport> {
    if !phi.is_mono() {
        return Err(Error::NotMonomorphism);
    }
    let mut triangles = Vec::new();
    for (k, r) in g_samples.iter().enumerate() {
        triangles.push(TriangleCheck {
            sample: format!("G-sample {k}"),
            holds: triangles_at_g(r, phi)?,
        });
    }
    for (k, s) in f_samples.iter().enumerate() {
        triangles.push(TriangleCheck {
            sample: format!("F-sample {k}"),
            holds: triangles_at_f(s, phi)?,
        });
    }
    let mut bijections = Vec::new();
    let mut skipped = Vec::new();
    for (a, r) in g_samples.iter().enumerate() {
        for (b, s) in f_samples.iter().enumerate() {
            if !enumerable(r) || !enumerable(s) || r.field() != s.field() {
                skipped.push(format!("G-sample {a} / F-sample {b}"));
                continue;
            }
            let field = r.field();
            let cor = corestrict(r, phi)?;
            let ext_s = extend(s, phi)?;
            // Hom(R_((φ)), S) → Hom(R, S^(φ)), f ↦ f^(φ) ∘ α
            let left = oracles::enumerate_ring_morphisms(&cor.ring, s)?;
            let right = oracles::enumerate_ring_morphisms(r, &ext_s)?;
            let (ls, rs, ok) = bijection(left, right, |u| {
                let m = to_matrix(field, u, cor.ring.dim());
                Ok(residues(&m.mul(&cor.alpha)?))
            })?;
            bijections.push(BijectionCheck {
                left: format!("Hom(cor G{a}, F{b})"),
                right: format!("Hom(G{a}, ext F{b})"),
                left_size: ls,
                right_size: rs,
                bijective: ok,
            });
            // Hom(S^(φ), R) → Hom(S, R_(φ)), g ↦ g_(φ) ∘ η_S
            let res = restrict(r, phi)?;
            let left = oracles::enumerate_ring_morphisms(&ext_s, r)?;
            let right = oracles::enumerate_ring_morphisms(s, &res.ring)?;
            let (ls, rs, ok) = bijection(left, right, |u| {
                let m = to_matrix(field, u, s.dim());
                Ok(residues(
                    &m.submatrix(&res.kept, &(0..s.dim()).collect::<Vec<_>>()),
                ))
            })?;
            bijections.push(BijectionCheck {
                left: format!("Hom(ext F{b}, G{a})"),
                right: format!("Hom(F{b}, res G{a})"),
                left_size: ls,
                right_size: rs,
                bijective: ok,
            });
        }
    }
    let all_hold = triangles.iter().all(|t| t.holds) && bijections.iter().all(|b| b.bijective);
    Ok(AdjunctionReport {
        triangles,
        bijections,
        skipped,
        all_hold,
    })
}

/// Restriction does not commute with tensor products: for the fine-graded
/// Laurent algebra and `φ: 0 → ℤ`, `X ⊗ X^{-1}` sits in degree 0 of `R ⊗ R`.
#[derive(Clone, Debug, Serialize)]
pub struct TensorWitness {
    pub witness: String,
    pub witness_degree: GroupElement,
    /// Degree-0 monomial pairs of `R ⊗ R` with exponents in `[-b, b]`, for `b = 1..=4`.
    pub tensor_degree_zero_counts: Vec<usize>,
    /// Degree-0 dimension of `R_(φ) ⊗ R_(φ)` (within the same windows).
    pub restricted_degree_zero_dim: usize,
    pub mismatch: bool,
    /// The instance is reconstructed, not read off a stated example.
    pub reconstructed: bool,
}

pub fn tensor_witness(field: Field) -> Result<TensorWitness> {
    let a: MonoidAlgebra = crate::samples::laurent(field);
    let g = a.group().clone();
    let phi = GroupHom::zero(&FGAbelianGroup::trivial(), &g);
    let deg = |k: i64| a.monomial_degree(&[k]);
    let witness_degree = g.add(&deg(1), &deg(-1));
    let mut counts = Vec::new();
    let mut restricted = 0;
    for b in 1..=4i64 {
        let mut c = 0;
        for x in -b..=b {
            for y in -b..=b {
                if g.is_zero(&g.add(&deg(x), &deg(y))) {
                    c += 1;
                }
            }
        }
        counts.push(c);
        let kept = (-b..=b).filter(|&x| phi.in_image(&deg(x))).count();
        restricted = kept * kept;
    }
    let growing = counts.windows(2).all(|w| w[1] > w[0]);
    debug_assert!(matches!(a.mode(), GradingMode::Fine));
    Ok(TensorWitness {
        witness: "X ⊗ X^-1".into(),
        witness_degree,
        mismatch: growing && restricted == 1,
        tensor_degree_zero_counts: counts,
        restricted_degree_zero_dim: restricted,
        reconstructed: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn identity_passes() {
        let r = samples::dual_numbers(Field::Prime(2));
        let phi = GroupHom::identity(r.group());
        let rep = adjunction_check(&phi, &[r.clone()], &[r]).unwrap();
        assert!(rep.all_hold);
        assert!(!rep.bijections.is_empty());
    }

    #[test]
    fn zero_into_integers() {
        let z = FGAbelianGroup::free(1);
        let phi = GroupHom::zero(&FGAbelianGroup::trivial(), &z);
        let f = samples::trivial_field(Field::Rational, FGAbelianGroup::trivial());
        let g = samples::dual_numbers(Field::Rational);
        let rep = adjunction_check(&phi, &[f], &[g]).unwrap();
        assert!(rep.triangles.iter().all(|t| t.holds));
        assert_eq!(rep.skipped.len(), 1);
    }

    #[test]
    fn laurent_tensor_witness() {
        let w = tensor_witness(Field::Rational).unwrap();
        assert!(w.mismatch);
        assert_eq!(w.tensor_degree_zero_counts, vec![3, 5, 7, 9]);
        assert_eq!(w.restricted_degree_zero_dim, 1);
    }
}
