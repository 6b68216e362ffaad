use serde::Serialize;

use crate::abgroups::{FGAbelianGroup, GroupElement, GroupHom};
use crate::exactla::{lp, Field, Matrix, Scalar};
use crate::gcore::{quotient_ring, GradedAlgebra, GradedIdeal, MonoidAlgebra};
use crate::{Decision, Error, Result};

/// Degree-preserving unital ring homomorphism between algebras graded by the
/// same group.
#[derive(Clone, Debug, PartialEq)]
pub struct RingMorphism {
    source: GradedAlgebra,
    target: GradedAlgebra,
    matrix: Matrix,
}

impl RingMorphism {
    pub fn new(source: GradedAlgebra, target: GradedAlgebra, matrix: Matrix) -> Result<Self> {
        if source.group() != target.group() {
            return Err(Error::GroupMismatch(
                "ring morphism between different grading groups".into(),
            ));
        }
        if source.field() != target.field() {
            return Err(Error::FieldMismatch);
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(
                "ring morphism matrix shape".into(),
            ));
        }
        for k in 0..target.dim() {
            for j in 0..source.dim() {
                if !num_traits::Zero::is_zero(&matrix[(k, j)])
                    && source.degree(j) != target.degree(k)
                {
                    return Err(Error::NotMorphism(format!(
                        "entry ({k},{j}) changes degree"
                    )));
                }
            }
        }
        let u = RingMorphism {
            source,
            target,
            matrix,
        };
        if u.apply(u.source.unit()) != u.target.unit() {
            return Err(Error::NotMorphism("unit not preserved".into()));
        }
        for i in 0..u.source.dim() {
            let xi = u.matrix.col(i);
            for j in i..u.source.dim() {
                let lhs = u.apply(&u.source.product_of_basis(i, j));
                let rhs = u.target.mul(&xi, &u.matrix.col(j));
                if lhs != rhs {
                    return Err(Error::NotMorphism(format!("x_{i}·x_{j} not preserved")));
                }
            }
        }
        Ok(u)
    }

    pub fn identity(r: &GradedAlgebra) -> Self {
        RingMorphism {
            source: r.clone(),
            target: r.clone(),
            matrix: Matrix::identity(r.field(), r.dim()),
        }
    }

    pub fn source(&self) -> &GradedAlgebra {
        &self.source
    }

    pub fn target(&self) -> &GradedAlgebra {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(x).expect("shape checked")
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RingMorphism) -> Result<RingMorphism> {
        if inner.target != self.source {
            return Err(Error::NotMorphism(
                "composition of incompatible morphisms".into(),
            ));
        }
        Ok(RingMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix)?,
        })
    }
}

fn check_mono(phi: &GroupHom) -> Result<()> {
    if !phi.is_mono() {
        return Err(Error::NotMonomorphism);
    }
    Ok(())
}

/// `R_(φ)` together with the basis indices of `R` it keeps.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub ring: GradedAlgebra,
    pub kept: Vec<usize>,
}

/// Keeps the basis vectors whose degree lies in `im φ`, regraded by `F`.
pub fn restrict(r: &GradedAlgebra, phi: &GroupHom) -> Result<Restriction> {
    check_mono(phi)?;
    if phi.target() != r.group() {
        return Err(Error::GroupMismatch(
            "φ must end at the grading group".into(),
        ));
    }
    let kept: Vec<usize> = (0..r.dim())
        .filter(|&i| phi.in_image(r.degree(i)))
        .collect();
    let f = r.field();
    let pick = |v: Vec<Scalar>| -> Vec<Scalar> { kept.iter().map(|&k| v[k].clone()).collect() };
    let mult = kept
        .iter()
        .map(|&a| {
            let cols: Vec<Vec<Scalar>> = kept
                .iter()
                .map(|&b| pick(r.product_of_basis(a, b)))
                .collect();
            Matrix::from_columns(f, kept.len(), &cols)
        })
        .collect();
    let degrees = kept
        .iter()
        .map(|&i| phi.preimage(r.degree(i)).expect("degree in image"))
        .collect();
    let unit = pick(r.unit().to_vec());
    let ring = GradedAlgebra::from_parts(phi.source().clone(), f, degrees, mult, unit);
    Ok(Restriction { ring, kept })
}

/// `S^(φ)`: the same algebra with degrees pushed into `G`.
pub fn extend(s: &GradedAlgebra, phi: &GroupHom) -> Result<GradedAlgebra> {
    check_mono(phi)?;
    if phi.source() != s.group() {
        return Err(Error::GroupMismatch(
            "φ must start at the grading group".into(),
        ));
    }
    s.regraded(
        phi.target().clone(),
        s.degrees().iter().map(|d| phi.apply(d)).collect(),
    )
}

/// `R_((φ)) = (R/𝔞_φ(R))_(φ)` and the surjection `α: R → (R_((φ)))^(φ)`.
#[derive(Clone, Debug)]
pub struct Corestriction {
    pub ring: GradedAlgebra,
    pub ideal: GradedIdeal,
    /// Matrix of `α` (rows indexed by the basis of the corestriction).
    pub alpha: Matrix,
}

impl Corestriction {
    pub fn is_zero_ring(&self) -> bool {
        self.ring.is_zero_ring()
    }
}

pub fn corestrict(r: &GradedAlgebra, phi: &GroupHom) -> Result<Corestriction> {
    check_mono(phi)?;
    if phi.target() != r.group() {
        return Err(Error::GroupMismatch(
            "φ must end at the grading group".into(),
        ));
    }
    let outside: Vec<Vec<Scalar>> = (0..r.dim())
        .filter(|&i| !phi.in_image(r.degree(i)))
        .map(|i| r.basis_vector(i))
        .collect();
    let ideal = GradedIdeal::generated(r, &outside)?;
    let q = quotient_ring(r, &ideal);
    let res = restrict(&q.ring, phi)?;
    debug_assert_eq!(res.kept.len(), q.ring.dim());
    Ok(Corestriction {
        ring: res.ring,
        ideal,
        alpha: q.projection,
    })
}

/// `u_(φ)`.
pub fn restrict_morphism(u: &RingMorphism, phi: &GroupHom) -> Result<RingMorphism> {
    let s = restrict(u.source(), phi)?;
    let t = restrict(u.target(), phi)?;
    let m = u.matrix().submatrix(&t.kept, &s.kept);
    RingMorphism::new(s.ring, t.ring, m)
}

/// `u^(φ)`.
pub fn extend_morphism(u: &RingMorphism, phi: &GroupHom) -> Result<RingMorphism> {
    RingMorphism::new(
        extend(u.source(), phi)?,
        extend(u.target(), phi)?,
        u.matrix().clone(),
    )
}

/// `u_((φ))`, induced on the quotients.
pub fn corestrict_morphism(u: &RingMorphism, phi: &GroupHom) -> Result<RingMorphism> {
    let s = corestrict(u.source(), phi)?;
    let t = corestrict(u.target(), phi)?;
    let f = u.source().field();
    let kept_s = s.ideal.space().complement_indices();
    let cols: Vec<Vec<Scalar>> = kept_s
        .iter()
        .map(|&j| t.alpha.mul_vec(&u.matrix().col(j)).expect("shape"))
        .collect();
    RingMorphism::new(
        s.ring,
        t.ring,
        Matrix::from_columns(f, t.alpha.rows(), &cols),
    )
}

/// Monoid-algebra shortcuts for the corestriction.
#[derive(Clone, Debug, Serialize)]
pub struct MonoidCorestriction {
    /// A homogeneous unit has degree outside `im φ`, so the corestriction is 0.
    pub zero_by_unit: bool,
    pub unit_degree: Option<GroupElement>,
    /// Whether the corestriction equals the restriction by the degree-support
    /// criterion (`Undecided` when the criterion does not apply or is silent).
    pub equals_restriction: Decision,
    pub note: &'static str,
}

pub fn monoid_corestriction(a: &MonoidAlgebra, phi: &GroupHom) -> Result<MonoidCorestriction> {
    check_mono(phi)?;
    if phi.target() != a.group() {
        return Err(Error::GroupMismatch(
            "φ must end at the grading group".into(),
        ));
    }
    let monoid = a.monoid();
    let mut unit_degree = None;
    for i in monoid.unit_generators() {
        let d = a.monomial_degree(&monoid.generators()[i]);
        if !phi.in_image(&d) {
            unit_degree = Some(d);
            break;
        }
    }
    if unit_degree.is_none() && a.base().field().is_finite() && a.base().dim() > 0 {
        let base = a.base();
        base.for_each_homogeneous(|g, x| {
            let d = a.base_degree(g);
            if !phi.in_image(&d) && base.is_unit(x) {
                unit_degree = Some(d);
                return false;
            }
            true
        });
    }
    if unit_degree.is_some() {
        return Ok(MonoidCorestriction {
            zero_by_unit: true,
            unit_degree,
            equals_restriction: Decision::Undecided,
            note: "homogeneous unit outside the image",
        });
    }
    let trivially_graded_base = a
        .base()
        .degrees()
        .iter()
        .all(|d| d.coords().iter().all(num_traits::Zero::is_zero));
    if !trivially_graded_base {
        return Ok(MonoidCorestriction {
            zero_by_unit: false,
            unit_degree: None,
            equals_restriction: Decision::Undecided,
            note: "degree-support criterion needs a trivially graded base",
        });
    }
    // Condition fails iff the image of the monoid in G/im φ has a nonzero unit.
    let coker = phi.cokernel();
    let images: Vec<GroupElement> = monoid
        .generators()
        .iter()
        .map(|g| coker.projection.apply(&a.monomial_degree(g)))
        .collect();
    let fails = (0..images.len())
        .any(|i| !coker.group.is_zero(&images[i]) && invertible_in_image(&coker.group, &images, i));
    let entire = a.classify_ring().entire;
    let equals_restriction = if !fails {
        Decision::Yes
    } else if entire.is_yes() {
        Decision::No
    } else {
        Decision::Undecided
    };
    Ok(MonoidCorestriction {
        zero_by_unit: false,
        unit_degree: None,
        equals_restriction,
        note: "degree-support criterion",
    })
}

/// `λ ≥ 0`, `λ_i = 1`, `Σ λ_j v_j = 0` in the free part of `H`; scaling by a
/// common denominator and the torsion exponent gives an integer relation.
fn invertible_in_image(h: &FGAbelianGroup, images: &[GroupElement], i: usize) -> bool {
    let q = Field::Rational;
    let r = h.free_rank();
    let k = images.len();
    let mut rows: Vec<Vec<Scalar>> = (0..r)
        .map(|row| {
            images
                .iter()
                .map(|v| q.from_bigint(v.coords()[row].clone()))
                .collect()
        })
        .collect();
    let mut extra = vec![q.zero(); k];
    extra[i] = q.one();
    rows.push(extra);
    let a = Matrix::from_rows(q, &rows).expect("uniform rows");
    let mut b = vec![q.zero(); r + 1];
    b[r] = q.one();
    lp::feasible_point(&a, &b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn doubling() -> GroupHom {
        let z = FGAbelianGroup::free(1);
        GroupHom::from_images(z.clone(), z.clone(), &[z.element(vec![2]).unwrap()]).unwrap()
    }

    #[test]
    fn doubling_restriction_keeps_degree_zero() {
        let r = samples::dual_numbers(Field::Rational);
        let res = restrict(&r, &doubling()).unwrap();
        assert_eq!(res.ring.dim(), 1);
        let cor = corestrict(&r, &doubling()).unwrap();
        assert_eq!(cor.ring, res.ring);
        assert_eq!(cor.ideal.dim(), 1);
    }

    #[test]
    fn extension_then_restriction_is_identity() {
        let s = samples::cyclic_group_algebra(Field::Prime(2), 2);
        let g = s.group().clone();
        let target = FGAbelianGroup::new(1, vec![2u32.into()]).unwrap();
        let phi = GroupHom::from_images(g, target.clone(), &[target.gen(1)]).unwrap();
        let back = restrict(&extend(&s, &phi).unwrap(), &phi).unwrap().ring;
        assert_eq!(back, s);
    }

    #[test]
    fn laurent_corestriction_vanishes() {
        let a = samples::laurent(Field::Rational);
        let phi = GroupHom::zero(&FGAbelianGroup::trivial(), a.group());
        let rep = monoid_corestriction(&a, &phi).unwrap();
        assert!(rep.zero_by_unit);
    }

    #[test]
    fn polynomial_ring_corestriction_equals_restriction() {
        let a = samples::polynomial(
            Field::Rational,
            crate::gcore::GradingMode::Fine,
            FGAbelianGroup::trivial(),
        );
        let phi = GroupHom::zero(&FGAbelianGroup::trivial(), a.group());
        let rep = monoid_corestriction(&a, &phi).unwrap();
        assert!(!rep.zero_by_unit);
        assert_eq!(rep.equals_restriction, Decision::Yes);
    }

    #[test]
    fn trivial_identity_corestriction() {
        let r = samples::trivial_field(Field::Rational, FGAbelianGroup::free(1));
        let cor = corestrict(&r, &GroupHom::identity(r.group())).unwrap();
        assert!(cor.ideal.is_zero());
        assert_eq!(cor.ring, r);
    }
}
