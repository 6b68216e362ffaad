use serde::Serialize;

use super::algebra::{GradedAlgebra, Homogeneity, RingClass};
use crate::abgroups::GroupElement;
use crate::exactla::{vecops, Matrix, Scalar, Subspace};
use crate::{Decision, Error, Result};

/// Graded ideal of a [`GradedAlgebra`], stored as a subspace spanned by
/// homogeneous vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedIdeal {
    space: Subspace,
}

/// A quotient `R/𝔞` with basis the classes of the basis vectors of `R`
/// indexed by `kept`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub ring: GradedAlgebra,
    /// Projection matrix `R → R/𝔞` in the chosen bases.
    pub projection: Matrix,
    /// Basis indices of `R` whose classes form the quotient basis.
    pub kept: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdealClass {
    pub maximal: Decision,
    pub prime: Decision,
    pub perfect: Decision,
}

impl GradedIdeal {
    /// Ideal generated by homogeneous elements.
    pub fn generated(r: &GradedAlgebra, gens: &[Vec<Scalar>]) -> Result<Self> {
        let n = r.dim();
        let mut vecs = Vec::new();
        for (k, g) in gens.iter().enumerate() {
            if g.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator {k} has wrong length"
                )));
            }
            if r.homogeneity(g) == Homogeneity::Mixed {
                return Err(Error::NotHomogeneous(format!("ideal generator {k}")));
            }
            for i in 0..n {
                vecs.push(r.basis_mult(i).mul_vec(g).expect("square"));
            }
        }
        Ok(GradedIdeal {
            space: Subspace::span(r.field(), n, &vecs),
        })
    }

    /// Wraps a subspace after checking that it is a graded ideal.
    pub fn from_subspace(r: &GradedAlgebra, space: Subspace) -> Result<Self> {
        if r.graded_part(&space) != space {
            return Err(Error::NotHomogeneous("subspace is not graded".into()));
        }
        if !is_ideal(r, &space) {
            return Err(Error::Invalid(
                "subspace is not closed under multiplication".into(),
            ));
        }
        Ok(GradedIdeal { space })
    }

    pub(crate) fn from_subspace_unchecked(space: Subspace) -> Self {
        GradedIdeal { space }
    }

    pub fn zero(r: &GradedAlgebra) -> Self {
        GradedIdeal {
            space: Subspace::zero(r.field(), r.dim()),
        }
    }

    pub fn whole(r: &GradedAlgebra) -> Self {
        GradedIdeal {
            space: Subspace::full(r.field(), r.dim()),
        }
    }

    /// Graded nilradical as an ideal.
    pub fn nilradical(r: &GradedAlgebra) -> Self {
        GradedIdeal {
            space: r.nilradical(),
        }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.space.contains(x)
    }

    pub fn contains_ideal(&self, other: &GradedIdeal) -> bool {
        self.space.contains_space(&other.space)
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        self.space.basis()
    }

    /// Bases of the homogeneous components, keyed by degree.
    pub fn component_bases(&self, r: &GradedAlgebra) -> Vec<(GroupElement, Vec<Vec<Scalar>>)> {
        let mut out: Vec<(GroupElement, Vec<Vec<Scalar>>)> = Vec::new();
        for v in self.space.basis() {
            let Homogeneity::Degree(d) = r.homogeneity(v) else {
                continue;
            };
            match out.iter_mut().find(|(g, _)| *g == d) {
                Some((_, vs)) => vs.push(v.clone()),
                None => out.push((d, vec![v.clone()])),
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn sum(&self, other: &GradedIdeal) -> GradedIdeal {
        GradedIdeal {
            space: self.space.sum(&other.space),
        }
    }

    pub fn intersection(&self, other: &GradedIdeal) -> GradedIdeal {
        GradedIdeal {
            space: self.space.intersection(&other.space),
        }
    }

    pub fn quotient(&self, r: &GradedAlgebra) -> QuotientRing {
        quotient_ring(r, self)
    }

    /// `√𝔞`: preimage of the graded nilradical of `R/𝔞`.
    pub fn radical(&self, r: &GradedAlgebra) -> GradedIdeal {
        let q = quotient_ring(r, self);
        let nil = q.ring.nilradical();
        let mut vecs: Vec<Vec<Scalar>> = self.space.basis().to_vec();
        for w in nil.basis() {
            vecs.push(q.lift(r.dim(), w));
        }
        GradedIdeal {
            space: Subspace::span(r.field(), r.dim(), &vecs),
        }
    }

    /// Maximal / prime / perfect, i.e. the quotient is simple / entire / reduced.
    pub fn class(&self, r: &GradedAlgebra) -> IdealClass {
        let RingClass {
            simple,
            entire,
            reduced,
            ..
        } = quotient_ring(r, self).ring.classify_ring();
        IdealClass {
            maximal: simple,
            prime: entire,
            perfect: reduced,
        }
    }
}

pub(crate) fn is_ideal(r: &GradedAlgebra, space: &Subspace) -> bool {
    space
        .basis()
        .iter()
        .all(|v| (0..r.dim()).all(|i| space.contains(&r.basis_mult(i).mul_vec(v).expect("square"))))
}

impl QuotientRing {
    /// Lift of a quotient vector to `R` supported on `kept`.
    pub fn lift(&self, n: usize, w: &[Scalar]) -> Vec<Scalar> {
        let mut v = vecops::zeros(n);
        for (c, &i) in w.iter().zip(&self.kept) {
            v[i] = c.clone();
        }
        v
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection
            .mul_vec(v)
            .expect("projection matches ambient")
    }
}

/// `R/𝔞` with the induced grading.
pub fn quotient_ring(r: &GradedAlgebra, ideal: &GradedIdeal) -> QuotientRing {
    let f = r.field();
    let n = r.dim();
    let kept = ideal.space.complement_indices();
    let q = kept.len();
    let project = |v: &[Scalar]| -> Vec<Scalar> {
        let red = ideal.space.reduce(v);
        kept.iter().map(|&i| red[i].clone()).collect()
    };
    let projection = Matrix::from_columns(
        f,
        q,
        &(0..n)
            .map(|j| project(&r.basis_vector(j)))
            .collect::<Vec<_>>(),
    );
    let mult: Vec<Matrix> = kept
        .iter()
        .map(|&a| {
            Matrix::from_columns(
                f,
                q,
                &kept
                    .iter()
                    .map(|&b| project(&r.product_of_basis(a, b)))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let degrees = kept.iter().map(|&i| r.degree(i).clone()).collect();
    let unit = project(r.unit());
    QuotientRing {
        ring: GradedAlgebra::from_parts(r.group().clone(), f, degrees, mult, unit),
        projection,
        kept,
    }
}

/// Ideal generated by homogeneous zerodivisors. Over a finite field every
/// homogeneous element is inspected; over ℚ an answer is given only when each
/// component has dimension at most one. `None` means undecided.
pub fn zerodivisor_ideal(r: &GradedAlgebra) -> Option<GradedIdeal> {
    let n = r.dim();
    if n == 0 {
        return Some(GradedIdeal::zero(r));
    }
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    if r.field().is_finite() {
        r.for_each_homogeneous(|_, x| {
            if r.mult_by(x).rank() < n {
                gens.push(x.to_vec());
            }
            true
        });
    } else if r.components().values().all(|idx| idx.len() <= 1) {
        gens = (0..n)
            .filter(|&i| r.basis_mult(i).rank() < n)
            .map(|i| r.basis_vector(i))
            .collect();
    } else {
        return None;
    }
    Some(GradedIdeal::generated(r, &gens).expect("homogeneous generators"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::samples;

    #[test]
    fn dual_numbers_ideals() {
        let r = samples::dual_numbers(Field::Rational);
        let x = GradedIdeal::generated(&r, &[r.basis_vector(1)]).unwrap();
        let q = x.quotient(&r);
        assert_eq!(q.ring.dim(), 1);
        assert_eq!(q.ring.degree(0), &r.group().zero());
        let c = x.class(&r);
        assert_eq!(
            (c.maximal, c.prime, c.perfect),
            (Decision::Yes, Decision::Yes, Decision::Yes)
        );
        assert_eq!(GradedIdeal::zero(&r).radical(&r), x);
    }

    #[test]
    fn non_homogeneous_generator_rejected() {
        let r = samples::dual_numbers(Field::Rational);
        let f = r.field();
        assert!(GradedIdeal::generated(&r, &[vec![f.one(), f.one()]]).is_err());
    }
}
