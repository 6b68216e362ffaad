use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::abgroups::{FGAbelianGroup, GroupElement};
use crate::exactla::{vecops, Field, Matrix, Scalar, Subspace};
use crate::{Decision, Error, Result};

/// Finite-dimensional commutative algebra with a basis of homogeneous
/// elements `x_0, …, x_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedAlgebra {
    group: FGAbelianGroup,
    field: Field,
    degrees: Vec<GroupElement>,
    /// `mult[i]` is the matrix of multiplication by `x_i`; its column `j` is
    /// the coordinate vector of `x_i x_j`.
    mult: Vec<Matrix>,
    unit: Vec<Scalar>,
}

/// Degree information of an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(GroupElement),
    Mixed,
}

impl Homogeneity {
    pub fn is_homogeneous(&self) -> bool {
        !matches!(self, Homogeneity::Mixed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ElementClass {
    pub unit: bool,
    pub regular: bool,
    pub nilpotent: bool,
    pub homogeneous: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exhaustive,
    Criterion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RingClass {
    pub simple: Decision,
    pub entire: Decision,
    pub reduced: Decision,
    pub method: Method,
}

/// Homogeneous elements enumerated by exhaustive classification.
pub const EXHAUSTIVE_HOMOGENEOUS_LIMIT: u64 = 1 << 20;

impl GradedAlgebra {
    /// Builds an algebra from structure constants `c[i][j]` (the coordinate
    /// vector of `x_i x_j`), verifying grading, commutativity, the unit and
    /// associativity.
    pub fn new(
        group: FGAbelianGroup,
        field: Field,
        degrees: Vec<GroupElement>,
        structure: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Self> {
        let n = degrees.len();
        for (i, d) in degrees.iter().enumerate() {
            if !group.contains(d) {
                return Err(Error::InvalidGroup(format!(
                    "degree {d} of basis element {i} is not an element of {group}"
                )));
            }
        }
        if structure.len() != n
            || structure
                .iter()
                .any(|r| r.len() != n || r.iter().any(|v| v.len() != n))
        {
            return Err(Error::DimensionMismatch(format!(
                "structure constants must form a {n}x{n}x{n} array"
            )));
        }
        if unit.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "unit has length {}, expected {n}",
                unit.len()
            )));
        }
        let structure: Vec<Vec<Vec<Scalar>>> = structure
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|v| v.into_iter().map(|c| field.normalize(c)).collect())
                    .collect()
            })
            .collect();
        let unit: Vec<Scalar> = unit.into_iter().map(|c| field.normalize(c)).collect();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !structure[i][j][k].is_zero()
                        && group.add(&degrees[i], &degrees[j]) != degrees[k]
                    {
                        return Err(Error::GradingViolation { i, j, k });
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if let Some(k) = (0..n).find(|&k| structure[i][j][k] != structure[j][i][k]) {
                    return Err(Error::NonCommutative { i, j, k });
                }
            }
        }
        let mult: Vec<Matrix> = (0..n)
            .map(|i| Matrix::from_columns(field, n, &structure[i]))
            .collect();
        let alg = GradedAlgebra {
            group,
            field,
            degrees,
            mult,
            unit,
        };
        alg.check_unit()?;
        alg.check_associative()?;
        Ok(alg)
    }

    /// Same underlying algebra with new basis degrees in a new group; the
    /// grading condition is re-verified.
    pub fn regraded(&self, group: FGAbelianGroup, degrees: Vec<GroupElement>) -> Result<Self> {
        if degrees.len() != self.dim() {
            return Err(Error::DimensionMismatch(
                "one degree per basis element required".into(),
            ));
        }
        let alg = GradedAlgebra {
            group,
            field: self.field,
            degrees,
            mult: self.mult.clone(),
            unit: self.unit.clone(),
        };
        alg.check_grading()?;
        Ok(alg)
    }

    /// Algebra from multiplication matrices that are already known to be
    /// valid (used by internal constructions); grading is still checked in
    /// debug builds.
    pub(crate) fn from_parts(
        group: FGAbelianGroup,
        field: Field,
        degrees: Vec<GroupElement>,
        mult: Vec<Matrix>,
        unit: Vec<Scalar>,
    ) -> Self {
        let alg = GradedAlgebra {
            group,
            field,
            degrees,
            mult,
            unit,
        };
        debug_assert!(alg.check_grading().is_ok());
        alg
    }

    fn check_grading(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.mult[i][(k, j)].is_zero()
                        && self.group.add(&self.degrees[i], &self.degrees[j]) != self.degrees[k]
                    {
                        return Err(Error::GradingViolation { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        let zero = self.group.zero();
        if let Some(i) = vecops::support(&self.unit)
            .into_iter()
            .find(|&i| self.degrees[i] != zero)
        {
            return Err(Error::BadUnit(format!(
                "unit has a component in degree {}",
                self.degrees[i]
            )));
        }
        let u = self.mult_by(&self.unit);
        if !u.is_identity() {
            return Err(Error::BadUnit("unit does not act as the identity".into()));
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let xij = self.mult[i].col(j);
                let left = self.mult_by(&xij);
                for k in 0..n {
                    // (x_i x_j) x_k versus x_i (x_j x_k)
                    let lhs = left.col(k);
                    let rhs = self.mult[i].mul_vec(&self.mult[j].col(k)).expect("square");
                    if lhs != rhs {
                        return Err(Error::NonAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.dim() == 0
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.degrees[i]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vecops::zeros(self.dim())
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        vecops::unit(self.field, self.dim(), i)
    }

    /// Matrix of multiplication by the basis element `x_i`.
    pub fn basis_mult(&self, i: usize) -> &Matrix {
        &self.mult[i]
    }

    pub fn basis_mults(&self) -> &[Matrix] {
        &self.mult
    }

    /// Coordinates of `x_i x_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.mult[i].col(j)
    }

    /// Matrix of `m_x: y ↦ x y`.
    pub fn mult_by(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let f = self.field;
        let mut m = Matrix::zeros(f, n, n);
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            m = m.add(&self.mult[i].scale(c)).expect("square");
        }
        m
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.mult_by(a)
            .mul_vec(b)
            .expect("element length matches algebra")
    }

    pub fn pow(&self, x: &[Scalar], e: usize) -> Vec<Scalar> {
        let mut acc = self.unit.clone();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        vecops::add(self.field, a, b)
    }

    /// Basis indices grouped by degree, in increasing degree order.
    pub fn components(&self) -> BTreeMap<GroupElement, Vec<usize>> {
        let mut out: BTreeMap<GroupElement, Vec<usize>> = BTreeMap::new();
        for (i, d) in self.degrees.iter().enumerate() {
            out.entry(d.clone()).or_default().push(i);
        }
        out
    }

    pub fn component_indices(&self, g: &GroupElement) -> Vec<usize> {
        (0..self.dim()).filter(|&i| &self.degrees[i] == g).collect()
    }

    /// Degrees with a nonzero component, sorted.
    pub fn degree_support(&self) -> Vec<GroupElement> {
        self.components().into_keys().collect()
    }

    pub fn homogeneity(&self, x: &[Scalar]) -> Homogeneity {
        let supp = vecops::support(x);
        let Some(&first) = supp.first() else {
            return Homogeneity::Zero;
        };
        let d = &self.degrees[first];
        if supp.iter().all(|&i| &self.degrees[i] == d) {
            Homogeneity::Degree(d.clone())
        } else {
            Homogeneity::Mixed
        }
    }

    pub fn is_homogeneous(&self, x: &[Scalar]) -> bool {
        self.homogeneity(x).is_homogeneous()
    }

    /// Homogeneous components of `x`, keyed by degree (zero parts omitted).
    pub fn homogeneous_components(&self, x: &[Scalar]) -> BTreeMap<GroupElement, Vec<Scalar>> {
        let mut out: BTreeMap<GroupElement, Vec<Scalar>> = BTreeMap::new();
        for i in vecops::support(x) {
            out.entry(self.degrees[i].clone())
                .or_insert_with(|| self.zero())[i] = x[i].clone();
        }
        out
    }

    /// Unit / regular / nilpotent / homogeneous flags of `x`. The zero element
    /// is never a unit or regular, also in the zero ring.
    pub fn classify_element(&self, x: &[Scalar]) -> ElementClass {
        let homogeneous = self.is_homogeneous(x);
        if vecops::is_zero(x) {
            return ElementClass {
                unit: false,
                regular: false,
                nilpotent: true,
                homogeneous,
            };
        }
        let regular = self.mult_by(x).rank() == self.dim();
        ElementClass {
            // In finite dimension an injective m_x is bijective.
            unit: regular,
            regular,
            nilpotent: vecops::is_zero(&self.pow(x, self.dim())),
            homogeneous,
        }
    }

    pub fn is_unit(&self, x: &[Scalar]) -> bool {
        self.classify_element(x).unit
    }

    pub fn inverse(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        if vecops::is_zero(x) {
            return None;
        }
        self.mult_by(x).solve(&self.unit).ok().flatten()
    }

    /// Number of nonzero homogeneous elements over a finite field, saturating.
    fn homogeneous_count(&self) -> Option<u64> {
        let p = self.field.size()?;
        let mut total: u64 = 0;
        for idx in self.components().values() {
            let c = (0..idx.len())
                .try_fold(1u64, |a, _| a.checked_mul(p))
                .unwrap_or(u64::MAX);
            total = total.saturating_add(c);
        }
        Some(total)
    }

    /// Calls `f` on every nonzero homogeneous element (finite field only), in
    /// degree order then lexicographic coefficient order. Stops early when
    /// `f` returns `false`.
    pub fn for_each_homogeneous(&self, mut f: impl FnMut(&GroupElement, &[Scalar]) -> bool) {
        let elems = self.field.elements().expect("finite field required");
        for (g, idx) in self.components() {
            let mut digits = vec![0usize; idx.len()];
            loop {
                let mut i = idx.len();
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] < elems.len() {
                        break;
                    }
                    digits[i] = 0;
                }
                if digits.iter().all(|&d| d == 0) {
                    break;
                }
                let mut x = self.zero();
                for (k, &b) in idx.iter().enumerate() {
                    x[b] = elems[digits[k]].clone();
                }
                if !f(&g, &x) {
                    return;
                }
            }
        }
    }

    /// Simple / entire / reduced flags.
    ///
    /// Over a finite field with at most [`EXHAUSTIVE_HOMOGENEOUS_LIMIT`]
    /// homogeneous elements every one is classified. Otherwise reducedness is
    /// read off the graded nilradical, and simplicity and entirety are decided
    /// when every component has dimension at most one (each nonzero
    /// homogeneous element is then a scalar multiple of a basis element);
    /// beyond that only refutations are reported.
    pub fn classify_ring(&self) -> RingClass {
        if self.is_zero_ring() {
            return RingClass {
                simple: Decision::No,
                entire: Decision::No,
                reduced: Decision::Yes,
                method: Method::Criterion,
            };
        }
        let class = match self.homogeneous_count() {
            Some(c) if c <= EXHAUSTIVE_HOMOGENEOUS_LIMIT => self.classify_exhaustive(),
            _ => self.classify_by_criterion(),
        };
        debug_assert!(!(class.simple.is_yes() && class.entire.is_no()));
        debug_assert!(!(class.entire.is_yes() && class.reduced.is_no()));
        class
    }

    fn classify_exhaustive(&self) -> RingClass {
        let mut entire = true;
        let mut reduced = true;
        self.for_each_homogeneous(|_, x| {
            if reduced && vecops::is_zero(&self.mul(x, x)) {
                reduced = false;
                entire = false;
            }
            if entire && self.mult_by(x).rank() < self.dim() {
                entire = false;
            }
            entire || reduced
        });
        // Finite dimension: regular homogeneous elements are invertible, so
        // simple and entire coincide.
        RingClass {
            simple: Decision::from_bool(entire),
            entire: Decision::from_bool(entire),
            reduced: Decision::from_bool(reduced),
            method: Method::Exhaustive,
        }
    }

    fn classify_by_criterion(&self) -> RingClass {
        let reduced = self.nilradical().is_zero();
        let comps = self.components();
        let small = comps.values().all(|idx| idx.len() <= 1);
        let basis_regular = (0..self.dim()).all(|i| self.basis_mult(i).rank() == self.dim());
        let entire = if !reduced || !basis_regular {
            Decision::No
        } else if small {
            Decision::Yes
        } else {
            Decision::Undecided
        };
        RingClass {
            simple: entire,
            entire,
            reduced: Decision::from_bool(reduced),
            method: Method::Criterion,
        }
    }

    /// Nilradical of the underlying ungraded algebra.
    pub fn ungraded_nilradical(&self) -> Subspace {
        let n = self.dim();
        let f = self.field;
        match f {
            Field::Rational => {
                // Radical of the trace form (characteristic zero).
                let trace = Matrix::from_fn(f, n, n, |i, j| {
                    let m = self.mult[i].mul(&self.mult[j]).expect("square");
                    (0..n).fold(Scalar::zero(), |acc, k| &acc + &m[(k, k)])
                });
                Subspace::span(f, n, &trace.kernel_basis())
            }
            Field::Prime(p) => {
                // x ↦ x^(p^k) is 𝔽_p-linear; with p^k ≥ n it kills exactly the nilpotents.
                let mut e: u64 = 1;
                while (e as usize) < n.max(1) {
                    e *= p;
                }
                let frob = Matrix::from_columns(
                    f,
                    n,
                    &(0..n)
                        .map(|j| self.pow(&self.basis_vector(j), e as usize))
                        .collect::<Vec<_>>(),
                );
                Subspace::span(f, n, &frob.kernel_basis())
            }
        }
    }

    /// Graded nilradical: the ideal generated by the nilpotent homogeneous
    /// elements, i.e. the sum of the homogeneous parts of the nilradical.
    pub fn nilradical(&self) -> Subspace {
        let nil = self.ungraded_nilradical();
        self.graded_part(&nil)
    }

    /// `⊕_g (V ∩ R_g)`: the largest graded subspace of `V`.
    pub fn graded_part(&self, v: &Subspace) -> Subspace {
        let n = self.dim();
        let f = self.field;
        let mut vecs = Vec::new();
        for idx in self.components().values() {
            let comp = Subspace::span(
                f,
                n,
                &idx.iter()
                    .map(|&i| self.basis_vector(i))
                    .collect::<Vec<_>>(),
            );
            vecs.extend(comp.intersection(v).basis().iter().cloned());
        }
        Subspace::span(f, n, &vecs)
    }
}

/// Structure-constant array helper: `c[i][j]` starts as zero vectors.
pub fn zero_structure(n: usize) -> Vec<Vec<Vec<Scalar>>> {
    vec![vec![vecops::zeros(n); n]; n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn dual_numbers_classification() {
        let r = samples::dual_numbers(Field::Rational);
        let x = r.basis_vector(1);
        assert_eq!(
            r.classify_element(&x),
            ElementClass {
                unit: false,
                regular: false,
                nilpotent: true,
                homogeneous: true
            }
        );
        let c = r.classify_ring();
        assert_eq!(
            (c.simple, c.entire, c.reduced),
            (Decision::No, Decision::No, Decision::No)
        );
        assert_eq!(r.nilradical().dim(), 1);
    }

    #[test]
    fn grading_violation_reported() {
        let f = Field::Rational;
        let g = FGAbelianGroup::free(1);
        let degs = vec![g.zero(), g.element(vec![1]).unwrap()];
        let mut c = zero_structure(2);
        c[0][0][0] = f.one();
        c[0][1][1] = f.one();
        c[1][0][1] = f.one();
        c[1][1][0] = f.one();
        let err = GradedAlgebra::new(g, f, degs, c, vec![f.one(), f.zero()]).unwrap_err();
        assert_eq!(err, Error::GradingViolation { i: 1, j: 1, k: 0 });
    }

    #[test]
    fn zero_ring_flags() {
        let r = GradedAlgebra::new(
            FGAbelianGroup::trivial(),
            Field::Rational,
            vec![],
            vec![],
            vec![],
        )
        .unwrap();
        let c = r.classify_ring();
        assert_eq!(
            (c.simple, c.entire, c.reduced),
            (Decision::No, Decision::No, Decision::Yes)
        );
    }
}
