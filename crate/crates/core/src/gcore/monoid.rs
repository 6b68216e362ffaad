use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::algebra::{GradedAlgebra, Homogeneity, Method, RingClass};
use crate::abgroups::{FGAbelianGroup, GroupElement, GroupHom, IntMatrix, LatticeQuotient};
use crate::exactla::{lp, vecops, Field, Matrix, Scalar};
use crate::{Decision, Error, Result};

/// Finitely generated submonoid of `ℤ^d`. Zero and repeated generators are
/// dropped.
#[derive(Clone, Debug)]
pub struct AffineMonoid {
    dim: usize,
    gens: Vec<Vec<i64>>,
    lattice: LatticeQuotient,
    diff: FGAbelianGroup,
}

impl PartialEq for AffineMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.gens == other.gens
    }
}

impl Eq for AffineMonoid {}

impl AffineMonoid {
    pub fn new(dim: usize, gens: Vec<Vec<i64>>) -> Result<Self> {
        let mut kept: Vec<Vec<i64>> = Vec::new();
        for (i, g) in gens.into_iter().enumerate() {
            if g.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "monoid generator {i} has length {}, expected {dim}",
                    g.len()
                )));
            }
            if g.iter().all(|&x| x == 0) || kept.contains(&g) {
                continue;
            }
            kept.push(g);
        }
        let big: Vec<Vec<BigInt>> = kept
            .iter()
            .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let lattice = if big.is_empty() {
            LatticeQuotient::new(dim, &[vec![BigInt::zero(); dim]], &[])
        } else {
            LatticeQuotient::new(dim, &big, &[])
        };
        let diff = FGAbelianGroup::free(lattice.free_rank());
        Ok(AffineMonoid {
            dim,
            gens: kept,
            lattice,
            diff,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.gens
    }

    /// The group of differences, free of rank equal to the rank of the generators.
    pub fn diff_group(&self) -> &FGAbelianGroup {
        &self.diff
    }

    /// Coordinates of `m ∈ diff(M)` in [`AffineMonoid::diff_group`].
    pub fn diff_coords(&self, m: &[i64]) -> Option<GroupElement> {
        let v: Vec<BigInt> = m.iter().map(|&x| BigInt::from(x)).collect();
        let c = self.lattice.to_quotient(&v)?;
        self.diff.element(c).ok()
    }

    /// `Σ c_i g_i`.
    pub fn combination(&self, coeffs: &[u64]) -> Result<Vec<i64>> {
        if coeffs.len() != self.gens.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} generators",
                coeffs.len(),
                self.gens.len()
            )));
        }
        let mut m = vec![0i64; self.dim];
        for (c, g) in coeffs.iter().zip(&self.gens) {
            for (x, y) in m.iter_mut().zip(g) {
                *x += *c as i64 * y;
            }
        }
        Ok(m)
    }

    /// Nonnegative rational `λ` with `Σ λ_j g_j = 0` and the extra linear
    /// condition `extra · λ = 1`.
    fn zero_combination(&self, extra: &[i64]) -> Option<Vec<Scalar>> {
        let q = Field::Rational;
        let mut rows: Vec<Vec<i64>> = (0..self.dim)
            .map(|r| self.gens.iter().map(|g| g[r]).collect())
            .collect();
        rows.push(extra.to_vec());
        let a = Matrix::from_i64(q, &rows);
        let mut b = vecops::zeros(self.dim + 1);
        b[self.dim] = q.one();
        lp::feasible_point(&a, &b)
    }

    /// Nonzero `c ∈ ℕ^k` with `Σ c_i g_i = 0`, if the monoid is not sharp.
    /// Found by an exact LP for pointedness of the generated cone; a rational
    /// solution scaled by its common denominator is such a combination.
    pub fn non_sharp_witness(&self) -> Option<Vec<u64>> {
        let ones = vec![1i64; self.gens.len()];
        let lambda = self.zero_combination(&ones)?;
        Some(clear_denominators(&lambda))
    }

    /// `M* = 0`. Always decided (the LP answer is exact and yields a witness).
    pub fn is_sharp(&self) -> Decision {
        Decision::from_bool(self.non_sharp_witness().is_none())
    }

    /// Indices of generators lying in `M*`: `g_i` is invertible exactly when
    /// some `ℕ`-combination with positive `g_i` coefficient vanishes.
    pub fn unit_generators(&self) -> Vec<usize> {
        (0..self.gens.len())
            .filter(|&i| {
                let mut e = vec![0i64; self.gens.len()];
                e[i] = 1;
                self.zero_combination(&e).is_some()
            })
            .collect()
    }

    /// Whether the monoid is a group (`M = M*`).
    pub fn is_group(&self) -> bool {
        self.unit_generators().len() == self.gens.len()
    }

    /// Whether `m` lies in `M*`, which is the subgroup generated by the
    /// invertible generators. `m` is assumed to lie in `M`.
    pub fn is_invertible(&self, m: &[i64]) -> bool {
        if m.iter().all(|&x| x == 0) {
            return true;
        }
        let units = self.unit_generators();
        if units.is_empty() {
            return false;
        }
        let cols: Vec<Vec<BigInt>> = units
            .iter()
            .map(|&i| self.gens[i].iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let a = IntMatrix::from_columns(self.dim, &cols);
        let b: Vec<BigInt> = m.iter().map(|&x| BigInt::from(x)).collect();
        crate::abgroups::solve_integer(&a, &b).is_some()
    }
}

fn clear_denominators(lambda: &[Scalar]) -> Vec<u64> {
    let den = lambda
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    lambda
        .iter()
        .map(|x| {
            let v = x.numer() * (&den / x.denom());
            u64::try_from(v).expect("small LP solution")
        })
        .collect()
}

/// How a monoid algebra is graded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingMode {
    /// By `G ⊕ diff(M)`, `deg e_m = (0, m)`.
    Fine,
    /// By `G`, `deg e_m = 0`.
    Coarse,
    /// By `G` through a homomorphism `d: ℤ^dim → G`, `deg e_m = d(m)`.
    DGraded(GroupHom),
}

/// Algebra `R[M]` of an affine monoid over a finite-dimensional graded algebra.
#[derive(Clone, Debug)]
pub struct MonoidAlgebra {
    base: GradedAlgebra,
    monoid: AffineMonoid,
    mode: GradingMode,
    group: FGAbelianGroup,
    /// Images of the generators of the base group and of `diff(M)` in the fine group.
    fine_left: Vec<GroupElement>,
    fine_right: Vec<GroupElement>,
}

/// Element `Σ r_m e_m`, keyed by exponent `m ∈ ℤ^d`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MonoidElement {
    terms: BTreeMap<Vec<i64>, Vec<Scalar>>,
}

impl MonoidElement {
    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Vec<Scalar>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl PartialEq for MonoidAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.monoid == other.monoid && self.mode == other.mode
    }
}

impl MonoidAlgebra {
    pub fn new(base: GradedAlgebra, monoid: AffineMonoid, mode: GradingMode) -> Result<Self> {
        if let GradingMode::DGraded(d) = &mode {
            if d.source() != &FGAbelianGroup::free(monoid.ambient_dim())
                || d.target() != base.group()
            {
                return Err(Error::InvalidHom(format!(
                    "grading map must go from Z^{} to the base grading group",
                    monoid.ambient_dim()
                )));
            }
        }
        let (fine, left, right) = base.group().direct_sum(monoid.diff_group());
        let group = match mode {
            GradingMode::Fine => fine,
            _ => base.group().clone(),
        };
        Ok(MonoidAlgebra {
            base,
            monoid,
            mode,
            group,
            fine_left: left,
            fine_right: right,
        })
    }

    pub fn base(&self) -> &GradedAlgebra {
        &self.base
    }

    pub fn monoid(&self) -> &AffineMonoid {
        &self.monoid
    }

    pub fn mode(&self) -> &GradingMode {
        &self.mode
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    /// Degree of `e_m` for `m` in the monoid.
    pub fn monomial_degree(&self, m: &[i64]) -> GroupElement {
        match &self.mode {
            GradingMode::Fine => {
                let c = self
                    .monoid
                    .diff_coords(m)
                    .expect("exponent lies in diff(M)");
                let mut acc = self.group.zero();
                for (k, x) in c.coords().iter().enumerate() {
                    acc = self
                        .group
                        .add(&acc, &self.group.scale(&self.fine_right[k], x));
                }
                acc
            }
            GradingMode::Coarse => self.group.zero(),
            GradingMode::DGraded(d) => {
                let v = FGAbelianGroup::free(m.len())
                    .element(m.iter().map(|&x| BigInt::from(x)).collect())
                    .expect("length checked");
                d.apply(&v)
            }
        }
    }

    /// Image of a base degree in the grading group.
    pub fn base_degree(&self, g: &GroupElement) -> GroupElement {
        match &self.mode {
            GradingMode::Fine => {
                let mut acc = self.group.zero();
                for (k, x) in g.coords().iter().enumerate() {
                    acc = self
                        .group
                        .add(&acc, &self.group.scale(&self.fine_left[k], x));
                }
                acc
            }
            _ => g.clone(),
        }
    }

    /// `r · e_m` with `m = Σ coeffs_i g_i`.
    pub fn monomial(&self, r: Vec<Scalar>, coeffs: &[u64]) -> Result<MonoidElement> {
        if r.len() != self.base.dim() {
            return Err(Error::DimensionMismatch(
                "base element has wrong length".into(),
            ));
        }
        let m = self.monoid.combination(coeffs)?;
        let mut terms = BTreeMap::new();
        if !vecops::is_zero(&r) {
            terms.insert(m, r);
        }
        Ok(MonoidElement { terms })
    }

    pub fn add(&self, a: &MonoidElement, b: &MonoidElement) -> MonoidElement {
        let f = self.base.field();
        let mut terms = a.terms.clone();
        for (m, r) in &b.terms {
            let entry = terms.entry(m.clone()).or_insert_with(|| self.base.zero());
            *entry = vecops::add(f, entry, r);
        }
        terms.retain(|_, r| !vecops::is_zero(r));
        MonoidElement { terms }
    }

    pub fn mul(&self, a: &MonoidElement, b: &MonoidElement) -> MonoidElement {
        let mut out = MonoidElement::default();
        for (m, r) in &a.terms {
            for (n, s) in &b.terms {
                let e: Vec<i64> = m.iter().zip(n).map(|(x, y)| x + y).collect();
                let mut t = BTreeMap::new();
                let rs = self.base.mul(r, s);
                if !vecops::is_zero(&rs) {
                    t.insert(e, rs);
                }
                out = self.add(&out, &MonoidElement { terms: t });
            }
        }
        out
    }

    pub fn homogeneity(&self, x: &MonoidElement) -> Homogeneity {
        let mut deg: Option<GroupElement> = None;
        for (m, r) in &x.terms {
            let dm = self.monomial_degree(m);
            for g in self.base.homogeneous_components(r).keys() {
                let d = self.group.add(&self.base_degree(g), &dm);
                match &deg {
                    None => deg = Some(d),
                    Some(e) if *e == d => {}
                    Some(_) => return Homogeneity::Mixed,
                }
            }
        }
        deg.map_or(Homogeneity::Zero, Homogeneity::Degree)
    }

    /// Membership in the group of homogeneous units.
    ///
    /// A monomial `r e_m` is a unit iff `r` is a unit of the base and
    /// `m ∈ M*`. Other homogeneous elements are decided when the base is
    /// reduced and `M` is sharp (the units are then the base units); elements
    /// that are not homogeneous are never in the unit group.
    pub fn is_unit(&self, x: &MonoidElement) -> Decision {
        match self.homogeneity(x) {
            Homogeneity::Zero | Homogeneity::Mixed => return Decision::No,
            Homogeneity::Degree(_) => {}
        }
        if x.terms.len() == 1 {
            let (m, r) = x.terms.iter().next().unwrap();
            if self.base.is_homogeneous(r) {
                return Decision::from_bool(self.base.is_unit(r) && self.monoid.is_invertible(m));
            }
        }
        if self.base.classify_ring().reduced.is_yes() && self.monoid.is_sharp().is_yes() {
            let at_zero =
                x.terms.len() == 1 && x.terms.keys().next().unwrap().iter().all(|&v| v == 0);
            return Decision::from_bool(
                at_zero && self.base.is_unit(x.terms.values().next().unwrap()),
            );
        }
        Decision::Undecided
    }

    /// Classification through the base ring: entirety and reducedness are
    /// inherited in every grading mode; simplicity additionally requires `M`
    /// to be a group and the grading to separate the monomials.
    pub fn classify_ring(&self) -> RingClass {
        let b = self.base.classify_ring();
        let separated = match &self.mode {
            GradingMode::Fine => true,
            GradingMode::Coarse => self.monoid.generators().is_empty(),
            GradingMode::DGraded(d) => self.grading_separates(d),
        };
        let structural = Decision::from_bool(self.monoid.is_group() && separated);
        let simple = match (b.simple, structural) {
            (Decision::No, _) | (_, Decision::No) => Decision::No,
            (Decision::Yes, Decision::Yes) => Decision::Yes,
            _ => Decision::Undecided,
        };
        RingClass {
            simple,
            entire: b.entire,
            reduced: b.reduced,
            method: Method::Criterion,
        }
    }

    /// Whether `diff(M) → G / ⟨degsupp R⟩` induced by `d` is injective.
    fn grading_separates(&self, d: &GroupHom) -> bool {
        let g = self.base.group();
        let support = self.base.degree_support();
        let sub = GroupHom::from_images(FGAbelianGroup::free(support.len()), g.clone(), &support)
            .expect("free source");
        let coker = sub.cokernel();
        let rank = self.monoid.diff_group().ngens();
        let images: Vec<GroupElement> = (0..rank)
            .map(|k| {
                let lift = self.monoid.lattice.generator_lift(k);
                let m: Vec<i64> = lift
                    .iter()
                    .map(|x| i64::try_from(x).expect("small"))
                    .collect();
                let v = FGAbelianGroup::free(m.len()).element(m).unwrap();
                coker.projection.apply(&d.apply(&v))
            })
            .collect();
        GroupHom::from_images(self.monoid.diff_group().clone(), coker.group, &images)
            .map(|h| h.is_mono())
            .unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn sharpness() {
        let n2 = AffineMonoid::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(n2.is_sharp(), Decision::Yes);
        assert_eq!(n2.diff_group(), &FGAbelianGroup::free(2));
        let z = AffineMonoid::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert_eq!(z.is_sharp(), Decision::No);
        assert_eq!(z.non_sharp_witness(), Some(vec![1, 1]));
        let m = AffineMonoid::new(2, vec![vec![1, 1], vec![1, -1]]).unwrap();
        assert_eq!(m.is_sharp(), Decision::Yes);
        assert_eq!(m.diff_group(), &FGAbelianGroup::free(2));
        assert!(m.diff_coords(&[1, 0]).is_none());
    }

    #[test]
    fn polynomial_and_laurent() {
        let q = samples::trivial_field(Field::Rational, FGAbelianGroup::trivial());
        let poly = MonoidAlgebra::new(
            q.clone(),
            AffineMonoid::new(1, vec![vec![1]]).unwrap(),
            GradingMode::Coarse,
        )
        .unwrap();
        let c = poly.classify_ring();
        assert_eq!(c.entire, Decision::Yes);
        assert_eq!(c.simple, Decision::No);
        let x = poly.monomial(vec![q.field().one()], &[1]).unwrap();
        assert_eq!(poly.is_unit(&x), Decision::No);
        let two = poly.monomial(vec![q.field().from_i64(2)], &[0]).unwrap();
        assert_eq!(poly.is_unit(&two), Decision::Yes);
        let sum = poly.add(&x, &two);
        assert_eq!(poly.is_unit(&sum), Decision::No);

        let laurent = samples::laurent(Field::Rational);
        assert_eq!(laurent.classify_ring().entire, Decision::Yes);
        assert_eq!(laurent.classify_ring().simple, Decision::Yes);
        let x = laurent
            .monomial(vec![Field::Rational.one()], &[1, 0])
            .unwrap();
        assert_eq!(laurent.is_unit(&x), Decision::Yes);
    }
}
