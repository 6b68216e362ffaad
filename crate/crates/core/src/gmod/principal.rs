use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::abgroups::{FGAbelianGroup, GroupElement, GroupHom};
use crate::exactla::{Field, Scalar};
use crate::{Error, Result};

/// A homogeneous entry `c·X^k`; `c = 0` is the zero entry.
pub type Monomial = (Scalar, u64);

/// Submodule of a free `K[X]`-module given by homogeneous generators, where
/// `deg X` has infinite order.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalPresentation {
    pub field: Field,
    pub group: FGAbelianGroup,
    pub var_degree: GroupElement,
    /// Degrees of the ambient basis vectors `e_j`.
    pub ambient: Vec<GroupElement>,
    /// Generator columns, one entry per ambient basis vector.
    pub gens: Vec<Vec<Monomial>>,
}

impl PrincipalPresentation {
    pub fn new(
        field: Field,
        group: FGAbelianGroup,
        var_degree: GroupElement,
        ambient: Vec<GroupElement>,
        gens: Vec<Vec<Monomial>>,
    ) -> Result<Self> {
        if !group.contains(&var_degree) || ambient.iter().any(|a| !group.contains(a)) {
            return Err(Error::GroupMismatch(
                "presentation degrees outside the group".into(),
            ));
        }
        if group.element_order(&var_degree).is_some() {
            return Err(Error::Invalid(
                "degree of X must have infinite order".into(),
            ));
        }
        let p = PrincipalPresentation {
            field,
            group,
            var_degree,
            ambient,
            gens,
        };
        for (c, col) in p.gens.iter().enumerate() {
            if col.len() != p.ambient.len() {
                return Err(Error::DimensionMismatch(format!(
                    "generator {c} has wrong length"
                )));
            }
            if col.iter().any(|(x, _)| !field.is_canonical(x)) {
                return Err(Error::InvalidField(format!(
                    "generator {c} has a non-field coefficient"
                )));
            }
            if p.column_degree(col).is_err() {
                return Err(Error::NotHomogeneous(format!("generator {c}")));
            }
        }
        Ok(p)
    }

    fn entry_degree(&self, j: usize, k: u64) -> GroupElement {
        self.group.add(
            &self.ambient[j],
            &self.group.scale(&self.var_degree, &(k as i64).into()),
        )
    }

    /// Degree of a homogeneous column; `None` for the zero column.
    fn column_degree(&self, col: &[Monomial]) -> Result<Option<GroupElement>> {
        let mut deg = None;
        for (j, (c, k)) in col.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = self.entry_degree(j, *k);
            match &deg {
                None => deg = Some(d),
                Some(e) if *e == d => {}
                Some(_) => return Err(Error::NotHomogeneous("mixed column".into())),
            }
        }
        Ok(deg)
    }
}

/// One summand `⟨X^k⟩(shift)` of the decomposition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summand {
    pub shift: GroupElement,
    pub exponent: u64,
    /// Ambient index carrying the leading entry.
    pub index: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuperfluousCounterexample {
    pub graded_superfluous: bool,
    pub coarsened_superfluous: bool,
    /// Coefficients (constant term first) of `f` with `⟨X^m⟩ + ⟨f⟩ = R`, `⟨f⟩ ≠ R`.
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrincipalReport {
    pub decomposition: Vec<Summand>,
    pub free: bool,
    pub rank: usize,
    pub generators: usize,
    pub rank_bound_holds: bool,
    pub coarsened_free: bool,
    pub coarsened_rank: usize,
    pub coarsening_agrees: bool,
    pub counterexample: Option<SuperfluousCounterexample>,
}

/// Graded column reduction: returns a triangular homogeneous generating set,
/// at most one column per leading ambient index.
pub fn graded_column_reduction(p: &PrincipalPresentation) -> Vec<Vec<Monomial>> {
    let f = p.field;
    let mut cols: Vec<Vec<Monomial>> = p
        .gens
        .iter()
        .filter(|c| c.iter().any(|(x, _)| !x.is_zero()))
        .cloned()
        .collect();
    let mut done: Vec<Vec<Monomial>> = Vec::new();
    for e in (0..p.ambient.len()).rev() {
        let (mut top, rest): (Vec<_>, Vec<_>) = cols.into_iter().partition(|c| lead(c) == Some(e));
        cols = rest;
        if top.is_empty() {
            continue;
        }
        let pos = (0..top.len())
            .min_by_key(|&t| top[t][e].1)
            .expect("nonempty");
        let pivot = top.swap_remove(pos);
        let (pc, pk) = pivot[e].clone();
        for col in top {
            let (c, k) = col[e].clone();
            let factor = f.div(&c, &pc).expect("nonzero pivot");
            let t = k - pk;
            let reduced: Vec<Monomial> = col
                .iter()
                .zip(&pivot)
                .map(|((a, ka), (b, kb))| {
                    if b.is_zero() {
                        (a.clone(), *ka)
                    } else {
                        let sub = f.mul(&factor, b);
                        if a.is_zero() {
                            (f.neg(&sub), kb + t)
                        } else {
                            (f.sub(a, &sub), *ka)
                        }
                    }
                })
                .map(|(a, k)| if a.is_zero() { (a, 0) } else { (a, k) })
                .collect();
            if reduced.iter().any(|(a, _)| !a.is_zero()) {
                cols.push(reduced);
            }
        }
        done.push(pivot);
    }
    done.reverse();
    done
}

fn lead(col: &[Monomial]) -> Option<usize> {
    col.iter().rposition(|(c, _)| !c.is_zero())
}

/// `M ≅ ⊕ ⟨X^{k_e}⟩(−deg e_e)` read off the reduced generators.
pub fn decompose(p: &PrincipalPresentation) -> Vec<Summand> {
    graded_column_reduction(p)
        .iter()
        .map(|col| {
            let e = lead(col).expect("nonzero column");
            Summand {
                shift: p.group.neg(&p.ambient[e]),
                exponent: col[e].1,
                index: e,
            }
        })
        .collect()
}

type Poly = Vec<Scalar>;

fn trim(mut a: Poly) -> Poly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn poly_sub_scaled(f: Field, a: &Poly, b: &Poly, c: &Scalar, shift: usize) -> Poly {
    let mut out = a.clone();
    if out.len() < b.len() + shift {
        out.resize(b.len() + shift, Scalar::zero());
    }
    for (i, x) in b.iter().enumerate() {
        out[i + shift] = f.sub(&out[i + shift], &f.mul(c, x));
    }
    trim(out)
}

fn poly_rem(f: Field, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = trim(a.clone());
    let b = trim(b.clone());
    let mut q = vec![Scalar::zero(); r.len().saturating_sub(b.len()) + 1];
    let lc = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = f.div(r.last().expect("nonempty"), &lc).expect("nonzero");
        q[shift] = c.clone();
        r = poly_sub_scaled(f, &r, &b, &c, shift);
    }
    (trim(q), r)
}

/// Monic gcd of two polynomials (coefficients constant term first).
pub fn poly_gcd(f: Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = poly_rem(f, &x, &y);
        x = y;
        y = r;
    }
    if let Some(lc) = x.last().cloned() {
        let inv = f.inv(&lc).expect("nonzero");
        x = x.iter().map(|c| f.mul(c, &inv)).collect();
    }
    x
}

/// Ungraded column reduction of a polynomial matrix over `K[X]` (Euclid on
/// leading entries); returns the number of nonzero columns left, the rank of
/// the free module they generate.
pub fn ungraded_rank(field: Field, rows: usize, cols: Vec<Vec<Poly>>) -> usize {
    let mut cols: Vec<Vec<Poly>> = cols
        .into_iter()
        .map(|c| c.into_iter().map(trim).collect::<Vec<Poly>>())
        .filter(|c| c.iter().any(|e| !e.is_empty()))
        .collect();
    let mut kept = 0;
    for e in (0..rows).rev() {
        loop {
            let mut top: Vec<usize> = (0..cols.len())
                .filter(|&t| cols[t].iter().rposition(|x| !x.is_empty()) == Some(e))
                .collect();
            if top.len() <= 1 {
                if let Some(&t) = top.first() {
                    cols.swap_remove(t);
                    kept += 1;
                }
                break;
            }
            top.sort_by_key(|&t| cols[t][e].len());
            let piv = cols[top[0]].clone();
            let other = top[1];
            let (q, _) = poly_rem(field, &cols[other][e], &piv[e]);
            let reduced: Vec<Poly> = cols[other]
                .iter()
                .zip(&piv)
                .map(|(a, b)| poly_sub_scaled(field, a, &poly_mul(field, &q, b), &field.one(), 0))
                .collect();
            if reduced.iter().any(|x| !x.is_empty()) {
                cols[other] = reduced;
            } else {
                cols.swap_remove(other);
            }
        }
    }
    kept
}

fn poly_mul(f: Field, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(out)
}

fn monomial_poly(f: Field, (c, k): &Monomial) -> Poly {
    if c.is_zero() {
        return Vec::new();
    }
    let mut v = vec![f.zero(); *k as usize + 1];
    v[*k as usize] = c.clone();
    v
}

/// For `⟨X^m⟩ ↪ K[X]` with `m ≥ 1`: graded superfluousness holds because the
/// graded ideals are `0` and `⟨X^k⟩`; after coarsening along `ψ` with
/// `ψ(deg X)` of finite order `n`, `f = X^n + c` is coarse-homogeneous and
/// coprime to `X^m`, refuting superfluousness.
pub fn superfluous_counterexample(
    p: &PrincipalPresentation,
    psi: &GroupHom,
) -> Result<Option<SuperfluousCounterexample>> {
    if psi.source() != &p.group {
        return Err(Error::GroupMismatch(
            "ψ must start at the grading group".into(),
        ));
    }
    if p.ambient.len() != 1 || p.gens.len() != 1 {
        return Ok(None);
    }
    let (c, m) = p.gens[0][0].clone();
    if c.is_zero() || m == 0 {
        return Ok(None);
    }
    let f = p.field;
    let coarse_var = psi.apply(&p.var_degree);
    let n = psi.target().element_order(&coarse_var);
    let sub = monomial_poly(f, &(c, m));
    let mut witness = None;
    if let Some(n) = n {
        let n = n.to_usize().unwrap_or(usize::MAX);
        for constant in 1..=4i64 {
            let mut cand = vec![f.zero(); n + 1];
            cand[0] = f.from_i64(constant);
            cand[n] = f.one();
            let coprime = poly_gcd(f, &sub, &cand).len() == 1;
            let proper = trim(cand.clone()).len() > 1;
            if coprime && proper && !cand[0].is_zero() {
                witness = Some(cand.iter().map(crate::exactla::format_scalar).collect());
                break;
            }
        }
    }
    Ok(Some(SuperfluousCounterexample {
        graded_superfluous: true,
        coarsened_superfluous: witness.is_none(),
        witness,
    }))
}

/// Decomposition, freeness and rank, the coarsened re-test and, when it
/// applies, the superfluous counterexample.
pub fn principal_suite(p: &PrincipalPresentation, psi: &GroupHom) -> Result<PrincipalReport> {
    if psi.source() != &p.group {
        return Err(Error::GroupMismatch(
            "ψ must start at the grading group".into(),
        ));
    }
    if !psi.is_epi() {
        return Err(Error::NotEpimorphism);
    }
    let decomposition = decompose(p);
    let rank = decomposition.len();
    let cols: Vec<Vec<Poly>> = p
        .gens
        .iter()
        .map(|col| col.iter().map(|m| monomial_poly(p.field, m)).collect())
        .collect();
    let coarsened_rank = ungraded_rank(p.field, p.ambient.len(), cols);
    Ok(PrincipalReport {
        free: true,
        rank,
        generators: p.gens.len(),
        rank_bound_holds: rank <= p.gens.len(),
        coarsened_free: true,
        coarsened_rank,
        coarsening_agrees: coarsened_rank == rank,
        counterexample: superfluous_counterexample(p, psi)?,
        decomposition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kx(ambient: Vec<i64>, gens: Vec<Vec<(i64, u64)>>) -> PrincipalPresentation {
        let f = Field::Rational;
        let g = FGAbelianGroup::free(1);
        let amb = ambient
            .into_iter()
            .map(|a| g.element(vec![a]).unwrap())
            .collect();
        let gens = gens
            .into_iter()
            .map(|c| c.into_iter().map(|(x, k)| (f.from_i64(x), k)).collect())
            .collect();
        PrincipalPresentation::new(f, g.clone(), g.element(vec![1]).unwrap(), amb, gens).unwrap()
    }

    #[test]
    fn single_monomial_ideal() {
        let p = kx(vec![0], vec![vec![(1, 2)]]);
        let d = decompose(&p);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].exponent, 2);
        assert!(d[0].shift.coords().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn two_summands() {
        let p = kx(vec![0, 0], vec![vec![(1, 1), (0, 0)], vec![(0, 0), (1, 2)]]);
        assert_eq!(decompose(&p).len(), 2);
    }

    #[test]
    fn dependent_generators_reduce() {
        // (X, X²) and (X², X³) = X·(X, X²)
        let p = kx(
            vec![0, -1],
            vec![vec![(1, 1), (1, 2)], vec![(1, 2), (1, 3)]],
        );
        assert_eq!(decompose(&p).len(), 1);
        let psi = GroupHom::identity(&p.group);
        assert!(principal_suite(&p, &psi).unwrap().coarsening_agrees);
    }

    #[test]
    fn counterexample_witness() {
        let p = kx(vec![0], vec![vec![(1, 1)]]);
        let psi = GroupHom::zero(&p.group, &FGAbelianGroup::trivial());
        let rep = principal_suite(&p, &psi).unwrap();
        let ce = rep.counterexample.unwrap();
        assert!(ce.graded_superfluous);
        assert!(!ce.coarsened_superfluous);
        assert_eq!(ce.witness.unwrap(), vec!["1".to_string(), "1".to_string()]);
    }

    #[test]
    fn gcd_of_polynomials() {
        let f = Field::Rational;
        let a: Vec<Scalar> = [-1, 0, 1].iter().map(|&x| f.from_i64(x)).collect();
        let b: Vec<Scalar> = [1, 1].iter().map(|&x| f.from_i64(x)).collect();
        assert_eq!(poly_gcd(f, &a, &b), b);
    }
}
