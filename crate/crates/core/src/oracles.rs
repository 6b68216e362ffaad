//! Brute-force reference computations over prime fields.
//!
//! Nothing here reuses the linear algebra or the module machinery of the
//! main path: objects are copied into plain `u64` residue tables and every
//! question is answered by enumeration.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::abgroups::GroupElement;
use crate::exactla::{Field, Scalar};
use crate::gcore::GradedAlgebra;
use crate::gmod::GradedModule;
use crate::{Error, Result};

/// Largest table an oracle builds (elements, candidate maps or submodules).
pub const ORACLE_LIMIT: u64 = 1 << 20;
/// Largest number of graded submodules enumerated.
pub const SUBMODULE_LIMIT: usize = 1 << 16;

fn guard(what: &str, count: u64, limit: u64) -> Result<()> {
    if count > limit {
        return Err(Error::SizeGuard {
            what: what.into(),
            limit,
        });
    }
    Ok(())
}

fn prime_of(f: Field) -> Result<u64> {
    match f {
        Field::Prime(p) => Ok(p),
        Field::Rational => Err(Error::InvalidField("oracles need a prime field".into())),
    }
}

fn residue(x: &Scalar, p: u64) -> u64 {
    let n = x.numer().to_i128().expect("small").rem_euclid(p as i128) as u64;
    let d = x.denom().to_i128().expect("small").rem_euclid(p as i128) as u64;
    n * inv_mod(d, p) % p
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn count(p: u64, n: usize) -> u64 {
    (0..n)
        .try_fold(1u64, |acc, _| acc.checked_mul(p))
        .unwrap_or(u64::MAX)
}

/// All vectors of `F_p^n`, lexicographic with coordinate 0 most significant.
fn all_vectors(p: u64, n: usize) -> Vec<Vec<u64>> {
    let total = count(p, n);
    (0..total)
        .map(|mut idx| {
            let mut v = vec![0; n];
            for slot in v.iter_mut().rev() {
                *slot = idx % p;
                idx /= p;
            }
            v
        })
        .collect()
}

/// Reduced row echelon basis of the span of `rows`.
fn echelon(mut rows: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let width = rows.first().map_or(0, |r| r.len());
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut col = 0;
    while col < width && !rows.is_empty() {
        if let Some(pos) = rows.iter().position(|r| r[col] != 0) {
            let mut piv = rows.swap_remove(pos);
            let inv = inv_mod(piv[col], p);
            for x in piv.iter_mut() {
                *x = *x * inv % p;
            }
            for r in rows.iter_mut().chain(out.iter_mut()) {
                let c = r[col];
                if c != 0 {
                    for (x, y) in r.iter_mut().zip(&piv) {
                        *x = (*x + p * p - c * y) % p;
                    }
                }
            }
            out.push(piv);
        }
        col += 1;
        rows.retain(|r| r.iter().any(|&x| x != 0));
    }
    out.sort_by_key(|r| r.iter().position(|&x| x != 0));
    out
}

fn rank(rows: Vec<Vec<u64>>, p: u64) -> usize {
    echelon(rows, p).len()
}

/// A finite commutative algebra as residue tables.
#[derive(Clone, Debug)]
pub struct OracleRing {
    pub p: u64,
    pub dim: usize,
    /// `table[i][j]` = coordinates of `x_i x_j`.
    pub table: Vec<Vec<Vec<u64>>>,
    pub unit: Vec<u64>,
    /// Degree label of each basis vector.
    pub degree_class: Vec<usize>,
}

fn degree_classes(degrees: &[GroupElement]) -> Vec<usize> {
    let mut labels: BTreeMap<&GroupElement, usize> = BTreeMap::new();
    for d in degrees {
        let next = labels.len();
        labels.entry(d).or_insert(next);
    }
    degrees.iter().map(|d| labels[d]).collect()
}

impl OracleRing {
    pub fn from_algebra(r: &GradedAlgebra) -> Result<Self> {
        let p = prime_of(r.field())?;
        let n = r.dim();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        r.product_of_basis(i, j)
                            .iter()
                            .map(|c| residue(c, p))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(OracleRing {
            p,
            dim: n,
            table,
            unit: r.unit().iter().map(|c| residue(c, p)).collect(),
            degree_class: degree_classes(r.degrees()),
        })
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0; self.dim];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let c = x * y % p;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o = (*o + c * t) % p;
                }
            }
        }
        out
    }

    pub fn is_homogeneous(&self, x: &[u64]) -> bool {
        let classes: BTreeSet<usize> = x
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| self.degree_class[i])
            .collect();
        classes.len() <= 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementRow {
    pub coords: Vec<u64>,
    pub unit: bool,
    pub regular: bool,
    pub nilpotent: bool,
    pub homogeneous: bool,
}

/// Flags for every element of a finite algebra, by direct multiplication.
pub fn exhaustive_classify(r: &GradedAlgebra) -> Result<Vec<ElementRow>> {
    let ring = OracleRing::from_algebra(r)?;
    let size = count(ring.p, ring.dim);
    guard("element table", size, ORACLE_LIMIT)?;
    let elems = all_vectors(ring.p, ring.dim);
    let zero = vec![0; ring.dim];
    let units: HashSet<Vec<u64>> = if ring.dim == 0 {
        HashSet::new()
    } else {
        elems
            .iter()
            .filter(|x| elems.iter().any(|y| ring.mul(x, y) == ring.unit))
            .cloned()
            .collect()
    };
    Ok(elems
        .iter()
        .map(|x| {
            let nonzero = *x != zero;
            let regular = nonzero && elems.iter().all(|y| *y == zero || ring.mul(x, y) != zero);
            let mut power = x.clone();
            let mut nilpotent = !nonzero;
            for _ in 0..=ring.dim {
                if power == zero {
                    nilpotent = true;
                    break;
                }
                power = ring.mul(&power, x);
            }
            ElementRow {
                coords: x.clone(),
                unit: units.contains(x),
                regular,
                nilpotent,
                homogeneous: ring.is_homogeneous(x),
            }
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRingClass {
    pub simple: bool,
    pub entire: bool,
    pub reduced: bool,
}

/// Ring flags read off the element table. The zero ring counts as reduced
/// but neither simple nor entire.
pub fn exhaustive_ring_class(r: &GradedAlgebra) -> Result<OracleRingClass> {
    let rows = exhaustive_classify(r)?;
    if r.dim() == 0 {
        return Ok(OracleRingClass {
            simple: false,
            entire: false,
            reduced: true,
        });
    }
    let hom: Vec<&ElementRow> = rows
        .iter()
        .filter(|e| e.homogeneous && e.coords.iter().any(|&c| c != 0))
        .collect();
    Ok(OracleRingClass {
        simple: hom.iter().all(|e| e.unit),
        entire: hom.iter().all(|e| e.regular),
        reduced: hom.iter().all(|e| !e.nilpotent),
    })
}

/// Nonzero homogeneous elements, in table order.
pub fn homogeneous_elements(r: &GradedAlgebra) -> Result<Vec<Vec<u64>>> {
    Ok(exhaustive_classify(r)?
        .into_iter()
        .filter(|e| e.homogeneous && e.coords.iter().any(|&c| c != 0))
        .map(|e| e.coords)
        .collect())
}

/// A finite module as residue tables.
#[derive(Clone, Debug)]
pub struct OracleModule {
    pub p: u64,
    pub dim: usize,
    pub ring_dim: usize,
    /// `action[i][k][j]` = coefficient of `v_k` in `x_i v_j`.
    pub action: Vec<Vec<Vec<u64>>>,
    pub degree_class: Vec<usize>,
    pub degrees: Vec<GroupElement>,
}

impl OracleModule {
    pub fn from_module(m: &GradedModule) -> Result<Self> {
        let p = prime_of(m.field())?;
        let action = m
            .actions()
            .iter()
            .map(|a| {
                (0..m.dim())
                    .map(|k| (0..m.dim()).map(|j| residue(&a[(k, j)], p)).collect())
                    .collect()
            })
            .collect();
        Ok(OracleModule {
            p,
            dim: m.dim(),
            ring_dim: m.algebra().dim(),
            action,
            degree_class: degree_classes(m.degrees()),
            degrees: m.degrees().to_vec(),
        })
    }

    fn act(&self, i: usize, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        (0..self.dim)
            .map(|k| {
                self.action[i][k]
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (a, b)| (acc + a * b) % p)
            })
            .collect()
    }

    /// Smallest submodule containing `rows`, as an echelon basis.
    pub fn closure(&self, rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
        let mut basis = echelon(rows, self.p);
        loop {
            let mut all = basis.clone();
            for v in &basis {
                for i in 0..self.ring_dim {
                    all.push(self.act(i, v));
                }
            }
            let next = echelon(all, self.p);
            if next.len() == basis.len() {
                return next;
            }
            basis = next;
        }
    }

    fn homogeneous_vectors(&self) -> Result<Vec<Vec<u64>>> {
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (j, &c) in self.degree_class.iter().enumerate() {
            comps.entry(c).or_default().push(j);
        }
        let total: u64 = comps.values().map(|idx| count(self.p, idx.len())).sum();
        guard("homogeneous vectors", total, ORACLE_LIMIT)?;
        let mut out = Vec::new();
        for idx in comps.values() {
            for coeffs in all_vectors(self.p, idx.len()) {
                if coeffs.iter().all(|&c| c == 0) {
                    continue;
                }
                let mut v = vec![0; self.dim];
                for (&j, c) in idx.iter().zip(coeffs) {
                    v[j] = c;
                }
                out.push(v);
            }
        }
        Ok(out)
    }
}

/// Every graded submodule of `M`, as echelon bases ordered by dimension and
/// then lexicographically.
pub fn enumerate_graded_submodules(m: &GradedModule) -> Result<Vec<Vec<Vec<u64>>>> {
    let om = OracleModule::from_module(m)?;
    let vectors = om.homogeneous_vectors()?;
    let mut seen: BTreeSet<Vec<Vec<u64>>> = BTreeSet::new();
    seen.insert(Vec::new());
    let mut frontier = vec![Vec::new()];
    while let Some(sub) = frontier.pop() {
        for v in &vectors {
            let mut rows: Vec<Vec<u64>> = sub.clone();
            if rank(
                {
                    let mut t = rows.clone();
                    t.push(v.clone());
                    t
                },
                om.p,
            ) == rows.len()
            {
                continue;
            }
            rows.push(v.clone());
            let next = om.closure(rows);
            if seen.insert(next.clone()) {
                if seen.len() > SUBMODULE_LIMIT {
                    return Err(Error::SizeGuard {
                        what: "graded submodule enumeration".into(),
                        limit: SUBMODULE_LIMIT as u64,
                    });
                }
                frontier.push(next);
            }
        }
    }
    let mut out: Vec<Vec<Vec<u64>>> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn to_residues(rows: &[Vec<Scalar>], p: u64) -> Vec<Vec<u64>> {
    rows.iter()
        .map(|v| v.iter().map(|c| residue(c, p)).collect())
        .collect()
}

/// Brute-force verdict on a submodule inclusion `I ⊆ N`.
#[derive(Clone, Debug, Serialize)]
pub struct SmallOracle {
    pub holds: bool,
    /// A graded submodule refuting the property, if any.
    pub witness: Option<Vec<Vec<u64>>>,
    pub submodules_checked: usize,
}

/// `I` is superfluous: `L + I = N` forces `L = N` for every graded `L`.
pub fn superfluous_oracle(n: &GradedModule, image: &[Vec<Scalar>]) -> Result<SmallOracle> {
    let p = prime_of(n.field())?;
    let subs = enumerate_graded_submodules(n)?;
    let im = to_residues(image, p);
    for l in &subs {
        if l.len() == n.dim() {
            continue;
        }
        let mut both = l.clone();
        both.extend(im.iter().cloned());
        if rank(both, p) == n.dim() {
            return Ok(SmallOracle {
                holds: false,
                witness: Some(l.clone()),
                submodules_checked: subs.len(),
            });
        }
    }
    Ok(SmallOracle {
        holds: true,
        witness: None,
        submodules_checked: subs.len(),
    })
}

/// `I` is essential: it meets every nonzero graded `L`.
pub fn essential_oracle(n: &GradedModule, image: &[Vec<Scalar>]) -> Result<SmallOracle> {
    let p = prime_of(n.field())?;
    let subs = enumerate_graded_submodules(n)?;
    let im = to_residues(image, p);
    let im_rank = rank(im.clone(), p);
    for l in &subs {
        if l.is_empty() {
            continue;
        }
        let mut both = l.clone();
        both.extend(im.iter().cloned());
        if rank(both, p) == l.len() + im_rank {
            return Ok(SmallOracle {
                holds: false,
                witness: Some(l.clone()),
                submodules_checked: subs.len(),
            });
        }
    }
    Ok(SmallOracle {
        holds: true,
        witness: None,
        submodules_checked: subs.len(),
    })
}

/// Masked matrix entries `(row, col)` allowed by degree preservation.
fn degree_mask(src_deg: &[GroupElement], tgt_deg: &[GroupElement]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (k, dk) in tgt_deg.iter().enumerate() {
        for (j, dj) in src_deg.iter().enumerate() {
            if dk == dj {
                out.push((k, j));
            }
        }
    }
    out
}

fn fill(rows: usize, cols: usize, mask: &[(usize, usize)], coeffs: &[u64]) -> Vec<Vec<u64>> {
    let mut mat = vec![vec![0; cols]; rows];
    for (&(k, j), &c) in mask.iter().zip(coeffs) {
        mat[k][j] = c;
    }
    mat
}

fn apply(mat: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    mat.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % p))
        .collect()
}

/// Every degree-preserving equivariant map `M → N`, as row-major matrices.
pub fn enumerate_morphisms(m: &GradedModule, n: &GradedModule) -> Result<Vec<Vec<Vec<u64>>>> {
    let om = OracleModule::from_module(m)?;
    let on = OracleModule::from_module(n)?;
    let p = om.p;
    let mask = degree_mask(&om.degrees, &on.degrees);
    guard("candidate module maps", count(p, mask.len()), ORACLE_LIMIT)?;
    let mut out = Vec::new();
    for coeffs in all_vectors(p, mask.len()) {
        let mat = fill(on.dim, om.dim, &mask, &coeffs);
        let ok = (0..om.dim).all(|j| {
            let e: Vec<u64> = (0..om.dim).map(|t| u64::from(t == j)).collect();
            let fe = apply(&mat, &e, p);
            (0..om.ring_dim).all(|i| apply(&mat, &om.act(i, &e), p) == on.act(i, &fe))
        });
        if ok {
            out.push(mat);
        }
    }
    Ok(out)
}

/// Every unital, multiplicative, degree-preserving map `R → S`.
pub fn enumerate_ring_morphisms(
    r: &GradedAlgebra,
    s: &GradedAlgebra,
) -> Result<Vec<Vec<Vec<u64>>>> {
    let or = OracleRing::from_algebra(r)?;
    let os = OracleRing::from_algebra(s)?;
    let p = or.p;
    if os.p != p {
        return Err(Error::FieldMismatch);
    }
    let mask = degree_mask(r.degrees(), s.degrees());
    guard("candidate ring maps", count(p, mask.len()), ORACLE_LIMIT)?;
    let mut out = Vec::new();
    for coeffs in all_vectors(p, mask.len()) {
        let mat = fill(os.dim, or.dim, &mask, &coeffs);
        if apply(&mat, &or.unit, p) != os.unit {
            continue;
        }
        let images: Vec<Vec<u64>> = (0..or.dim)
            .map(|j| mat.iter().map(|row| row[j]).collect())
            .collect();
        let ok = (0..or.dim).all(|i| {
            (i..or.dim).all(|j| apply(&mat, &or.table[i][j], p) == os.mul(&images[i], &images[j]))
        });
        if ok {
            out.push(mat);
        }
    }
    Ok(out)
}

/// Searches all tuples of homogeneous elements for a basis of `M`.
/// Returns the basis (as residue vectors) when one exists.
pub fn exhaustive_free_basis(m: &GradedModule) -> Result<Option<Vec<Vec<u64>>>> {
    let om = OracleModule::from_module(m)?;
    if om.dim == 0 {
        return Ok(Some(Vec::new()));
    }
    if om.ring_dim == 0 || om.dim % om.ring_dim != 0 {
        return Ok(None);
    }
    let r = om.dim / om.ring_dim;
    let vectors = om.homogeneous_vectors()?;
    let tuples = (0..r)
        .try_fold(1u64, |acc, _| acc.checked_mul(vectors.len() as u64))
        .unwrap_or(u64::MAX);
    guard("candidate bases", tuples, ORACLE_LIMIT)?;
    let mut idx = vec![0usize; r];
    loop {
        let mut rows = Vec::new();
        for &t in &idx {
            for i in 0..om.ring_dim {
                rows.push(om.act(i, &vectors[t]));
            }
        }
        if rank(rows, om.p) == om.dim {
            return Ok(Some(idx.iter().map(|&t| vectors[t].clone()).collect()));
        }
        // next nondecreasing tuple
        let mut pos = r;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            if idx[pos] + 1 < vectors.len() {
                idx[pos] += 1;
                let v = idx[pos];
                for slot in idx.iter_mut().skip(pos + 1) {
                    *slot = v;
                }
                break;
            }
        }
    }
}

/// Graded ideals of `R` by enumeration (graded submodules of `R` over itself).
pub fn enumerate_graded_ideals(r: &GradedAlgebra) -> Result<Vec<Vec<Vec<u64>>>> {
    let ring = OracleRing::from_algebra(r)?;
    let vectors: Vec<Vec<u64>> = homogeneous_elements(r)?;
    let closure = |rows: Vec<Vec<u64>>| -> Vec<Vec<u64>> {
        let mut basis = echelon(rows, ring.p);
        loop {
            let mut all = basis.clone();
            for v in &basis {
                for i in 0..ring.dim {
                    let mut e = vec![0; ring.dim];
                    e[i] = 1;
                    all.push(ring.mul(&e, v));
                }
            }
            let next = echelon(all, ring.p);
            if next.len() == basis.len() {
                return next;
            }
            basis = next;
        }
    };
    let mut seen: BTreeSet<Vec<Vec<u64>>> = BTreeSet::new();
    seen.insert(Vec::new());
    let mut frontier = vec![Vec::new()];
    while let Some(sub) = frontier.pop() {
        for v in &vectors {
            let mut rows: Vec<Vec<u64>> = sub.clone();
            rows.push(v.clone());
            let next = closure(rows);
            if seen.insert(next.clone()) {
                guard(
                    "graded ideal enumeration",
                    seen.len() as u64,
                    SUBMODULE_LIMIT as u64,
                )?;
                frontier.push(next);
            }
        }
    }
    let mut out: Vec<Vec<Vec<u64>>> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Graded prime ideals by definition: proper, and for homogeneous `a, b`,
/// `ab ∈ P` forces `a ∈ P` or `b ∈ P`.
pub fn graded_primes(r: &GradedAlgebra) -> Result<Vec<Vec<Vec<u64>>>> {
    let ring = OracleRing::from_algebra(r)?;
    let hom = homogeneous_elements(r)?;
    let ideals = enumerate_graded_ideals(r)?;
    let member = |ideal: &Vec<Vec<u64>>, x: &Vec<u64>| {
        let mut rows = ideal.clone();
        rows.push(x.clone());
        rank(rows, ring.p) == ideal.len()
    };
    Ok(ideals
        .into_iter()
        .filter(|ideal| {
            ideal.len() < ring.dim
                && hom.iter().all(|a| {
                    member(ideal, a)
                        || hom
                            .iter()
                            .all(|b| member(ideal, b) || !member(ideal, &ring.mul(a, b)))
                })
        })
        .collect())
}

/// Span of the nilpotent homogeneous elements.
pub fn graded_nilradical(r: &GradedAlgebra) -> Result<Vec<Vec<u64>>> {
    let ring = OracleRing::from_algebra(r)?;
    let rows: Vec<Vec<u64>> = exhaustive_classify(r)?
        .into_iter()
        .filter(|e| e.homogeneous && e.nilpotent)
        .map(|e| e.coords)
        .collect();
    Ok(echelon(rows, ring.p))
}

/// Echelon form of a list of residue vectors.
pub fn canonical_span(rows: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    echelon(rows, p)
}

/// Residue vectors of field elements (which must lie in a prime field).
pub fn residues(rows: &[Vec<Scalar>], field: Field) -> Result<Vec<Vec<u64>>> {
    Ok(to_residues(rows, prime_of(field)?))
}
