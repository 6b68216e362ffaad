use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::snf::LatticeQuotient;
use crate::{Error, Result};

/// Finitely generated abelian group `ℤ^r ⊕ ℤ/d_1 ⊕ … ⊕ ℤ/d_k` in invariant-factor
/// form: `d_i ≥ 2` and `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

/// Element of an [`FGAbelianGroup`]: free coordinates first, then torsion
/// coordinates reduced into `[0, d_i)`. The derived ordering is the
/// lexicographic order on canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<BigInt>);

impl serde::Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = ser.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl GroupElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    /// Raw constructor; the caller is responsible for canonical form.
    pub(crate) fn from_canonical(coords: Vec<BigInt>) -> Self {
        GroupElement(coords)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FGAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (i, d) in torsion.iter().enumerate() {
            if d < &BigInt::from(2) {
                return Err(Error::InvalidGroup(format!(
                    "torsion factor {d} at position {i} is below 2"
                )));
            }
            if i > 0 && !d.is_multiple_of(&torsion[i - 1]) {
                return Err(Error::InvalidGroup(format!(
                    "torsion factor {} does not divide {d}",
                    torsion[i - 1]
                )));
            }
        }
        Ok(FGAbelianGroup { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        FGAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    /// `ℤ^n`.
    pub fn free(n: usize) -> Self {
        FGAbelianGroup {
            free_rank: n,
            torsion: Vec::new(),
        }
    }

    /// `ℤ/n` (trivial for `n = 1`, `ℤ` for `n = 0`).
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => FGAbelianGroup {
                free_rank: 0,
                torsion: vec![BigInt::from(n)],
            },
        }
    }

    /// `ℤ^n / ⟨rels⟩`, normalized, together with the coordinate map from `ℤ^n`
    /// (as the images of the standard basis vectors).
    pub fn from_relations(n: usize, rels: &[Vec<BigInt>]) -> (Self, Vec<GroupElement>) {
        let basis: Vec<Vec<BigInt>> = (0..n).map(|i| unit_vector(n, i)).collect();
        let lq = LatticeQuotient::new(n, &basis, rels);
        let group = FGAbelianGroup {
            free_rank: lq.free_rank(),
            torsion: lq.torsion_factors(),
        };
        let images = basis
            .iter()
            .map(|b| GroupElement(lq.to_quotient(b).expect("basis vector lies in ℤ^n")))
            .collect();
        (group, images)
    }

    /// Direct sum `self ⊕ other`, normalized. Returns the group and the
    /// coordinate images of the generators of `self` and of `other`.
    pub fn direct_sum(
        &self,
        other: &FGAbelianGroup,
    ) -> (Self, Vec<GroupElement>, Vec<GroupElement>) {
        let n = self.ngens() + other.ngens();
        let mut rels = Vec::new();
        for (k, d) in self.relation_orders() {
            let mut v = vec![BigInt::zero(); n];
            v[k] = d;
            rels.push(v);
        }
        for (k, d) in other.relation_orders() {
            let mut v = vec![BigInt::zero(); n];
            v[self.ngens() + k] = d;
            rels.push(v);
        }
        let (g, images) = Self::from_relations(n, &rels);
        let right = images[self.ngens()..].to_vec();
        let mut left = images;
        left.truncate(self.ngens());
        (g, left, right)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of canonical coordinates.
    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_torsionfree(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Group order, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigInt::one(), |a, d| a * d))
    }

    /// (coordinate index, order) for each torsion coordinate.
    pub(crate) fn relation_orders(&self) -> impl Iterator<Item = (usize, BigInt)> + '_ {
        self.torsion
            .iter()
            .enumerate()
            .map(move |(i, d)| (self.free_rank + i, d.clone()))
    }

    /// Generators of the relation lattice in `ℤ^ngens`.
    pub(crate) fn relation_vectors(&self) -> Vec<Vec<BigInt>> {
        self.relation_orders()
            .map(|(k, d)| {
                let mut v = vec![BigInt::zero(); self.ngens()];
                v[k] = d;
                v
            })
            .collect()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![BigInt::zero(); self.ngens()])
    }

    /// Canonical element from arbitrary integer coordinates.
    pub fn element<T: Into<BigInt>>(&self, coords: Vec<T>) -> Result<GroupElement> {
        if coords.len() != self.ngens() {
            return Err(Error::DimensionMismatch(format!(
                "group element has {} coordinates, group needs {}",
                coords.len(),
                self.ngens()
            )));
        }
        Ok(self.reduce(coords.into_iter().map(Into::into).collect()))
    }

    /// Checks that `x` has the right length and canonical torsion coordinates.
    pub fn contains(&self, x: &GroupElement) -> bool {
        x.0.len() == self.ngens()
            && self
                .relation_orders()
                .all(|(k, d)| !x.0[k].is_negative() && x.0[k] < d)
    }

    pub(crate) fn reduce(&self, mut coords: Vec<BigInt>) -> GroupElement {
        debug_assert_eq!(coords.len(), self.ngens());
        for (k, d) in self.relation_orders() {
            coords[k] = coords[k].mod_floor(&d);
        }
        GroupElement(coords)
    }

    pub fn gen(&self, i: usize) -> GroupElement {
        self.reduce(unit_vector(self.ngens(), i))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &GroupElement, k: &BigInt) -> GroupElement {
        self.reduce(a.0.iter().map(|x| x * k).collect())
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    pub fn is_zero(&self, a: &GroupElement) -> bool {
        a.0.iter().all(Zero::is_zero)
    }

    /// Order of an element, `None` if infinite.
    pub fn element_order(&self, a: &GroupElement) -> Option<BigInt> {
        if a.0[..self.free_rank].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(self.relation_orders().fold(BigInt::one(), |acc, (k, d)| {
            let o = &d / a.0[k].gcd(&d);
            acc.lcm(&o)
        }))
    }

    /// All elements in lexicographic order, if the group is finite and has at
    /// most `limit` elements.
    pub fn enumerate(&self, limit: u64) -> Result<Vec<GroupElement>> {
        let order = self
            .order()
            .ok_or_else(|| Error::Invalid("cannot enumerate an infinite group".to_string()))?;
        if order > BigInt::from(limit) {
            return Err(Error::SizeGuard {
                what: "group enumeration".into(),
                limit,
            });
        }
        let dims: Vec<u64> = self.torsion.iter().map(|d| d.to_u64().unwrap()).collect();
        let mut out = Vec::new();
        let mut cur = vec![0u64; dims.len()];
        loop {
            out.push(GroupElement(cur.iter().map(|&c| BigInt::from(c)).collect()));
            let mut i = dims.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < dims[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Elements of the box `[-radius, radius]` on free coordinates times all
    /// torsion values, lexicographically. Used for bounded searches in
    /// infinite groups.
    pub fn enumerate_box(&self, radius: i64) -> Vec<GroupElement> {
        let mut ranges: Vec<(BigInt, BigInt)> = (0..self.free_rank)
            .map(|_| (BigInt::from(-radius), BigInt::from(radius)))
            .collect();
        ranges.extend(self.torsion.iter().map(|d| (BigInt::zero(), d - 1)));
        let mut out = Vec::new();
        let mut cur: Vec<BigInt> = ranges.iter().map(|r| r.0.clone()).collect();
        loop {
            out.push(GroupElement(cur.clone()));
            let mut i = cur.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < ranges[i].1 {
                    cur[i] += 1;
                    break;
                }
                cur[i] = ranges[i].0.clone();
            }
        }
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_chains() {
        assert!(FGAbelianGroup::new(0, vec![BigInt::from(1)]).is_err());
        assert!(FGAbelianGroup::new(0, vec![BigInt::from(2), BigInt::from(3)]).is_err());
        assert!(FGAbelianGroup::new(1, vec![BigInt::from(2), BigInt::from(4)]).is_ok());
    }

    #[test]
    fn presentation_normalizes() {
        let (g, imgs) = FGAbelianGroup::from_relations(
            2,
            &[
                vec![BigInt::from(2), BigInt::zero()],
                vec![BigInt::zero(), BigInt::from(3)],
            ],
        );
        assert_eq!(g, FGAbelianGroup::cyclic(6));
        assert_eq!(g.element_order(&imgs[0]), Some(BigInt::from(2)));
        assert_eq!(g.element_order(&imgs[1]), Some(BigInt::from(3)));
    }

    #[test]
    fn arithmetic_stays_canonical() {
        let g = FGAbelianGroup::new(1, vec![BigInt::from(4)]).unwrap();
        let a = g.element(vec![3, 3]).unwrap();
        let b = g.element(vec![-1, 2]).unwrap();
        let s = g.add(&a, &b);
        assert_eq!(s, g.element(vec![2, 1]).unwrap());
        assert!(g.contains(&g.neg(&a)));
        assert!(g.is_zero(&g.add(&a, &g.neg(&a))));
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let g = FGAbelianGroup::new(0, vec![BigInt::from(2), BigInt::from(2)]).unwrap();
        let all = g.enumerate(16).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}
