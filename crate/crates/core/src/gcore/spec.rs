use super::algebra::GradedAlgebra;
use super::ideal::{is_ideal, GradedIdeal};
use crate::exactla::{vecops, Field, Scalar, Subspace};
use crate::{Error, Result};

/// Largest algebra dimension accepted by [`spec_enumerate`].
pub const SPEC_MAX_DIM: usize = 6;
/// Largest characteristic accepted by [`spec_enumerate`].
pub const SPEC_MAX_P: u64 = 3;
/// Cap on the number of graded subspaces examined.
pub const SUBSPACE_LIMIT: u64 = 1 << 16;

/// All subspaces of the coordinate subspace spanned by `coords`, listed by
/// dimension and then by echelon pattern.
pub fn subspaces_on(field: Field, ambient: usize, coords: &[usize]) -> Vec<Subspace> {
    let elems = field.elements().expect("finite field required");
    let d = coords.len();
    let mut out = Vec::new();
    for k in 0..=d {
        for pivots in combinations(d, k) {
            // Free positions: (row r, column c) with c > pivot_r and c not a pivot.
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| {
                    (p + 1..d)
                        .filter(|c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let mut digits = vec![0usize; free.len()];
            loop {
                let mut rows: Vec<Vec<Scalar>> = pivots
                    .iter()
                    .map(|&p| vecops::unit(field, ambient, coords[p]))
                    .collect();
                for (&(r, c), &dig) in free.iter().zip(&digits) {
                    rows[r][coords[c]] = elems[dig].clone();
                }
                out.push(Subspace::span(field, ambient, &rows));
                let mut i = free.len();
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
                if digits.iter().all(|&x| x == 0) {
                    break;
                }
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Number of subspaces of `𝔽_p^d`.
fn subspace_count(p: u64, d: usize) -> u64 {
    // Gaussian binomials via the recurrence G(d,k) = G(d-1,k-1) + p^k G(d-1,k).
    let mut row = vec![1u64];
    for n in 1..=d {
        let mut next = vec![1u64; n + 1];
        for k in 1..n {
            next[k] = row[k - 1].saturating_add(p.saturating_pow(k as u32).saturating_mul(row[k]));
        }
        row = next;
    }
    row.iter().fold(0u64, |a, b| a.saturating_add(*b))
}

/// Every graded ideal of `R` (finite field), found by taking products of
/// subspaces of the homogeneous components and keeping the ideals.
pub fn graded_ideals(r: &GradedAlgebra) -> Result<Vec<GradedIdeal>> {
    let f = r.field();
    let p = f
        .size()
        .ok_or_else(|| Error::Invalid("graded ideal enumeration needs a finite field".into()))?;
    let comps: Vec<Vec<usize>> = r.components().into_values().collect();
    let total = comps
        .iter()
        .fold(1u64, |a, c| a.saturating_mul(subspace_count(p, c.len())));
    if total > SUBSPACE_LIMIT {
        return Err(Error::SizeGuard {
            what: "graded subspace enumeration".into(),
            limit: SUBSPACE_LIMIT,
        });
    }
    let per: Vec<Vec<Subspace>> = comps.iter().map(|c| subspaces_on(f, r.dim(), c)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; per.len()];
    loop {
        let space = per
            .iter()
            .zip(&idx)
            .fold(Subspace::zero(f, r.dim()), |acc, (subs, &i)| {
                acc.sum(&subs[i])
            });
        if is_ideal(r, &space) {
            out.push(GradedIdeal::from_subspace_unchecked(space));
        }
        let mut i = per.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < per[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// All graded prime ideals of a small algebra over 𝔽_2 or 𝔽_3.
pub fn spec_enumerate(r: &GradedAlgebra) -> Result<Vec<GradedIdeal>> {
    let p = r.field().characteristic();
    if p == 0 || p > SPEC_MAX_P || r.dim() > SPEC_MAX_DIM {
        return Err(Error::SizeGuard {
            what: format!("graded spectrum (dimension ≤ {SPEC_MAX_DIM}, p ≤ {SPEC_MAX_P})"),
            limit: SPEC_MAX_DIM as u64,
        });
    }
    Ok(graded_ideals(r)?
        .into_iter()
        .filter(|a| a.class(r).prime.is_yes())
        .collect())
}

/// Intersection of a nonempty list of ideals (the whole ring for an empty list).
pub fn intersect_all(r: &GradedAlgebra, ideals: &[GradedIdeal]) -> GradedIdeal {
    ideals
        .iter()
        .fold(GradedIdeal::whole(r), |acc, a| acc.intersection(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn subspace_counts() {
        assert_eq!(subspaces_on(Field::Prime(2), 2, &[0, 1]).len(), 5);
        assert_eq!(subspace_count(2, 2), 5);
        assert_eq!(subspace_count(3, 3), 28);
        assert_eq!(subspaces_on(Field::Prime(3), 3, &[0, 1, 2]).len(), 28);
    }

    #[test]
    fn spectra() {
        let f2 = Field::Prime(2);
        let r = samples::dual_numbers(f2);
        let spec = spec_enumerate(&r).unwrap();
        assert_eq!(
            spec,
            vec![GradedIdeal::generated(&r, &[r.basis_vector(1)]).unwrap()]
        );

        let r = samples::cyclic_group_algebra(f2, 2);
        assert_eq!(spec_enumerate(&r).unwrap(), vec![GradedIdeal::zero(&r)]);

        let r = samples::split_product(f2);
        assert_eq!(spec_enumerate(&r).unwrap().len(), 2);
    }
}
