use std::collections::BTreeMap;

use serde::Serialize;

use crate::abgroups::GroupElement;
use crate::exactla::{
    find_member, AffineMatrixSpace, Matrix, RankTarget, Scalar, SearchOutcome, Subspace,
};
use crate::{Decision, Result};

use super::arith::{generated_submodule, FreeSpec};
use super::module::GradedModule;

/// Cap on the number of generator-degree multisets tried.
pub const CANDIDATE_LIMIT: usize = 512;

#[derive(Clone, Debug, Serialize)]
pub struct FreenessReport {
    pub free: Decision,
    /// Shifts `g` of the summands `R(g)`, when a basis was found.
    pub spec: Option<FreeSpec>,
    /// Homogeneous basis vectors of `M`, in the order of `generator_degrees`.
    #[serde(serialize_with = "crate::serhelp::opt_rows")]
    pub basis: Option<Vec<Vec<Scalar>>>,
    pub generator_degrees: Option<Vec<GroupElement>>,
    pub rank: Option<usize>,
    pub candidates_tried: usize,
}

impl FreenessReport {
    fn found(
        m: &GradedModule,
        degrees: Vec<GroupElement>,
        basis: Vec<Vec<Scalar>>,
        tried: usize,
    ) -> Self {
        FreenessReport {
            free: Decision::Yes,
            spec: Some(FreeSpec::from_generator_degrees(m.group(), &degrees)),
            rank: Some(basis.len()),
            basis: Some(basis),
            generator_degrees: Some(degrees),
            candidates_tried: tried,
        }
    }

    fn not_free(free: Decision, tried: usize) -> Self {
        FreenessReport {
            free,
            spec: None,
            basis: None,
            generator_degrees: None,
            rank: None,
            candidates_tried: tried,
        }
    }
}

/// Matrix of the map `⊕ R e_j → M`, `e_j ↦ v_j`, in the free-module basis
/// `x_i e_j ↦ column j·n + i`.
pub fn free_map_matrix(m: &GradedModule, images: &[Vec<Scalar>]) -> Matrix {
    let n = m.algebra().dim();
    let mut cols = Vec::with_capacity(images.len() * n);
    for v in images {
        for i in 0..n {
            cols.push(m.action(i).mul_vec(v).expect("shape"));
        }
    }
    Matrix::from_columns(m.field(), m.dim(), &cols)
}

/// Decides whether `M` has a homogeneous basis.
///
/// Over a simple graded ring a basis is extracted greedily. Otherwise every
/// multiset of generator degrees compatible with the Hilbert function is
/// tried, looking for an invertible equivariant map from the free module.
pub fn freeness(m: &GradedModule, seed: u64) -> Result<FreenessReport> {
    if m.is_zero() {
        return Ok(FreenessReport::found(m, Vec::new(), Vec::new(), 0));
    }
    let r = m.algebra();
    if r.classify_ring().simple.is_yes() {
        let (degrees, basis) = greedy_basis(m)?;
        return Ok(FreenessReport::found(m, degrees, basis, 0));
    }
    let candidates = degree_candidates(m);
    let mut tried = 0;
    let mut undecided = false;
    for degrees in candidates.iter().take(CANDIDATE_LIMIT) {
        tried += 1;
        let space = free_map_space(m, degrees)?;
        match find_member(
            &space,
            RankTarget::Invertible,
            seed.wrapping_add(tried as u64),
        ) {
            SearchOutcome::Found(mat) => {
                let n = r.dim();
                let basis = (0..degrees.len())
                    .map(|j| {
                        let mut e = vec![Scalar::from_integer(0.into()); degrees.len() * n];
                        e[j * n..(j + 1) * n].clone_from_slice(r.unit());
                        mat.mul_vec(&e).expect("shape")
                    })
                    .collect();
                return Ok(FreenessReport::found(m, degrees.clone(), basis, tried));
            }
            SearchOutcome::ProvenNone => {}
            SearchOutcome::BudgetExhausted { .. } => undecided = true,
        }
    }
    if candidates.len() > CANDIDATE_LIMIT {
        undecided = true;
    }
    let verdict = if undecided {
        Decision::Undecided
    } else {
        Decision::No
    };
    Ok(FreenessReport::not_free(verdict, tried))
}

/// Affine space of all maps `⊕ R(−d_j) → M`.
fn free_map_space(m: &GradedModule, degrees: &[GroupElement]) -> Result<AffineMatrixSpace> {
    let f = m.field();
    let n = m.algebra().dim();
    let cols = degrees.len() * n;
    let mut dirs = Vec::new();
    for (j, d) in degrees.iter().enumerate() {
        for b in m.component_indices(d) {
            let mut mat = Matrix::zeros(f, m.dim(), cols);
            for i in 0..n {
                for k in 0..m.dim() {
                    mat[(k, j * n + i)] = m.action(i)[(k, b)].clone();
                }
            }
            dirs.push(mat);
        }
    }
    AffineMatrixSpace::new(Matrix::zeros(f, m.dim(), cols), dirs)
}

/// Multisets of generator degrees `D` with `Σ_{d∈D} hilb(R)(h − d) = hilb(M)(h)`.
pub fn degree_candidates(m: &GradedModule) -> Vec<Vec<GroupElement>> {
    let r = m.algebra();
    let grp = m.group();
    if r.dim() == 0 || m.dim() % r.dim() != 0 {
        return Vec::new();
    }
    let rank = m.dim() / r.dim();
    let ring_hilb: Vec<(GroupElement, usize)> = r
        .components()
        .into_iter()
        .map(|(g, v)| (g, v.len()))
        .collect();
    let target: BTreeMap<GroupElement, usize> = m.hilbert();
    let mut degs: Vec<GroupElement> = Vec::new();
    for h in target.keys() {
        for (g, _) in &ring_hilb {
            degs.push(grp.sub(h, g));
        }
    }
    degs.sort();
    degs.dedup();
    degs.retain(|d| {
        ring_hilb
            .iter()
            .all(|(g, c)| target.get(&grp.add(d, g)).copied().unwrap_or(0) >= *c)
    });
    let mut out = Vec::new();
    let mut remaining = target;
    let mut chosen = Vec::new();
    backtrack(
        grp,
        &ring_hilb,
        &degs,
        0,
        rank,
        &mut remaining,
        &mut chosen,
        &mut out,
    );
    out
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    grp: &crate::abgroups::FGAbelianGroup,
    ring_hilb: &[(GroupElement, usize)],
    degs: &[GroupElement],
    start: usize,
    left: usize,
    remaining: &mut BTreeMap<GroupElement, usize>,
    chosen: &mut Vec<GroupElement>,
    out: &mut Vec<Vec<GroupElement>>,
) {
    if out.len() > CANDIDATE_LIMIT {
        return;
    }
    if left == 0 {
        if remaining.values().all(|&c| c == 0) {
            out.push(chosen.clone());
        }
        return;
    }
    for (idx, d) in degs.iter().enumerate().skip(start) {
        let fits = ring_hilb
            .iter()
            .all(|(g, c)| remaining.get(&grp.add(d, g)).copied().unwrap_or(0) >= *c);
        if !fits {
            continue;
        }
        for (g, c) in ring_hilb {
            *remaining.get_mut(&grp.add(d, g)).expect("fits") -= c;
        }
        chosen.push(d.clone());
        backtrack(grp, ring_hilb, degs, idx, left - 1, remaining, chosen, out);
        chosen.pop();
        for (g, c) in ring_hilb {
            *remaining.get_mut(&grp.add(d, g)).expect("fits") += c;
        }
    }
}

/// Greedy basis extraction over a simple graded ring: scan the homogeneous
/// basis vectors of `M` by degree, keeping each one not yet generated.
pub fn greedy_basis(m: &GradedModule) -> Result<(Vec<GroupElement>, Vec<Vec<Scalar>>)> {
    let f = m.field();
    let mut span = Subspace::zero(f, m.dim());
    let mut degrees = Vec::new();
    let mut basis = Vec::new();
    for (d, idx) in m.components() {
        for j in idx {
            if span.dim() == m.dim() {
                break;
            }
            let v = m.basis_vector(j);
            if span.contains(&v) {
                continue;
            }
            basis.push(v);
            degrees.push(d.clone());
            span = generated_submodule(m, &basis)?;
        }
    }
    Ok((degrees, basis))
}

/// Whether `M = R·v` for some homogeneous `v`.
pub fn is_monogeneous(m: &GradedModule, seed: u64) -> Result<Decision> {
    if m.is_zero() {
        return Ok(Decision::Yes);
    }
    let f = m.field();
    let n = m.algebra().dim();
    let mut undecided = false;
    for (t, (_, idx)) in m.components().into_iter().enumerate() {
        let dirs: Vec<Matrix> = idx
            .iter()
            .map(|&b| {
                let cols: Vec<Vec<Scalar>> = (0..n).map(|i| m.action(i).col(b)).collect();
                Matrix::from_columns(f, m.dim(), &cols)
            })
            .collect();
        let space = AffineMatrixSpace::new(Matrix::zeros(f, m.dim(), n), dirs)?;
        match find_member(&space, RankTarget::FullRowRank, seed.wrapping_add(t as u64)) {
            SearchOutcome::Found(_) => return Ok(Decision::Yes),
            SearchOutcome::ProvenNone => {}
            SearchOutcome::BudgetExhausted { .. } => undecided = true,
        }
    }
    Ok(if undecided {
        Decision::Undecided
    } else {
        Decision::No
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactla::Field;
    use crate::gmod::arith::{direct_sum, free_module, quotient, regular_module};
    use crate::samples;
    use crate::DEFAULT_SEED;

    #[test]
    fn ring_is_free_of_rank_one() {
        let r = Arc::new(samples::dual_numbers(Field::Rational));
        let rep = freeness(&regular_module(&r), DEFAULT_SEED).unwrap();
        assert_eq!(rep.free, Decision::Yes);
        assert_eq!(rep.rank, Some(1));
    }

    #[test]
    fn residue_field_is_not_free() {
        let r = Arc::new(samples::dual_numbers(Field::Prime(3)));
        let rr = regular_module(&r);
        let sp = generated_submodule(&rr, &[rr.basis_vector(1)]).unwrap();
        let k = quotient(&rr, &sp).unwrap().target().clone();
        assert_eq!(freeness(&k, DEFAULT_SEED).unwrap().free, Decision::No);
        assert_eq!(is_monogeneous(&k, DEFAULT_SEED).unwrap(), Decision::Yes);
    }

    #[test]
    fn shifted_free_module_is_recognised() {
        let r = Arc::new(samples::truncated_polynomial(Field::Rational, 3));
        let g = r.group().clone();
        let f = free_module(
            &r,
            &[g.element(vec![0]).unwrap(), g.element(vec![2]).unwrap()],
        );
        let rep = freeness(&f, DEFAULT_SEED).unwrap();
        assert_eq!(rep.free, Decision::Yes);
        assert_eq!(rep.rank, Some(2));
        let ds = direct_sum(&[&f, &regular_module(&r)]).unwrap();
        assert_eq!(
            is_monogeneous(&ds.module, DEFAULT_SEED).unwrap(),
            Decision::No
        );
    }
}
