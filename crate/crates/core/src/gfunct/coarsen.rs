use std::sync::Arc;

use serde::Serialize;

use crate::abgroups::{GroupElement, GroupHom};
use crate::exactla::Scalar;
use crate::gcore::{GradedAlgebra, RingClass};
use crate::gmod::{GradedModule, ModuleMorphism};
use crate::{Decision, Error, Result};

fn check_epi(psi: &GroupHom, group: &crate::abgroups::FGAbelianGroup) -> Result<()> {
    if psi.source() != group {
        return Err(Error::GroupMismatch(
            "ψ must start at the grading group".into(),
        ));
    }
    if !psi.is_epi() {
        return Err(Error::NotEpimorphism);
    }
    Ok(())
}

fn map_degrees(psi: &GroupHom, degrees: &[GroupElement]) -> Vec<GroupElement> {
    degrees.iter().map(|d| psi.apply(d)).collect()
}

/// `R_[ψ]`: same algebra, degrees pushed along the epimorphism `ψ`.
pub fn coarsen_algebra(r: &GradedAlgebra, psi: &GroupHom) -> Result<GradedAlgebra> {
    check_epi(psi, r.group())?;
    r.regraded(psi.target().clone(), map_degrees(psi, r.degrees()))
}

/// `M_[ψ]` over `R_[ψ]`.
pub fn coarsen_module(m: &GradedModule, psi: &GroupHom) -> Result<GradedModule> {
    let algebra = Arc::new(coarsen_algebra(m.algebra(), psi)?);
    m.regraded(algebra, map_degrees(psi, m.degrees()))
}

pub fn coarsen_morphism(u: &ModuleMorphism, psi: &GroupHom) -> Result<ModuleMorphism> {
    let source = coarsen_module(u.source(), psi)?;
    let target = coarsen_module(u.target(), psi)?;
    ModuleMorphism::new(source, target, u.matrix().clone())
}

/// Classification before and after coarsening, with the kernel type of `ψ`.
#[derive(Clone, Debug, Serialize)]
pub struct CoarseningReport {
    pub fine: RingClass,
    pub coarse: RingClass,
    pub kernel_torsionfree: bool,
    pub kernel_finite: bool,
    /// `entire ⇒ entire` and `reduced ⇒ reduced` hold for this pair.
    pub entire_preserved: bool,
    pub reduced_preserved: bool,
    /// Every flag of the coarse ring is reflected by the fine ring.
    pub reflected: bool,
    /// Nonzero nilpotent element homogeneous for the coarse grading.
    #[serde(serialize_with = "crate::serhelp::opt_scalars")]
    pub coarse_nilpotent: Option<Vec<Scalar>>,
}

fn implies(a: Decision, b: Decision) -> bool {
    !a.is_yes() || b.is_yes()
}

pub fn coarsening_report(r: &GradedAlgebra, psi: &GroupHom) -> Result<CoarseningReport> {
    let coarse_ring = coarsen_algebra(r, psi)?;
    let fine = r.classify_ring();
    let coarse = coarse_ring.classify_ring();
    let kernel = psi.kernel();
    let coarse_nilpotent = if coarse_ring.field().is_finite() && coarse.reduced.is_no() {
        nilpotent_homogeneous(&coarse_ring)
    } else {
        None
    };
    Ok(CoarseningReport {
        entire_preserved: implies(fine.entire, coarse.entire),
        reduced_preserved: implies(fine.reduced, coarse.reduced),
        reflected: implies(coarse.simple, fine.simple)
            && implies(coarse.entire, fine.entire)
            && implies(coarse.reduced, fine.reduced),
        kernel_torsionfree: kernel.torsionfree,
        kernel_finite: kernel.finite,
        fine,
        coarse,
        coarse_nilpotent,
    })
}

fn nilpotent_homogeneous(r: &GradedAlgebra) -> Option<Vec<Scalar>> {
    let mut found = None;
    r.for_each_homogeneous(|_, x| {
        if r.classify_element(x).nilpotent {
            found = Some(x.to_vec());
            return false;
        }
        true
    });
    found
}

/// Comparison of the homogeneous elements of `R` and `R_[ψ]`.
#[derive(Clone, Debug, Serialize)]
pub struct HomogeneousComparison {
    pub equal: bool,
    pub method: &'static str,
    /// Element homogeneous after coarsening but not before.
    #[serde(serialize_with = "crate::serhelp::opt_scalars")]
    pub witness: Option<Vec<Scalar>>,
    pub elements_checked: u64,
}

/// Over a finite field every element is inspected; otherwise the sets are
/// compared through pairs of basis vectors whose degrees merge under `ψ`
/// (the sets differ exactly when such a pair exists).
pub fn compare_homogeneous_sets(
    r: &GradedAlgebra,
    psi: &GroupHom,
) -> Result<HomogeneousComparison> {
    let coarse = coarsen_algebra(r, psi)?;
    let f = r.field();
    if let Some(size) = f.size() {
        let total = (0..r.dim()).try_fold(1u64, |acc, _| acc.checked_mul(size));
        if let Some(total) = total.filter(|&t| t <= crate::gcore::EXHAUSTIVE_HOMOGENEOUS_LIMIT) {
            let elems = f.elements().expect("finite");
            let mut witness = None;
            for idx in 0..total {
                let mut rest = idx;
                let x: Vec<Scalar> = (0..r.dim())
                    .map(|_| {
                        let c = elems[(rest % size) as usize].clone();
                        rest /= size;
                        c
                    })
                    .collect();
                if coarse.is_homogeneous(&x) != r.is_homogeneous(&x) {
                    witness = Some(x);
                    break;
                }
            }
            return Ok(HomogeneousComparison {
                equal: witness.is_none(),
                method: "exhaustive",
                witness,
                elements_checked: total,
            });
        }
    }
    let mut witness = None;
    'outer: for i in 0..r.dim() {
        for j in i + 1..r.dim() {
            if r.degree(i) != r.degree(j) && coarse.degree(i) == coarse.degree(j) {
                let mut x = r.zero();
                x[i] = f.one();
                x[j] = f.one();
                witness = Some(x);
                break 'outer;
            }
        }
    }
    Ok(HomogeneousComparison {
        equal: witness.is_none(),
        method: "basis pairs",
        witness,
        elements_checked: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroups::FGAbelianGroup;
    use crate::exactla::Field;
    use crate::samples;

    #[test]
    fn identity_coarsening_is_equal() {
        let r = samples::dual_numbers(Field::Rational);
        let id = GroupHom::identity(r.group());
        assert_eq!(coarsen_algebra(&r, &id).unwrap(), r);
    }

    #[test]
    fn group_algebra_loses_reducedness() {
        let r = samples::cyclic_group_algebra(Field::Prime(2), 2);
        let psi = GroupHom::zero(r.group(), &FGAbelianGroup::trivial());
        let rep = coarsening_report(&r, &psi).unwrap();
        assert!(rep.fine.simple.is_yes());
        assert!(rep.coarse.reduced.is_no());
        let x = rep.coarse_nilpotent.unwrap();
        assert_eq!(x, vec![Field::Prime(2).one(), Field::Prime(2).one()]);
    }

    #[test]
    fn gaussian_rationals_gain_homogeneous_elements() {
        let r = samples::gaussian_rationals();
        let psi = GroupHom::zero(r.group(), &FGAbelianGroup::trivial());
        let cmp = compare_homogeneous_sets(&r, &psi).unwrap();
        assert!(!cmp.equal);
        assert!(cmp.witness.is_some());
    }

    #[test]
    fn coarsening_is_functorial() {
        let r = samples::dual_numbers(Field::Rational);
        let z = r.group().clone();
        let z2 = FGAbelianGroup::cyclic(2);
        let to_z2 = GroupHom::from_images(z.clone(), z2.clone(), &[z2.gen(0)]).unwrap();
        let to_0 = GroupHom::zero(&z2, &FGAbelianGroup::trivial());
        let two_step = coarsen_algebra(&coarsen_algebra(&r, &to_z2).unwrap(), &to_0).unwrap();
        let one_step = coarsen_algebra(&r, &to_0.compose(&to_z2).unwrap()).unwrap();
        assert_eq!(two_step, one_step);
    }
}
