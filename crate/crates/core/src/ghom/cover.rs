use std::sync::Arc;

use serde::Serialize;

use crate::abgroups::GroupElement;
use crate::exactla::{Matrix, Scalar, Subspace};
use crate::gmod::{
    free_map_matrix, free_module, generated_submodule, graded_hom, graded_radical, hom_component,
    regular_module, FreeSpec, GradedModule, HomModule, ModuleMorphism,
};
use crate::{Error, Result};

/// A surjection from a free module onto `M`.
#[derive(Clone, Debug)]
pub struct FreeCover {
    pub spec: FreeSpec,
    pub generator_degrees: Vec<GroupElement>,
    pub generators: Vec<Vec<Scalar>>,
    pub map: ModuleMorphism,
}

/// Homogeneous generators of `M`.
///
/// Minimal mode scans the basis vectors by degree and index, keeping each
/// one outside `J·M + R·(kept)`; the kept vectors lift a generating set of
/// `M/J·M`. Otherwise every basis vector is used.
pub fn free_cover(m: &GradedModule, minimal: bool) -> Result<FreeCover> {
    let mut generators = Vec::new();
    let mut degrees = Vec::new();
    if minimal {
        let rad = graded_radical(m);
        let mut span = rad.clone();
        for (d, idx) in m.components() {
            for j in idx {
                let v = m.basis_vector(j);
                if span.contains(&v) {
                    continue;
                }
                generators.push(v);
                degrees.push(d.clone());
                let sub = generated_submodule(m, &generators)?;
                span = sub.sum(&rad);
            }
        }
    } else {
        for (d, idx) in m.components() {
            for j in idx {
                generators.push(m.basis_vector(j));
                degrees.push(d.clone());
            }
        }
    }
    let free = free_module(m.algebra(), &degrees);
    let map = ModuleMorphism::new(free, m.clone(), free_map_matrix(m, &generators))?;
    debug_assert!(map.is_epi());
    Ok(FreeCover {
        spec: FreeSpec::from_generator_degrees(m.group(), &degrees),
        generator_degrees: degrees,
        generators,
        map,
    })
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.to_rows().into_iter().flatten().collect()
}

/// Degree-0 morphism `σ: Q → P` with `α ∘ σ = β`, if one exists
/// (`α: P → M`, `β: Q → M`).
pub fn lift_through(
    beta: &ModuleMorphism,
    alpha: &ModuleMorphism,
) -> Result<Option<ModuleMorphism>> {
    if beta.target().dim() != alpha.target().dim() {
        return Err(Error::DimensionMismatch(
            "lift needs a common target".into(),
        ));
    }
    let q = beta.source();
    let p = alpha.source();
    let zero = q.group().zero();
    let basis = hom_component(q, p, &zero)?;
    let f = q.field();
    let target = flatten(beta.matrix());
    if basis.is_empty() {
        return Ok(if target.iter().all(num_traits::Zero::is_zero) {
            Some(ModuleMorphism::zero(q, p))
        } else {
            None
        });
    }
    let cols: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|b| flatten(&alpha.matrix().mul(b).expect("shape")))
        .collect();
    let system = Matrix::from_columns(f, target.len(), &cols);
    let Some(coeffs) = system.solve(&target)? else {
        return Ok(None);
    };
    let mut sigma = Matrix::zeros(f, p.dim(), q.dim());
    for (c, b) in coeffs.iter().zip(&basis) {
        sigma = sigma.add(&b.scale(c))?;
    }
    Ok(Some(ModuleMorphism::new_unchecked(
        q.clone(),
        p.clone(),
        sigma,
    )))
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectivityReport {
    pub projective: bool,
    pub cover_rank: usize,
}

/// Projective exactly when the minimal free cover splits.
pub fn projectivity(m: &GradedModule) -> Result<(ProjectivityReport, Option<ModuleMorphism>)> {
    let cover = free_cover(m, true)?;
    let id = ModuleMorphism::identity(m);
    let section = lift_through(&id, &cover.map)?;
    Ok((
        ProjectivityReport {
            projective: section.is_some(),
            cover_rank: cover.generators.len(),
        },
        section,
    ))
}

pub fn is_projective(m: &GradedModule) -> Result<bool> {
    Ok(projectivity(m)?.0.projective)
}

/// `M^∨` with `(M^∨)_g = (M_{−g})^*` and the transposed action.
pub fn dual(m: &GradedModule) -> GradedModule {
    let g = m.group();
    let degrees = m.degrees().iter().map(|d| g.neg(d)).collect();
    let action = m.actions().iter().map(Matrix::transpose).collect();
    GradedModule::from_parts_unchecked(m.algebra().clone(), degrees, action)
}

/// `u^∨: N^∨ → M^∨`.
pub fn dual_morphism(u: &ModuleMorphism) -> Result<ModuleMorphism> {
    ModuleMorphism::new(dual(u.target()), dual(u.source()), u.matrix().transpose())
}

/// `E = R^∨`.
pub fn injective_cogenerator(r: &Arc<crate::gcore::GradedAlgebra>) -> GradedModule {
    dual(&regular_module(r))
}

pub fn is_injective(m: &GradedModule) -> Result<bool> {
    is_projective(&dual(m))
}

/// Flat is tested as projective (finitely generated modules over a
/// finite-dimensional algebra); see [`lambek_check`].
pub fn is_flat(m: &GradedModule) -> Result<bool> {
    is_projective(m)
}

/// `HOM(M, E)`.
pub fn hom_into_cogenerator(m: &GradedModule) -> Result<HomModule> {
    graded_hom(m, &injective_cogenerator(m.algebra()))
}

/// `flat(M) ⟺ injective(HOM(M, E))`, computed both ways.
#[derive(Clone, Debug, Serialize)]
pub struct LambekCheck {
    pub flat: bool,
    pub hom_injective: bool,
    pub agrees: bool,
}

pub fn lambek_check(m: &GradedModule) -> Result<LambekCheck> {
    let flat = is_flat(m)?;
    let hom_injective = is_injective(&hom_into_cogenerator(m)?.module)?;
    Ok(LambekCheck {
        flat,
        hom_injective,
        agrees: flat == hom_injective,
    })
}

/// The evaluation isomorphism `M → M^∨∨` (identity in the dual bases).
pub fn double_dual_iso(m: &GradedModule) -> Result<ModuleMorphism> {
    ModuleMorphism::new(
        m.clone(),
        dual(&dual(m)),
        Matrix::identity(m.field(), m.dim()),
    )
}

/// Whether `HOM(−, E)` separates `M`: every nonzero homogeneous basis vector
/// is detected by some map into `E`.
pub fn cogenerator_separates(m: &GradedModule) -> Result<bool> {
    let h = hom_into_cogenerator(m)?;
    let f = m.field();
    let mut rows = Vec::new();
    for map in &h.maps {
        rows.extend(map.to_rows());
    }
    if rows.is_empty() {
        return Ok(m.is_zero());
    }
    let stacked = Matrix::from_rows(f, &rows)?;
    Ok(Subspace::span(f, m.dim(), &stacked.kernel_basis()).is_zero())
}

/// `M ↪ ⊕_j E(g_j)`, `v ↦ (h_j(v))_j`, for homogeneous generators `h_j` of
/// `HOM(M, E)` of degrees `g_j`.
pub fn injective_hull(m: &GradedModule) -> Result<ModuleMorphism> {
    let e = injective_cogenerator(m.algebra());
    let h = graded_hom(m, &e)?;
    let cover = free_cover(&h.module, true)?;
    let f = m.field();
    let mut parts = Vec::new();
    let mut blocks = Vec::new();
    for (gen, deg) in cover.generators.iter().zip(&cover.generator_degrees) {
        let mut map = Matrix::zeros(f, e.dim(), m.dim());
        for (c, basis_map) in gen.iter().zip(&h.maps) {
            if !num_traits::Zero::is_zero(c) {
                map = map.add(&basis_map.scale(c))?;
            }
        }
        blocks.push(map);
        parts.push(crate::gmod::shift(&e, deg));
    }
    if parts.is_empty() {
        return Ok(ModuleMorphism::zero(m, &free_module(m.algebra(), &[])));
    }
    let refs: Vec<&GradedModule> = parts.iter().collect();
    let target = crate::gmod::direct_sum(&refs)?.module;
    let mut rows = Vec::new();
    for b in &blocks {
        rows.extend(b.to_rows());
    }
    let matrix = Matrix::from_rows(f, &rows)?;
    let iota = ModuleMorphism::new(m.clone(), target, matrix)?;
    debug_assert!(iota.is_mono());
    Ok(iota)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::gmod::{quotient, regular_module};
    use crate::samples;

    fn residue(field: Field) -> (Arc<crate::gcore::GradedAlgebra>, GradedModule) {
        let r = Arc::new(samples::dual_numbers(field));
        let rr = regular_module(&r);
        let sp = generated_submodule(&rr, &[rr.basis_vector(1)]).unwrap();
        let k = quotient(&rr, &sp).unwrap().target().clone();
        (r, k)
    }

    #[test]
    fn ring_is_projective_and_injective() {
        let r = Arc::new(samples::dual_numbers(Field::Rational));
        let rr = regular_module(&r);
        assert!(is_projective(&rr).unwrap());
        assert!(is_flat(&rr).unwrap());
        assert!(is_injective(&rr).unwrap());
    }

    #[test]
    fn residue_field_is_not_projective() {
        let (_, k) = residue(Field::Rational);
        assert!(!is_projective(&k).unwrap());
        assert_eq!(dual(&k).hilbert(), k.hilbert());
    }

    #[test]
    fn dual_of_ring_is_shifted() {
        let r = Arc::new(samples::dual_numbers(Field::Rational));
        let e = injective_cogenerator(&r);
        let z = r.group();
        let expected: Vec<_> = vec![(z.element(vec![-1]).unwrap(), 1), (z.zero(), 1)];
        assert_eq!(e.hilbert().into_iter().collect::<Vec<_>>(), expected);
        assert!(double_dual_iso(&e).unwrap().is_iso());
        assert!(cogenerator_separates(&regular_module(&r)).unwrap());
    }

    #[test]
    fn lambek_on_residue_field() {
        let (_, k) = residue(Field::Prime(2));
        assert!(lambek_check(&k).unwrap().agrees);
    }
}
