use serde::Serialize;

use crate::exactla::Matrix;
use crate::gmod::{direct_sum, image_space, kernel, GradedModule, HilbertFunction, ModuleMorphism};
use crate::{Error, Result};

use super::cover::lift_through;
use super::resolution::FreeResolution;

/// Exact `0 → K → P_{n−1} → … → P_0 → M → 0` with projective `P_i`.
#[derive(Clone, Debug)]
pub struct Truncation {
    /// `d_0: P_0 → M`, then `d_i: P_i → P_{i−1}`.
    pub maps: Vec<ModuleMorphism>,
    /// `K ↪ P_{n−1}`.
    pub kernel: ModuleMorphism,
}

impl Truncation {
    pub fn new(maps: Vec<ModuleMorphism>) -> Result<Self> {
        let last = maps
            .last()
            .ok_or_else(|| Error::Invalid("empty truncation".into()))?;
        if !maps[0].is_epi() {
            return Err(Error::Invalid("first map is not onto the module".into()));
        }
        for w in maps.windows(2) {
            let comp = w[0].compose(&w[1])?;
            if !comp.matrix().is_zero()
                || image_space(&w[1]).dim() + w[0].rank() != w[0].source().dim()
            {
                return Err(Error::Invalid("truncation is not exact".into()));
            }
        }
        let kernel = kernel(last);
        Ok(Truncation { maps, kernel })
    }

    pub fn from_resolution(res: &FreeResolution, n: usize) -> Result<Self> {
        if n == 0 || res.steps.len() < n {
            return Err(Error::Invalid(format!(
                "resolution has fewer than {n} steps"
            )));
        }
        Ok(Truncation {
            maps: res.steps[..n].iter().map(|s| s.map.clone()).collect(),
            kernel: res.steps[n - 1].kernel.clone(),
        })
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn target(&self) -> &GradedModule {
        self.maps[0].target()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SchanuelResult {
    #[serde(skip)]
    pub iso: ModuleMorphism,
    pub verified: bool,
    #[serde(serialize_with = "crate::serhelp::degree_map")]
    pub source_hilbert: HilbertFunction,
    #[serde(serialize_with = "crate::serhelp::degree_map")]
    pub target_hilbert: HilbertFunction,
}

/// Explicit graded isomorphism
/// `K ⊕ Q_{n−1} ⊕ P_{n−2} ⊕ … ≅ L ⊕ P_{n−1} ⊕ Q_{n−2} ⊕ …`.
pub fn schanuel_glue(first: &Truncation, second: &Truncation) -> Result<SchanuelResult> {
    if first.length() != second.length() {
        return Err(Error::Invalid("truncations of different lengths".into()));
    }
    if first.target() != second.target() {
        return Err(Error::Invalid(
            "truncations resolve different modules".into(),
        ));
    }
    let iso = glue(first, second)?;
    let verified = iso.is_iso()
        && ModuleMorphism::new(
            iso.source().clone(),
            iso.target().clone(),
            iso.matrix().clone(),
        )
        .is_ok();
    Ok(SchanuelResult {
        source_hilbert: iso.source().hilbert(),
        target_hilbert: iso.target().hilbert(),
        verified,
        iso,
    })
}

fn glue(first: &Truncation, second: &Truncation) -> Result<ModuleMorphism> {
    if first.length() == 1 {
        return glue_one(
            &first.maps[0],
            &first.kernel,
            &second.maps[0],
            &second.kernel,
        );
    }
    // Ω = ker(P_0 → M), Ω' = ker(Q_0 → M); first glue Ω ⊕ Q_0 ≅ Ω' ⊕ P_0.
    let omega = kernel(&first.maps[0]);
    let omega2 = kernel(&second.maps[0]);
    let theta = glue_one(&first.maps[0], &omega, &second.maps[0], &omega2)?;
    let theta_inv = theta
        .inverse()
        .ok_or_else(|| Error::Invalid("base gluing not invertible".into()))?;
    let shorter_first = shift_down(first, &omega, second.maps[0].source(), None)?;
    let shorter_second = shift_down(second, &omega2, first.maps[0].source(), Some(&theta_inv))?;
    glue(&shorter_first, &shorter_second)
}

/// From `P_• → M` build `P_1 ⊕ Q_0 → Ω ⊕ Q_0 …`, optionally composing the
/// first map with `transport`.
fn shift_down(
    t: &Truncation,
    omega: &ModuleMorphism,
    pad: &GradedModule,
    transport: Option<&ModuleMorphism>,
) -> Result<Truncation> {
    let f = pad.field();
    let p1 = t.maps[1].source();
    let d1 = corestrict_into(&t.maps[1], omega)?;
    let new_source = direct_sum(&[p1, pad])?;
    let new_target = direct_sum(&[omega.source(), pad])?;
    let m0 = Matrix::block_diag(f, &[d1.matrix(), &Matrix::identity(f, pad.dim())]);
    let mut first = ModuleMorphism::new(new_source.module.clone(), new_target.module.clone(), m0)?;
    if let Some(tr) = transport {
        first = ModuleMorphism::new(
            first.source().clone(),
            tr.target().clone(),
            tr.matrix().mul(first.matrix())?,
        )?;
    }
    let mut maps = vec![first];
    if t.length() > 2 {
        let d2 = &t.maps[2];
        let m = new_source.inclusions[0].matrix().mul(d2.matrix())?;
        maps.push(ModuleMorphism::new(
            d2.source().clone(),
            new_source.module.clone(),
            m,
        )?);
        maps.extend(t.maps[3..].iter().cloned());
    }
    let kernel = if t.length() == 2 {
        let m = new_source.inclusions[0].matrix().mul(t.kernel.matrix())?;
        ModuleMorphism::new(t.kernel.source().clone(), new_source.module.clone(), m)?
    } else {
        t.kernel.clone()
    };
    Ok(Truncation { maps, kernel })
}

/// `u: A → B` with image inside `ι: Ω ↪ B`, viewed as `A → Ω`.
fn corestrict_into(u: &ModuleMorphism, iota: &ModuleMorphism) -> Result<ModuleMorphism> {
    let m = iota
        .matrix()
        .solve_matrix(u.matrix())?
        .ok_or_else(|| Error::Invalid("map does not land in the kernel".into()))?;
    ModuleMorphism::new(u.source().clone(), iota.source().clone(), m)
}

/// Length-one case through the fibre product `X = {(p, q) : α p = β q}`:
/// `K ⊕ Q → X`, `(k, q) ↦ (ι k + σ q, q)` and `L ⊕ P → X`,
/// `(l, p) ↦ (p, κ l + τ p)`, with lifts `ασ = β`, `βτ = α`.
fn glue_one(
    alpha: &ModuleMorphism,
    iota: &ModuleMorphism,
    beta: &ModuleMorphism,
    kappa: &ModuleMorphism,
) -> Result<ModuleMorphism> {
    let f = alpha.source().field();
    let p = alpha.source();
    let q = beta.source();
    let sigma = lift_through(beta, alpha)?
        .ok_or_else(|| Error::Invalid("second cover does not lift".into()))?;
    let tau = lift_through(alpha, beta)?
        .ok_or_else(|| Error::Invalid("first cover does not lift".into()))?;
    let k = iota.source();
    let l = kappa.source();
    let left = direct_sum(&[k, q])?;
    let right = direct_sum(&[l, p])?;
    // Both embeddings land in P ⊕ Q.
    let psi1 = Matrix::vstack(
        &Matrix::hstack(iota.matrix(), sigma.matrix())?,
        &Matrix::hstack(
            &Matrix::zeros(f, q.dim(), k.dim()),
            &Matrix::identity(f, q.dim()),
        )?,
    )?;
    let psi2 = Matrix::vstack(
        &Matrix::hstack(
            &Matrix::zeros(f, p.dim(), l.dim()),
            &Matrix::identity(f, p.dim()),
        )?,
        &Matrix::hstack(kappa.matrix(), tau.matrix())?,
    )?;
    let theta = psi2
        .solve_matrix(&psi1)?
        .ok_or_else(|| Error::Invalid("fibre product embeddings disagree".into()))?;
    ModuleMorphism::new(left.module, right.module, theta)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;
    use std::sync::Arc;

    use super::*;
    use crate::exactla::Field;
    use crate::ghom::resolution;
    use crate::gmod::{
        free_map_matrix, free_module, generated_submodule, quotient, regular_module,
    };
    use crate::samples;

    fn setup() -> (Arc<crate::gcore::GradedAlgebra>, ModuleMorphism) {
        let r = Arc::new(samples::dual_numbers(Field::Rational));
        let rr = regular_module(&r);
        let sp = generated_submodule(&rr, &[rr.basis_vector(1)]).unwrap();
        (r, quotient(&rr, &sp).unwrap())
    }

    #[test]
    fn length_one_instance() {
        let (r, proj) = setup();
        let k = proj.target().clone();
        let t1 = Truncation::new(vec![proj.clone()]).unwrap();
        let z = r.group();
        let q = free_module(&r, &[z.zero(), z.element(vec![1]).unwrap()]);
        let beta_m = free_map_matrix(&k, &[k.basis_vector(0), vec![Field::Rational.zero()]]);
        let beta = ModuleMorphism::new(q, k.clone(), beta_m).unwrap();
        let t2 = Truncation::new(vec![beta]).unwrap();
        let out = schanuel_glue(&t1, &t2).unwrap();
        assert!(out.verified);
        let expected: BTreeMap<_, _> = [
            (z.zero(), 1),
            (z.element(vec![1]).unwrap(), 3),
            (z.element(vec![2]).unwrap(), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(out.source_hilbert, expected);
        assert_eq!(out.target_hilbert, expected);
    }

    #[test]
    fn length_two_minimal_against_padded() {
        let (_, proj) = setup();
        let k = proj.target().clone();
        let minimal = resolution(&k, 2, true).unwrap();
        let padded = resolution(&k, 2, false).unwrap();
        let t1 = Truncation::from_resolution(&minimal, 2).unwrap();
        let t2 = Truncation::from_resolution(&padded, 2).unwrap();
        assert!(schanuel_glue(&t1, &t2).unwrap().verified);
        let same = schanuel_glue(&t1, &t1).unwrap();
        assert!(same.verified);
    }
}
