use std::collections::BTreeMap;

use serde::Serialize;

use crate::abgroups::{GroupElement, GroupHom};
use crate::gfunct::coarsen_module;
use crate::gmod::{graded_radical, image_space, kernel, FreeSpec, GradedModule, ModuleMorphism};
use crate::{Error, Result};

use super::cover::{dual, free_cover, is_injective, is_projective};

/// Largest supported cutoff.
pub const MAX_CUTOFF: usize = 32;
/// Cutoff used when none is given.
pub const DEFAULT_CUTOFF: usize = 8;

pub type BettiTable = Vec<BTreeMap<GroupElement, usize>>;

#[derive(Clone, Debug)]
pub struct ResolutionStep {
    pub spec: FreeSpec,
    pub generator_degrees: Vec<GroupElement>,
    /// `F_i → F_{i−1}` (or `F_0 → M`).
    pub map: ModuleMorphism,
    /// Inclusion of `ker(map)` into `F_i`.
    pub kernel: ModuleMorphism,
}

/// Free resolution `… → F_1 → F_0 → M → 0`, computed through step `cutoff`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub target: GradedModule,
    pub steps: Vec<ResolutionStep>,
    pub cutoff: usize,
    pub minimal: bool,
    /// The last kernel computed is zero.
    pub terminated: bool,
}

pub fn resolution(m: &GradedModule, cutoff: usize, minimal: bool) -> Result<FreeResolution> {
    if cutoff > MAX_CUTOFF {
        return Err(Error::SizeGuard {
            what: "resolution cutoff".into(),
            limit: MAX_CUTOFF as u64,
        });
    }
    let mut steps: Vec<ResolutionStep> = Vec::new();
    let mut current = m.clone();
    let mut into_previous: Option<ModuleMorphism> = None;
    let mut terminated = false;
    for _ in 0..=cutoff {
        if current.is_zero() {
            terminated = true;
            break;
        }
        let cover = free_cover(&current, minimal)?;
        let map = match &into_previous {
            None => cover.map.clone(),
            Some(incl) => incl.compose(&cover.map)?,
        };
        let ker = kernel(&cover.map);
        steps.push(ResolutionStep {
            spec: cover.spec,
            generator_degrees: cover.generator_degrees,
            map,
            kernel: ker.clone(),
        });
        current = ker.source().clone();
        into_previous = Some(ker);
    }
    if current.is_zero() {
        terminated = true;
    }
    Ok(FreeResolution {
        target: m.clone(),
        steps,
        cutoff,
        minimal,
        terminated,
    })
}

impl FreeResolution {
    pub fn betti(&self) -> BettiTable {
        self.steps
            .iter()
            .map(|s| {
                let mut row = BTreeMap::new();
                for d in &s.generator_degrees {
                    *row.entry(d.clone()).or_insert(0) += 1;
                }
                row
            })
            .collect()
    }

    /// Length when the resolution terminated within the cutoff.
    pub fn length(&self) -> Option<usize> {
        self.terminated.then(|| self.steps.len().saturating_sub(1))
    }

    /// `d_i ∘ d_{i+1} = 0` and `rank d_{i+1} = dim ker d_i` at every step.
    pub fn is_exact(&self) -> bool {
        if let Some(first) = self.steps.first() {
            if !first.map.is_epi() {
                return false;
            }
        }
        self.steps.windows(2).all(|w| {
            let composite = w[0].map.compose(&w[1].map);
            composite.map(|c| c.matrix().is_zero()).unwrap_or(false)
                && image_space(&w[1].map).dim() == w[0].kernel.source().dim()
        })
    }

    /// Every differential lands in `J·F` (no unit entries).
    pub fn is_minimal(&self) -> bool {
        self.steps
            .iter()
            .skip(1)
            .all(|s| graded_radical(s.map.target()).contains_space(&image_space(&s.map)))
    }

    /// `Ω^n`: `M` for `n = 0`, else the kernel of step `n − 1`.
    pub fn syzygy(&self, n: usize) -> Option<GradedModule> {
        if n == 0 {
            return Some(self.target.clone());
        }
        self.steps.get(n - 1).map(|s| s.kernel.source().clone())
    }
}

/// Betti table as text, one row per step.
pub fn betti_text(table: &BettiTable) -> String {
    let mut degrees: Vec<&GroupElement> = table.iter().flat_map(|r| r.keys()).collect();
    degrees.sort();
    degrees.dedup();
    let labels: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
    let width = labels.iter().map(|l| l.len()).max().unwrap_or(1).max(3);
    let mut out = format!("{:>5}", "step");
    for l in &labels {
        out.push_str(&format!(" {l:>width$}"));
    }
    out.push('\n');
    for (i, row) in table.iter().enumerate() {
        out.push_str(&format!("{i:>5}"));
        for d in &degrees {
            let v = row.get(*d).copied().unwrap_or(0);
            let cell = if v == 0 {
                ".".to_string()
            } else {
                v.to_string()
            };
            out.push_str(&format!(" {cell:>width$}"));
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DimensionKind {
    Projective,
    Injective,
    Flat,
}

/// Serialized as the number itself, or as the string `"≥n"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimensionValue {
    Exact(usize),
    /// Not decided within the cutoff; the dimension is at least this.
    AtLeast(usize),
}

impl std::fmt::Display for DimensionValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DimensionValue::Exact(n) => write!(f, "{n}"),
            DimensionValue::AtLeast(n) => write!(f, "≥{n}"),
        }
    }
}

impl Serialize for DimensionValue {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DimensionValue::Exact(n) => ser.serialize_u64(*n as u64),
            DimensionValue::AtLeast(_) => ser.serialize_str(&self.to_string()),
        }
    }
}

impl DimensionValue {
    /// `self ≤ other` as far as the reports decide; `None` when unknown.
    pub fn le(self, other: DimensionValue) -> Option<bool> {
        match (self, other) {
            (DimensionValue::Exact(a), DimensionValue::Exact(b)) => Some(a <= b),
            (DimensionValue::Exact(a), DimensionValue::AtLeast(b)) => (a <= b).then_some(true),
            (DimensionValue::AtLeast(a), DimensionValue::Exact(b)) => (a > b).then_some(false),
            (DimensionValue::AtLeast(_), DimensionValue::AtLeast(_)) => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub kind: DimensionKind,
    pub value: DimensionValue,
    pub cutoff: usize,
}

/// Projective dimension: the least `n ≤ cutoff` with `Ω^n` projective.
fn projective_dimension(m: &GradedModule, cutoff: usize) -> Result<DimensionValue> {
    let res = resolution(m, cutoff, true)?;
    for n in 0..=cutoff {
        match res.syzygy(n) {
            Some(k) => {
                if is_projective(&k)? {
                    return Ok(DimensionValue::Exact(n));
                }
            }
            None => return Ok(DimensionValue::Exact(n.saturating_sub(1))),
        }
    }
    Ok(DimensionValue::AtLeast(cutoff))
}

pub fn dimension(m: &GradedModule, kind: DimensionKind, cutoff: usize) -> Result<DimensionReport> {
    let value = match kind {
        DimensionKind::Projective | DimensionKind::Flat => projective_dimension(m, cutoff)?,
        DimensionKind::Injective => projective_dimension(&dual(m), cutoff)?,
    };
    Ok(DimensionReport {
        kind,
        value,
        cutoff,
    })
}

/// Injective dimension from an injective coresolution built with the
/// cogenerator: `M ↪ ⊕ E(shift)`, then the cokernel, and so on.
pub fn injective_dimension_direct(m: &GradedModule, cutoff: usize) -> Result<DimensionValue> {
    let mut current = m.clone();
    for n in 0..=cutoff {
        if current.is_zero() {
            return Ok(DimensionValue::Exact(n.saturating_sub(1)));
        }
        if is_injective(&current)? {
            return Ok(DimensionValue::Exact(n));
        }
        let hull = super::cover::injective_hull(&current)?;
        current = crate::gmod::cokernel(&hull).target().clone();
    }
    Ok(DimensionValue::AtLeast(cutoff))
}

/// Betti table pushed along `ψ`.
pub fn push_betti(table: &BettiTable, psi: &GroupHom) -> BettiTable {
    table
        .iter()
        .map(|row| {
            let mut out = BTreeMap::new();
            for (d, c) in row {
                *out.entry(psi.apply(d)).or_insert(0) += c;
            }
            out
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionPair {
    pub fine: DimensionValue,
    pub coarse: DimensionValue,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoarsenComparison {
    pub pd: DimensionPair,
    pub fd: DimensionPair,
    pub id: Option<DimensionPair>,
    #[serde(serialize_with = "crate::serhelp::betti")]
    pub betti_fine: BettiTable,
    #[serde(serialize_with = "crate::serhelp::betti")]
    pub betti_coarse: BettiTable,
    pub betti_equal: bool,
    pub all_equal: bool,
    pub note: Option<&'static str>,
}

fn pair(fine: DimensionValue, coarse: DimensionValue) -> DimensionPair {
    DimensionPair {
        fine,
        coarse,
        equal: fine == coarse,
    }
}

/// pd, fd (and id when `ker ψ` is finite) and Betti tables of `M` and `M_[ψ]`.
pub fn coarsen_dimension_compare(
    m: &GradedModule,
    psi: &GroupHom,
    cutoff: usize,
) -> Result<CoarsenComparison> {
    let coarse = coarsen_module(m, psi)?;
    let pd = pair(
        dimension(m, DimensionKind::Projective, cutoff)?.value,
        dimension(&coarse, DimensionKind::Projective, cutoff)?.value,
    );
    let fd = pair(
        dimension(m, DimensionKind::Flat, cutoff)?.value,
        dimension(&coarse, DimensionKind::Flat, cutoff)?.value,
    );
    let (id, note) = if psi.kernel().finite {
        (
            Some(pair(
                dimension(m, DimensionKind::Injective, cutoff)?.value,
                dimension(&coarse, DimensionKind::Injective, cutoff)?.value,
            )),
            None,
        )
    } else {
        (
            None,
            Some("kernel of ψ is infinite; injective dimension not compared"),
        )
    };
    let betti_fine = resolution(m, cutoff, true)?.betti();
    let betti_coarse = resolution(&coarse, cutoff, true)?.betti();
    let betti_equal = push_betti(&betti_fine, psi) == betti_coarse;

    let all_equal = pd.equal && fd.equal && id.as_ref().is_none_or(|p| p.equal) && betti_equal;
    Ok(CoarsenComparison {
        pd,
        fd,
        id,
        betti_fine,
        betti_coarse,
        betti_equal,
        all_equal,
        note,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::abgroups::FGAbelianGroup;
    use crate::exactla::Field;
    use crate::gmod::{direct_sum, generated_submodule, quotient, regular_module};
    use crate::samples;

    fn residue() -> GradedModule {
        let r = Arc::new(samples::dual_numbers(Field::Rational));
        let rr = regular_module(&r);
        let sp = generated_submodule(&rr, &[rr.basis_vector(1)]).unwrap();
        quotient(&rr, &sp).unwrap().target().clone()
    }

    #[test]
    fn residue_field_resolution() {
        let k = residue();
        let res = resolution(&k, 5, true).unwrap();
        assert!(res.is_exact());
        assert!(res.is_minimal());
        let betti = res.betti();
        assert_eq!(betti.len(), 6);
        let z = k.group();
        for (i, row) in betti.iter().enumerate() {
            let expected: BTreeMap<_, _> = [(z.element(vec![i as i64]).unwrap(), 1)]
                .into_iter()
                .collect();
            assert_eq!(row, &expected);
        }
        assert!(!betti_text(&betti).is_empty());
    }

    #[test]
    fn ring_resolution_has_length_zero() {
        let r = Arc::new(samples::dual_numbers(Field::Rational));
        let res = resolution(&regular_module(&r), 4, true).unwrap();
        assert_eq!(res.length(), Some(0));
    }

    #[test]
    fn betti_is_additive() {
        let k = residue();
        let r = k.algebra().clone();
        let rr = regular_module(&r);
        let s = direct_sum(&[&k, &rr]).unwrap().module;
        let bk = resolution(&k, 3, true).unwrap().betti();
        let bs = resolution(&s, 3, true).unwrap().betti();
        assert_eq!(bs[0].values().sum::<usize>(), 2);
        assert_eq!(&bs[1..], &bk[1..]);
    }

    #[test]
    fn dimensions_of_residue_field() {
        let k = residue();
        for kind in [
            DimensionKind::Projective,
            DimensionKind::Flat,
            DimensionKind::Injective,
        ] {
            assert_eq!(
                dimension(&k, kind, 6).unwrap().value,
                DimensionValue::AtLeast(6)
            );
        }
        let rr = regular_module(k.algebra());
        assert_eq!(
            dimension(&rr, DimensionKind::Injective, 6).unwrap().value,
            DimensionValue::Exact(0)
        );
        assert_eq!(
            injective_dimension_direct(&rr, 6).unwrap(),
            DimensionValue::Exact(0)
        );
    }

    #[test]
    fn coarsening_keeps_dimensions() {
        let k = residue();
        let z = k.group().clone();
        let z2 = FGAbelianGroup::cyclic(2);
        let psi = GroupHom::from_images(z, z2.clone(), &[z2.gen(0)]).unwrap();
        let cmp = coarsen_dimension_compare(&k, &psi, 6).unwrap();
        assert!(cmp.all_equal);
        assert!(cmp.id.is_none());
    }
}
