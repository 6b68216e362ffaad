use std::sync::Arc;

use crate::abgroups::{FGAbelianGroup, GroupElement};
use crate::exactla::{vecops, Matrix, Scalar, Subspace};
use crate::gcore::{GradedAlgebra, Homogeneity};
use crate::{Error, Result};

use super::module::{GradedModule, ModuleMorphism};

/// `⊕_g R(g)^{⊕E_g}` as a sorted list of (shift, multiplicity). The summand
/// `R(g)` has its generator in degree `−g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, serde::Serialize)]
pub struct FreeSpec {
    entries: Vec<(GroupElement, usize)>,
}

impl FreeSpec {
    pub fn from_shifts(shifts: impl IntoIterator<Item = GroupElement>) -> Self {
        let mut entries: Vec<(GroupElement, usize)> = Vec::new();
        let mut all: Vec<GroupElement> = shifts.into_iter().collect();
        all.sort();
        for g in all {
            match entries.last_mut() {
                Some((h, m)) if *h == g => *m += 1,
                _ => entries.push((g, 1)),
            }
        }
        FreeSpec { entries }
    }

    /// Spec whose generators sit in the given degrees.
    pub fn from_generator_degrees(group: &FGAbelianGroup, degrees: &[GroupElement]) -> Self {
        Self::from_shifts(degrees.iter().map(|d| group.neg(d)))
    }

    pub fn entries(&self) -> &[(GroupElement, usize)] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// Generator degrees in canonical order.
    pub fn generator_degrees(&self, group: &FGAbelianGroup) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = self
            .entries
            .iter()
            .flat_map(|(g, m)| std::iter::repeat(group.neg(g)).take(*m))
            .collect();
        out.sort();
        out
    }
}

/// Free module with generators `e_j` in the given degrees. Basis vector
/// `j·dim R + i` is `x_i e_j`.
pub fn free_module(r: &Arc<GradedAlgebra>, generator_degrees: &[GroupElement]) -> GradedModule {
    let n = r.dim();
    let f = r.field();
    let g = r.group();
    let mut degrees = Vec::with_capacity(n * generator_degrees.len());
    for d in generator_degrees {
        for i in 0..n {
            degrees.push(g.add(r.degree(i), d));
        }
    }
    let blocks = generator_degrees.len();
    let action = (0..n)
        .map(|k| {
            let b = r.basis_mult(k);
            let parts: Vec<&Matrix> = std::iter::repeat(b).take(blocks).collect();
            Matrix::block_diag(f, &parts)
        })
        .collect();
    GradedModule::from_parts_unchecked(r.clone(), degrees, action)
}

/// `R` as a module over itself.
pub fn regular_module(r: &Arc<GradedAlgebra>) -> GradedModule {
    free_module(r, &[r.group().zero()])
}

/// `M(g)`: the basis vector of degree `d` gets degree `d − g`.
pub fn shift(m: &GradedModule, g: &GroupElement) -> GradedModule {
    let grp = m.group();
    let degrees = m.degrees().iter().map(|d| grp.sub(d, g)).collect();
    GradedModule::from_parts_unchecked(m.algebra().clone(), degrees, m.actions().to_vec())
}

/// Direct sum with its canonical inclusions and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: GradedModule,
    pub inclusions: Vec<ModuleMorphism>,
    pub projections: Vec<ModuleMorphism>,
}

pub fn direct_sum(parts: &[&GradedModule]) -> Result<DirectSum> {
    let Some(first) = parts.first() else {
        return Err(Error::Invalid("direct sum of no modules".into()));
    };
    let r = first.algebra().clone();
    if parts.iter().any(|p| p.algebra() != &r) {
        return Err(Error::AlgebraMismatch);
    }
    let f = r.field();
    let degrees: Vec<GroupElement> = parts
        .iter()
        .flat_map(|p| p.degrees().iter().cloned())
        .collect();
    let action = (0..r.dim())
        .map(|i| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| p.action(i)).collect();
            Matrix::block_diag(f, &blocks)
        })
        .collect();
    let module = GradedModule::from_parts_unchecked(r, degrees, action);
    let total = module.dim();
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    let mut offset = 0;
    for p in parts {
        let mut inc = Matrix::zeros(f, total, p.dim());
        inc.set_block(offset, 0, &Matrix::identity(f, p.dim()));
        projections.push(ModuleMorphism::new_unchecked(
            module.clone(),
            (*p).clone(),
            inc.transpose(),
        ));
        inclusions.push(ModuleMorphism::new_unchecked(
            (*p).clone(),
            module.clone(),
            inc,
        ));
        offset += p.dim();
    }
    Ok(DirectSum {
        module,
        inclusions,
        projections,
    })
}

/// Direct sum of two morphisms `u ⊕ v`.
pub fn sum_of_morphisms(u: &ModuleMorphism, v: &ModuleMorphism) -> Result<ModuleMorphism> {
    let s = direct_sum(&[u.source(), v.source()])?;
    let t = direct_sum(&[u.target(), v.target()])?;
    let m = Matrix::block_diag(u.matrix().field(), &[u.matrix(), v.matrix()]);
    Ok(ModuleMorphism::new_unchecked(s.module, t.module, m))
}

/// Kernel of a homogeneous linear map between graded spaces, computed
/// degree by degree so that its echelon basis is homogeneous.
pub fn graded_kernel_space(matrix: &Matrix, source_degrees: &[GroupElement]) -> Subspace {
    let f = matrix.field();
    let n = source_degrees.len();
    let mut comps: std::collections::BTreeMap<&GroupElement, Vec<usize>> = Default::default();
    for (j, d) in source_degrees.iter().enumerate() {
        comps.entry(d).or_default().push(j);
    }
    let all_rows: Vec<usize> = (0..matrix.rows()).collect();
    let mut vecs = Vec::new();
    for idx in comps.values() {
        let block = matrix.submatrix(&all_rows, idx);
        for k in block.kernel_basis() {
            let mut v = vecops::zeros(n);
            for (c, &j) in k.iter().zip(idx) {
                v[j] = c.clone();
            }
            vecs.push(v);
        }
    }
    Subspace::span(f, n, &vecs)
}

/// Submodule generated by homogeneous elements.
pub fn generated_submodule(m: &GradedModule, gens: &[Vec<Scalar>]) -> Result<Subspace> {
    let mut vecs = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        if m.homogeneity(g) == Homogeneity::Mixed {
            return Err(Error::NotHomogeneous(format!("submodule generator {k}")));
        }
        for a in m.actions() {
            vecs.push(a.mul_vec(g)?);
        }
    }
    Ok(Subspace::span(m.field(), m.dim(), &vecs))
}

/// Whether a subspace is a graded submodule.
pub fn is_graded_submodule(m: &GradedModule, space: &Subspace) -> bool {
    space
        .basis()
        .iter()
        .all(|v| m.homogeneity(v).is_homogeneous())
        && space.basis().iter().all(|v| {
            m.actions()
                .iter()
                .all(|a| space.contains(&a.mul_vec(v).expect("shape")))
        })
}

/// A graded submodule as a module in its echelon basis, with the inclusion.
pub fn submodule(m: &GradedModule, space: &Subspace) -> Result<ModuleMorphism> {
    if !is_graded_submodule(m, space) {
        return Err(Error::Invalid("subspace is not a graded submodule".into()));
    }
    let f = m.field();
    let basis = space.basis();
    let k = basis.len();
    let degrees: Vec<GroupElement> = basis
        .iter()
        .map(|v| match m.homogeneity(v) {
            Homogeneity::Degree(d) => d,
            _ => unreachable!("echelon basis of a graded subspace is homogeneous"),
        })
        .collect();
    let action = m
        .actions()
        .iter()
        .map(|a| {
            let cols: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|v| space.coords(&a.mul_vec(v).expect("shape")).expect("closed"))
                .collect();
            Matrix::from_columns(f, k, &cols)
        })
        .collect();
    let sub = GradedModule::from_parts_unchecked(m.algebra().clone(), degrees, action);
    let inc = Matrix::from_columns(f, m.dim(), basis);
    Ok(ModuleMorphism::new_unchecked(sub, m.clone(), inc))
}

/// `M / N` for a graded submodule `N`, with the projection. The quotient
/// basis is given by the classes of the non-pivot basis vectors of `M`.
pub fn quotient(m: &GradedModule, space: &Subspace) -> Result<ModuleMorphism> {
    if !is_graded_submodule(m, space) {
        return Err(Error::Invalid("subspace is not a graded submodule".into()));
    }
    let f = m.field();
    let kept = space.complement_indices();
    let q = kept.len();
    let project = |v: &[Scalar]| -> Vec<Scalar> {
        let red = space.reduce(v);
        kept.iter().map(|&i| red[i].clone()).collect()
    };
    let degrees = kept.iter().map(|&i| m.degree(i).clone()).collect();
    let action = m
        .actions()
        .iter()
        .map(|a| {
            let cols: Vec<Vec<Scalar>> = kept.iter().map(|&c| project(&a.col(c))).collect();
            Matrix::from_columns(f, q, &cols)
        })
        .collect();
    let quo = GradedModule::from_parts_unchecked(m.algebra().clone(), degrees, action);
    let proj_cols: Vec<Vec<Scalar>> = (0..m.dim()).map(|j| project(&m.basis_vector(j))).collect();
    let proj = Matrix::from_columns(f, q, &proj_cols);
    Ok(ModuleMorphism::new_unchecked(m.clone(), quo, proj))
}

pub fn kernel(u: &ModuleMorphism) -> ModuleMorphism {
    let space = graded_kernel_space(u.matrix(), u.source().degrees());
    submodule(u.source(), &space).expect("kernel of a morphism is a graded submodule")
}

pub fn image_space(u: &ModuleMorphism) -> Subspace {
    Subspace::span(u.target().field(), u.target().dim(), &u.matrix().columns())
}

pub fn image(u: &ModuleMorphism) -> ModuleMorphism {
    submodule(u.target(), &image_space(u)).expect("image of a morphism is a graded submodule")
}

pub fn cokernel(u: &ModuleMorphism) -> ModuleMorphism {
    quotient(u.target(), &image_space(u)).expect("image of a morphism is a graded submodule")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::samples;

    fn z(v: i64) -> GroupElement {
        FGAbelianGroup::free(1).element(vec![v]).unwrap()
    }

    #[test]
    fn shifted_ring_hilbert() {
        let r = Arc::new(samples::dual_numbers(Field::Rational));
        let s = shift(&regular_module(&r), &z(1));
        let h: Vec<(GroupElement, usize)> = s.hilbert().into_iter().collect();
        assert_eq!(h, vec![(z(-1), 1), (z(0), 1)]);
        assert_eq!(shift(&s, &z(-1)), regular_module(&r));
    }

    #[test]
    fn kernel_of_residue_map() {
        let r = Arc::new(samples::dual_numbers(Field::Rational));
        let rr = regular_module(&r);
        let x = rr.basis_vector(1);
        let sp = generated_submodule(&rr, &[x]).unwrap();
        let p = quotient(&rr, &sp).unwrap();
        let k = kernel(&p);
        assert_eq!(
            k.source().hilbert().into_iter().collect::<Vec<_>>(),
            vec![(z(1), 1)]
        );
        let im = image(&p);
        assert_eq!(im.source().dim() + k.source().dim(), rr.dim());
    }

    #[test]
    fn free_spec_round_trip() {
        let g = FGAbelianGroup::free(1);
        let spec = FreeSpec::from_generator_degrees(&g, &[z(1), z(0), z(1)]);
        assert_eq!(spec.rank(), 3);
        assert_eq!(spec.generator_degrees(&g), vec![z(0), z(1), z(1)]);
        assert_eq!(spec.entries()[0], (z(-1), 2));
    }
}
