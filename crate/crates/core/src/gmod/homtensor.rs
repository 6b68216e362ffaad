use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::abgroups::GroupElement;
use crate::exactla::{BasisCoords, Matrix, Scalar};
use crate::{Error, Result};

use super::arith::{is_graded_submodule, quotient};
use super::module::{GradedModule, ModuleMorphism};

/// Largest number of unknowns in a single equivariance system.
pub const HOM_UNKNOWN_LIMIT: usize = 1 << 14;

/// Basis of `Hom(M, N(g))`: degree-preserving `R`-linear maps `M → N(g)`,
/// i.e. maps sending `M_h` into `N_{h+g}`. Each is an `N × M` matrix.
pub fn hom_component(m: &GradedModule, n: &GradedModule, g: &GroupElement) -> Result<Vec<Matrix>> {
    hom_component_constrained(m, n, g, &[])
}

/// Like [`hom_component`], also imposing linear conditions. Each extra
/// condition is a coefficient matrix `C` (same shape as the unknown map)
/// requiring `Σ C_{kj} F_{kj} = 0`.
pub fn hom_component_constrained(
    m: &GradedModule,
    n: &GradedModule,
    g: &GroupElement,
    extra: &[Matrix],
) -> Result<Vec<Matrix>> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let grp = m.group();
    let (rows, cols) = (n.dim(), m.dim());
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    let mut index = vec![usize::MAX; rows * cols];
    for k in 0..rows {
        for j in 0..cols {
            if n.degree(k) == &grp.add(m.degree(j), g) {
                index[k * cols + j] = unknowns.len();
                unknowns.push((k, j));
            }
        }
    }
    if unknowns.len() > HOM_UNKNOWN_LIMIT {
        return Err(Error::SizeGuard {
            what: "Hom equivariance system".into(),
            limit: HOM_UNKNOWN_LIMIT as u64,
        });
    }
    if unknowns.is_empty() {
        return Ok(Vec::new());
    }
    let u = unknowns.len();
    let mut eqs: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..m.algebra().dim() {
        let an = n.action(i);
        let am = m.action(i);
        // (A^N F − F A^M)_{k,j} = Σ_l A^N_{kl} F_{lj} − Σ_l F_{kl} A^M_{lj}
        for k in 0..rows {
            for j in 0..cols {
                let mut row = vec![Scalar::zero(); u];
                let mut nonzero = false;
                for l in 0..rows {
                    let c = &an[(k, l)];
                    let idx = index[l * cols + j];
                    if !c.is_zero() && idx != usize::MAX {
                        row[idx] = f.add(&row[idx], c);
                        nonzero = true;
                    }
                }
                for l in 0..cols {
                    let c = &am[(l, j)];
                    let idx = index[k * cols + l];
                    if !c.is_zero() && idx != usize::MAX {
                        row[idx] = f.sub(&row[idx], c);
                        nonzero = true;
                    }
                }
                if nonzero && row.iter().any(|x| !x.is_zero()) {
                    eqs.push(row);
                }
            }
        }
    }
    for c in extra {
        let row: Vec<Scalar> = unknowns.iter().map(|&(k, j)| c[(k, j)].clone()).collect();
        eqs.push(row);
    }
    let basis = if eqs.is_empty() {
        (0..u)
            .map(|t| {
                let mut v = vec![Scalar::zero(); u];
                v[t] = f.one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(f, &eqs)?.kernel_basis()
    };
    Ok(basis
        .into_iter()
        .map(|v| {
            let mut mat = Matrix::zeros(f, rows, cols);
            for (c, &(k, j)) in v.iter().zip(&unknowns) {
                mat[(k, j)] = c.clone();
            }
            mat
        })
        .collect())
}

/// Degrees `g` for which `Hom(M, N(g))` can be nonzero.
pub fn hom_degrees(m: &GradedModule, n: &GradedModule) -> Vec<GroupElement> {
    let grp = m.group();
    let mut out: Vec<GroupElement> = Vec::new();
    for dn in n.hilbert().keys() {
        for dm in m.hilbert().keys() {
            out.push(grp.sub(dn, dm));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `HOM_R(M, N) = ⊕_g Hom(M, N(g))` with `(x·F)(v) = x F(v)`.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: GradedModule,
    /// Basis element `b` of the module, as a matrix `M → N`.
    pub maps: Vec<Matrix>,
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.to_rows().into_iter().flatten().collect()
}

pub fn graded_hom(m: &GradedModule, n: &GradedModule) -> Result<HomModule> {
    let f = m.field();
    let mut maps = Vec::new();
    let mut degrees = Vec::new();
    for g in hom_degrees(m, n) {
        for mat in hom_component(m, n, &g)? {
            maps.push(mat);
            degrees.push(g.clone());
        }
    }
    let flat: Vec<Vec<Scalar>> = maps.iter().map(flatten).collect();
    let coords = BasisCoords::new(f, n.dim() * m.dim(), &flat)?;
    let action = (0..m.algebra().dim())
        .map(|i| {
            let cols: Vec<Vec<Scalar>> = maps
                .iter()
                .map(|mat| {
                    let img = n.action(i).mul(mat).expect("shape");
                    coords.coords_unchecked(&flatten(&img))
                })
                .collect();
            Matrix::from_columns(f, maps.len(), &cols)
        })
        .collect();
    let module = GradedModule::from_parts_unchecked(m.algebra().clone(), degrees, action);
    Ok(HomModule { module, maps })
}

impl HomModule {
    /// Coordinates of a map `M → N` that lies in the span of the basis maps.
    pub fn coords_of(&self, map: &Matrix) -> Option<Vec<Scalar>> {
        let flat: Vec<Vec<Scalar>> = self.maps.iter().map(flatten).collect();
        let len = map.rows() * map.cols();
        BasisCoords::new(map.field(), len, &flat)
            .ok()?
            .coords(&flatten(map))
    }
}

/// `M ⊗_R N` as a quotient of `M ⊗_K N` (basis `(a, b) ↦ a·dim N + b`).
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub module: GradedModule,
    /// Projection from `M ⊗_K N` onto the tensor product.
    pub projection: Matrix,
    pub left_dim: usize,
    pub right_dim: usize,
}

impl TensorProduct {
    /// Class of `u ⊗ v`.
    pub fn pure(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let f = self.projection.field();
        let mut big = vec![Scalar::zero(); self.left_dim * self.right_dim];
        for (a, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in v.iter().enumerate() {
                if !y.is_zero() {
                    big[a * self.right_dim + b] = f.mul(x, y);
                }
            }
        }
        self.projection.mul_vec(&big).expect("shape")
    }
}

pub fn tensor(m: &GradedModule, n: &GradedModule) -> Result<TensorProduct> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let grp = m.group();
    let (dm, dn) = (m.dim(), n.dim());
    let big_dim = dm * dn;
    if big_dim > HOM_UNKNOWN_LIMIT {
        return Err(Error::SizeGuard {
            what: "tensor product".into(),
            limit: HOM_UNKNOWN_LIMIT as u64,
        });
    }
    let mut degrees = Vec::with_capacity(big_dim);
    for a in 0..dm {
        for b in 0..dn {
            degrees.push(grp.add(m.degree(a), n.degree(b)));
        }
    }
    let ident = Matrix::identity(f, dn);
    let action: Vec<Matrix> = m.actions().iter().map(|a| kron(a, &ident)).collect();
    let big = GradedModule::from_parts_unchecked(m.algebra().clone(), degrees, action);
    let mut rels = Vec::new();
    for i in 0..m.algebra().dim() {
        for a in 0..dm {
            for b in 0..dn {
                let mut v = vec![Scalar::zero(); big_dim];
                for a2 in 0..dm {
                    let c = &m.action(i)[(a2, a)];
                    if !c.is_zero() {
                        v[a2 * dn + b] = f.add(&v[a2 * dn + b], c);
                    }
                }
                for b2 in 0..dn {
                    let c = &n.action(i)[(b2, b)];
                    if !c.is_zero() {
                        v[a * dn + b2] = f.sub(&v[a * dn + b2], c);
                    }
                }
                if v.iter().any(|x| !x.is_zero()) {
                    rels.push(v);
                }
            }
        }
    }
    let space = crate::exactla::Subspace::span(f, big_dim, &rels);
    debug_assert!(is_graded_submodule(&big, &space));
    let proj = quotient(&big, &space)?;
    Ok(TensorProduct {
        projection: proj.matrix().clone(),
        module: proj.target().clone(),
        left_dim: dm,
        right_dim: dn,
    })
}

/// Kronecker product.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let f = a.field();
    Matrix::from_fn(f, a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        f.mul(
            &a[(i / b.rows(), j / b.cols())],
            &b[(i % b.rows(), j % b.cols())],
        )
    })
}

/// Result of checking `HOM(L ⊗ M, N) ≅ HOM(L, HOM(M, N))` via currying.
#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionDims {
    /// (degree, dim of left side, dim of right side).
    pub per_degree: Vec<(GroupElement, usize, usize)>,
    /// Currying sends a basis of the left side to a basis of the right side.
    pub bijective: bool,
}

pub fn adjunction_dims_check(
    l: &GradedModule,
    m: &GradedModule,
    n: &GradedModule,
) -> Result<AdjunctionDims> {
    let f = l.field();
    let t = tensor(l, m)?;
    let lhs = graded_hom(&t.module, n)?;
    let h = graded_hom(m, n)?;
    let rhs = graded_hom(l, &h.module)?;
    let mut dims: BTreeMap<GroupElement, (usize, usize)> = BTreeMap::new();
    for d in lhs.module.degrees() {
        dims.entry(d.clone()).or_default().0 += 1;
    }
    for d in rhs.module.degrees() {
        dims.entry(d.clone()).or_default().1 += 1;
    }
    let per_degree: Vec<(GroupElement, usize, usize)> =
        dims.into_iter().map(|(g, (a, b))| (g, a, b)).collect();
    let mut images: Vec<Vec<Scalar>> = Vec::new();
    let mut ok = lhs.maps.len() == rhs.maps.len();
    for phi in &lhs.maps {
        // Φ(φ)(e_a) = (v ↦ φ(e_a ⊗ v)) expressed in the basis of HOM(M, N).
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        for a in 0..l.dim() {
            let ea = l.basis_vector(a);
            let inner_cols: Vec<Vec<Scalar>> = (0..m.dim())
                .map(|b| {
                    phi.mul_vec(&t.pure(&ea, &m.basis_vector(b)))
                        .expect("shape")
                })
                .collect();
            let inner = Matrix::from_columns(f, n.dim(), &inner_cols);
            match h.coords_of(&inner) {
                Some(c) => cols.push(c),
                None => {
                    ok = false;
                    cols.push(vec![Scalar::zero(); h.maps.len()]);
                }
            }
        }
        let curried = Matrix::from_columns(f, h.maps.len(), &cols);
        match rhs.coords_of(&curried) {
            Some(c) => images.push(c),
            None => ok = false,
        }
    }
    let bijective = ok
        && (images.is_empty()
            || Matrix::from_rows(f, &images)
                .map(|m| m.is_invertible())
                .unwrap_or(false));
    Ok(AdjunctionDims {
        per_degree,
        bijective,
    })
}

/// Evaluation `HOM(R, N) → N`, `F ↦ F(1)`.
pub fn evaluation_at_one(
    h: &HomModule,
    n: &GradedModule,
    one: &[Scalar],
) -> Result<ModuleMorphism> {
    let f = n.field();
    let cols: Vec<Vec<Scalar>> = h
        .maps
        .iter()
        .map(|m| m.mul_vec(one).expect("shape"))
        .collect();
    ModuleMorphism::new(
        h.module.clone(),
        n.clone(),
        Matrix::from_columns(f, n.dim(), &cols),
    )
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::abgroups::FGAbelianGroup;
    use crate::exactla::Field;
    use crate::gmod::arith::{generated_submodule, regular_module};
    use crate::samples;

    fn residue_field(r: &Arc<crate::gcore::GradedAlgebra>) -> GradedModule {
        let rr = regular_module(r);
        let sp = generated_submodule(&rr, &[rr.basis_vector(1)]).unwrap();
        quotient(&rr, &sp).unwrap().target().clone()
    }

    #[test]
    fn hom_into_ring_lands_in_socle() {
        let r = Arc::new(samples::dual_numbers(Field::Rational));
        let k = residue_field(&r);
        let h = graded_hom(&k, &regular_module(&r)).unwrap();
        let one = FGAbelianGroup::free(1).element(vec![1]).unwrap();
        assert_eq!(
            h.module.hilbert().into_iter().collect::<Vec<_>>(),
            vec![(one, 1)]
        );
    }

    #[test]
    fn tensor_of_residue_fields() {
        let r = Arc::new(samples::dual_numbers(Field::Rational));
        let k = residue_field(&r);
        let t = tensor(&k, &k).unwrap();
        assert_eq!(t.module.hilbert(), k.hilbert());
    }

    #[test]
    fn hom_from_ring_is_module() {
        let r = Arc::new(samples::dual_numbers(Field::Prime(3)));
        let k = residue_field(&r);
        let h = graded_hom(&regular_module(&r), &k).unwrap();
        let ev = evaluation_at_one(&h, &k, r.unit()).unwrap();
        assert!(ev.is_iso());
    }

    #[test]
    fn currying_is_bijective() {
        let r = Arc::new(samples::dual_numbers(Field::Rational));
        let k = residue_field(&r);
        let rr = regular_module(&r);
        let rep = adjunction_dims_check(&k, &rr, &k).unwrap();
        assert!(rep.bijective);
        assert!(rep.per_degree.iter().all(|(_, a, b)| a == b));
    }
}
