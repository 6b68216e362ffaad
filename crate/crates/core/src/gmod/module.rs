use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::abgroups::{FGAbelianGroup, GroupElement};
use crate::exactla::{vecops, Field, Matrix, Scalar};
use crate::gcore::{GradedAlgebra, Homogeneity};
use crate::{Error, Result};

/// Finite-dimensional graded module over a [`GradedAlgebra`], with a basis of
/// homogeneous elements `v_0, …, v_{m-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    algebra: Arc<GradedAlgebra>,
    degrees: Vec<GroupElement>,
    /// `action[i]` is the matrix of `v ↦ x_i v`.
    action: Vec<Matrix>,
}

/// Homogeneous (degree-preserving) `R`-linear map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMorphism {
    source: GradedModule,
    target: GradedModule,
    matrix: Matrix,
}

pub type HilbertFunction = BTreeMap<GroupElement, usize>;

impl GradedModule {
    /// Module from an action tensor: `a[i][j]` is the coordinate vector of `x_i v_j`.
    pub fn new(
        algebra: Arc<GradedAlgebra>,
        degrees: Vec<GroupElement>,
        action: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        let m = degrees.len();
        let n = algebra.dim();
        if action.len() != n
            || action
                .iter()
                .any(|a| a.len() != m || a.iter().any(|v| v.len() != m))
        {
            return Err(Error::DimensionMismatch(format!(
                "action tensor must have shape {n}x{m}x{m}"
            )));
        }
        let f = algebra.field();
        let mats = action
            .iter()
            .map(|a| Matrix::from_columns(f, m, a))
            .collect();
        Self::from_matrices(algebra, degrees, mats)
    }

    /// Module from action matrices, verifying grading, associativity and unitality.
    pub fn from_matrices(
        algebra: Arc<GradedAlgebra>,
        degrees: Vec<GroupElement>,
        action: Vec<Matrix>,
    ) -> Result<Self> {
        let m = degrees.len();
        let g = algebra.group();
        for (j, d) in degrees.iter().enumerate() {
            if !g.contains(d) {
                return Err(Error::InvalidGroup(format!(
                    "degree {d} of module basis element {j}"
                )));
            }
        }
        if action.len() != algebra.dim()
            || action
                .iter()
                .any(|a| a.rows() != m || a.cols() != m || a.field() != algebra.field())
        {
            return Err(Error::DimensionMismatch(
                "action matrices have the wrong shape".into(),
            ));
        }
        let module = GradedModule {
            algebra,
            degrees,
            action,
        };
        module.check_grading()?;
        module.check_module_axioms()?;
        Ok(module)
    }

    pub(crate) fn from_parts_unchecked(
        algebra: Arc<GradedAlgebra>,
        degrees: Vec<GroupElement>,
        action: Vec<Matrix>,
    ) -> Self {
        let module = GradedModule {
            algebra,
            degrees,
            action,
        };
        debug_assert!(module.check_grading().is_ok());
        module
    }

    fn check_grading(&self) -> Result<()> {
        let g = self.algebra.group();
        for (i, a) in self.action.iter().enumerate() {
            for j in 0..self.dim() {
                for k in 0..self.dim() {
                    if !a[(k, j)].is_zero()
                        && g.add(self.algebra.degree(i), &self.degrees[j]) != self.degrees[k]
                    {
                        return Err(Error::ModuleGradingViolation { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_module_axioms(&self) -> Result<()> {
        let r = &self.algebra;
        let n = r.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.action[i].mul(&self.action[j]).expect("square");
                let rhs = self.act_matrix(&r.product_of_basis(i, j));
                if lhs != rhs {
                    return Err(Error::ModuleNonAssociative { i, j });
                }
            }
        }
        if !self.act_matrix(r.unit()).is_identity() {
            return Err(Error::ModuleNonUnital);
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn group(&self) -> &FGAbelianGroup {
        self.algebra.group()
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn degree(&self, j: usize) -> &GroupElement {
        &self.degrees[j]
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of `v ↦ x v`.
    pub fn act_matrix(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim(), self.dim());
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.action[i].scale(c)).expect("square");
            }
        }
        m
    }

    pub fn act(&self, x: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.act_matrix(x)
            .mul_vec(v)
            .expect("vector length matches module")
    }

    pub fn basis_vector(&self, j: usize) -> Vec<Scalar> {
        vecops::unit(self.field(), self.dim(), j)
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vecops::zeros(self.dim())
    }

    pub fn components(&self) -> BTreeMap<GroupElement, Vec<usize>> {
        let mut out: BTreeMap<GroupElement, Vec<usize>> = BTreeMap::new();
        for (j, d) in self.degrees.iter().enumerate() {
            out.entry(d.clone()).or_default().push(j);
        }
        out
    }

    pub fn component_indices(&self, g: &GroupElement) -> Vec<usize> {
        (0..self.dim()).filter(|&j| &self.degrees[j] == g).collect()
    }

    pub fn hilbert(&self) -> HilbertFunction {
        self.components()
            .into_iter()
            .map(|(g, v)| (g, v.len()))
            .collect()
    }

    pub fn homogeneity(&self, v: &[Scalar]) -> Homogeneity {
        let supp = vecops::support(v);
        let Some(&first) = supp.first() else {
            return Homogeneity::Zero;
        };
        let d = &self.degrees[first];
        if supp.iter().all(|&j| &self.degrees[j] == d) {
            Homogeneity::Degree(d.clone())
        } else {
            Homogeneity::Mixed
        }
    }

    /// Same module with new basis degrees over a regraded algebra (used by coarsening).
    pub(crate) fn regraded(
        &self,
        algebra: Arc<GradedAlgebra>,
        degrees: Vec<GroupElement>,
    ) -> Result<Self> {
        let module = GradedModule {
            algebra,
            degrees,
            action: self.action.clone(),
        };
        module.check_grading()?;
        Ok(module)
    }
}

impl ModuleMorphism {
    pub fn new(source: GradedModule, target: GradedModule, matrix: Matrix) -> Result<Self> {
        if source.algebra != target.algebra {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        for k in 0..target.dim() {
            for j in 0..source.dim() {
                if !matrix[(k, j)].is_zero() && target.degree(k) != source.degree(j) {
                    return Err(Error::NotMorphism(format!(
                        "entry ({k},{j}) links degrees {} and {}",
                        source.degree(j),
                        target.degree(k)
                    )));
                }
            }
        }
        for i in 0..source.algebra.dim() {
            let lhs = target.action(i).mul(&matrix).expect("shape");
            let rhs = matrix.mul(source.action(i)).expect("shape");
            if lhs != rhs {
                return Err(Error::NotMorphism(format!(
                    "not equivariant for algebra basis element {i}"
                )));
            }
        }
        Ok(ModuleMorphism {
            source,
            target,
            matrix,
        })
    }

    pub(crate) fn new_unchecked(
        source: GradedModule,
        target: GradedModule,
        matrix: Matrix,
    ) -> Self {
        ModuleMorphism {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(m: &GradedModule) -> Self {
        ModuleMorphism {
            source: m.clone(),
            target: m.clone(),
            matrix: Matrix::identity(m.field(), m.dim()),
        }
    }

    pub fn zero(source: &GradedModule, target: &GradedModule) -> Self {
        ModuleMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(source.field(), target.dim(), source.dim()),
        }
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix
            .mul_vec(v)
            .expect("vector length matches source")
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMorphism) -> Result<ModuleMorphism> {
        if inner.target != self.source {
            return Err(Error::NotMorphism(
                "composition of incompatible morphisms".into(),
            ));
        }
        Ok(ModuleMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix)?,
        })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_mono(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_epi(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    pub fn inverse(&self) -> Option<ModuleMorphism> {
        let inv = self.matrix.inverse()?;
        Some(ModuleMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: inv,
        })
    }
}
