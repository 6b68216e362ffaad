use num_traits::Zero;

use super::field::{Field, Scalar};
use super::matrix::{vecops, Matrix};
use crate::{Error, Result};

/// Subspace of `K^n`, stored by its reduced row echelon basis (unique, so
/// derived equality is equality of subspaces).
///
/// If the subspace is spanned by vectors homogeneous for some grading of the
/// coordinates, the echelon basis is homogeneous too.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: (0..ambient)
                .map(|i| vecops::unit(field, ambient, i))
                .collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: Field, ambient: usize, vecs: &[Vec<Scalar>]) -> Self {
        if vecs.is_empty() {
            return Self::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, vecs).expect("spanning vectors of equal length");
        assert_eq!(m.cols(), ambient, "spanning vector length");
        let r = m.rref();
        let rows = (0..r.pivots.len()).map(|i| r.matrix.row(i)).collect();
        Subspace {
            field,
            ambient,
            rows,
            pivots: r.pivots,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; the corresponding standard basis
    /// vectors span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// Canonical representative of `v` modulo the subspace (zero at all pivots).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let s = f.neg(&out[p]);
            vecops::axpy(f, &mut out, &s, row);
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vecops::is_zero(&self.reduce(v))
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` with respect to [`Subspace::basis`], if `v` lies in it.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vecs = self.rows.clone();
        vecs.extend(other.rows.iter().cloned());
        Subspace::span(self.field, self.ambient, &vecs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(f, self.ambient);
        }
        // Solve Σ a_i u_i − Σ b_j w_j = 0.
        let mut cols = self.rows.clone();
        cols.extend(
            other
                .rows
                .iter()
                .map(|w| vecops::scale(f, &f.from_i64(-1), w)),
        );
        let m = Matrix::from_columns(f, self.ambient, &cols);
        let vecs: Vec<Vec<Scalar>> = m
            .kernel_basis()
            .into_iter()
            .map(|k| {
                let mut v = vecops::zeros(self.ambient);
                for (a, u) in k.iter().zip(&self.rows) {
                    vecops::axpy(f, &mut v, a, u);
                }
                v
            })
            .collect();
        Subspace::span(f, self.ambient, &vecs)
    }

    /// Image of the subspace under a linear map.
    pub fn image_under(&self, map: &Matrix) -> Subspace {
        let vecs: Vec<Vec<Scalar>> = self
            .rows
            .iter()
            .map(|v| map.mul_vec(v).expect("map matches ambient dimension"))
            .collect();
        Subspace::span(self.field, map.rows(), &vecs)
    }
}

/// Coordinates with respect to a fixed list of linearly independent vectors.
#[derive(Clone, Debug)]
pub struct BasisCoords {
    field: Field,
    basis: Vec<Vec<Scalar>>,
    rows: Vec<usize>,
    inverse: Matrix,
}

impl BasisCoords {
    pub fn new(field: Field, ambient: usize, basis: &[Vec<Scalar>]) -> Result<Self> {
        let k = basis.len();
        if k == 0 {
            return Ok(BasisCoords {
                field,
                basis: Vec::new(),
                rows: Vec::new(),
                inverse: Matrix::zeros(field, 0, 0),
            });
        }
        let b = Matrix::from_columns(field, ambient, basis);
        let rows = b.transpose().independent_columns();
        if rows.len() != k {
            return Err(Error::Invalid(
                "basis vectors are linearly dependent".into(),
            ));
        }
        let all_cols: Vec<usize> = (0..k).collect();
        let inverse = b
            .submatrix(&rows, &all_cols)
            .inverse()
            .expect("selected rows form an invertible block");
        Ok(BasisCoords {
            field,
            basis: basis.to_vec(),
            rows,
            inverse,
        })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `v`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let c = self.coords_unchecked(v);
        let mut back = vecops::zeros(v.len());
        for (a, b) in c.iter().zip(&self.basis) {
            vecops::axpy(self.field, &mut back, a, b);
        }
        (back == v).then_some(c)
    }

    /// Coordinates of `v`, assuming `v` lies in the span.
    pub fn coords_unchecked(&self, v: &[Scalar]) -> Vec<Scalar> {
        if self.basis.is_empty() {
            return Vec::new();
        }
        let sel: Vec<Scalar> = self.rows.iter().map(|&r| v[r].clone()).collect();
        self.inverse
            .mul_vec(&sel)
            .expect("shape checked at construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_and_sum() {
        let f = Field::Rational;
        let a = Subspace::span(
            f,
            3,
            &[
                vec![f.one(), f.zero(), f.zero()],
                vec![f.zero(), f.one(), f.zero()],
            ],
        );
        let b = Subspace::span(
            f,
            3,
            &[
                vec![f.zero(), f.one(), f.zero()],
                vec![f.zero(), f.zero(), f.one()],
            ],
        );
        assert_eq!(a.intersection(&b).dim(), 1);
        assert_eq!(a.sum(&b), Subspace::full(f, 3));
        assert_eq!(a.complement_indices(), vec![2]);
    }

    #[test]
    fn basis_coordinates() {
        let f = Field::Prime(3);
        let basis = vec![
            vec![f.one(), f.one(), f.zero()],
            vec![f.zero(), f.one(), f.one()],
        ];
        let bc = BasisCoords::new(f, 3, &basis).unwrap();
        let v = vec![f.one(), f.from_i64(2), f.one()];
        assert_eq!(bc.coords(&v), Some(vec![f.one(), f.one()]));
        assert!(bc.coords(&[f.one(), f.zero(), f.zero()]).is_none());
    }
}
