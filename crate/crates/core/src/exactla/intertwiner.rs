use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, Scalar};
use super::matrix::Matrix;
use crate::{Error, Result};

/// Members with this many or fewer elements are searched exhaustively over 𝔽_p.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 16;
/// Random samples drawn before giving up.
pub const RANDOM_BUDGET: usize = 2048;
/// Over ℚ, spaces of at most this dimension are decided by a grid argument.
pub const GRID_MAX_DIM: usize = 3;

/// The affine set `{particular + Σ t_i directions[i]}` of matrices.
#[derive(Clone, Debug)]
pub struct AffineMatrixSpace {
    pub particular: Matrix,
    pub directions: Vec<Matrix>,
}

/// Which members count as a hit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankTarget {
    Invertible,
    FullRowRank,
    FullColumnRank,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Matrix),
    /// No member meets the target (proved exhaustively or by the grid argument).
    ProvenNone,
    /// Sampling budget spent without a witness; nothing is claimed.
    BudgetExhausted {
        samples: usize,
    },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&Matrix> {
        match self {
            SearchOutcome::Found(m) => Some(m),
            _ => None,
        }
    }
}

impl AffineMatrixSpace {
    pub fn new(particular: Matrix, directions: Vec<Matrix>) -> Result<Self> {
        for d in &directions {
            if d.rows() != particular.rows() || d.cols() != particular.cols() {
                return Err(Error::DimensionMismatch(
                    "direction shape differs from particular".into(),
                ));
            }
            if d.field() != particular.field() {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(AffineMatrixSpace {
            particular,
            directions,
        })
    }

    pub fn field(&self) -> Field {
        self.particular.field()
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn member(&self, coeffs: &[Scalar]) -> Matrix {
        let mut m = self.particular.clone();
        for (c, d) in coeffs.iter().zip(&self.directions) {
            m = m.add(&d.scale(c)).expect("shapes checked");
        }
        m
    }

    /// Member count over a finite field, saturating at `u64::MAX`.
    pub fn size(&self) -> Option<u64> {
        let p = self.field().size()?;
        Some(
            (0..self.dim())
                .try_fold(1u64, |acc, _| acc.checked_mul(p))
                .unwrap_or(u64::MAX),
        )
    }
}

fn meets(m: &Matrix, target: RankTarget) -> bool {
    match target {
        RankTarget::Invertible => m.is_invertible(),
        RankTarget::FullRowRank => m.rank() == m.rows(),
        RankTarget::FullColumnRank => m.rank() == m.cols(),
    }
}

fn target_rank(space: &AffineMatrixSpace, target: RankTarget) -> usize {
    let m = &space.particular;
    match target {
        RankTarget::Invertible => m.rows(),
        RankTarget::FullRowRank => m.rows(),
        RankTarget::FullColumnRank => m.cols(),
    }
}

/// Searches `space` for a member of the requested rank.
///
/// Over 𝔽_p the search is exhaustive when the space has at most
/// [`EXHAUSTIVE_LIMIT`] members and random otherwise. Over ℚ, spaces of
/// dimension at most [`GRID_MAX_DIM`] are decided: the relevant minors are
/// polynomials of degree at most `s` in each coefficient, so vanishing on the
/// grid `{0..s}^k` forces them to vanish identically.
pub fn find_member(space: &AffineMatrixSpace, target: RankTarget, seed: u64) -> SearchOutcome {
    if target == RankTarget::Invertible && !space.particular.is_square() {
        return SearchOutcome::ProvenNone;
    }
    let f = space.field();
    match f {
        Field::Prime(_) => {
            if space.size().unwrap() <= EXHAUSTIVE_LIMIT {
                search_exhaustive(space, target)
            } else {
                search_random(space, target, seed, RANDOM_BUDGET)
            }
        }
        Field::Rational => {
            if meets(&space.particular, target) {
                return SearchOutcome::Found(space.particular.clone());
            }
            if space.dim() == 0 {
                return SearchOutcome::ProvenNone;
            }
            if let SearchOutcome::Found(m) = search_random(space, target, seed, 16) {
                return SearchOutcome::Found(m);
            }
            if space.dim() <= GRID_MAX_DIM {
                search_grid(space, target)
            } else {
                search_random(space, target, seed, RANDOM_BUDGET)
            }
        }
    }
}

/// Enumerates every member of a space over a finite field.
pub fn search_exhaustive(space: &AffineMatrixSpace, target: RankTarget) -> SearchOutcome {
    let f = space.field();
    let elems = f
        .elements()
        .expect("exhaustive search needs a finite field");
    let k = space.dim();
    let mut idx = vec![0usize; k];
    loop {
        let coeffs: Vec<Scalar> = idx.iter().map(|&i| elems[i].clone()).collect();
        let m = space.member(&coeffs);
        if meets(&m, target) {
            return SearchOutcome::Found(m);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return SearchOutcome::ProvenNone;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < elems.len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Random sampling with a seeded generator. Over ℚ the coefficient range
/// doubles every 64 samples.
pub fn search_random(
    space: &AffineMatrixSpace,
    target: RankTarget,
    seed: u64,
    budget: usize,
) -> SearchOutcome {
    let f = space.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..budget {
        let coeffs: Vec<Scalar> = match f {
            Field::Prime(p) => (0..space.dim())
                .map(|_| f.from_i64(rng.gen_range(0..p) as i64))
                .collect(),
            Field::Rational => {
                let range = 4i64 << (s / 64).min(40);
                (0..space.dim())
                    .map(|_| f.from_i64(rng.gen_range(-range..=range)))
                    .collect()
            }
        };
        let m = space.member(&coeffs);
        if meets(&m, target) {
            return SearchOutcome::Found(m);
        }
    }
    SearchOutcome::BudgetExhausted { samples: budget }
}

fn search_grid(space: &AffineMatrixSpace, target: RankTarget) -> SearchOutcome {
    let f = space.field();
    let top = target_rank(space, target) as i64;
    let k = space.dim();
    let mut idx = vec![0i64; k];
    loop {
        let coeffs: Vec<Scalar> = idx
            .iter()
            .map(|&i| f.from_bigint(BigInt::from(i)))
            .collect();
        let m = space.member(&coeffs);
        if meets(&m, target) {
            return SearchOutcome::Found(m);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return SearchOutcome::ProvenNone;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] <= top {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Invertible member of `space`, the common case of [`find_member`].
pub fn invertible_intertwiner(space: &AffineMatrixSpace, seed: u64) -> SearchOutcome {
    find_member(space, RankTarget::Invertible, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_space() {
        let f = Field::Rational;
        let s = AffineMatrixSpace::new(Matrix::identity(f, 2), vec![]).unwrap();
        assert_eq!(
            invertible_intertwiner(&s, 1),
            SearchOutcome::Found(Matrix::identity(f, 2))
        );
    }

    #[test]
    fn all_two_by_two_over_f2() {
        let f = Field::Prime(2);
        let dirs: Vec<Matrix> = (0..4)
            .map(|k| Matrix::from_fn(f, 2, 2, |i, j| f.from_i64((i * 2 + j == k) as i64)))
            .collect();
        let s = AffineMatrixSpace::new(Matrix::zeros(f, 2, 2), dirs).unwrap();
        let m = invertible_intertwiner(&s, 1);
        assert!(m.found().unwrap().is_invertible());
    }

    #[test]
    fn nilpotent_line_has_no_invertible_member() {
        for f in [Field::Rational, Field::Prime(3)] {
            let n = Matrix::from_i64(f, &[vec![0, 1], vec![0, 0]]);
            let s = AffineMatrixSpace::new(Matrix::zeros(f, 2, 2), vec![n]).unwrap();
            assert_eq!(invertible_intertwiner(&s, 7), SearchOutcome::ProvenNone);
        }
    }

    #[test]
    fn rational_grid_finds_sparse_witness() {
        // t·I + u·N is invertible only when t ≠ 0; the particular member is singular.
        let f = Field::Rational;
        let n = Matrix::from_i64(f, &[vec![0, 1], vec![0, 0]]);
        let s = AffineMatrixSpace::new(Matrix::zeros(f, 2, 2), vec![Matrix::identity(f, 2), n])
            .unwrap();
        assert!(invertible_intertwiner(&s, 3).found().is_some());
    }
}
