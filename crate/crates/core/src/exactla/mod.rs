//! Exact scalar fields and dense linear algebra over them.

mod field;
mod intertwiner;
pub mod lp;
mod matrix;
mod subspace;

pub use field::{format_scalar, is_prime, Field, Scalar};
pub use intertwiner::{
    find_member, invertible_intertwiner, search_exhaustive, search_random, AffineMatrixSpace,
    RankTarget, SearchOutcome, EXHAUSTIVE_LIMIT, GRID_MAX_DIM, RANDOM_BUDGET,
};
pub use matrix::{vecops, Matrix, Rref};
pub use subspace::{BasisCoords, Subspace};
