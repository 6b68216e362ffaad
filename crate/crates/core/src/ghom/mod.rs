//! Homological algebra over finite-dimensional graded algebras.

mod cover;
mod resolution;
mod schanuel;

pub use cover::{
    cogenerator_separates, double_dual_iso, dual, dual_morphism, free_cover, hom_into_cogenerator,
    injective_cogenerator, injective_hull, is_flat, is_injective, is_projective, lambek_check,
    lift_through, projectivity, FreeCover, LambekCheck, ProjectivityReport,
};
pub use resolution::{
    betti_text, coarsen_dimension_compare, dimension, injective_dimension_direct, push_betti,
    resolution, BettiTable, CoarsenComparison, DimensionKind, DimensionPair, DimensionReport,
    DimensionValue, FreeResolution, ResolutionStep, DEFAULT_CUTOFF, MAX_CUTOFF,
};
pub use schanuel::{schanuel_glue, SchanuelResult, Truncation};
