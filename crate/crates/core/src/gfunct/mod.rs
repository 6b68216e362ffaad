//! Coarsening and the restriction / extension / corestriction functors.

mod adjoint;
mod coarsen;
mod functors;

pub use adjoint::{
    adjunction_check, tensor_witness, AdjunctionReport, BijectionCheck, TensorWitness,
    TriangleCheck, ENUMERATION_MAX_DIM,
};
pub use coarsen::{
    coarsen_algebra, coarsen_module, coarsen_morphism, coarsening_report, compare_homogeneous_sets,
    CoarseningReport, HomogeneousComparison,
};
pub use functors::{
    corestrict, corestrict_morphism, extend, extend_morphism, monoid_corestriction, restrict,
    restrict_morphism, Corestriction, MonoidCorestriction, Restriction, RingMorphism,
};
