//! Graded modules over graded algebras.

mod arith;
mod free;
mod homtensor;
mod module;
mod principal;
mod small;

pub use arith::{
    cokernel, direct_sum, free_module, generated_submodule, graded_kernel_space, image,
    image_space, is_graded_submodule, kernel, quotient, regular_module, shift, submodule,
    sum_of_morphisms, DirectSum, FreeSpec,
};
pub use free::{
    degree_candidates, free_map_matrix, freeness, greedy_basis, is_monogeneous, FreenessReport,
    CANDIDATE_LIMIT,
};
pub use homtensor::{
    adjunction_dims_check, evaluation_at_one, graded_hom, hom_component, hom_component_constrained,
    hom_degrees, kron, tensor, AdjunctionDims, HomModule, TensorProduct, HOM_UNKNOWN_LIMIT,
};
pub use module::{GradedModule, HilbertFunction, ModuleMorphism};
pub use principal::{
    decompose, graded_column_reduction, poly_gcd, principal_suite, superfluous_counterexample,
    ungraded_rank, Monomial, PrincipalPresentation, PrincipalReport, Summand,
    SuperfluousCounterexample,
};
pub use small::{
    graded_radical, graded_socle, small_submodule, OracleAgreement, SmallMode, SmallReport,
};
