//! Graded rings: structure-constant algebras, graded ideals, radicals,
//! graded spectra, affine monoids and monoid algebras.

mod algebra;
mod ideal;
mod monoid;
mod spec;

pub use algebra::{
    zero_structure, ElementClass, GradedAlgebra, Homogeneity, Method, RingClass,
    EXHAUSTIVE_HOMOGENEOUS_LIMIT,
};
pub use ideal::{quotient_ring, zerodivisor_ideal, GradedIdeal, IdealClass, QuotientRing};
pub use monoid::{AffineMonoid, GradingMode, MonoidAlgebra, MonoidElement};
pub use spec::{
    graded_ideals, intersect_all, spec_enumerate, subspaces_on, SPEC_MAX_DIM, SPEC_MAX_P,
};
