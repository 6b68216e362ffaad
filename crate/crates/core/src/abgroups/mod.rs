//! Finitely generated abelian groups, homomorphisms, and Smith normal form.

mod group;
mod hom;
mod snf;

pub use group::{FGAbelianGroup, GroupElement};
pub use hom::{fiber_filter, CokernelData, GroupHom, HomProps, KernelData};
pub use snf::{integer_kernel, smith_normal_form, solve_integer, IntMatrix, LatticeQuotient, Snf};
