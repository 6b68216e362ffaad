//! Exact computations with commutative rings and modules graded by finitely
//! generated abelian groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`abgroups`]: grading groups in invariant-factor form, homomorphisms,
//!   kernels and Smith normal form.
//! - [`exactla`]: exact scalar fields (ℚ and 𝔽_p) and dense linear algebra.
//! - [`gcore`]: finite-dimensional graded algebras, graded ideals, radicals,
//!   spectra, affine monoids and monoid algebras.
//! - [`gfunct`]: coarsening and the restriction / extension / corestriction
//!   functors along group homomorphisms.
//! - [`gmod`]: graded modules, Hom and tensor, freeness, superfluous and
//!   essential monomorphisms, and submodules of free modules over `K[X]`.
//! - [`ghom`]: projectivity, injectivity, duality, free resolutions,
//!   Schanuel isomorphisms and homological dimensions.
//! - [`oracles`]: brute-force reference implementations over finite fields.
//! - [`io`]: the JSON interchange formats and their validation.

pub mod abgroups;
pub mod error;
pub mod exactla;
pub mod gcore;
pub mod gfunct;
pub mod ghom;
pub mod gmod;
pub mod io;
pub mod oracles;
pub mod samples;
mod serhelp;

pub use error::{Error, Result};

/// Seed used by randomized searches when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x6772_6164_6578;

/// Three-valued answer for predicates that are not always decidable at
/// desk scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Decision::Yes => Some(true),
            Decision::No => Some(false),
            Decision::Undecided => None,
        }
    }

    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }

    pub fn is_no(self) -> bool {
        self == Decision::No
    }
}

impl std::fmt::Display for Decision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Decision::Yes => write!(f, "true"),
            Decision::No => write!(f, "false"),
            Decision::Undecided => write!(f, "undecided"),
        }
    }
}
