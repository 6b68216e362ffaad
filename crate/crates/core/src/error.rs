use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    #[error("homomorphism is not an epimorphism")]
    NotEpimorphism,

    #[error("homomorphism is not a monomorphism")]
    NotMonomorphism,

    #[error("grading group mismatch: {0}")]
    GroupMismatch(String),

    #[error("field mismatch")]
    FieldMismatch,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("grading violated by x_{i}*x_{j} -> x_{k}")]
    GradingViolation { i: usize, j: usize, k: usize },

    #[error("multiplication not commutative at (x_{i}, x_{j}), coordinate {k}")]
    NonCommutative { i: usize, j: usize, k: usize },

    #[error("multiplication not associative at (x_{i}, x_{j}, x_{k})")]
    NonAssociative { i: usize, j: usize, k: usize },

    #[error("bad unit: {0}")]
    BadUnit(String),

    #[error("module grading violated by x_{i}*v_{j} -> v_{k}")]
    ModuleGradingViolation { i: usize, j: usize, k: usize },

    #[error("module action not associative at (x_{i}, x_{j})")]
    ModuleNonAssociative { i: usize, j: usize },

    #[error("module action not unital")]
    ModuleNonUnital,

    #[error("algebra mismatch between modules")]
    AlgebraMismatch,

    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("not a morphism: {0}")]
    NotMorphism(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("size guard exceeded: {what} (limit {limit})")]
    SizeGuard { what: String, limit: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_size_guard(&self) -> bool {
        matches!(self, Error::SizeGuard { .. })
    }
}
