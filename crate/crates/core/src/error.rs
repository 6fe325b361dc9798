use thiserror::Error;

use crate::caps::CapError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{q} is not a power of {p}")]
    NotPrimePower { q: u64, p: u32 },

    #[error("inner subspace is not contained in the outer subspace")]
    NotContained,

    #[error("acting group is not unipotent over F_p; Nakayama inapplicable")]
    NotUnipotent,

    #[error("invalid connection set: {0}")]
    InvalidConnectionSet(String),

    #[error("graph is not regular")]
    Irregular,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("generator {0} is not an automorphism")]
    NotAutomorphism(usize),

    #[error("Frattini rank defined here only for p-groups")]
    NotPGroup,

    #[error("subgroup is not transitive on the vertices")]
    NotTransitive,

    #[error("element is not in gamma_(q-1)")]
    NotInModule,

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("construction invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Cap(#[from] CapError),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::Cap(_))
    }
}
