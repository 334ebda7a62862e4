use thiserror::Error;

use crate::complex::{PseudomanifoldViolation, Simplex};

/// Errors raised by the library. Certification failures (stack, DMF,
/// pseudomanifold) carry their witnesses.
#[derive(Debug, Error)]
pub enum Error {
    #[error("a simplex needs at least one vertex")]
    EmptySimplex,

    #[error("vertex {0} appears more than once in a simplex")]
    RepeatedVertex(u32),

    #[error("dimension d = 0 is not supported (d must be at least 1)")]
    ZeroDimension,

    #[error("simplex {0} is not part of the space")]
    NotInSpace(Simplex),

    #[error("the set of simplices is not closed under taking faces: {face} is missing (face of {coface})")]
    NotClosed { face: Simplex, coface: Simplex },

    #[error("({sigma}, {tau}) is not a free pair of the complex")]
    NotFree { sigma: Simplex, tau: Simplex },

    #[error("not a pseudomanifold: {0}")]
    NotPseudomanifold(#[from] PseudomanifoldViolation),

    #[error("not a simplicial stack: {0}")]
    NotAStack(#[from] crate::morse::StackViolation),

    #[error("not a discrete Morse function: {0}")]
    NotADmf(#[from] crate::morse::DmfViolation),

    #[error("not basic: {0}")]
    NotBasic(crate::morse::BasicViolation),

    #[error("invalid vector ({tail}, {head}): {reason}")]
    InvalidVector {
        tail: Simplex,
        head: Simplex,
        reason: &'static str,
    },

    #[error("simplex {0} occurs in more than one vector")]
    NotAMatching(Simplex),

    #[error("the vector field has a closed gradient path through {0}")]
    ClosedPath(Simplex),

    #[error("gradient paths must start at a critical (p+1)-simplex or a regular p-simplex; got {simplex} for p = {p}")]
    BadPathStart { simplex: Simplex, p: usize },

    #[error("valued complexes live on different spaces")]
    DifferentSpaces,

    #[error("the anchor of a relative forest must be nonempty")]
    EmptyAnchor,

    #[error("altitude {value} at {simplex} is negative; shift the stack so that its minimum is at least 0")]
    NegativeAltitude { simplex: Simplex, value: i64 },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("exhaustive oracle refused an instance of size {size} (limit {limit})")]
    TooLarge { size: usize, limit: usize },

    #[error("generator parameter out of range: {0}")]
    Generator(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
