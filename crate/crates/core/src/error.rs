use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("arity must be between 1 and 4, got {0}")]
    BadArity(usize),

    #[error("expected {expected} factors, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("twist parities must be 0 or 1")]
    BadTwist,

    #[error("cap violation: {0}")]
    Cap(String),

    #[error("signatures differ")]
    SignatureMismatch,

    #[error("empty subcomplex")]
    Empty,

    #[error("no boundary: atom has dimension 0")]
    NoBoundary,

    #[error("atom has no frame dimension")]
    NoFrameDimension,

    #[error("bad axis {axis} for arity {arity}")]
    BadAxis { axis: usize, arity: usize },

    #[error("unsigned top cells are not accepted here")]
    TopNotAllowed,

    #[error("not a molecule: {0}")]
    NotMolecule(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("boundaries differ: left d+ = {left}, right d- = {right}")]
    BoundaryMismatch { left: String, right: String },

    #[error("sign is not determined for {0}")]
    IllDefinedSign(String),

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("malformed catalog: {0}")]
    Catalog(String),
}

pub type Result<T> = std::result::Result<T, Error>;
