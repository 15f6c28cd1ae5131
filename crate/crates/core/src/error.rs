use thiserror::Error;

/// Errors raised by the algebra, conversion and spinor routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EfbError {
    #[error("number of Witt pairs must be in 1..={max}, got {m}")]
    InvalidPairCount { m: u32, max: u32 },

    #[error("operands belong to different algebras ({left} vs {right})")]
    ConfigMismatch { left: String, right: String },

    #[error("signature lengths differ: {left} vs {right}")]
    SignatureLength { left: u8, right: u8 },

    #[error("operation requires a nonzero {0}")]
    ZeroInput(&'static str),

    #[error("{what} {index} out of range (valid: {range})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        range: String,
    },

    #[error("element {element} does not lie in spinor space {space}")]
    NotInSpace { element: String, space: String },

    #[error("spinors belong to different spinor spaces")]
    MixedSpaces,

    #[error("family member {0} is not a simple spinor")]
    NotSimple(usize),

    #[error("family members {0} and {1} are linearly dependent")]
    LinearlyDependent(usize, usize),

    #[error("{what} refused: m = {m} exceeds the cap of {cap}")]
    SizeCap {
        what: &'static str,
        m: u32,
        cap: u32,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, EfbError>;
