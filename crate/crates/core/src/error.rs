use std::fmt;

use thiserror::Error;

use crate::types::SimpleType;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("type {ty} has tuple space {required}, above the quantifier cap {cap}")]
    CapExceeded {
        ty: SimpleType,
        /// Saturates at `u64::MAX`.
        required: u64,
        cap: u64,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Type(#[from] TypeErrors),
    #[error("unknown sugar form `{0}`")]
    UnknownSugar(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("literal #{literal} lies outside the base domain of size {base_size}")]
    LiteralOutOfRange { literal: u32, base_size: u32 },
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("assignment is not a model of `{0}`")]
    NotAModel(String),
    #[error("value support is not covered by the correlator")]
    SupportNotCovered,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

/// First syntax error in a source text. Line and column are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: expected {expected}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
}

/// A single ill-typed node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeError {
    /// Where the node sits (axiom label, if any, plus child-index path).
    pub location: String,
    pub message: String,
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", self.location, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct TypeErrors(pub Vec<TypeError>);

impl fmt::Display for TypeErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("type error")?;
        for (i, e) in self.0.iter().enumerate() {
            f.write_str(if i == 0 { ": " } else { "; " })?;
            write!(f, "{e}")?;
        }
        Ok(())
    }
}
