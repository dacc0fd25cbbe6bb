use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },

    #[error("value {0} is not rational")]
    NotRational(String),

    #[error("invalid group parameters m={m}, e={e}: {reason}")]
    InvalidParams { m: u32, e: u32, reason: String },

    #[error("element D({a},{b}){} is not in G({m},{e},2)", if *.swap { "t" } else { "" })]
    NotInGroup { a: u32, b: u32, swap: bool, m: u32, e: u32 },

    #[error("cannot parse label {input:?}: {reason}")]
    LabelParse { input: String, reason: String },

    #[error("{0} is not an irreducible representation here")]
    NotIrreducible(String),

    #[error("non-integral inner product {0}")]
    NonIntegral(String),

    #[error("module error: {0}")]
    Module(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
