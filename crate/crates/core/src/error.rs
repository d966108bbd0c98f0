use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree {degree} lies outside the window [{lo}, {hi}]")]
    Window { degree: i64, lo: i64, hi: i64 },

    #[error("incompatible complexes: {0}")]
    Incompatible(String),

    #[error("d∘d ≠ 0 at degree {degree}, weight {weight}")]
    NotAComplex { degree: i64, weight: u32 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("not a chain map at degree {degree}, weight {weight}")]
    NotAChainMap { degree: i64, weight: u32 },

    #[error("subspace is not contained in the given space; witness {witness}")]
    NotContained { witness: String },

    #[error("step {step} is not closed under the differential at degree {degree}, weight {weight}")]
    NotClosed { step: usize, degree: i64, weight: u32 },

    #[error("step {step} is not contained in step {prev} at degree {degree}, weight {weight}")]
    NotDecreasing {
        step: usize,
        prev: usize,
        degree: i64,
        weight: u32,
    },

    #[error("filtration index {index} is out of range (top = {top})")]
    FiltrationIndex { index: i64, top: usize },

    #[error("mixed complex identity `{identity}` fails at degree {degree}, weight {weight}")]
    MixedIdentity {
        identity: &'static str,
        degree: i64,
        weight: u32,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error in `{input}` at position {position}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
