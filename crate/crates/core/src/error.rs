use thiserror::Error;

/// Errors raised by parsing and by the algebraic routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("genus must be at least 2, got {0}")]
    BadGenus(u32),
    #[error("generator index {index} out of range for genus {genus}")]
    IndexOutOfRange { index: u32, genus: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("rewriting did not terminate within {fuel} steps")]
    FuelExhausted { fuel: usize },
    #[error("word {0} is not in normal form")]
    NotNormal(String),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(String, String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("coefficient system mismatch: {0}")]
    CoefficientMismatch(String),
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("endomorphism does not preserve the relator: image normalizes to {0}")]
    RelatorNotPreserved(String),
    #[error("endomorphism image for {generator} is not almost-paired with the expected letter {expected}")]
    NotAlmostPaired { generator: String, expected: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
