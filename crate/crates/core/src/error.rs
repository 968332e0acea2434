use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in incompatible fields")]
    MixedField,
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("dual degree {dual} exceeds primal degree {primal}")]
    DegreeTooHigh { dual: u32, primal: u32 },
    #[error("expected {expected} substitution images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("substitution images must share one space and one degree")]
    InhomogeneousImages,
    #[error("wrong arity: {0}")]
    WrongArity(String),
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("level {level} exceeds degree {degree}")]
    LevelTooHigh { level: u32, degree: u32 },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("characteristic {p} does not exceed degree {degree}")]
    CharacteristicGuard { p: u64, degree: u32 },
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("every candidate pair is dependent at the form")]
    NotIndependent,
    #[error("basis is linearly dependent")]
    DependentBasis,
    #[error("family {family} is not independent at the form (determinant {det})")]
    NotIndependentAtF { family: String, det: String },
    #[error("degenerate conic")]
    DegenerateConic,
    #[error("quadric has rank {0}, expected 4")]
    WrongRank(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no fingerprint battery for {0}")]
    BatteryUndefined(String),
    #[error("fingerprints come from different batteries")]
    BatteryMismatch,
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    /// True for failures caused by the mathematics of a well-formed input
    /// (dependence, degeneracy, unsupported cases), false for malformed input.
    pub fn is_mathematical(&self) -> bool {
        matches!(
            self,
            Error::Singular
                | Error::SearchExhausted(_)
                | Error::NotIndependent
                | Error::DependentBasis
                | Error::NotIndependentAtF { .. }
                | Error::DegenerateConic
                | Error::WrongRank(_)
                | Error::Unsupported(_)
                | Error::DivisionByZero
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
