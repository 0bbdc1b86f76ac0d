use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid rational `{0}`")]
    Rational(String),
    #[error("invalid polynomial at byte {pos}: {msg}")]
    Poly { pos: usize, msg: String },
    #[error("invalid fermion mode `{0}`")]
    Mode(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("Pfaffian of an odd-sized ({0}) matrix")]
    OddPfaffian(usize),
    #[error("determinant of a non-square {rows}x{cols} matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("block sizes m={m}, k={k} must have even sum")]
    ParityMismatch { m: usize, k: usize },

    #[error("parts {0:?} are not strictly decreasing and non-negative")]
    NotStrict(Vec<u32>),
    #[error("parts {0:?} are not weakly decreasing and positive")]
    NotPartition(Vec<u32>),
    #[error("invalid Frobenius coordinates: {0}")]
    Frobenius(String),

    #[error("spec has {parts} parts but {constants} constant sequences")]
    ConstantsLength { parts: usize, constants: usize },
    #[error("series must have leading coefficient 1, got {0}")]
    LeadingCoefficient(String),

    #[error("polynomial contains even-index variable {0}, expected odd times only")]
    EvenVariable(String),
    #[error("assembled KP tau-function has non-zero imaginary part")]
    ImaginaryTau,

    #[error("word has charge {0}, expected 0")]
    Charge(i64),
    #[error("two-point function of {0} and {1} mixes neutral and charged families")]
    MixedFamilies(String, String),
    #[error("vacuum expectation value carries an odd power of 1/sqrt(2)")]
    IrrationalVev,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
