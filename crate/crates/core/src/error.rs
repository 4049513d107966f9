use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in exact ring arithmetic")]
    Overflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("quotient is not an element of the ring")]
    NotDivisible,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("register of {0} qubits exceeds the limit of {max}", max = crate::linalg::MAX_QUBITS)]
    TooManyQubits(usize),
    #[error("matrix is not unitary")]
    NonUnitary,
    #[error("phase is not of unit modulus")]
    NonUnitPhase,
    #[error("mapping is not a bijection")]
    NotBijective,
    #[error("exponential terms {0} and {1} do not commute")]
    NonCommuting(String, String),
    #[error("exponential term does not square to +I or -I")]
    BadExponentTerm,
    #[error("not a Bell/GHZ transform: {0}")]
    NotATransform(String),
    #[error("correction operator is not a tensor product of single-qubit operators")]
    NonProductCorrection,
    #[error("unknown gate `{name}`; known gates: {known}")]
    UnknownGate { name: String, known: String },
    #[error("unknown identity `{name}`; known identities: {known}")]
    UnknownIdentity { name: String, known: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
