pub mod error;
pub mod expr;
pub mod formula;
pub mod gates;
pub mod ghz;
pub mod golden;
pub mod identities;
pub mod interchange;
pub mod linalg;
pub mod nonlocal;
pub mod pauli;
pub mod report;
pub mod ring;
pub mod suites;
pub mod teleport;

pub use error::{Error, Result};
pub use linalg::{DenseMatrix, QuarterPi, StateVector};
pub use pauli::{ConjugationResult, PauliWord, PhasedPauli};
pub use ring::RingScalar;
