//! Matrix interchange files.
//!
//! ```json
//! {"qubits": 1, "entries": [[1,0,0,0,0], [0,0,0,0,0], [0,0,0,0,0], [0,1,0,0,0]]}
//! ```
//!
//! `entries` lists row-major 5-tuples [a, b, c, d, k] for
//! (a + bω + cω² + dω³)/√2^k. A `complex` list of [re, im] pairs may be given
//! instead; such matrices are only usable by the floating-point layer.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::make_gate;
use crate::linalg::DenseMatrix;
use crate::nonlocal::{complex_matrix, Mat4};
use crate::ring::RingScalar;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    qubits: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    complex: Option<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MatrixInput {
    Exact(DenseMatrix),
    /// Lossy input; `qubits` and row-major entries.
    Complex(usize, Vec<Complex64>),
}

impl MatrixInput {
    pub fn qubits(&self) -> usize {
        match self {
            MatrixInput::Exact(m) => m.qubits().unwrap_or(0),
            MatrixInput::Complex(n, _) => *n,
        }
    }

    pub fn exact(&self) -> Result<&DenseMatrix> {
        match self {
            MatrixInput::Exact(m) => Ok(m),
            MatrixInput::Complex(..) => {
                Err(Error::InvalidArgument("this check needs exact entries; complex input only supports entangle".into()))
            }
        }
    }

    pub fn complex4(&self) -> Result<Mat4> {
        match self {
            MatrixInput::Exact(m) => complex_matrix(m),
            MatrixInput::Complex(2, v) => Ok(Mat4::from_row_slice(v)),
            MatrixInput::Complex(n, _) => Err(Error::DimensionMismatch(format!("expected 2 qubits, got {n}"))),
        }
    }
}

pub fn parse_matrix(text: &str) -> Result<MatrixInput> {
    let f: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix file: {e}")))?;
    if f.qubits == 0 || f.qubits > crate::linalg::MAX_QUBITS {
        return Err(Error::TooManyQubits(f.qubits));
    }
    let dim = 1usize << f.qubits;
    let count_err = |got: usize| Error::Parse(format!("matrix file: expected {} entries, got {got}", dim * dim));
    match (f.entries, f.complex) {
        (Some(entries), None) => {
            if entries.len() != dim * dim {
                return Err(count_err(entries.len()));
            }
            let data = entries
                .iter()
                .map(|t| {
                    let t: [i64; 5] = t
                        .as_slice()
                        .try_into()
                        .map_err(|_| Error::Parse(format!("matrix file: scalar tuple {t:?} must have 5 entries")))?;
                    RingScalar::from_tuple(t)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(MatrixInput::Exact(DenseMatrix::new(dim, dim, data)?))
        }
        (None, Some(c)) => {
            if c.len() != dim * dim {
                return Err(count_err(c.len()));
            }
            Ok(MatrixInput::Complex(f.qubits, c.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()))
        }
        _ => Err(Error::Parse("matrix file: give exactly one of `entries` or `complex`".into())),
    }
}

pub fn read_matrix_file(path: &Path) -> Result<MatrixInput> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text)
}

pub fn write_matrix(m: &DenseMatrix) -> Result<String> {
    let qubits = m.qubits().ok_or_else(|| Error::DimensionMismatch("not a qubit operator".into()))?;
    let f = MatrixFile { qubits, entries: Some(m.data().iter().map(|x| x.to_tuple().to_vec()).collect()), complex: None };
    serde_json::to_string(&f).map_err(|e| Error::Parse(e.to_string()))
}

/// A catalog gate name, or else a path to a matrix file.
pub fn resolve_operator(arg: &str) -> Result<MatrixInput> {
    match make_gate(arg) {
        Ok(m) => Ok(MatrixInput::Exact(m)),
        Err(e) => {
            let p = Path::new(arg);
            if p.is_file() {
                read_matrix_file(p)
            } else {
                Err(e)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_gate_round_trip() {
        let text = r#"{"qubits": 1, "entries": [[1,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],[0,1,0,0,0]]}"#;
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.exact().unwrap(), &make_gate("T").unwrap());
        let again = parse_matrix(&write_matrix(m.exact().unwrap()).unwrap()).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_matrix(r#"{"qubits": 1, "entries": [[1,0,0,0],[0,0,0,0,0],[0,0,0,0,0],[1,0,0,0,0]]}"#).is_err());
        assert!(parse_matrix(r#"{"qubits": 1, "entries": [[1,0,0,0,0]]}"#).is_err());
        assert!(parse_matrix(r#"{"qubits": 1}"#).is_err());
        assert!(parse_matrix("not json").is_err());
    }

    #[test]
    fn complex_entries_are_float_only() {
        let text = r#"{"qubits": 2, "complex": [[1,0],[0,0],[0,0],[0,0],[0,0],[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[1,0],[0,0],[0,0],[1,0],[0,0]]}"#;
        let m = parse_matrix(text).unwrap();
        assert!(m.exact().is_err());
        assert_eq!(m.complex4().unwrap(), complex_matrix(&make_gate("CNOT").unwrap()).unwrap());
    }

    #[test]
    fn names_resolve_before_paths() {
        assert!(resolve_operator("C_HT").is_ok());
        assert!(matches!(resolve_operator("NOT_A_GATE"), Err(Error::UnknownGate { .. })));
    }
}
