//! GHZ and Bell bases, label bookkeeping, and the factorization of a
//! transform as C_H^(n)·P·E.

use std::fmt;

use crate::error::{Error, Result};
use crate::gates::{ch_n, is_matchgate, permutation_gate, phase_gate, MatchgateClass};
use crate::linalg::{DenseMatrix, StateVector, MAX_QUBITS};
use crate::pauli::{conjugate_by, is_clifford, ConjugationResult, PauliWord};
use crate::ring::RingScalar;

/// Bits j_1..j_n of a GHZ label, stored as a basis index with j_1 most
/// significant. j_1 is the phase bit, the rest are parity bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GhzLabel {
    n: usize,
    bits: usize,
}

impl GhzLabel {
    pub fn new(n: usize, bits: &[u8]) -> Result<Self> {
        if bits.len() != n {
            return Err(Error::InvalidArgument(format!("{} bits for a {n}-qubit label", bits.len())));
        }
        if bits.iter().any(|b| *b > 1) {
            return Err(Error::InvalidArgument("label bits must be 0 or 1".into()));
        }
        let idx = bits.iter().fold(0usize, |acc, b| (acc << 1) | usize::from(*b));
        Self::from_index(n, idx)
    }

    pub fn from_index(n: usize, bits: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!("GHZ label on {n} qubits")));
        }
        if bits >= 1 << n {
            return Err(Error::InvalidArgument(format!("label index {bits} on {n} qubits")));
        }
        Ok(GhzLabel { n, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> usize {
        self.bits
    }

    /// j_q for q = 1..=n.
    pub fn bit(&self, q: usize) -> usize {
        (self.bits >> (self.n - q)) & 1
    }

    /// J = 2^{n-1} j_1 + … + j_n + 1.
    pub fn index_j(&self) -> usize {
        self.bits + 1
    }

    /// K of the label (j_1, j_1+j_2, …, j_1+j_n).
    pub fn index_k(&self) -> usize {
        let j1 = self.bit(1);
        let mut k = j1;
        for q in 2..=self.n {
            k = (k << 1) | (j1 ^ self.bit(q));
        }
        k + 1
    }
}

impl fmt::Display for GhzLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 1..=self.n {
            write!(f, "{}", self.bit(q))?;
        }
        Ok(())
    }
}

/// Piecewise J → K map between the two GHZ labelings.
pub fn j_to_k(j: usize, n: usize) -> Result<usize> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::InvalidArgument(format!("label map on {n} qubits")));
    }
    let dim = 1usize << n;
    let half = dim >> 1;
    match j {
        j if (1..=half).contains(&j) => Ok(j),
        j if (half + 1..=dim).contains(&j) => Ok(dim + half + 1 - j),
        _ => Err(Error::InvalidArgument(format!("J = {j} outside 1..={dim}"))),
    }
}

/// (|0 j_2…j_n⟩ + (−1)^{j_1} |1 j̄_2…j̄_n⟩)/√2.
pub fn ghz_state(label: &GhzLabel) -> StateVector {
    let n = label.n;
    let low = label.bits & ((1 << (n - 1)) - 1);
    let high = ((1 << n) - 1) ^ low;
    let h = RingScalar::inv_sqrt2();
    let mut amps = vec![RingScalar::ZERO; 1 << n];
    amps[low] = h;
    amps[high] = if label.bit(1) == 0 { h } else { -h };
    StateVector::from_amps(amps).expect("valid register size")
}

/// (I ⊗ X^l Z^k)|ψ(0,0)⟩.
pub fn bell_state(k: u8, l: u8) -> Result<StateVector> {
    if k > 1 || l > 1 {
        return Err(Error::InvalidArgument("Bell labels must be 0 or 1".into()));
    }
    let h = RingScalar::inv_sqrt2();
    let psi00 = StateVector::from_amps(vec![h, RingScalar::ZERO, RingScalar::ZERO, h])?;
    let mut w = PauliWord::identity(2)?;
    if l == 1 {
        w = w.mul(&PauliWord::x_on(2, 1)?)?;
    }
    if k == 1 {
        w = w.mul(&PauliWord::z_on(2, 1)?)?;
    }
    w.apply(&psi00)
}

/// Checks the phase-bit and parity-bit eigenvalue equations of `label` on `s`.
pub fn verify_stabilizers(s: &StateVector, label: &GhzLabel) -> Result<bool> {
    let n = label.n;
    if s.qubits() != n {
        return Ok(false);
    }
    let eigen = |w: PauliWord, bit: usize| -> Result<bool> {
        let expected = if bit == 0 { s.clone() } else { s.scale(&RingScalar::from_int(-1))? };
        Ok(w.apply(s)? == expected)
    };
    let all_x = PauliWord::new(n, 0, (1 << n) - 1, 0)?;
    if !eigen(all_x, label.bit(1))? {
        return Ok(false);
    }
    for i in 2..=n {
        let zz = PauliWord::z_on(n, i - 2)?.mul(&PauliWord::z_on(n, i - 1)?)?;
        let bit = if i == 2 { label.bit(2) } else { label.bit(i) ^ label.bit(i - 1) };
        if !eigen(zz, bit)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// u = C_H^(n)·P·E: column j of u is `phases[j]` times the GHZ state labeled
/// `perm[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformFactorization {
    n: usize,
    perm: Vec<usize>,
    phases: Vec<RingScalar>,
}

impl TransformFactorization {
    pub fn new(n: usize, perm: Vec<usize>, phases: Vec<RingScalar>) -> Result<Self> {
        // Validates both maps.
        permutation_gate(n, &perm)?;
        phase_gate(n, &phases)?;
        Ok(TransformFactorization { n, perm, phases })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn phases(&self) -> &[RingScalar] {
        &self.phases
    }

    pub fn permutation_matrix(&self) -> DenseMatrix {
        permutation_gate(self.n, &self.perm).expect("validated permutation")
    }

    pub fn phase_matrix(&self) -> DenseMatrix {
        DenseMatrix::diagonal(&self.phases)
    }

    pub fn rebuild(&self) -> Result<DenseMatrix> {
        ch_n(self.n)?.matmul(&self.permutation_matrix())?.matmul(&self.phase_matrix())
    }
}

impl fmt::Display for TransformFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = |j: usize| GhzLabel { n: self.n, bits: j }.to_string();
        let p: Vec<String> = self.perm.iter().enumerate().map(|(j, &k)| format!("{}->{}", label(j), label(k))).collect();
        let e: Vec<String> = self.phases.iter().map(RingScalar::render).collect();
        write!(f, "P = {{{}}}, E = diag({})", p.join(", "), e.join(", "))
    }
}

pub fn factor_transform(u: &DenseMatrix) -> Result<TransformFactorization> {
    let n = u
        .qubits()
        .ok_or_else(|| Error::DimensionMismatch("transform must be 2^n x 2^n".into()))?;
    if n == 0 {
        return Err(Error::NotATransform("zero-qubit matrix".into()));
    }
    let m = ch_n(n)?.dagger().matmul(u)?;
    let pattern = m
        .monomial_pattern()
        .ok_or_else(|| Error::NotATransform("columns are not single GHZ states".into()))?;
    let mut perm = Vec::with_capacity(pattern.len());
    let mut phases = Vec::with_capacity(pattern.len());
    for (row, v) in pattern {
        if !v.is_unit_modulus()? {
            return Err(Error::NotATransform("column phase is not of unit modulus".into()));
        }
        perm.push(row);
        phases.push(v);
    }
    TransformFactorization::new(n, perm, phases)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransformClass {
    pub clifford: bool,
    /// Defined for two-qubit gates only.
    pub parity_preserving: Option<bool>,
    pub matchgate: Option<bool>,
}

impl TransformClass {
    /// Class name in the wording of the two-qubit classification.
    pub fn label(&self) -> String {
        let c = if self.clifford { "Clifford" } else { "non-Clifford" };
        match (self.parity_preserving, self.matchgate) {
            (Some(_), Some(true)) if self.clifford => "Clifford, matchgate".into(),
            (Some(_), Some(true)) => "matchgate, non-Clifford".into(),
            (Some(true), _) if self.clifford => "Clifford, parity-preserving".into(),
            (Some(true), _) => "parity-preserving, non-Clifford".into(),
            (Some(false), _) => format!("{c}, non-parity-preserving"),
            _ => c.into(),
        }
    }
}

impl fmt::Display for TransformClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn classify(u: &DenseMatrix) -> Result<TransformClass> {
    let clifford = is_clifford(u)?.is_clifford();
    if u.qubits() != Some(2) {
        return Ok(TransformClass { clifford, parity_preserving: None, matchgate: None });
    }
    let m = is_matchgate(u)?;
    Ok(TransformClass {
        clifford,
        parity_preserving: Some(m != MatchgateClass::Neither),
        matchgate: Some(m == MatchgateClass::Matchgate),
    })
}

/// `Some(l)` when u·Z_site·u† = (−1)^l X⊗…⊗X; `site` counts from 0.
pub fn multicopy_x_check(u: &DenseMatrix, site: usize) -> Result<Option<u8>> {
    let n = u
        .qubits()
        .ok_or_else(|| Error::DimensionMismatch("transform must be 2^n x 2^n".into()))?;
    let all_x = PauliWord::new(n, 0, (1 << n) - 1, 0)?;
    Ok(match conjugate_by(u, &PauliWord::z_on(n, site)?)? {
        ConjugationResult::Pauli(p) if p == all_x => Some(0),
        ConjugationResult::Pauli(p) if p == all_x.with_phase(2) => Some(1),
        _ => None,
    })
}
