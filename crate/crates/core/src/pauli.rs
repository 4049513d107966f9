//! Pauli words `i^s X^x Z^z` and Clifford verification by conjugation.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{exp_commuting_sum, DenseMatrix, QuarterPi, StateVector, MAX_QUBITS};
use crate::ring::RingScalar;

/// `i^phase · ⊗_q X^{x_q} Z^{z_q}`. Bit `n-1-q` of `x`/`z` belongs to qubit `q`,
/// the same layout as basis indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PauliWord {
    n: usize,
    phase: u8,
    x: u32,
    z: u32,
}

fn i_pow(s: u8) -> RingScalar {
    RingScalar::omega_pow(2 * i64::from(s))
}

impl PauliWord {
    pub fn new(n: usize, phase: u8, x: u32, z: u32) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits(n));
        }
        let full = (1u32 << n) - 1;
        if x & !full != 0 || z & !full != 0 {
            return Err(Error::InvalidArgument(format!("bit pattern wider than {n} qubits")));
        }
        Ok(PauliWord { n, phase: phase % 4, x, z })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, 0, 0, 0)
    }

    fn bit(&self, q: usize) -> Result<u32> {
        if q >= self.n {
            return Err(Error::InvalidArgument(format!("qubit {q} outside a {}-qubit word", self.n)));
        }
        Ok(1 << (self.n - 1 - q))
    }

    /// Single-qubit factor `letter` ∈ {I, X, Y, Z} on qubit `q`, with Y = ZX.
    pub fn single(n: usize, q: usize, letter: char) -> Result<Self> {
        let id = Self::identity(n)?;
        let b = id.bit(q)?;
        match letter {
            'I' => Ok(id),
            'X' => Self::new(n, 0, b, 0),
            'Z' => Self::new(n, 0, 0, b),
            // ZX = i²·XZ
            'Y' => Self::new(n, 2, b, b),
            _ => Err(Error::Parse(format!("`{letter}` is not a Pauli letter"))),
        }
    }

    pub fn x_on(n: usize, q: usize) -> Result<Self> {
        Self::single(n, q, 'X')
    }

    pub fn z_on(n: usize, q: usize) -> Result<Self> {
        Self::single(n, q, 'Z')
    }

    pub fn y_on(n: usize, q: usize) -> Result<Self> {
        Self::single(n, q, 'Y')
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn x_bits(&self) -> u32 {
        self.x
    }

    pub fn z_bits(&self) -> u32 {
        self.z
    }

    pub fn with_phase(&self, phase: u8) -> Self {
        PauliWord { phase: phase % 4, ..*self }
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn mul(&self, other: &PauliWord) -> Result<PauliWord> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "Pauli words on {} and {} qubits",
                self.n, other.n
            )));
        }
        let swaps = (self.z & other.x).count_ones() as u8 % 2;
        Ok(PauliWord {
            n: self.n,
            phase: (self.phase + other.phase + 2 * swaps) % 4,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
        })
    }

    pub fn commutes_with(&self, other: &PauliWord) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }

    /// True when the word squares to +I (a Hermitian word).
    pub fn is_hermitian(&self) -> bool {
        (2 * self.phase as u32 + 2 * (self.x & self.z).count_ones()).is_multiple_of(4)
    }

    pub fn to_matrix(&self) -> DenseMatrix {
        let dim = 1usize << self.n;
        let mut m = DenseMatrix::zeros(dim, dim);
        let base = i_pow(self.phase);
        for b in 0..dim {
            let v = if (self.z as usize & b).count_ones().is_multiple_of(2) { base } else { -base };
            m.set(b ^ self.x as usize, b, v);
        }
        m
    }

    /// The word whose matrix is exactly `m`, if any.
    pub fn from_matrix(m: &DenseMatrix) -> Option<PauliWord> {
        let n = m.qubits()?;
        let pattern = m.monomial_pattern()?;
        let (x, v0) = pattern[0];
        let s = v0.omega_exponent().filter(|e| e % 2 == 0)? / 2;
        let mut z = 0u32;
        for q in 0..n {
            let b = 1usize << (n - 1 - q);
            let (_, v) = pattern[b];
            if v == -v0 {
                z |= b as u32;
            }
        }
        let w = PauliWord::new(n, s, x as u32, z).ok()?;
        (w.to_matrix() == *m).then_some(w)
    }

    pub fn apply(&self, s: &StateVector) -> Result<StateVector> {
        if s.qubits() != self.n {
            return Err(Error::DimensionMismatch("Pauli word and state sizes differ".into()));
        }
        let base = i_pow(self.phase);
        let mut out = vec![RingScalar::ZERO; s.amps().len()];
        for (b, a) in s.amps().iter().enumerate() {
            let v = a.checked_mul(&base)?;
            out[b ^ self.x as usize] = if (self.z as usize & b).count_ones().is_multiple_of(2) { v } else { v.checked_neg()? };
        }
        StateVector::from_amps(out)
    }

    fn letter(&self, q: usize) -> char {
        let b = 1u32 << (self.n - 1 - q);
        match (self.x & b != 0, self.z & b != 0) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        }
    }

    // Each XZ on one qubit is rendered as Y = −XZ.
    fn display_phase(&self) -> u8 {
        ((self.phase as u32 + 2 * (self.x & self.z).count_ones()) % 4) as u8
    }

    fn prefix(&self) -> &'static str {
        ["", "i", "-", "-i"][self.display_phase() as usize]
    }

    /// Dense rendering such as `-iYX` or `ZI`.
    pub fn render_dense(&self) -> String {
        let letters: String = (0..self.n).map(|q| self.letter(q)).collect();
        format!("{}{letters}", self.prefix())
    }

    /// Parses `-Y1X2X3`, `iZ1Y2`, `I`, or dense strings such as `-iYX`.
    pub fn parse(s: &str, n: usize) -> Result<PauliWord> {
        let s = s.trim();
        let bad = |why: &str| Error::Parse(format!("Pauli word `{s}`: {why}"));
        let mut rest = s.strip_prefix('+').unwrap_or(s);
        let mut phase = 0u8;
        if let Some(r) = rest.strip_prefix('-') {
            phase += 2;
            rest = r;
        }
        if let Some(r) = rest.strip_prefix('i') {
            phase += 1;
            rest = r;
        }
        if rest.is_empty() {
            return Err(bad("no operator"));
        }
        let mut word = Self::identity(n)?.with_phase(phase);
        if !rest.chars().any(|c| c.is_ascii_digit()) {
            if rest == "I" {
                return Ok(word);
            }
            if rest.chars().count() != n {
                return Err(bad(&format!("expected {n} letters")));
            }
            for (q, c) in rest.chars().enumerate() {
                word = word.mul(&Self::single(n, q, c)?)?;
            }
            return Ok(word);
        }
        let chars: Vec<char> = rest.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let letter = chars[i];
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let site: String = chars[start..i].iter().collect();
            let site: usize = site.parse().map_err(|_| bad("missing qubit index"))?;
            if site == 0 || site > n {
                return Err(bad(&format!("qubit index {site} outside 1..={n}")));
            }
            word = word.mul(&Self::single(n, site - 1, letter)?)?;
        }
        Ok(word)
    }
}

impl fmt::Display for PauliWord {
    /// Sparse rendering with 1-based sites, e.g. `-Y1X2X3`; identity is `I`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.prefix())?;
        if self.is_identity_up_to_phase() {
            return write!(f, "I");
        }
        for q in 0..self.n {
            let c = self.letter(q);
            if c != 'I' {
                write!(f, "{c}{}", q + 1)?;
            }
        }
        Ok(())
    }
}

/// X_1..X_n followed by Z_1..Z_n.
pub fn generators(n: usize) -> Result<Vec<PauliWord>> {
    let mut out = Vec::with_capacity(2 * n);
    for q in 0..n {
        out.push(PauliWord::x_on(n, q)?);
    }
    for q in 0..n {
        out.push(PauliWord::z_on(n, q)?);
    }
    Ok(out)
}

/// exp of a commuting sum of integer multiples of Pauli words; see
/// [`exp_commuting_sum`] for the Hermitian/anti-Hermitian convention.
pub fn exp_pauli_sum(terms: &[(PauliWord, i64)], angle: QuarterPi) -> Result<DenseMatrix> {
    for (a, (p, _)) in terms.iter().enumerate() {
        for (q, _) in &terms[a + 1..] {
            if !p.commutes_with(q) {
                return Err(Error::NonCommuting(p.render_dense(), q.render_dense()));
            }
        }
    }
    let mats: Vec<(DenseMatrix, i64)> = terms.iter().map(|(p, c)| (p.to_matrix(), *c)).collect();
    exp_commuting_sum(&mats, angle)
}

/// A unit scalar times a bare Pauli word; covers phases outside {±1, ±i}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PhasedPauli {
    phase: RingScalar,
    word: PauliWord,
}

impl PhasedPauli {
    pub fn new(phase: RingScalar, word: PauliWord) -> Result<Self> {
        if !phase.is_unit_modulus()? {
            return Err(Error::NonUnitPhase);
        }
        let folded = phase.checked_mul(&i_pow(word.phase()))?;
        Ok(PhasedPauli { phase: folded, word: word.with_phase(0) })
    }

    pub fn phase(&self) -> RingScalar {
        self.phase
    }

    /// The bare word `X^x Z^z` without phase.
    pub fn word(&self) -> PauliWord {
        self.word
    }

    pub fn to_matrix(&self) -> Result<DenseMatrix> {
        self.word.to_matrix().scale(&self.phase)
    }

    /// Recognizes `λ·P` with λ any unit of the ring.
    pub fn from_matrix(m: &DenseMatrix) -> Option<PhasedPauli> {
        let pattern = m.monomial_pattern()?;
        let lambda = pattern[0].1;
        if !lambda.is_unit_modulus().ok()? {
            return None;
        }
        let bare = PauliWord::from_matrix(&m.scale(&lambda.conj()).ok()?)?;
        PhasedPauli::new(lambda, bare).ok()
    }

    /// The Pauli-group element when the phase is a power of i.
    pub fn as_pauli(&self) -> Option<PauliWord> {
        let e = self.phase.omega_exponent()?;
        (e % 2 == 0).then(|| self.word.with_phase(e / 2))
    }
}

impl fmt::Display for PhasedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_pauli() {
            Some(p) => write!(f, "{p}"),
            None => {
                // Odd powers of ω: write as ω·(i^s P).
                let e = self.phase.omega_exponent().map(i64::from);
                match e {
                    Some(e) => write!(f, "w*{}", self.word.with_phase(((e - 1) / 2) as u8)),
                    None => write!(f, "{}*{}", self.phase, self.word),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugationResult {
    Pauli(PauliWord),
    Residue(DenseMatrix),
}

impl ConjugationResult {
    pub fn as_pauli(&self) -> Option<&PauliWord> {
        match self {
            ConjugationResult::Pauli(p) => Some(p),
            ConjugationResult::Residue(_) => None,
        }
    }

    pub fn to_matrix(&self) -> DenseMatrix {
        match self {
            ConjugationResult::Pauli(p) => p.to_matrix(),
            ConjugationResult::Residue(m) => m.clone(),
        }
    }
}

impl fmt::Display for ConjugationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjugationResult::Pauli(p) => write!(f, "{p}"),
            ConjugationResult::Residue(_) => write!(f, "<non-Pauli>"),
        }
    }
}

/// u·p·u†, recognized as a Pauli word when possible.
pub fn conjugate_by(u: &DenseMatrix, p: &PauliWord) -> Result<ConjugationResult> {
    if u.qubits() != Some(p.n()) {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} unitary against a {}-qubit word",
            u.rows(),
            u.cols(),
            p.n()
        )));
    }
    let m = u.matmul(&p.to_matrix())?.matmul(&u.dagger())?;
    Ok(match PauliWord::from_matrix(&m) {
        Some(w) => ConjugationResult::Pauli(w),
        None => ConjugationResult::Residue(m),
    })
}

pub fn conjugation_table(u: &DenseMatrix) -> Result<Vec<(PauliWord, ConjugationResult)>> {
    let n = u
        .qubits()
        .ok_or_else(|| Error::DimensionMismatch("conjugation table needs a 2^n x 2^n matrix".into()))?;
    generators(n)?
        .into_iter()
        .map(|g| Ok((g, conjugate_by(u, &g)?)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliffordCheck {
    Clifford(Vec<(PauliWord, PauliWord)>),
    NotClifford { generator: PauliWord, residue: DenseMatrix },
}

impl CliffordCheck {
    pub fn is_clifford(&self) -> bool {
        matches!(self, CliffordCheck::Clifford(_))
    }
}

pub fn is_clifford(u: &DenseMatrix) -> Result<CliffordCheck> {
    let mut table = Vec::new();
    for (g, r) in conjugation_table(u)? {
        match r {
            ConjugationResult::Pauli(p) => table.push((g, p)),
            ConjugationResult::Residue(m) => return Ok(CliffordCheck::NotClifford { generator: g, residue: m }),
        }
    }
    Ok(CliffordCheck::Clifford(table))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> PauliWord {
        PauliWord::parse(s, n).unwrap()
    }

    #[test]
    fn products_follow_the_phase_rule() {
        let x = p("X", 1);
        let z = p("Z", 1);
        let xz = x.mul(&z).unwrap();
        assert_eq!((xz.phase(), xz.x_bits(), xz.z_bits()), (0, 1, 1));
        let zx = z.mul(&x).unwrap();
        assert_eq!((zx.phase(), zx.x_bits(), zx.z_bits()), (2, 1, 1));
        assert_eq!(zx, p("Y", 1));
        let sq = xz.mul(&xz).unwrap();
        assert_eq!((sq.phase(), sq.x_bits(), sq.z_bits()), (2, 0, 0));
    }

    #[test]
    fn y_is_the_real_matrix_zx() {
        let y = DenseMatrix::parse_literal(&["0 1", "-1 0"], 0).unwrap();
        assert_eq!(p("Y", 1).to_matrix(), y);
        assert!(!p("Y", 1).is_hermitian());
        assert!(p("-iY", 1).is_hermitian());
    }

    #[test]
    fn from_matrix_examples() {
        let w = PauliWord::from_matrix(&DenseMatrix::identity(4)).unwrap();
        assert_eq!((w.phase(), w.x_bits(), w.z_bits()), (0, 0, 0));
        let mxx = p("XX", 2).to_matrix().neg().unwrap();
        let w = PauliWord::from_matrix(&mxx).unwrap();
        assert_eq!((w.phase(), w.x_bits(), w.z_bits()), (2, 0b11, 0));
        let z1 = p("Z1", 2).to_matrix();
        let residue = z1.add(&p("iZ1X1X2", 2).to_matrix()).unwrap();
        assert_eq!(PauliWord::from_matrix(&residue), None);
        let half = DenseMatrix::identity(2).scale(&RingScalar::inv_sqrt2()).unwrap();
        assert_eq!(PauliWord::from_matrix(&half), None);
    }

    #[test]
    fn round_trip_all_words_up_to_three_qubits() {
        for n in 1..=3 {
            let full = 1u32 << n;
            for s in 0..4 {
                for x in 0..full {
                    for z in 0..full {
                        let w = PauliWord::new(n, s, x, z).unwrap();
                        assert_eq!(PauliWord::from_matrix(&w.to_matrix()), Some(w));
                        assert_eq!(PauliWord::parse(&w.to_string(), n).unwrap(), w);
                        assert_eq!(PauliWord::parse(&w.render_dense(), n).unwrap(), w);
                    }
                }
            }
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(p("Z1Y2", 2).with_phase(p("Z1Y2", 2).phase() + 1).to_string(), "iZ1Y2");
        assert_eq!(p("-Y1X2X3", 3).to_string(), "-Y1X2X3");
        assert_eq!(p("-iYX", 2).to_string(), "-iY1X2");
        assert_eq!(p("I", 3).to_string(), "I");
        assert_eq!(p("-I", 2).to_string(), "-I");
        assert_eq!(p("X1Z1", 1).to_string(), "-Y1");
        assert!(PauliWord::parse("X3", 2).is_err());
        assert!(PauliWord::parse("XQ", 2).is_err());
        assert!(PauliWord::parse("XXX", 2).is_err());
    }

    #[test]
    fn word_action_on_states_matches_matrix() {
        let w = p("-iY1Z3", 3);
        let s = StateVector::basis(3, 0b101).unwrap();
        assert_eq!(w.apply(&s).unwrap(), w.to_matrix().apply(&s).unwrap());
    }

    #[test]
    fn non_commuting_exponent_terms_are_rejected() {
        let r = exp_pauli_sum(&[(p("XI", 2), 1), (p("ZI", 2), 1)], QuarterPi(1));
        assert!(matches!(r, Err(Error::NonCommuting(_, _))));
    }

    #[test]
    fn phased_pauli_recognition() {
        let w = RingScalar::omega_pow(1);
        let m = p("X", 1).to_matrix().scale(&w).unwrap();
        let pp = PhasedPauli::from_matrix(&m).unwrap();
        assert_eq!(pp.phase(), w);
        assert_eq!(pp.to_matrix().unwrap(), m);
        assert_eq!(pp.to_string(), "w*X1");
        let q = PhasedPauli::new(RingScalar::ONE, p("-iZ", 1)).unwrap();
        assert_eq!(q.to_string(), "-iZ1");
        assert_eq!(q.as_pauli(), Some(p("-iZ", 1)));
    }
}
