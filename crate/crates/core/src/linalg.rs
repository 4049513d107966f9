//! Dense matrices and state vectors over [`RingScalar`].
//!
//! Qubits are numbered from 0 and qubit 0 is the most significant bit of a
//! basis index, i.e. the leftmost tensor factor.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ring::RingScalar;

pub const MAX_QUBITS: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RingScalar>,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim > 1 << MAX_QUBITS {
        return Err(Error::TooManyQubits(dim.trailing_zeros() as usize));
    }
    Ok(())
}

fn qubit_count(dim: usize) -> Option<usize> {
    dim.is_power_of_two().then(|| dim.trailing_zeros() as usize)
}

/// Bits of `idx` at `sites`, first site most significant.
pub(crate) fn extract_bits(idx: usize, sites: &[usize], n: usize) -> usize {
    sites.iter().fold(0, |acc, &q| (acc << 1) | ((idx >> (n - 1 - q)) & 1))
}

/// Inverse of [`extract_bits`]: places the bits of `s` at `sites`.
pub(crate) fn deposit_bits(s: usize, sites: &[usize], n: usize) -> usize {
    let k = sites.len();
    sites
        .iter()
        .enumerate()
        .fold(0, |acc, (t, &q)| acc | (((s >> (k - 1 - t)) & 1) << (n - 1 - q)))
}

fn check_sites(sites: &[usize], n: usize) -> Result<usize> {
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits(n));
    }
    let mut mask = 0usize;
    for &q in sites {
        if q >= n {
            return Err(Error::InvalidArgument(format!("qubit {q} outside a {n}-qubit register")));
        }
        let bit = 1 << (n - 1 - q);
        if mask & bit != 0 {
            return Err(Error::InvalidArgument(format!("qubit {q} listed twice")));
        }
        mask |= bit;
    }
    Ok(mask)
}

fn parse_literal_entry(tok: &str) -> Result<RingScalar> {
    let bad = || Error::Parse(format!("bad matrix literal entry `{tok}`"));
    let (neg, rest) = match tok.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, tok),
    };
    let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
    let mut tail = &rest[digits.len()..];
    let mut value = if digits.is_empty() {
        RingScalar::ONE
    } else {
        RingScalar::from_int(digits.parse().map_err(|_| bad())?)
    };
    if let Some(t) = tail.strip_prefix('i') {
        value = value.checked_mul(&RingScalar::i())?;
        tail = t;
    }
    if let Some(t) = tail.strip_prefix('w') {
        value = value.checked_mul(&RingScalar::omega_pow(1))?;
        tail = t;
    }
    if !tail.is_empty() || rest.is_empty() {
        return Err(bad());
    }
    if neg {
        value = value.checked_neg()?;
    }
    Ok(value)
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<RingScalar>) -> Result<Self> {
        check_dim(rows)?;
        check_dim(cols)?;
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![RingScalar::ZERO; rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.data[i * dim + i] = RingScalar::ONE;
        }
        m
    }

    pub fn identity_qubits(n: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits(n));
        }
        Ok(Self::identity(1 << n))
    }

    pub fn from_rows(rows: Vec<Vec<RingScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix from whitespace-separated entries such as `1`, `-i`,
    /// `iw` (= iω) or `-2`, all divided by √2^k.
    pub fn parse_literal(rows: &[&str], k: u32) -> Result<Self> {
        let scale = RingScalar::new(1, 0, 0, 0, k)?;
        let parsed = rows
            .iter()
            .map(|row| {
                row.split_whitespace()
                    .map(|tok| parse_literal_entry(tok)?.checked_mul(&scale))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }

    pub fn diagonal(entries: &[RingScalar]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = *e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Qubit count when the matrix is 2^n x 2^n.
    pub fn qubits(&self) -> Option<usize> {
        if self.is_square() {
            qubit_count(self.rows)
        } else {
            None
        }
    }

    pub fn get(&self, r: usize, c: usize) -> RingScalar {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RingScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[RingScalar] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<RingScalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].checked_add(&a.checked_mul(&b)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Product of a sequence, applied left to right as written.
    pub fn product<'a, I>(factors: I) -> Result<DenseMatrix>
    where
        I: IntoIterator<Item = &'a DenseMatrix>,
    {
        let mut iter = factors.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::InvalidArgument("empty product".into()))?
            .clone();
        iter.try_fold(first, |acc, m| acc.matmul(m))
    }

    /// Kronecker product; `self` supplies the most significant index bits.
    pub fn tensor(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        check_dim(rows)?;
        check_dim(cols)?;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a.checked_mul(&b)?);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn conj(&self) -> DenseMatrix {
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(RingScalar::conj).collect() }
    }

    pub fn dagger(&self) -> DenseMatrix {
        self.transpose().conj()
    }

    pub fn scale(&self, s: &RingScalar) -> Result<DenseMatrix> {
        let data = self.data.iter().map(|x| x.checked_mul(s)).collect::<Result<_>>()?;
        Ok(DenseMatrix { rows: self.rows, cols: self.cols, data })
    }

    fn zip_with(
        &self,
        other: &DenseMatrix,
        f: impl Fn(&RingScalar, &RingScalar) -> Result<RingScalar>,
    ) -> Result<DenseMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("elementwise operation on different shapes".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect::<Result<_>>()?;
        Ok(DenseMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.zip_with(other, RingScalar::checked_add)
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.zip_with(other, RingScalar::checked_sub)
    }

    pub fn neg(&self) -> Result<DenseMatrix> {
        self.scale(&RingScalar::from_int(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RingScalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_unitary(&self) -> Result<bool> {
        if !self.is_square() {
            return Ok(false);
        }
        Ok(self.matmul(&self.dagger())?.is_identity())
    }

    pub fn commutes_with(&self, other: &DenseMatrix) -> Result<bool> {
        Ok(self.matmul(other)? == other.matmul(self)?)
    }

    /// The unit-modulus λ with `self = λ·other`, if one exists.
    pub fn equal_up_to_phase(&self, other: &DenseMatrix) -> Option<RingScalar> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        phase_between(&self.data, &other.data)
    }

    /// Determinant of a 2x2 matrix.
    pub fn det2(&self) -> Result<RingScalar> {
        if self.rows != 2 || self.cols != 2 {
            return Err(Error::DimensionMismatch("det2 needs a 2x2 matrix".into()));
        }
        self.get(0, 0).checked_mul(&self.get(1, 1))?.checked_sub(&self.get(0, 1).checked_mul(&self.get(1, 0))?)
    }

    /// Places a k-qubit operator on `sites` of an n-qubit register; the first
    /// listed site is the operator's most significant qubit.
    pub fn embed(&self, sites: &[usize], n: usize) -> Result<DenseMatrix> {
        if self.qubits() != Some(sites.len()) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} operator on {} sites",
                self.rows,
                self.cols,
                sites.len()
            )));
        }
        let mask = check_sites(sites, n)?;
        let dim = 1 << n;
        let sub = 1 << sites.len();
        let mut out = Self::zeros(dim, dim);
        for col in 0..dim {
            let s_in = extract_bits(col, sites, n);
            let rest = col & !mask;
            for s_out in 0..sub {
                let v = self.get(s_out, s_in);
                if !v.is_zero() {
                    out.set(rest | deposit_bits(s_out, sites, n), col, v);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, s: &StateVector) -> Result<StateVector> {
        if self.cols != s.amps.len() || !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} operator on a {}-amplitude state",
                self.rows,
                self.cols,
                s.amps.len()
            )));
        }
        let mut out = vec![RingScalar::ZERO; self.rows];
        for (j, a) in s.amps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    *o = o.checked_add(&m.checked_mul(a)?)?;
                }
            }
        }
        Ok(StateVector { qubits: s.qubits, amps: out })
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.data.iter().map(RingScalar::to_complex).collect()
    }

    /// Index pairs `(row, value)` per column when every column and row has
    /// exactly one nonzero entry.
    pub fn monomial_pattern(&self) -> Option<Vec<(usize, RingScalar)>> {
        if !self.is_square() {
            return None;
        }
        let mut seen = vec![false; self.rows];
        let mut out = Vec::with_capacity(self.cols);
        for c in 0..self.cols {
            let mut nz = (0..self.rows).filter(|&r| !self.get(r, c).is_zero());
            let r = nz.next()?;
            if nz.next().is_some() || seen[r] {
                return None;
            }
            seen[r] = true;
            out.push((r, self.get(r, c)));
        }
        Some(out)
    }
}

fn phase_between(a: &[RingScalar], b: &[RingScalar]) -> Option<RingScalar> {
    let idx = b.iter().position(|x| !x.is_zero())?;
    let lambda = a[idx].checked_div(&b[idx]).ok()?;
    if !lambda.is_unit_modulus().ok()? {
        return None;
    }
    for (x, y) in a.iter().zip(b) {
        if *x != lambda.checked_mul(y).ok()? {
            return None;
        }
    }
    Some(lambda)
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).render()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

/// Pure state on `qubits` qubits.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StateVector {
    qubits: usize,
    amps: Vec<RingScalar>,
}

impl StateVector {
    pub fn from_amps(amps: Vec<RingScalar>) -> Result<Self> {
        let qubits = qubit_count(amps.len())
            .ok_or_else(|| Error::DimensionMismatch(format!("{} amplitudes is not a power of two", amps.len())))?;
        if qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(qubits));
        }
        Ok(StateVector { qubits, amps })
    }

    pub fn basis(n: usize, idx: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits(n));
        }
        if idx >= 1 << n {
            return Err(Error::InvalidArgument(format!("basis index {idx} on {n} qubits")));
        }
        let mut amps = vec![RingScalar::ZERO; 1 << n];
        amps[idx] = RingScalar::ONE;
        Ok(StateVector { qubits: n, amps })
    }

    /// `(|0⟩ + |1⟩)/√2`.
    pub fn plus() -> Self {
        let h = RingScalar::inv_sqrt2();
        StateVector { qubits: 1, amps: vec![h, h] }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amps(&self) -> &[RingScalar] {
        &self.amps
    }

    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let n = self.qubits + other.qubits;
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits(n));
        }
        let mut amps = Vec::with_capacity(1 << n);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a.checked_mul(b)?);
            }
        }
        Ok(StateVector { qubits: n, amps })
    }

    /// Applies a k-qubit operator to `sites` without building the full matrix.
    pub fn apply_on(&self, op: &DenseMatrix, sites: &[usize]) -> Result<StateVector> {
        if op.qubits() != Some(sites.len()) {
            return Err(Error::DimensionMismatch("operator size does not match site count".into()));
        }
        let n = self.qubits;
        let mask = check_sites(sites, n)?;
        let sub = 1 << sites.len();
        let mut out = vec![RingScalar::ZERO; self.amps.len()];
        for (idx, a) in self.amps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let s_in = extract_bits(idx, sites, n);
            let rest = idx & !mask;
            for s_out in 0..sub {
                let m = op.get(s_out, s_in);
                if !m.is_zero() {
                    let t = rest | deposit_bits(s_out, sites, n);
                    out[t] = out[t].checked_add(&m.checked_mul(a)?)?;
                }
            }
        }
        Ok(StateVector { qubits: n, amps: out })
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Result<RingScalar> {
        if self.amps.len() != other.amps.len() {
            return Err(Error::DimensionMismatch("inner product of different sizes".into()));
        }
        self.amps
            .iter()
            .zip(&other.amps)
            .try_fold(RingScalar::ZERO, |acc, (a, b)| acc.checked_add(&a.conj().checked_mul(b)?))
    }

    pub fn norm_sq(&self) -> Result<RingScalar> {
        self.inner(self)
    }

    pub fn scale(&self, s: &RingScalar) -> Result<StateVector> {
        let amps = self.amps.iter().map(|a| a.checked_mul(s)).collect::<Result<_>>()?;
        Ok(StateVector { qubits: self.qubits, amps })
    }

    pub fn equal_up_to_phase(&self, other: &StateVector) -> Option<RingScalar> {
        if self.amps.len() != other.amps.len() {
            return None;
        }
        phase_between(&self.amps, &other.amps)
    }
}

/// An angle m·π/4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuarterPi(pub i64);

impl QuarterPi {
    pub fn cos(self) -> RingScalar {
        match self.0.rem_euclid(8) {
            0 => RingScalar::ONE,
            1 | 7 => RingScalar::inv_sqrt2(),
            2 | 6 => RingScalar::ZERO,
            3 | 5 => -RingScalar::inv_sqrt2(),
            _ => RingScalar::from_int(-1),
        }
    }

    pub fn sin(self) -> RingScalar {
        QuarterPi(self.0 - 2).cos()
    }
}

/// exp of a sum of pairwise commuting terms `c·M` at angle θ. A term with
/// M² = −I contributes e^{θcM}; a term with M² = +I is read as a Hamiltonian
/// and contributes e^{−iθcM}.
pub fn exp_commuting_sum(terms: &[(DenseMatrix, i64)], angle: QuarterPi) -> Result<DenseMatrix> {
    let dim = match terms.first() {
        Some((m, _)) => m.rows(),
        None => return Err(Error::InvalidArgument("exponential of an empty sum".into())),
    };
    let id = DenseMatrix::identity(dim);
    let minus_id = id.neg()?;
    let mut hermitian = Vec::with_capacity(terms.len());
    for (m, _) in terms {
        if m.rows() != dim || !m.is_square() {
            return Err(Error::DimensionMismatch("exponential terms of different sizes".into()));
        }
        let sq = m.matmul(m)?;
        if sq == id {
            hermitian.push(true);
        } else if sq == minus_id {
            hermitian.push(false);
        } else {
            return Err(Error::BadExponentTerm);
        }
    }
    for (a, (ma, _)) in terms.iter().enumerate() {
        for (b, (mb, _)) in terms.iter().enumerate().skip(a + 1) {
            if !ma.commutes_with(mb)? {
                return Err(Error::NonCommuting(format!("term {}", a + 1), format!("term {}", b + 1)));
            }
        }
    }
    let mut out = id.clone();
    for ((m, c), herm) in terms.iter().zip(hermitian) {
        let theta = QuarterPi(angle.0.checked_mul(*c).ok_or(Error::Overflow)?);
        let mut s = theta.sin();
        if herm {
            s = s.checked_mul(&RingScalar::i())?.checked_neg()?;
        }
        let factor = id.scale(&theta.cos())?.add(&m.scale(&s)?)?;
        out = out.matmul(&factor)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(rows: &[&str], k: u32) -> DenseMatrix {
        DenseMatrix::parse_literal(rows, k).unwrap()
    }

    fn h() -> DenseMatrix {
        lit(&["1 1", "1 -1"], 1)
    }

    fn cnot() -> DenseMatrix {
        lit(&["1 0 0 0", "0 1 0 0", "0 0 0 1", "0 0 1 0"], 0)
    }

    fn ch() -> DenseMatrix {
        lit(&["1 0 1 0", "0 1 0 1", "0 1 0 -1", "1 0 -1 0"], 1)
    }

    #[test]
    fn tensor_of_identities() {
        let i2 = DenseMatrix::identity(2);
        assert_eq!(i2.tensor(&i2).unwrap(), DenseMatrix::identity(4));
    }

    #[test]
    fn zz_flips_sign_of_01() {
        let z = lit(&["1 0", "0 -1"], 0);
        let zz = z.tensor(&z).unwrap();
        let s = zz.apply(&StateVector::basis(2, 1).unwrap()).unwrap();
        assert_eq!(s, StateVector::basis(2, 1).unwrap().scale(&RingScalar::from_int(-1)).unwrap());
    }

    #[test]
    fn cnot_after_hadamard_is_ch() {
        let m = cnot().matmul(&h().tensor(&DenseMatrix::identity(2)).unwrap()).unwrap();
        assert_eq!(m, ch());
        assert!(ch().matmul(&ch().dagger()).unwrap().is_identity());
        let bell = ch().apply(&StateVector::basis(2, 0).unwrap()).unwrap();
        let r = RingScalar::inv_sqrt2();
        assert_eq!(bell.amps(), &[r, RingScalar::ZERO, RingScalar::ZERO, r]);
    }

    #[test]
    fn dagger_is_involution() {
        let b = lit(&["1 0 0 1", "0 1 -1 0", "0 1 1 0", "-1 0 0 1"], 1);
        assert_eq!(b.dagger().dagger(), b);
    }

    #[test]
    fn phase_recovery() {
        let b = ch();
        assert_eq!(b.equal_up_to_phase(&b), Some(RingScalar::ONE));
        let neg = b.neg().unwrap();
        assert_eq!(neg.equal_up_to_phase(&b), Some(RingScalar::from_int(-1)));
        let w = RingScalar::omega_pow(1);
        assert_eq!(b.scale(&w).unwrap().equal_up_to_phase(&b), Some(w));
        assert_eq!(b.scale(&RingScalar::from_int(2)).unwrap().equal_up_to_phase(&b), None);
        assert_eq!(cnot().equal_up_to_phase(&b), None);
    }

    #[test]
    fn embedding_matches_tensor_and_controls() {
        let hh = h().embed(&[0], 2).unwrap();
        assert_eq!(hh, h().tensor(&DenseMatrix::identity(2)).unwrap());
        let c21 = cnot().embed(&[1, 0], 2).unwrap();
        let expected = lit(&["1 0 0 0", "0 0 0 1", "0 0 1 0", "0 1 0 0"], 0);
        assert_eq!(c21, expected);
        let c13 = cnot().embed(&[0, 2], 3).unwrap();
        assert_eq!(c13.apply(&StateVector::basis(3, 0b100).unwrap()).unwrap(), StateVector::basis(3, 0b101).unwrap());
        assert!(cnot().embed(&[0, 0], 2).is_err());
        assert!(cnot().embed(&[0, 2], 2).is_err());
    }

    #[test]
    fn apply_on_matches_embedded_apply() {
        let s = StateVector::basis(3, 0b110).unwrap();
        let direct = s.apply_on(&ch(), &[2, 0]).unwrap();
        let full = ch().embed(&[2, 0], 3).unwrap().apply(&s).unwrap();
        assert_eq!(direct, full);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        assert!(matches!(h().matmul(&cnot()), Err(Error::DimensionMismatch(_))));
        assert!(DenseMatrix::new(2, 2, vec![RingScalar::ONE]).is_err());
    }

    #[test]
    fn quarter_pi_trig() {
        for m in -9..10 {
            let t = QuarterPi(m);
            let x = m as f64 * std::f64::consts::FRAC_PI_4;
            assert!((t.cos().to_complex().re - x.cos()).abs() < 1e-12);
            assert!((t.sin().to_complex().re - x.sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn exponential_of_zero_angle_is_identity() {
        let x = lit(&["0 1", "1 0"], 0);
        assert!(exp_commuting_sum(&[(x, 1)], QuarterPi(0)).unwrap().is_identity());
    }

    #[test]
    fn exponential_rejects_bad_terms() {
        let x = lit(&["0 1", "1 0"], 0);
        let z = lit(&["1 0", "0 -1"], 0);
        let two = lit(&["2 0", "0 2"], 0);
        assert!(matches!(
            exp_commuting_sum(&[(x, 1), (z, 1)], QuarterPi(1)),
            Err(Error::NonCommuting(_, _))
        ));
        assert_eq!(exp_commuting_sum(&[(two, 1)], QuarterPi(1)), Err(Error::BadExponentTerm));
    }

    #[test]
    fn literal_tokens() {
        let m = lit(&["iw -iw 2 -w"], 0);
        let w = RingScalar::omega_pow(1);
        assert_eq!(m.data(), &[RingScalar::omega_pow(3), -RingScalar::omega_pow(3), RingScalar::from_int(2), -w]);
        assert!(DenseMatrix::parse_literal(&["x"], 0).is_err());
        assert!(DenseMatrix::parse_literal(&["-"], 0).is_err());
    }
}
