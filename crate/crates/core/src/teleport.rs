//! Teleportation with a Bell transform: the teleportation operator, local
//! corrections, gate teleportation and an exact-probability simulator.

use std::cmp::Ordering;
use std::fmt;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ghz::{factor_transform, TransformFactorization};
use crate::linalg::{DenseMatrix, StateVector};
use crate::pauli::{is_clifford, PauliWord, PhasedPauli};
use crate::ring::RingScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Resource on qubits 2-3, measurement on qubits 1-2.
    Left,
    /// Resource on qubits 1-2, measurement on qubits 2-3.
    Right,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Left, Side::Right];

    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

fn require_bell(b: &DenseMatrix) -> Result<TransformFactorization> {
    let f = factor_transform(b)?;
    if f.n() != 2 {
        return Err(Error::NotATransform(format!("{}-qubit transform where a Bell transform is needed", f.n())));
    }
    Ok(f)
}

fn bit_check(v: u8, what: &str) -> Result<usize> {
    if v > 1 {
        return Err(Error::InvalidArgument(format!("{what} must be 0 or 1, got {v}")));
    }
    Ok(usize::from(v))
}

/// (b⁻¹⊗I)(I⊗b) on the left, (I⊗b⁻¹)(b⊗I) on the right.
pub fn teleportation_operator(b: &DenseMatrix, side: Side) -> Result<DenseMatrix> {
    require_bell(b)?;
    let id = DenseMatrix::identity(2);
    let bd = b.dagger();
    match side {
        Side::Left => bd.tensor(&id)?.matmul(&id.tensor(b)?),
        Side::Right => id.tensor(&bd)?.matmul(&b.tensor(&id)?),
    }
}

/// X^l Z^k on one qubit.
fn w_tilde(label: usize) -> PauliWord {
    let (k, l) = (label >> 1, label & 1);
    PauliWord::new(1, 0, l as u32, k as u32).expect("one-qubit word")
}

/// U_ij and V_kl of a Bell transform, indexed by 2i+j and 2k+l.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectionTable {
    factorization: TransformFactorization,
    u: [PhasedPauli; 4],
    v: [PhasedPauli; 4],
}

impl CorrectionTable {
    pub fn factorization(&self) -> &TransformFactorization {
        &self.factorization
    }

    pub fn u(&self, i: u8, j: u8) -> &PhasedPauli {
        &self.u[usize::from(2 * i + j)]
    }

    pub fn v(&self, k: u8, l: u8) -> &PhasedPauli {
        &self.v[usize::from(2 * k + l)]
    }

    pub fn u_matrix(&self, i: u8, j: u8) -> DenseMatrix {
        self.u(i, j).to_matrix().expect("unit phase times a Pauli word")
    }

    pub fn v_matrix(&self, k: u8, l: u8) -> DenseMatrix {
        self.v(k, l).to_matrix().expect("unit phase times a Pauli word")
    }
}

pub fn derive_corrections(b: &DenseMatrix) -> Result<CorrectionTable> {
    let f = require_bell(b)?;
    let mut u = Vec::with_capacity(4);
    let mut v = Vec::with_capacity(4);
    for c in 0..4 {
        let w = w_tilde(f.perm()[c]);
        let e = f.phases()[c];
        v.push(PhasedPauli::new(e, w)?);
        u.push(PhasedPauli::new(e.conj(), w)?);
    }
    let arr = |x: Vec<PhasedPauli>| -> [PhasedPauli; 4] { x.try_into().expect("four entries") };
    Ok(CorrectionTable { factorization: f, u: arr(u), v: arr(v) })
}

/// Checks the teleportation equation for one resource label as an operator
/// identity, sweeping |α⟩ over the computational basis.
pub fn verify_teleport_side(b: &DenseMatrix, side: Side, k: u8, l: u8) -> Result<bool> {
    let kl = 2 * bit_check(k, "k")? + bit_check(l, "l")?;
    let table = derive_corrections(b)?;
    let op = teleportation_operator(b, side)?;
    let half = RingScalar::inv_sqrt2() * RingScalar::inv_sqrt2();
    let resource = StateVector::basis(2, kl)?;
    for a in 0..2 {
        let alpha = StateVector::basis(1, a)?;
        let (input, expected) = match side {
            Side::Left => {
                let mut out = vec![RingScalar::ZERO; 8];
                for ij in 0..4u8 {
                    let corr = table.v_matrix(k, l).matmul(&table.u_matrix(ij >> 1, ij & 1))?;
                    let t = corr.apply(&alpha)?.scale(&half)?;
                    for (m, amp) in t.amps().iter().enumerate() {
                        out[(usize::from(ij) << 1) | m] = *amp;
                    }
                }
                (alpha.tensor(&resource)?, out)
            }
            Side::Right => {
                let mut out = vec![RingScalar::ZERO; 8];
                for ij in 0..4u8 {
                    let corr = table
                        .v_matrix(k, l)
                        .transpose()
                        .matmul(&table.u_matrix(ij >> 1, ij & 1).transpose())?;
                    let t = corr.apply(&alpha)?.scale(&half)?;
                    for (m, amp) in t.amps().iter().enumerate() {
                        out[(m << 2) | usize::from(ij)] = *amp;
                    }
                }
                (resource.tensor(&alpha)?, out)
            }
        };
        if op.apply(&input)?.amps() != expected.as_slice() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both the left and the right teleportation equations for label (k, l).
pub fn verify_teleport_eq(b: &DenseMatrix, k: u8, l: u8) -> Result<bool> {
    Ok(verify_teleport_side(b, Side::Left, k, l)? && verify_teleport_side(b, Side::Right, k, l)?)
}

/// Level of a single-qubit operator in the gate hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GateLevel {
    Pauli,
    Clifford,
    Other,
}

impl fmt::Display for GateLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateLevel::Pauli => "pauli",
            GateLevel::Clifford => "clifford",
            GateLevel::Other => "other",
        })
    }
}

pub fn gate_level(m: &DenseMatrix) -> Result<GateLevel> {
    if PhasedPauli::from_matrix(m).is_some() {
        Ok(GateLevel::Pauli)
    } else if is_clifford(m)?.is_clifford() {
        Ok(GateLevel::Clifford)
    } else {
        Ok(GateLevel::Other)
    }
}

/// Renders a phase-times-Pauli operator, or the literal matrix otherwise.
pub fn render_operator(m: &DenseMatrix) -> String {
    match PhasedPauli::from_matrix(m) {
        Some(p) => p.to_string(),
        None => {
            let rows: Vec<String> = (0..m.rows())
                .map(|r| {
                    let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).render()).collect();
                    format!("[{}]", row.join(", "))
                })
                .collect();
            format!("[{}]", rows.join(", "))
        }
    }
}

/// R_ij = u U_ij u† and S_kl = u V_kl u† for teleporting a one-qubit gate u.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleGateTable {
    r: [DenseMatrix; 4],
    s: [DenseMatrix; 4],
}

impl SingleGateTable {
    pub fn r(&self, i: u8, j: u8) -> &DenseMatrix {
        &self.r[usize::from(2 * i + j)]
    }

    pub fn s(&self, k: u8, l: u8) -> &DenseMatrix {
        &self.s[usize::from(2 * k + l)]
    }

    /// S_kl R_ij.
    pub fn entry(&self, i: u8, j: u8, k: u8, l: u8) -> Result<DenseMatrix> {
        self.s(k, l).matmul(self.r(i, j))
    }

    /// (i, j, k, l, level of S_kl R_ij) for all sixteen labels.
    pub fn levels(&self) -> Result<Vec<([u8; 4], GateLevel)>> {
        let mut out = Vec::with_capacity(16);
        for t in 0..16u8 {
            let idx = [t >> 3 & 1, t >> 2 & 1, t >> 1 & 1, t & 1];
            out.push((idx, gate_level(&self.entry(idx[0], idx[1], idx[2], idx[3])?)?));
        }
        Ok(out)
    }
}

pub fn single_gate_table(b: &DenseMatrix, u: &DenseMatrix) -> Result<SingleGateTable> {
    if u.qubits() != Some(1) || !u.is_unitary()? {
        return Err(Error::InvalidArgument("gate to teleport must be a one-qubit unitary".into()));
    }
    let table = derive_corrections(b)?;
    let ud = u.dagger();
    let conj = |m: DenseMatrix| u.matmul(&m)?.matmul(&ud);
    let mut r = Vec::with_capacity(4);
    let mut s = Vec::with_capacity(4);
    for c in 0..4u8 {
        r.push(conj(table.u_matrix(c >> 1, c & 1))?);
        s.push(conj(table.v_matrix(c >> 1, c & 1))?);
    }
    let arr = |x: Vec<DenseMatrix>| -> [DenseMatrix; 4] { x.try_into().expect("four entries") };
    Ok(SingleGateTable { r: arr(r), s: arr(s) })
}

/// Splits a 4x4 operator as q⊗p exactly, or returns `None` when it is not a
/// product. p is scaled so its first nonzero entry (row-major) is 1.
pub fn tensor_factor(m: &DenseMatrix) -> Option<(DenseMatrix, DenseMatrix)> {
    if m.rows() != 4 || m.cols() != 4 {
        return None;
    }
    let block = |a: usize, c: usize| -> DenseMatrix {
        let mut out = DenseMatrix::zeros(2, 2);
        for b in 0..2 {
            for d in 0..2 {
                out.set(b, d, m.get(2 * a + b, 2 * c + d));
            }
        }
        out
    };
    let (a0, c0) = (0..4).map(|t| (t >> 1, t & 1)).find(|&(a, c)| !block(a, c).is_zero())?;
    let first = block(a0, c0);
    let pos = first.data().iter().position(|x| !x.is_zero())?;
    let pivot = first.data()[pos];
    let inv = RingScalar::ONE.checked_div(&pivot).ok()?;
    let p = first.scale(&inv).ok()?;
    let (b, d) = (pos / 2, pos % 2);
    let mut q = DenseMatrix::zeros(2, 2);
    for a in 0..2 {
        for c in 0..2 {
            q.set(a, c, m.get(2 * a + b, 2 * c + d));
        }
    }
    (q.tensor(&p).ok()? == *m).then_some((q, p))
}

/// Index tuple (i1, j1, k1, l1, i2, j2, k2, l2) of two-qubit gate teleportation.
pub type TwoQubitIndex = [u8; 8];

pub fn two_qubit_indices() -> impl Iterator<Item = TwoQubitIndex> {
    (0u16..256).map(|t| std::array::from_fn(|q| ((t >> (7 - q)) & 1) as u8))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoQubitCorrection {
    pub indices: TwoQubitIndex,
    pub q: DenseMatrix,
    pub p: DenseMatrix,
}

impl TwoQubitCorrection {
    pub fn operator(&self) -> DenseMatrix {
        self.q.tensor(&self.p).expect("2x2 factors")
    }

    /// The operator as a phase times a two-qubit Pauli word, if it is one.
    pub fn as_phased_pauli(&self) -> Option<PhasedPauli> {
        PhasedPauli::from_matrix(&self.operator())
    }
}

/// CU (V_{k1l1}U_{i1j1} ⊗ V_{k2l2}ᵀU_{i2j2}ᵀ) CU†. The second qubit sits on
/// the right-hand teleportation operator, whose corrections are transposed.
pub fn two_gate_operator(table: &CorrectionTable, cu: &DenseMatrix, idx: &TwoQubitIndex) -> Result<DenseMatrix> {
    if idx.iter().any(|v| *v > 1) {
        return Err(Error::InvalidArgument("index tuple entries must be 0 or 1".into()));
    }
    let [i1, j1, k1, l1, i2, j2, k2, l2] = *idx;
    let first = table.v_matrix(k1, l1).matmul(&table.u_matrix(i1, j1))?;
    let second = table.v_matrix(k2, l2).transpose().matmul(&table.u_matrix(i2, j2).transpose())?;
    cu.matmul(&first.tensor(&second)?)?.matmul(&cu.dagger())
}

fn check_two_qubit_unitary(cu: &DenseMatrix) -> Result<()> {
    if cu.qubits() != Some(2) || !cu.is_unitary()? {
        return Err(Error::InvalidArgument("gate to teleport must be a two-qubit unitary".into()));
    }
    Ok(())
}

/// All 256 corrections Q⊗P for teleporting `cu` through resource states of `b`.
pub fn two_gate_table(b: &DenseMatrix, cu: &DenseMatrix) -> Result<Vec<TwoQubitCorrection>> {
    check_two_qubit_unitary(cu)?;
    let table = derive_corrections(b)?;
    two_qubit_indices()
        .map(|idx| {
            let op = two_gate_operator(&table, cu, &idx)?;
            let (q, p) = tensor_factor(&op).ok_or(Error::NonProductCorrection)?;
            Ok(TwoQubitCorrection { indices: idx, q, p })
        })
        .collect()
}

/// Runs the six-qubit protocol for every index tuple and basis input |αβ⟩:
/// Bell measurements on qubits 1-2 and 5-6 followed by the inverse of each
/// correction must leave CU|αβ⟩ on qubits 3-4. Returns the number of index
/// tuples that pass.
pub fn verify_two_qubit_protocol(b: &DenseMatrix, cu: &DenseMatrix) -> Result<usize> {
    check_two_qubit_unitary(cu)?;
    let table = derive_corrections(b)?;
    let bd = b.dagger();
    let quarter = RingScalar::from_int(4);
    let mut pass = [true; 256];
    for kk in 0..16usize {
        let (kl1, kl2) = (kk >> 2, kk & 3);
        for ab in 0..4usize {
            let (alpha, beta) = (ab >> 1, ab & 1);
            let resource = StateVector::basis(2, kl1)?
                .tensor(&StateVector::basis(2, kl2)?)?
                .apply_on(b, &[0, 1])?
                .apply_on(b, &[2, 3])?
                .apply_on(cu, &[1, 2])?;
            let state = StateVector::basis(1, alpha)?
                .tensor(&resource)?
                .tensor(&StateVector::basis(1, beta)?)?
                .apply_on(&bd, &[0, 1])?
                .apply_on(&bd, &[4, 5])?;
            let target = cu.apply(&StateVector::basis(2, ab)?)?;
            for ij in 0..16usize {
                let (ij1, ij2) = (ij >> 2, ij & 3);
                let amps: Vec<RingScalar> = (0..4).map(|m| state.amps()[(ij1 << 4) | (m << 2) | ij2]).collect();
                let branch = StateVector::from_amps(amps)?.scale(&quarter)?;
                let idx: TwoQubitIndex = [
                    (ij1 >> 1) as u8,
                    (ij1 & 1) as u8,
                    (kl1 >> 1) as u8,
                    (kl1 & 1) as u8,
                    (ij2 >> 1) as u8,
                    (ij2 & 1) as u8,
                    (kl2 >> 1) as u8,
                    (kl2 & 1) as u8,
                ];
                let t = (ij1 << 6) | (kl1 << 4) | (ij2 << 2) | kl2;
                let op = two_gate_operator(&table, cu, &idx)?;
                let corrected = op.dagger().apply(&branch)?;
                if corrected != target {
                    pass[t] = false;
                }
            }
        }
    }
    Ok(pass.iter().filter(|p| **p).count())
}

/// Widening u128 × u128 → (high, low).
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    let mask = u128::from(u64::MAX);
    let (a1, a0) = (a >> 64, a & mask);
    let (b1, b0) = (b >> 64, b & mask);
    let lo = a0 * b0;
    let mid1 = a1 * b0;
    let mid2 = a0 * b1;
    let hi = a1 * b1;
    let (mid, carry_mid) = mid1.overflowing_add(mid2);
    let (low, carry_low) = lo.overflowing_add(mid << 64);
    let high = hi + (mid >> 64) + (u128::from(carry_mid) << 64) + u128::from(carry_low);
    (high, low)
}

/// Compares `l` with `q·√2` exactly.
fn cmp_with_sqrt2_multiple(l: i128, q: i128) -> Ordering {
    match (l.signum(), q.signum()) {
        (ls, qs) if ls != qs => ls.cmp(&qs),
        (0, _) => Ordering::Equal,
        (s, _) => {
            let (lh, ll) = mul_wide(l.unsigned_abs(), l.unsigned_abs());
            let (qh, ql) = mul_wide(q.unsigned_abs(), q.unsigned_abs());
            // 2q², with q² < 2^254 so the shift cannot overflow.
            let (qh, ql) = ((qh << 1) | (ql >> 127), ql << 1);
            let mag = (lh, ll).cmp(&(qh, ql));
            if s > 0 {
                mag
            } else {
                mag.reverse()
            }
        }
    }
}

/// True when r / 2^64 < p for a real ring value p.
fn draw_below(r: u64, p: &RingScalar) -> Result<bool> {
    let (a, b, k) = p
        .real_parts()
        .ok_or_else(|| Error::Numerical("probability is not real".into()))?;
    // (a + b√2)/√2^k = (x + y√2)/2^e
    let (x, y, e) = if k % 2 == 0 { (a, b, k / 2) } else { (2 * b, a, k.div_ceil(2)) };
    if e > 60 {
        return Err(Error::Overflow);
    }
    // r·2^e < (x + y√2)·2^64  ⇔  r·2^e − x·2^64 < y·2^64·√2
    let lhs = (i128::from(r) << e) - (i128::from(x) << 64);
    let q = i128::from(y).checked_mul(1i128 << 64).ok_or(Error::Overflow)?;
    Ok(cmp_with_sqrt2_multiple(lhs, q) == Ordering::Less)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeleportRun {
    pub outcome: (u8, u8),
    /// Qubit-3 state before the correction, renormalized.
    pub received: StateVector,
    pub final_state: StateVector,
    /// Global phase λ with final = λ·ψ.
    pub phase: RingScalar,
}

/// Teleportation through one Bell transform, with its corrections cached.
#[derive(Clone, Debug)]
pub struct Teleporter {
    b: DenseMatrix,
    measure: DenseMatrix,
    table: CorrectionTable,
}

impl Teleporter {
    pub fn new(b: &DenseMatrix) -> Result<Self> {
        let table = derive_corrections(b)?;
        Ok(Teleporter { b: b.clone(), measure: b.dagger(), table })
    }

    pub fn corrections(&self) -> &CorrectionTable {
        &self.table
    }

    /// Unnormalized qubit-3 branch for each outcome ij of ψ⊗b|kl⟩.
    pub fn branches(&self, psi: &StateVector, k: u8, l: u8) -> Result<[StateVector; 4]> {
        if psi.qubits() != 1 {
            return Err(Error::InvalidArgument("teleported state must be one qubit".into()));
        }
        let kl = 2 * bit_check(k, "k")? + bit_check(l, "l")?;
        let resource = self.b.apply(&StateVector::basis(2, kl)?)?;
        let state = psi.tensor(&resource)?.apply_on(&self.measure, &[0, 1])?;
        let mut out = Vec::with_capacity(4);
        for ij in 0..4 {
            out.push(StateVector::from_amps(vec![state.amps()[ij << 1], state.amps()[(ij << 1) | 1]])?);
        }
        Ok(out.try_into().expect("four branches"))
    }

    /// Exact outcome probabilities in the order 00, 01, 10, 11.
    pub fn probabilities(&self, psi: &StateVector, k: u8, l: u8) -> Result<[RingScalar; 4]> {
        let br = self.branches(psi, k, l)?;
        let p: Vec<RingScalar> = br.iter().map(StateVector::norm_sq).collect::<Result<_>>()?;
        Ok(p.try_into().expect("four probabilities"))
    }

    pub fn run<R: RngCore + ?Sized>(&self, psi: &StateVector, k: u8, l: u8, rng: &mut R) -> Result<TeleportRun> {
        if !psi.norm_sq()?.is_one() {
            return Err(Error::InvalidArgument("teleported state must be normalized".into()));
        }
        let branches = self.branches(psi, k, l)?;
        let r = rng.next_u64();
        let mut cumulative = RingScalar::ZERO;
        let mut chosen = 3;
        for (ij, br) in branches.iter().enumerate().take(3) {
            cumulative = cumulative.checked_add(&br.norm_sq()?)?;
            if draw_below(r, &cumulative)? {
                chosen = ij;
                break;
            }
        }
        let (i, j) = ((chosen >> 1) as u8, (chosen & 1) as u8);
        // Every branch has probability 1/4 for a normalized input.
        let received = branches[chosen].scale(&RingScalar::from_int(2))?;
        let correction = self.table.v_matrix(k, l).matmul(&self.table.u_matrix(i, j))?;
        let final_state = correction.dagger().apply(&received)?;
        let phase = final_state
            .equal_up_to_phase(psi)
            .ok_or_else(|| Error::Numerical(format!("outcome {i}{j} did not reproduce the input state")))?;
        Ok(TeleportRun { outcome: (i, j), received, final_state, phase })
    }
}

/// One seeded run; see [`Teleporter::run`].
pub fn simulate(b: &DenseMatrix, psi: &StateVector, k: u8, l: u8, seed: u64) -> Result<TeleportRun> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Teleporter::new(b)?.run(psi, k, l, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::make_gate;

    fn g(name: &str) -> DenseMatrix {
        make_gate(name).unwrap()
    }

    fn word(s: &str) -> DenseMatrix {
        PauliWord::parse(s, 1).unwrap().to_matrix()
    }

    fn pw(s: &str, e: u8) -> DenseMatrix {
        if e.is_multiple_of(2) {
            DenseMatrix::identity(2)
        } else {
            word(s)
        }
    }

    #[test]
    fn ch_resource_gives_plain_pauli_corrections() {
        let t = derive_corrections(&g("CH")).unwrap();
        for i in 0..2u8 {
            for j in 0..2u8 {
                let expect = pw("X", j).matmul(&pw("Z", i)).unwrap();
                assert_eq!(t.u_matrix(i, j), expect);
                assert_eq!(t.v_matrix(i, j), expect);
            }
        }
    }

    #[test]
    fn teleport_identity_at_zero_labels() {
        // (C_H⁻¹⊗I)(I⊗C_H)|α⟩|00⟩ = ½ Σ |ij⟩ X^j Z^i |α⟩
        let op = teleportation_operator(&g("CH"), Side::Left).unwrap();
        let alpha = StateVector::plus();
        let out = op.apply(&alpha.tensor(&StateVector::basis(2, 0).unwrap()).unwrap()).unwrap();
        let half = RingScalar::from_int(1).checked_div(&RingScalar::from_int(2)).unwrap();
        for ij in 0..4usize {
            let w = pw("X", (ij & 1) as u8).matmul(&pw("Z", (ij >> 1) as u8)).unwrap();
            let expect = w.apply(&alpha).unwrap().scale(&half).unwrap();
            assert_eq!(&out.amps()[2 * ij..2 * ij + 2], expect.amps());
        }
        assert!(op.is_unitary().unwrap());
    }

    #[test]
    fn non_transform_is_rejected() {
        let cnot = g("CNOT");
        assert!(matches!(teleportation_operator(&cnot, Side::Left), Err(Error::NotATransform(_))));
        assert!(derive_corrections(&g("QINV")).is_err());
    }

    #[test]
    fn equations_hold_for_catalog_transforms() {
        for name in ["CH", "B", "BPRIME", "Q", "R", "CHT", "BT", "RT", "BINV"] {
            for k in 0..2 {
                for l in 0..2 {
                    assert!(verify_teleport_eq(&g(name), k, l).unwrap(), "{name} {k}{l}");
                }
            }
        }
    }

    #[test]
    fn tensor_factor_round_trip_and_rejection() {
        let q = word("-iY");
        let p = g("T");
        let (fq, fp) = tensor_factor(&q.tensor(&p).unwrap()).unwrap();
        assert_eq!(fq.tensor(&fp).unwrap(), q.tensor(&p).unwrap());
        assert!(tensor_factor(&g("CNOT")).is_none());
    }

    #[test]
    fn hadamard_corrections_stay_pauli() {
        let t = single_gate_table(&g("B"), &g("H")).unwrap();
        assert!(t.levels().unwrap().iter().all(|(_, lv)| *lv == GateLevel::Pauli));
        let t = single_gate_table(&g("CH"), &g("T")).unwrap();
        let lv = t.levels().unwrap();
        assert!(lv.iter().all(|(_, lv)| *lv <= GateLevel::Clifford));
        assert!(lv.iter().any(|(_, lv)| *lv == GateLevel::Clifford));
    }

    #[test]
    fn cnot_through_ch_resources() {
        // Closed form for this pair, written independently: Q⊗P =
        // (−1)^{j1 k1 + i2 l2} X^a Z^b Z^c ⊗ X^a Z^c X^d with
        // a = j1+l1, b = i1+k1, c = i2+k2, d = j2+l2.
        let rows = two_gate_table(&g("CH"), &g("CNOT")).unwrap();
        assert_eq!(rows.len(), 256);
        for row in &rows {
            let [i1, j1, k1, l1, i2, j2, k2, l2] = row.indices;
            let (a, b, c, d) = ((j1 + l1) % 2, (i1 + k1) % 2, (i2 + k2) % 2, (j2 + l2) % 2);
            let sign = if (j1 * k1 + i2 * l2) % 2 == 0 { 1 } else { -1 };
            let qm = DenseMatrix::product([&pw("X", a), &pw("Z", b), &pw("Z", c)]).unwrap();
            let pm = DenseMatrix::product([&pw("X", a), &pw("Z", c), &pw("X", d)]).unwrap();
            let expect = qm.tensor(&pm).unwrap().scale(&RingScalar::from_int(sign)).unwrap();
            assert_eq!(row.operator(), expect, "{:?}", row.indices);
        }
    }

    #[test]
    fn six_qubit_protocol_restores_the_gate() {
        assert_eq!(verify_two_qubit_protocol(&g("CH"), &g("CNOT")).unwrap(), 256);
        assert_eq!(verify_two_qubit_protocol(&g("R"), &g("B")).unwrap(), 256);
    }

    #[test]
    fn exact_sampler_comparisons() {
        let quarter = RingScalar::from_int(1).checked_div(&RingScalar::from_int(4)).unwrap();
        assert!(draw_below(0, &quarter).unwrap());
        assert!(draw_below((1u64 << 62) - 1, &quarter).unwrap());
        assert!(!draw_below(1u64 << 62, &quarter).unwrap());
        // cos²(π/8) = (2 + √2)/4 ≈ 0.8536
        let c = RingScalar::new(2, 1, 0, -1, 4).unwrap();
        let cut = (0.853_553_390_593_273_8 * 2f64.powi(64)) as u64;
        assert!(draw_below(cut - 4096, &c).unwrap());
        assert!(!draw_below(cut + 4096, &c).unwrap());
    }

    #[test]
    fn probabilities_are_quarters_and_runs_restore_the_state() {
        let quarter = RingScalar::from_int(1).checked_div(&RingScalar::from_int(4)).unwrap();
        for name in ["CH", "B", "Q", "R", "CHT"] {
            let tp = Teleporter::new(&g(name)).unwrap();
            let psi = StateVector::basis(1, 0).unwrap();
            assert_eq!(tp.probabilities(&psi, 1, 0).unwrap(), [quarter; 4]);
            for seed in 0..8 {
                let run = simulate(&g(name), &StateVector::plus(), 0, 1, seed).unwrap();
                assert!(run.final_state.equal_up_to_phase(&StateVector::plus()).is_some());
            }
        }
        let a = simulate(&g("B"), &StateVector::plus(), 1, 1, 7).unwrap();
        let b = simulate(&g("B"), &StateVector::plus(), 1, 1, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ch_plus_zero_branch_is_uncorrected() {
        let tp = Teleporter::new(&g("CH")).unwrap();
        let br = tp.branches(&StateVector::plus(), 0, 0).unwrap();
        let two = RingScalar::from_int(2);
        assert_eq!(br[0].scale(&two).unwrap(), StateVector::plus());
    }
}
