//! Named gates, parameterized families and structural checks.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, QuarterPi, MAX_QUBITS};
use crate::pauli::{exp_pauli_sum, PauliWord};
use crate::ring::RingScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Clifford,
    ParityPreserving,
    Matchgate,
    BellTransform,
    GhzTransform,
    YangBaxter,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tag::Clifford => "clifford",
            Tag::ParityPreserving => "parity_preserving",
            Tag::Matchgate => "matchgate",
            Tag::BellTransform => "bell_transform",
            Tag::GhzTransform => "ghz_transform",
            Tag::YangBaxter => "yang_baxter",
        };
        f.write_str(s)
    }
}

pub struct GateCatalogEntry {
    pub name: &'static str,
    pub arity: usize,
    pub tags: &'static [Tag],
    pub aliases: &'static [&'static str],
    rows: &'static [&'static str],
    k: u32,
}

impl GateCatalogEntry {
    pub fn build(&self) -> DenseMatrix {
        DenseMatrix::parse_literal(self.rows, self.k).expect("catalog literal")
    }
}

use Tag::*;

const ONE_QUBIT_CLIFFORD: &[Tag] = &[Clifford];

static CATALOG: &[GateCatalogEntry] = &[
    GateCatalogEntry { name: "I", arity: 1, tags: ONE_QUBIT_CLIFFORD, aliases: &[], rows: &["1 0", "0 1"], k: 0 },
    GateCatalogEntry { name: "X", arity: 1, tags: ONE_QUBIT_CLIFFORD, aliases: &[], rows: &["0 1", "1 0"], k: 0 },
    // Y = ZX, a real matrix.
    GateCatalogEntry { name: "Y", arity: 1, tags: ONE_QUBIT_CLIFFORD, aliases: &[], rows: &["0 1", "-1 0"], k: 0 },
    GateCatalogEntry { name: "Z", arity: 1, tags: ONE_QUBIT_CLIFFORD, aliases: &[], rows: &["1 0", "0 -1"], k: 0 },
    GateCatalogEntry { name: "H", arity: 1, tags: ONE_QUBIT_CLIFFORD, aliases: &[], rows: &["1 1", "1 -1"], k: 1 },
    GateCatalogEntry { name: "S", arity: 1, tags: ONE_QUBIT_CLIFFORD, aliases: &[], rows: &["1 0", "0 i"], k: 0 },
    GateCatalogEntry { name: "T", arity: 1, tags: &[], aliases: &[], rows: &["1 0", "0 w"], k: 0 },
    // W = T X T†
    GateCatalogEntry { name: "W", arity: 1, tags: ONE_QUBIT_CLIFFORD, aliases: &[], rows: &["0 -iw", "w 0"], k: 0 },
    GateCatalogEntry {
        name: "CNOT",
        arity: 2,
        tags: &[Clifford],
        aliases: &["CX"],
        rows: &["1 0 0 0", "0 1 0 0", "0 0 0 1", "0 0 1 0"],
        k: 0,
    },
    GateCatalogEntry {
        name: "CZ",
        arity: 2,
        tags: &[Clifford, ParityPreserving],
        aliases: &[],
        rows: &["1 0 0 0", "0 1 0 0", "0 0 1 0", "0 0 0 -1"],
        k: 0,
    },
    GateCatalogEntry {
        name: "SWAP",
        arity: 2,
        tags: &[Clifford, ParityPreserving, YangBaxter],
        aliases: &[],
        rows: &["1 0 0 0", "0 0 1 0", "0 1 0 0", "0 0 0 1"],
        k: 0,
    },
    GateCatalogEntry {
        name: "CH",
        arity: 2,
        tags: &[Clifford, BellTransform],
        aliases: &[],
        rows: &["1 0 1 0", "0 1 0 1", "0 1 0 -1", "1 0 -1 0"],
        k: 1,
    },
    GateCatalogEntry {
        name: "CHINV",
        arity: 2,
        tags: &[Clifford],
        aliases: &[],
        rows: &["1 0 0 1", "0 1 1 0", "1 0 0 -1", "0 1 -1 0"],
        k: 1,
    },
    GateCatalogEntry {
        name: "B",
        arity: 2,
        tags: &[Clifford, ParityPreserving, Matchgate, BellTransform, YangBaxter],
        aliases: &[],
        rows: &["1 0 0 1", "0 1 -1 0", "0 1 1 0", "-1 0 0 1"],
        k: 1,
    },
    GateCatalogEntry {
        name: "BINV",
        arity: 2,
        tags: &[Clifford, ParityPreserving, Matchgate, BellTransform, YangBaxter],
        aliases: &[],
        rows: &["1 0 0 -1", "0 1 1 0", "0 -1 1 0", "1 0 0 1"],
        k: 1,
    },
    GateCatalogEntry {
        name: "BPRIME",
        arity: 2,
        tags: &[Clifford, ParityPreserving, Matchgate, BellTransform, YangBaxter],
        aliases: &[],
        rows: &["1 0 0 1", "0 1 1 0", "0 -1 1 0", "-1 0 0 1"],
        k: 1,
    },
    GateCatalogEntry {
        name: "BPRIMEINV",
        arity: 2,
        tags: &[Clifford, ParityPreserving, Matchgate, BellTransform, YangBaxter],
        aliases: &[],
        rows: &["1 0 0 -1", "0 1 -1 0", "0 1 1 0", "1 0 0 1"],
        k: 1,
    },
    GateCatalogEntry {
        name: "Q",
        arity: 2,
        tags: &[Clifford, ParityPreserving, Matchgate, BellTransform],
        aliases: &[],
        rows: &["1 0 0 i", "0 i 1 0", "0 i -1 0", "1 0 0 -i"],
        k: 1,
    },
    GateCatalogEntry {
        name: "QINV",
        arity: 2,
        tags: &[Clifford, ParityPreserving, Matchgate],
        aliases: &[],
        rows: &["1 0 0 1", "0 -i -i 0", "0 1 -1 0", "-i 0 0 i"],
        k: 1,
    },
    GateCatalogEntry {
        name: "R",
        arity: 2,
        tags: &[Clifford, ParityPreserving, BellTransform],
        aliases: &[],
        rows: &["1 0 0 -i", "0 -i -1 0", "0 -i 1 0", "1 0 0 i"],
        k: 1,
    },
    GateCatalogEntry {
        name: "RINV",
        arity: 2,
        tags: &[Clifford, ParityPreserving],
        aliases: &[],
        rows: &["1 0 0 1", "0 i i 0", "0 -1 1 0", "i 0 0 -i"],
        k: 1,
    },
    GateCatalogEntry {
        name: "CHT",
        arity: 2,
        tags: &[BellTransform],
        aliases: &[],
        rows: &["1 0 w 0", "0 1 0 w", "0 1 0 -w", "1 0 -w 0"],
        k: 1,
    },
    GateCatalogEntry {
        name: "BT",
        arity: 2,
        tags: &[ParityPreserving, Matchgate, BellTransform],
        aliases: &[],
        rows: &["1 0 0 w", "0 1 -w 0", "0 1 w 0", "-1 0 0 w"],
        k: 1,
    },
    GateCatalogEntry {
        name: "RT",
        arity: 2,
        tags: &[ParityPreserving, BellTransform],
        aliases: &[],
        rows: &["1 0 0 -iw", "0 -i -w 0", "0 -i w 0", "1 0 0 iw"],
        k: 1,
    },
    GateCatalogEntry {
        name: "TOFFOLI",
        arity: 3,
        tags: &[],
        aliases: &["CCNOT"],
        rows: &[
            "1 0 0 0 0 0 0 0",
            "0 1 0 0 0 0 0 0",
            "0 0 1 0 0 0 0 0",
            "0 0 0 1 0 0 0 0",
            "0 0 0 0 1 0 0 0",
            "0 0 0 0 0 1 0 0",
            "0 0 0 0 0 0 0 1",
            "0 0 0 0 0 0 1 0",
        ],
        k: 0,
    },
    GateCatalogEntry {
        name: "FREDKIN",
        arity: 3,
        tags: &[],
        aliases: &["CSWAP"],
        rows: &[
            "1 0 0 0 0 0 0 0",
            "0 1 0 0 0 0 0 0",
            "0 0 1 0 0 0 0 0",
            "0 0 0 1 0 0 0 0",
            "0 0 0 0 1 0 0 0",
            "0 0 0 0 0 0 1 0",
            "0 0 0 0 0 1 0 0",
            "0 0 0 0 0 0 0 1",
        ],
        k: 0,
    },
];

pub fn catalog() -> &'static [GateCatalogEntry] {
    CATALOG
}

/// Canonical spelling of a gate name: upper case, with `⁻¹`, `^-1`, `†` and
/// `_dag` mapped to `INV`/`DAG`, primes to `PRIME`, and `_`/`-` removed.
pub fn normalize_name(name: &str) -> String {
    let s = name
        .trim()
        .replace("⁻¹", "INV")
        .replace("^-1", "INV")
        .replace('†', "DAG")
        .replace(['′', '\''], "PRIME");
    s.chars().filter(|c| *c != '_' && *c != '-').collect::<String>().to_uppercase()
}

fn find_entry(norm: &str) -> Option<&'static GateCatalogEntry> {
    CATALOG.iter().find(|e| e.name == norm || e.aliases.contains(&norm))
}

fn built(entry: &'static GateCatalogEntry) -> DenseMatrix {
    static CACHE: OnceLock<Vec<DenseMatrix>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| CATALOG.iter().map(GateCatalogEntry::build).collect());
    let idx = CATALOG.iter().position(|e| std::ptr::eq(e, entry)).expect("entry from catalog");
    cache[idx].clone()
}

/// All names accepted by [`make_gate`] besides the `INV`/`DAG` suffix forms.
pub fn gate_names() -> Vec<&'static str> {
    CATALOG.iter().map(|e| e.name).collect()
}

fn unknown(name: &str) -> Error {
    Error::UnknownGate { name: name.to_string(), known: gate_names().join(", ") }
}

/// Looks up a catalog gate. Any name may carry an `INV` or `DAG` suffix to
/// request the conjugate transpose.
pub fn make_gate(name: &str) -> Result<DenseMatrix> {
    let norm = normalize_name(name);
    if let Some(e) = find_entry(&norm) {
        return Ok(built(e));
    }
    for suffix in ["INV", "DAG"] {
        if let Some(base) = norm.strip_suffix(suffix) {
            if let Some(e) = find_entry(base) {
                return Ok(built(e).dagger());
            }
        }
    }
    Err(unknown(name))
}

pub fn catalog_entry(name: &str) -> Option<&'static GateCatalogEntry> {
    find_entry(&normalize_name(name))
}

fn single(name: &str) -> DenseMatrix {
    make_gate(name).expect("catalog gate")
}

fn require_2x2_unitary(m: &DenseMatrix) -> Result<()> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::DimensionMismatch("parity block must be 2x2".into()));
    }
    if !m.is_unitary()? {
        return Err(Error::NonUnitary);
    }
    Ok(())
}

const EVEN: [usize; 2] = [0, 3];
const ODD: [usize; 2] = [1, 2];

/// G(A, B): A acts on span{|00⟩, |11⟩}, B on span{|01⟩, |10⟩}.
pub fn parity_gate(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    require_2x2_unitary(a)?;
    require_2x2_unitary(b)?;
    Ok(parity_gate_unchecked(a, b))
}

pub(crate) fn parity_gate_unchecked(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let mut g = DenseMatrix::zeros(4, 4);
    for (block, idx) in [(a, EVEN), (b, ODD)] {
        for r in 0..2 {
            for c in 0..2 {
                g.set(idx[r], idx[c], block.get(r, c));
            }
        }
    }
    g
}

/// The (A, B) blocks of a parity-preserving 4x4 matrix.
pub fn parity_blocks(u: &DenseMatrix) -> Option<(DenseMatrix, DenseMatrix)> {
    if u.rows() != 4 || u.cols() != 4 {
        return None;
    }
    for r in 0..4 {
        for c in 0..4 {
            if (r == 0 || r == 3) != (c == 0 || c == 3) && !u.get(r, c).is_zero() {
                return None;
            }
        }
    }
    let block = |idx: [usize; 2]| {
        let mut m = DenseMatrix::zeros(2, 2);
        for r in 0..2 {
            for c in 0..2 {
                m.set(r, c, u.get(idx[r], idx[c]));
            }
        }
        m
    };
    Some((block(EVEN), block(ODD)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchgateClass {
    Matchgate,
    ParityPreservingOnly,
    Neither,
}

pub fn is_matchgate(u: &DenseMatrix) -> Result<MatchgateClass> {
    if u.rows() != 4 || u.cols() != 4 {
        return Err(Error::DimensionMismatch("matchgate test needs a 4x4 matrix".into()));
    }
    Ok(match parity_blocks(u) {
        None => MatchgateClass::Neither,
        Some((a, b)) if a.det2()? == b.det2()? => MatchgateClass::Matchgate,
        Some(_) => MatchgateClass::ParityPreservingOnly,
    })
}

fn check_register(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidArgument("register must have at least one qubit".into()));
    }
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits(n));
    }
    Ok(1 << n)
}

/// Sends basis state `|j⟩` to `|mapping[j]⟩`.
pub fn permutation_gate(n: usize, mapping: &[usize]) -> Result<DenseMatrix> {
    let dim = check_register(n)?;
    if mapping.len() != dim {
        return Err(Error::DimensionMismatch(format!("{} images for {dim} basis states", mapping.len())));
    }
    let mut seen = vec![false; dim];
    for &m in mapping {
        if m >= dim || seen[m] {
            return Err(Error::NotBijective);
        }
        seen[m] = true;
    }
    let mut p = DenseMatrix::zeros(dim, dim);
    for (j, &m) in mapping.iter().enumerate() {
        p.set(m, j, RingScalar::ONE);
    }
    Ok(p)
}

pub fn phase_gate(n: usize, phases: &[RingScalar]) -> Result<DenseMatrix> {
    let dim = check_register(n)?;
    if phases.len() != dim {
        return Err(Error::DimensionMismatch(format!("{} phases for {dim} basis states", phases.len())));
    }
    for p in phases {
        if !p.is_unit_modulus()? {
            return Err(Error::NonUnitPhase);
        }
    }
    Ok(DenseMatrix::diagonal(phases))
}

/// Swaps the basis labels J and J+1, where label J is basis index J−1.
pub fn transposition_gate(n: usize, j: usize) -> Result<DenseMatrix> {
    let dim = check_register(n)?;
    if j == 0 || j >= dim {
        return Err(Error::InvalidArgument(format!("transposition label {j} outside 1..{dim}")));
    }
    let mut mapping: Vec<usize> = (0..dim).collect();
    mapping.swap(j - 1, j);
    permutation_gate(n, &mapping)
}

/// |0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ u with the control and target on the given qubits.
pub fn controlled(u: &DenseMatrix, control: usize, target: usize, n: usize) -> Result<DenseMatrix> {
    if u.rows() != 2 || u.cols() != 2 {
        return Err(Error::DimensionMismatch("controlled gate needs a 2x2 target operator".into()));
    }
    let mut cu = DenseMatrix::identity(4);
    for r in 0..2 {
        for c in 0..2 {
            cu.set(2 + r, 2 + c, u.get(r, c));
        }
    }
    cu.embed(&[control, target], n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    ChN,
    BN,
    BPrimeN,
    RPrimeN,
    RN,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::ChN, Family::BN, Family::BPrimeN, Family::RPrimeN, Family::RN];

    pub fn name(self) -> &'static str {
        match self {
            Family::ChN => "CH_N",
            Family::BN => "B_N",
            Family::BPrimeN => "BPRIME_N",
            Family::RPrimeN => "RPRIME_N",
            Family::RN => "R_N",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        let norm = normalize_name(s);
        Family::ALL
            .into_iter()
            .find(|f| normalize_name(f.name()) == norm)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown family `{s}`; known families: {}",
                    Family::ALL.map(Family::name).join(", ")
                ))
            })
    }

    pub fn min_qubits(self) -> usize {
        match self {
            Family::ChN => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// CNOT_{1,n} ⋯ CNOT_{1,2} H_1.
pub fn ch_n(n: usize) -> Result<DenseMatrix> {
    check_register(n)?;
    let mut m = single("H").embed(&[0], n)?;
    let cnot = single("CNOT");
    for t in 1..n {
        m = cnot.embed(&[0, t], n)?.matmul(&m)?;
    }
    Ok(m)
}

fn bit(j: usize, q: usize, n: usize) -> usize {
    (j >> (n - 1 - q)) & 1
}

fn from_bits(bits: &[usize]) -> usize {
    bits.iter().fold(0, |acc, b| (acc << 1) | b)
}

/// |j⟩ ↦ |j_1, j_1+j_2, …, j_1+j_n⟩.
pub fn p_r(n: usize) -> Result<DenseMatrix> {
    let dim = check_register(n)?;
    let mapping: Vec<usize> = (0..dim)
        .map(|j| {
            let j1 = bit(j, 0, n);
            let bits: Vec<usize> = (0..n).map(|q| if q == 0 { j1 } else { j1 ^ bit(j, q, n) }).collect();
            from_bits(&bits)
        })
        .collect();
    permutation_gate(n, &mapping)
}

/// Default phases for R_N: the magic gate R at two qubits, all ones above.
pub fn default_r_phases(n: usize) -> Vec<RingScalar> {
    if n == 2 {
        vec![RingScalar::ONE, -RingScalar::i(), RingScalar::from_int(-1), -RingScalar::i()]
    } else {
        vec![RingScalar::ONE; 1 << n]
    }
}

pub fn family_gate(family: Family, n: usize, phases: Option<&[RingScalar]>) -> Result<DenseMatrix> {
    if n < family.min_qubits() {
        return Err(Error::InvalidArgument(format!("{family} needs at least {} qubits", family.min_qubits())));
    }
    check_register(n)?;
    if phases.is_some() && family != Family::RN {
        return Err(Error::InvalidArgument(format!("{family} takes no phase function")));
    }
    // X on every qubit except one Y: the last for B_N, the first for BPRIME_N.
    let x_string = |y_site: usize| -> Result<PauliWord> {
        let mut w = PauliWord::identity(n)?;
        for q in 0..n {
            w = w.mul(&PauliWord::single(n, q, if q == y_site { 'Y' } else { 'X' })?)?;
        }
        Ok(w)
    };
    match family {
        Family::ChN => ch_n(n),
        Family::BN => exp_pauli_sum(&[(x_string(n - 1)?, 1)], QuarterPi(1)),
        Family::BPrimeN => exp_pauli_sum(&[(x_string(0)?, 1)], QuarterPi(1)),
        Family::RPrimeN => ch_n(n)?.matmul(&p_r(n)?),
        Family::RN => {
            let default = default_r_phases(n);
            let e = phase_gate(n, phases.unwrap_or(&default))?;
            ch_n(n)?.matmul(&p_r(n)?)?.matmul(&e)
        }
    }
}

/// Bell state C_H|k,l⟩ as a column of the C_H matrix.
fn bell_column(label: usize) -> Vec<RingScalar> {
    single("CH").column(label)
}

/// Σ_c phases[c]·(s1[c] ⊗ s2[c])·|ψ(perm[c])⟩⟨c|, every array indexed by the
/// source label c = 2k + l.
pub fn generalized_bell(
    phases: &[RingScalar; 4],
    s1: &[DenseMatrix; 4],
    s2: &[DenseMatrix; 4],
    perm: &[usize; 4],
) -> Result<DenseMatrix> {
    let mut seen = [false; 4];
    for &p in perm {
        if p >= 4 || seen[p] {
            return Err(Error::NotBijective);
        }
        seen[p] = true;
    }
    for p in phases {
        if !p.is_unit_modulus()? {
            return Err(Error::NonUnitPhase);
        }
    }
    let mut out = DenseMatrix::zeros(4, 4);
    for c in 0..4 {
        let local = s1[c].tensor(&s2[c])?;
        if local.rows() != 4 || local.cols() != 4 {
            return Err(Error::DimensionMismatch("single-qubit factors must be 2x2".into()));
        }
        let col = DenseMatrix::new(4, 1, bell_column(perm[c]))?;
        let v = local.matmul(&col)?.scale(&phases[c])?;
        for r in 0..4 {
            out.set(r, c, v.get(r, 0));
        }
    }
    if !out.is_unitary()? {
        return Err(Error::NonUnitary);
    }
    Ok(out)
}

/// (u⊗I)(I⊗u)(u⊗I) = (I⊗u)(u⊗I)(I⊗u) for a 4x4 u.
pub fn yang_baxter(u: &DenseMatrix) -> Result<bool> {
    if u.rows() != 4 || u.cols() != 4 {
        return Err(Error::DimensionMismatch("Yang-Baxter check needs a 4x4 matrix".into()));
    }
    let u12 = u.embed(&[0, 1], 3)?;
    let u23 = u.embed(&[1, 2], 3)?;
    let lhs = DenseMatrix::product([&u12, &u23, &u12])?;
    let rhs = DenseMatrix::product([&u23, &u12, &u23])?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str) -> DenseMatrix {
        make_gate(name).unwrap()
    }

    #[test]
    fn names_are_case_and_spelling_insensitive() {
        assert_eq!(g("b_prime"), g("BPRIME"));
        assert_eq!(g("B′"), g("BPRIME"));
        assert_eq!(g("Q⁻¹"), g("QINV"));
        assert_eq!(g("c_h^-1"), g("CHINV"));
        assert_eq!(g("sdag"), g("S").dagger());
        assert_eq!(g("cx"), g("CNOT"));
        let err = make_gate("nope").unwrap_err();
        assert!(err.to_string().contains("CNOT"));
    }

    #[test]
    fn displayed_inverses_are_daggers() {
        for name in ["CH", "B", "BPRIME", "Q", "R"] {
            let inv = g(&format!("{name}INV"));
            assert_eq!(inv, g(name).dagger(), "{name}");
        }
    }

    #[test]
    fn t_family_members_are_products_with_t() {
        let t1 = g("T").tensor(&DenseMatrix::identity(2)).unwrap();
        for (name, base) in [("CHT", "CH"), ("BT", "B"), ("RT", "R")] {
            assert_eq!(g(name), g(base).matmul(&t1).unwrap(), "{name}");
        }
        let t = g("T");
        assert_eq!(t.matmul(&g("X")).unwrap().matmul(&t.dagger()).unwrap(), g("W"));
    }

    #[test]
    fn parity_gate_examples() {
        let i2 = DenseMatrix::identity(2);
        let zz = g("Z").tensor(&g("Z")).unwrap();
        assert_eq!(parity_gate(&i2, &i2.neg().unwrap()).unwrap(), zz);
        let a_b = i2.add(&g("Y")).unwrap().scale(&RingScalar::inv_sqrt2()).unwrap();
        assert_eq!(parity_gate(&a_b, &a_b.dagger()).unwrap(), g("B"));
        let hs = g("H").matmul(&g("S")).unwrap();
        let b_q = hs.matmul(&g("Z")).unwrap().scale(&RingScalar::i()).unwrap();
        assert_eq!(parity_gate(&hs, &b_q).unwrap(), g("Q"));
        let two = i2.scale(&RingScalar::from_int(2)).unwrap();
        assert_eq!(parity_gate(&two, &i2), Err(Error::NonUnitary));
    }

    #[test]
    fn matchgate_classification() {
        assert_eq!(is_matchgate(&g("B")).unwrap(), MatchgateClass::Matchgate);
        assert_eq!(is_matchgate(&g("R")).unwrap(), MatchgateClass::ParityPreservingOnly);
        assert_eq!(is_matchgate(&g("CH")).unwrap(), MatchgateClass::Neither);
        assert!(is_matchgate(&g("H")).is_err());
    }

    #[test]
    fn transpositions() {
        let x2 = g("X").embed(&[1], 2).unwrap();
        assert_eq!(transposition_gate(2, 1).unwrap(), x2.matmul(&g("CNOT")).unwrap());
        let c21 = g("CNOT").embed(&[1, 0], 2).unwrap();
        let three = DenseMatrix::product([&g("CNOT"), &c21, &g("CNOT")]).unwrap();
        assert_eq!(transposition_gate(2, 2).unwrap(), g("SWAP"));
        assert_eq!(g("SWAP"), three);
        assert_eq!(transposition_gate(2, 3).unwrap(), g("CNOT"));
        assert_eq!(transposition_gate(3, 6).unwrap(), g("FREDKIN"));
        assert_eq!(transposition_gate(3, 7).unwrap(), g("TOFFOLI"));
        assert!(transposition_gate(2, 4).is_err());
        assert!(transposition_gate(2, 0).is_err());
    }

    #[test]
    fn permutation_and_phase_validation() {
        assert_eq!(permutation_gate(1, &[0, 0]), Err(Error::NotBijective));
        assert_eq!(phase_gate(1, &[RingScalar::ONE, RingScalar::from_int(2)]), Err(Error::NonUnitPhase));
        assert!(phase_gate(1, &[RingScalar::ONE]).is_err());
    }

    #[test]
    fn families_at_two_qubits() {
        assert_eq!(family_gate(Family::ChN, 2, None).unwrap(), g("CH"));
        assert_eq!(family_gate(Family::ChN, 1, None).unwrap(), g("H"));
        assert_eq!(family_gate(Family::BN, 2, None).unwrap(), g("B"));
        assert_eq!(family_gate(Family::BPrimeN, 2, None).unwrap(), g("BPRIME"));
        assert_eq!(family_gate(Family::RN, 2, None).unwrap(), g("R"));
        let z1 = g("Z").embed(&[0], 2).unwrap();
        assert_eq!(family_gate(Family::RPrimeN, 2, None).unwrap(), z1.matmul(&g("BPRIME")).unwrap());
        assert!(family_gate(Family::BN, 1, None).is_err());
        assert!(family_gate(Family::ChN, 0, None).is_err());
        assert!(family_gate(Family::BN, 3, Some(&[RingScalar::ONE; 8])).is_err());
    }

    #[test]
    fn b_n_matches_its_closed_form_at_three_qubits() {
        // (I + X⊗X⊗Y)/√2 written out with Y = [[0,1],[-1,0]].
        let b3 = family_gate(Family::BN, 3, None).unwrap();
        let expected = DenseMatrix::parse_literal(
            &[
                "1 0 0 0 0 0 0 1",
                "0 1 0 0 0 0 -1 0",
                "0 0 1 0 0 1 0 0",
                "0 0 0 1 -1 0 0 0",
                "0 0 0 1 1 0 0 0",
                "0 0 -1 0 0 1 0 0",
                "0 1 0 0 0 0 1 0",
                "-1 0 0 0 0 0 0 1",
            ],
            1,
        )
        .unwrap();
        assert_eq!(b3, expected);
    }

    #[test]
    fn generalized_bell_examples() {
        let id = DenseMatrix::identity(2);
        let ids = [id.clone(), id.clone(), id.clone(), id.clone()];
        let one = [RingScalar::ONE; 4];
        assert_eq!(generalized_bell(&one, &ids, &ids, &[0, 1, 2, 3]).unwrap(), g("CH"));
        // Column (k,l) of Q is i^l |ψ(k, k+l)⟩.
        let i = RingScalar::i();
        let q_phases = [RingScalar::ONE, i, RingScalar::ONE, i];
        assert_eq!(generalized_bell(&q_phases, &ids, &ids, &[0, 1, 3, 2]).unwrap(), g("Q"));
        let x = g("X");
        let s2 = [x.clone(), id.clone(), id.clone(), id.clone()];
        assert_eq!(generalized_bell(&one, &ids, &s2, &[0, 1, 2, 3]), Err(Error::NonUnitary));
        assert_eq!(generalized_bell(&one, &ids, &ids, &[0, 0, 2, 3]), Err(Error::NotBijective));
    }

    #[test]
    fn yang_baxter_examples() {
        assert!(yang_baxter(&g("B")).unwrap());
        assert!(yang_baxter(&g("BINV")).unwrap());
        assert!(yang_baxter(&g("BPRIME")).unwrap());
        assert!(!yang_baxter(&g("CNOT")).unwrap());
    }

    #[test]
    fn controlled_gate_matches_cnot() {
        assert_eq!(controlled(&g("X"), 0, 1, 2).unwrap(), g("CNOT"));
        assert_eq!(controlled(&g("Z"), 1, 0, 2).unwrap(), g("CZ"));
    }
}
