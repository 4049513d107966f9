//! Verification suites behind the `ghzkit` subcommands. Each returns a
//! [`SuiteReport`]; checks without a reference value pass and carry the
//! computed result.

use std::f64::consts::FRAC_PI_4;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gates::{family_gate, make_gate, yang_baxter, Family};
use crate::ghz::{classify, factor_transform, ghz_state, j_to_k, multicopy_x_check, verify_stabilizers, GhzLabel};
use crate::golden::{self, class_table};
use crate::identities::{registry, verify_all, verify_identity, IdentityOutcome};
use crate::interchange::MatrixInput;
use crate::linalg::{DenseMatrix, StateVector};
use crate::nonlocal::{entangling_power_oracle, nonlocal_params, NonlocalParams, DEFAULT_TOL};
use crate::report::{Check, SuiteReport};
use crate::teleport::{
    single_gate_table, teleportation_operator, verify_teleport_side, verify_two_qubit_protocol, GateLevel, Side,
    Teleporter,
};

/// Two-qubit Bell transforms of the catalog.
pub const BELL_TRANSFORMS: [&str; 9] = ["CH", "B", "BPRIME", "Q", "R", "CHT", "BT", "RT", "BINV"];

/// Inverses that are not Bell transforms, with the forward gate whose
/// teleportation operator measures in their basis.
pub const MEASUREMENT_INVERSES: [(&str, &str); 3] = [("CHINV", "CH"), ("QINV", "Q"), ("RINV", "R")];

/// Gates teleported by the two-qubit protocol.
pub const TWO_QUBIT_GATES: [&str; 10] = ["CNOT", "CZ", "CH", "CHINV", "B", "BINV", "Q", "QINV", "R", "RINV"];

pub const MAXIMALLY_ENTANGLING: [&str; 8] = ["CH", "B", "Q", "R", "CHINV", "BINV", "QINV", "RINV"];

/// χ² critical value for 3 degrees of freedom at p = 0.001.
pub const CHI2_CRITICAL_3DF: f64 = 16.266;

fn info(id: impl Into<String>, actual: impl Into<String>) -> Check {
    let a = actual.into();
    Check::new(id, true, "-", a)
}

pub fn tables(family: Option<Family>, n: Option<usize>) -> Result<SuiteReport> {
    let checks = golden::check_conjugation()?
        .into_iter()
        .filter(|c| {
            let id = c.id.strip_prefix("conjugation/").unwrap_or(&c.id);
            let mut parts = id.split('/');
            let gate = parts.next().unwrap_or("");
            let width = parts.next().and_then(|p| p.strip_prefix("n=")).and_then(|p| p.parse::<usize>().ok());
            let family_ok = family.is_none_or(|f| gate == f.name());
            let n_ok = match (n, width) {
                (None, _) => true,
                (Some(n), Some(w)) => n == w,
                (Some(n), None) => family.is_none() && n == if gate == "TOFFOLI" || gate == "FREDKIN" { 3 } else { 2 },
            };
            family_ok && n_ok
        })
        .collect::<Vec<_>>();
    if checks.is_empty() {
        return Err(Error::InvalidArgument("no table rows match the requested family and size".into()));
    }
    Ok(SuiteReport::new("tables", checks))
}

/// Class label, factorization (P, E) and, for catalog transforms, the
/// reference class.
pub fn classify_operator(name: Option<&str>, u: &DenseMatrix) -> Result<SuiteReport> {
    let label = name.unwrap_or("input").to_string();
    let class = classify(u)?;
    let mut checks = Vec::new();
    let reference = name.and_then(|n| {
        let norm = crate::gates::normalize_name(n);
        class_table().iter().find(|e| e.gate == norm)
    });
    match reference {
        Some(e) => {
            let want = crate::ghz::TransformClass {
                clifford: e.clifford,
                parity_preserving: Some(e.parity_preserving),
                matchgate: Some(e.matchgate),
            };
            checks.push(Check::compare(format!("classify/{label}/class"), want, class));
        }
        None => checks.push(info(format!("classify/{label}/class"), class.label())),
    }
    match factor_transform(u) {
        Ok(f) => {
            let ok = f.rebuild()? == *u;
            checks.push(Check::new(format!("classify/{label}/factorization"), ok, "C_H P E = input", f.to_string()));
        }
        Err(Error::NotATransform(why)) => checks.push(info(format!("classify/{label}/factorization"), format!("not a transform: {why}"))),
        Err(e) => return Err(e),
    }
    Ok(SuiteReport::new("classify", checks))
}

#[derive(Clone, Debug, Default)]
pub struct TeleportOptions {
    pub bell: String,
    pub u: Option<String>,
    pub cu: Option<String>,
    pub kl: Option<(u8, u8)>,
    /// Number of runs and seed.
    pub simulate: Option<(usize, u64)>,
}

fn kl_pairs(kl: Option<(u8, u8)>) -> Vec<(u8, u8)> {
    kl.map_or_else(|| vec![(0, 0), (0, 1), (1, 0), (1, 1)], |p| vec![p])
}

fn equation_checks(name: &str, b: &DenseMatrix, kl: Option<(u8, u8)>, checks: &mut Vec<Check>) -> Result<()> {
    for (k, l) in kl_pairs(kl) {
        for side in Side::BOTH {
            let ok = verify_teleport_side(b, side, k, l)?;
            checks.push(Check::new(
                format!("teleport/{name}/{}/k={k},l={l}", side.name()),
                ok,
                "holds",
                if ok { "holds" } else { "fails" },
            ));
        }
    }
    Ok(())
}

/// The teleportation operator of `forward` equals the product built from the
/// named inverse gate, so the inverse acts as the Bell measurement.
fn measurement_inverse_checks(inv: &str, forward: &str, checks: &mut Vec<Check>) -> Result<()> {
    let b = make_gate(forward)?;
    let binv = make_gate(inv)?;
    let id2 = DenseMatrix::identity(2);
    let left = binv.tensor(&id2)?.matmul(&id2.tensor(&b)?)?;
    let right = id2.tensor(&binv)?.matmul(&b.tensor(&id2)?)?;
    for (side, built) in [(Side::Left, left), (Side::Right, right)] {
        let ok = teleportation_operator(&b, side)? == built;
        checks.push(Check::new(
            format!("teleport/{inv}/{}/measurement-of-{forward}", side.name()),
            ok,
            "holds",
            if ok { "holds" } else { "fails" },
        ));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimulationStats {
    pub runs: usize,
    /// Outcomes 00, 01, 10, 11.
    pub counts: [usize; 4],
    /// Runs whose corrected state equals the input up to global phase.
    pub recovered: usize,
}

impl SimulationStats {
    /// Pearson χ² against the uniform distribution.
    pub fn chi_square(&self) -> f64 {
        let e = self.runs as f64 / 4.0;
        self.counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum()
    }
}

pub fn simulate_runs(b: &DenseMatrix, psi: &StateVector, k: u8, l: u8, runs: usize, seed: u64) -> Result<SimulationStats> {
    let t = Teleporter::new(b)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0usize; 4];
    let mut recovered = 0;
    for _ in 0..runs {
        match t.run(psi, k, l, &mut rng) {
            Ok(r) => {
                counts[(2 * r.outcome.0 + r.outcome.1) as usize] += 1;
                recovered += 1;
            }
            Err(Error::Numerical(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(SimulationStats { runs, counts, recovered })
}

/// The three test inputs |0⟩, |1⟩, |+⟩.
pub fn simulation_inputs() -> Vec<(&'static str, StateVector)> {
    vec![
        ("0", StateVector::basis(1, 0).expect("basis state")),
        ("1", StateVector::basis(1, 1).expect("basis state")),
        ("+", StateVector::plus()),
    ]
}

pub fn teleport(opts: &TeleportOptions) -> Result<SuiteReport> {
    let b = make_gate(&opts.bell)?;
    let name = crate::gates::normalize_name(&opts.bell);
    let mut checks = Vec::new();
    equation_checks(&name, &b, opts.kl, &mut checks)?;
    if let Some(u) = &opts.u {
        let table = single_gate_table(&b, &make_gate(u)?)?;
        for (idx, level) in table.levels()? {
            let id: String = idx.iter().map(|d| char::from(b'0' + d)).collect();
            checks.push(info(format!("teleport/{name}/gate-{u}/ijkl={id}"), level.to_string()));
        }
        let ujoin = crate::gates::normalize_name(u);
        checks.extend(
            golden::check_corrections()?
                .into_iter()
                .filter(|c| c.id.starts_with(&format!("gate-corrections/{ujoin}/{name}/"))),
        );
    }
    if let Some(cu) = &opts.cu {
        let cu_m = make_gate(cu)?;
        let cu_name = crate::gates::normalize_name(cu);
        let passed = verify_two_qubit_protocol(&b, &cu_m)?;
        checks.push(Check::new(format!("teleport/{name}/cu-{cu_name}/protocol"), passed == 256, "256/256", format!("{passed}/256")));
        checks.extend(
            golden::check_two_qubit(Some(&cu_name))?
                .into_iter()
                .filter(|c| c.id.starts_with(&format!("two-qubit/{name}/"))),
        );
    }
    if let Some((runs, seed)) = opts.simulate {
        let (k, l) = opts.kl.unwrap_or((0, 0));
        for (label, psi) in simulation_inputs() {
            let s = simulate_runs(&b, &psi, k, l, runs, seed)?;
            let id = format!("teleport/{name}/simulate/psi={label}");
            checks.push(Check::new(format!("{id}/recovered"), s.recovered == runs, format!("{runs}/{runs}"), format!("{}/{runs}", s.recovered)));
            let chi = s.chi_square();
            checks.push(Check::new(
                format!("{id}/uniform"),
                chi < CHI2_CRITICAL_3DF,
                format!("chi2 < {CHI2_CRITICAL_3DF}"),
                format!("counts {:?}, chi2 {chi:.3}", s.counts),
            ));
        }
    }
    Ok(SuiteReport::new("teleport", checks))
}

/// Teleportation equations for every catalog transform, the inverse
/// measurements, and the closed-form correction tables.
pub fn teleport_all() -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for name in BELL_TRANSFORMS {
        equation_checks(name, &make_gate(name)?, None, &mut checks)?;
    }
    for (inv, fwd) in MEASUREMENT_INVERSES {
        measurement_inverse_checks(inv, fwd, &mut checks)?;
    }
    checks.extend(golden::check_corrections()?);
    for g in ["H", "T"] {
        for b in ["CH", "B", "Q", "R"] {
            let t = single_gate_table(&make_gate(b)?, &make_gate(g)?)?;
            let levels: Vec<GateLevel> = t.levels()?.into_iter().map(|(_, l)| l).collect();
            let ok = match g {
                "H" => levels.iter().all(|l| *l == GateLevel::Pauli),
                _ => levels.iter().all(|l| *l <= GateLevel::Clifford) && levels.contains(&GateLevel::Clifford),
            };
            let want = if g == "H" { "all pauli" } else { "all clifford, some non-pauli" };
            let max = levels.iter().max().copied().unwrap_or(GateLevel::Pauli);
            checks.push(Check::new(format!("gate-levels/{g}/{b}"), ok, want, format!("highest level {max}")));
        }
    }
    Ok(SuiteReport::new("teleport", checks))
}

pub fn two_qubit(gate: Option<&str>) -> Result<SuiteReport> {
    Ok(SuiteReport::new("two-qubit", golden::check_two_qubit(gate)?))
}

fn expected_params(name: &str) -> Option<NonlocalParams> {
    let cnot = NonlocalParams { a: FRAC_PI_4, b: 0.0, c: 0.0 };
    match name {
        "CNOT" | "CZ" | "CH" | "CHINV" | "B" | "BINV" | "BPRIME" | "BPRIMEINV" | "Q" | "QINV" => Some(cnot),
        "R" | "RINV" => Some(NonlocalParams::canonical(FRAC_PI_4, 0.0, FRAC_PI_4, 1e-12)),
        "SWAP" => Some(NonlocalParams { a: FRAC_PI_4, b: FRAC_PI_4, c: FRAC_PI_4 }),
        _ => None,
    }
}

pub fn entangle(name: Option<&str>, input: &MatrixInput, oracle: Option<(usize, u64)>) -> Result<SuiteReport> {
    let u = input.complex4()?;
    let norm = name.map(crate::gates::normalize_name);
    let label = norm.clone().unwrap_or_else(|| "input".into());
    let params = nonlocal_params(&u, DEFAULT_TOL)?;
    let ep = params.entangling_power();
    let mut checks = Vec::new();
    match norm.as_deref().and_then(expected_params) {
        Some(want) => checks.push(Check::new(format!("entangle/{label}/params"), params.approx_eq(&want, 1e-9), want.to_string(), params.to_string())),
        None => checks.push(info(format!("entangle/{label}/params"), params.to_string())),
    }
    if norm.as_deref().is_some_and(|n| MAXIMALLY_ENTANGLING.contains(&n)) {
        checks.push(Check::new(format!("entangle/{label}/e_p"), (ep - 1.0).abs() < 1e-9, "1", format!("{ep:.12}")));
    } else {
        checks.push(info(format!("entangle/{label}/e_p"), format!("{ep:.12}")));
    }
    if let Some((samples, seed)) = oracle {
        let mc = entangling_power_oracle(&u, samples, seed)?;
        let bound = 5.0 / (samples as f64).sqrt();
        checks.push(Check::new(
            format!("entangle/{label}/oracle"),
            (mc - ep).abs() < bound,
            format!("within {bound:.4} of {ep:.6}"),
            format!("{mc:.6}"),
        ));
    }
    Ok(SuiteReport::new("entangle", checks))
}

pub fn entangle_all(oracle: Option<(usize, u64)>) -> Result<SuiteReport> {
    let mut parts = Vec::new();
    for name in MAXIMALLY_ENTANGLING.iter().chain(&["BPRIMEINV", "CNOT", "SWAP"]) {
        parts.push(entangle(Some(name), &MatrixInput::Exact(make_gate(name)?), oracle)?);
    }
    Ok(SuiteReport::merge("entangle", parts))
}

fn expected_ybe(name: &str) -> Option<bool> {
    match name {
        "B" | "BINV" | "BPRIME" => Some(true),
        "CNOT" => Some(false),
        _ => None,
    }
}

pub fn ybe(name: Option<&str>, u: &DenseMatrix) -> Result<SuiteReport> {
    let norm = name.map(crate::gates::normalize_name);
    let label = norm.clone().unwrap_or_else(|| "input".into());
    let holds = yang_baxter(u)?;
    let word = |h: bool| if h { "holds" } else { "fails" };
    let check = match norm.as_deref().and_then(expected_ybe) {
        Some(want) => Check::compare(format!("ybe/{label}"), word(want), word(holds)),
        None => info(format!("ybe/{label}"), word(holds)),
    };
    Ok(SuiteReport::new("ybe", vec![check]))
}

pub fn ybe_all() -> Result<SuiteReport> {
    let mut parts = Vec::new();
    for name in ["B", "BINV", "BPRIME", "CNOT"] {
        parts.push(ybe(Some(name), &make_gate(name)?)?);
    }
    Ok(SuiteReport::merge("ybe", parts))
}

fn identity_check(o: &IdentityOutcome) -> Check {
    let expected = if o.expected_holds { "holds" } else { "fails as written" };
    Check::new(format!("identity/{}", o.name), o.as_expected(), expected, o.report())
}

pub fn identities(name: Option<&str>) -> Result<SuiteReport> {
    let outcomes = match name {
        Some(n) => vec![verify_identity(n)?],
        None => verify_all()?,
    };
    Ok(SuiteReport::new("identities", outcomes.iter().map(identity_check).collect()))
}

/// Names of published identities that do not hold as written.
pub fn failing_stated_identities() -> Result<Vec<String>> {
    Ok(registry()
        .iter()
        .zip(verify_all()?)
        .filter(|(id, o)| id.stated && !o.holds)
        .map(|(id, _)| id.name.clone())
        .collect())
}

/// P_B: |j⟩ ↦ |j_n+1, j_1+j_2, …, j_1+j_n⟩ with phase (−1)^{j_1(j_n+1)};
/// P_B′: |j⟩ ↦ |j_1+1, j_1+j_2, …⟩ with no phase.
fn family_formula(family: Family, n: usize, j: usize) -> (usize, i64) {
    let bit = |q: usize| (j >> (n - q)) & 1;
    let first = match family {
        Family::BN => bit(n) ^ 1,
        _ => bit(1) ^ 1,
    };
    let mut out = first;
    for q in 2..=n {
        out = (out << 1) | (bit(1) ^ bit(q));
    }
    let sign = match family {
        Family::BN if bit(1) * (bit(n) ^ 1) == 1 => -1,
        _ => 1,
    };
    (out, sign)
}

/// GHZ stabilizers, label maps, family factorizations and the multicopy
/// X-string relations.
pub fn ghz_structure(max_n: usize) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for n in 1..=max_n {
        let mut bad = 0;
        for bits in 0..(1usize << n) {
            let label = GhzLabel::from_index(n, bits)?;
            if !verify_stabilizers(&ghz_state(&label), &label)? {
                bad += 1;
            }
            if j_to_k(label.index_j(), n)? != label.index_k() {
                bad += 1;
            }
        }
        checks.push(Check::new(format!("ghz/stabilizers/n={n}"), bad == 0, "all labels", format!("{bad} failures")));
    }
    for (n, want) in [(2usize, vec![1, 2, 4, 3]), (3, vec![1, 2, 3, 4, 8, 7, 6, 5])] {
        let got = (1..=1usize << n).map(|j| j_to_k(j, n)).collect::<Result<Vec<_>>>()?;
        checks.push(Check::compare(format!("ghz/label-order/n={n}"), format!("{want:?}"), format!("{got:?}")));
    }
    for family in [Family::BN, Family::BPrimeN] {
        for n in 2..=4 {
            let f = factor_transform(&family_gate(family, n, None)?)?;
            let ok = (0..1usize << n).all(|j| {
                let (row, sign) = family_formula(family, n, j);
                f.perm()[j] == row && f.phases()[j] == crate::ring::RingScalar::from_int(sign)
            });
            checks.push(Check::new(format!("ghz/factorization/{}/n={n}", family.name()), ok, "closed form", f.to_string()));
        }
    }
    for n in 2..=5 {
        for (family, site, want) in [(Family::ChN, 1, 0u8), (Family::BN, n, 1), (Family::BPrimeN, 1, 1), (Family::RN, 1, 0)] {
            let got = multicopy_x_check(&family_gate(family, n, None)?, site - 1)?;
            let show = |l: Option<u8>| l.map_or("none".to_string(), |l| format!("{}X..X", if l == 1 { "-" } else { "+" }));
            checks.push(Check::compare(format!("ghz/multicopy/{}/n={n}/Z{site}", family.name()), show(Some(want)), show(got)));
        }
    }
    Ok(SuiteReport::new("ghz", checks))
}

pub fn classes_all() -> Result<SuiteReport> {
    Ok(SuiteReport::new("classes", golden::check_classes()?))
}

/// Every suite with default settings, ordered by suite name.
pub fn all_suites(oracle_seed: u64) -> Result<Vec<SuiteReport>> {
    let mut out = vec![
        classes_all()?,
        entangle_all(Some((20_000, oracle_seed)))?,
        ghz_structure(8)?,
        identities(None)?,
        tables(None, None)?,
        teleport_all()?,
        two_qubit(None)?,
        ybe_all()?,
    ];
    out.sort_by(|a, b| a.suite.cmp(&b.suite));
    Ok(out)
}
