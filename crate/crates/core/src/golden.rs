//! Reference tables shipped with the crate and their comparison against
//! values computed from scratch.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::formula::{Env, Formula, IndexExpr};
use crate::gates::{family_gate, make_gate, Family};
use crate::ghz::classify;
use crate::linalg::DenseMatrix;
use crate::pauli::{conjugate_by, PauliWord};
use crate::report::Check;
use crate::teleport::{derive_corrections, render_operator, single_gate_table, two_gate_operator, two_qubit_indices};

#[derive(Clone, Debug, Deserialize)]
pub struct FamilyConjugation {
    pub gate: String,
    pub n: usize,
    pub rows: Vec<[String; 2]>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GateConjugation {
    pub gate: String,
    pub rows: Vec<[String; 2]>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ConjugationTables {
    pub family: Vec<FamilyConjugation>,
    pub gate: Vec<GateConjugation>,
    /// Outputs are operator expressions rather than Pauli words.
    pub operator: Vec<GateConjugation>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CorrectionForms {
    pub transform: String,
    pub u: String,
    pub v: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GateCorrectionForms {
    pub gate: String,
    pub transform: String,
    pub r: String,
    pub s: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct TwoQubitIndexForms {
    pub transform: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct TwoQubitPhaseForms {
    pub transform: String,
    pub e_q: String,
    pub e_p: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct TwoQubitFactorForms {
    pub transforms: Vec<String>,
    pub gate: String,
    pub q: String,
    pub p: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct TeleportTables {
    pub corrections: Vec<CorrectionForms>,
    pub gate_corrections: Vec<GateCorrectionForms>,
    pub two_qubit_indices: Vec<TwoQubitIndexForms>,
    pub two_qubit_phases: Vec<TwoQubitPhaseForms>,
    pub two_qubit_factors: Vec<TwoQubitFactorForms>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ClassEntry {
    pub gate: String,
    pub clifford: bool,
    pub parity_preserving: bool,
    pub matchgate: bool,
}

#[derive(Deserialize)]
struct ClassFile {
    transform: Vec<ClassEntry>,
}

fn parse_toml<T: for<'de> Deserialize<'de>>(src: &str) -> Result<T> {
    toml::from_str(src).map_err(|e| Error::Parse(e.to_string()))
}

pub fn conjugation_tables() -> &'static ConjugationTables {
    static T: OnceLock<ConjugationTables> = OnceLock::new();
    T.get_or_init(|| parse_toml(include_str!("../tables/conjugation.toml")).expect("conjugation table"))
}

pub fn teleport_tables() -> &'static TeleportTables {
    static T: OnceLock<TeleportTables> = OnceLock::new();
    T.get_or_init(|| parse_toml(include_str!("../tables/teleport.toml")).expect("teleport table"))
}

pub fn class_table() -> &'static [ClassEntry] {
    static T: OnceLock<Vec<ClassEntry>> = OnceLock::new();
    T.get_or_init(|| parse_toml::<ClassFile>(include_str!("../tables/classes.toml")).expect("class table").transform)
}

fn conjugation_rows(u: &DenseMatrix, n: usize, label: &str, rows: &[[String; 2]], checks: &mut Vec<Check>) -> Result<()> {
    for [input, output] in rows {
        let p = PauliWord::parse(input, n)?;
        let expected = PauliWord::parse(output, n)?;
        let id = format!("conjugation/{label}/{input}");
        match conjugate_by(u, &p)?.as_pauli() {
            Some(actual) => checks.push(Check::compare(id, expected, actual)),
            None => checks.push(Check::new(id, false, expected.to_string(), "not a Pauli word")),
        }
    }
    Ok(())
}

/// Family and gate conjugation tables, plus the Toffoli/Fredkin table whose
/// outputs are Pauli words times controlled gates.
pub fn check_conjugation() -> Result<Vec<Check>> {
    let t = conjugation_tables();
    let mut checks = Vec::new();
    for f in &t.family {
        let u = family_gate(Family::parse(&f.gate)?, f.n, None)?;
        conjugation_rows(&u, f.n, &format!("{}/n={}", f.gate, f.n), &f.rows, &mut checks)?;
    }
    for g in &t.gate {
        conjugation_rows(&make_gate(&g.gate)?, 2, &g.gate, &g.rows, &mut checks)?;
    }
    for g in &t.operator {
        let u = make_gate(&g.gate)?;
        for [input, output] in &g.rows {
            let actual = u.matmul(&PauliWord::parse(input, 3)?.to_matrix())?.matmul(&u.dagger())?;
            let expected = Expr::parse(output)?.eval(3)?;
            checks.push(Check::new(
                format!("conjugation/{}/{input}", g.gate),
                actual == expected,
                output.clone(),
                if actual == expected { output.clone() } else { "different operator".into() },
            ));
        }
    }
    Ok(checks)
}

fn bits2() -> impl Iterator<Item = (u8, u8)> {
    (0..4u8).map(|t| (t >> 1, t & 1))
}

fn matrix_check(id: String, expected: &DenseMatrix, actual: &DenseMatrix) -> Check {
    Check::new(id, expected == actual, render_operator(expected), render_operator(actual))
}

/// Closed forms of the corrections U_ij, V_kl and of R_ij, S_kl for the
/// one-qubit gates H and T.
pub fn check_corrections() -> Result<Vec<Check>> {
    let t = teleport_tables();
    let mut checks = Vec::new();
    for c in &t.corrections {
        let table = derive_corrections(&make_gate(&c.transform)?)?;
        let (u, v) = (Formula::parse(&c.u)?, Formula::parse(&c.v)?);
        for (x, y) in bits2() {
            let env = Env::new().var("i", x.into()).var("j", y.into()).var("k", x.into()).var("l", y.into());
            let id = format!("corrections/{}", c.transform);
            checks.push(matrix_check(format!("{id}/U{x}{y}"), &u.eval(&env)?, &table.u_matrix(x, y)));
            checks.push(matrix_check(format!("{id}/V{x}{y}"), &v.eval(&env)?, &table.v_matrix(x, y)));
        }
    }
    for c in &t.gate_corrections {
        let table = single_gate_table(&make_gate(&c.transform)?, &make_gate(&c.gate)?)?;
        let (r, s) = (Formula::parse(&c.r)?, Formula::parse(&c.s)?);
        for (x, y) in bits2() {
            let env = Env::new().var("i", x.into()).var("j", y.into()).var("k", x.into()).var("l", y.into());
            let id = format!("gate-corrections/{}/{}", c.gate, c.transform);
            checks.push(matrix_check(format!("{id}/R{x}{y}"), &r.eval(&env)?, table.r(x, y)));
            checks.push(matrix_check(format!("{id}/S{x}{y}"), &s.eval(&env)?, table.s(x, y)));
        }
    }
    Ok(checks)
}

const TUPLE_VARS: [&str; 8] = ["i1", "j1", "k1", "l1", "i2", "j2", "k2", "l2"];

fn scalar_of(m: &DenseMatrix) -> crate::ring::RingScalar {
    m.get(0, 0)
}

/// Closed forms Q⊗P of the corrections for teleporting a two-qubit gate,
/// compared with the operator obtained from the correction tables for all
/// 256 index tuples of every listed (transform, gate) pair.
pub fn check_two_qubit(gate_filter: Option<&str>) -> Result<Vec<Check>> {
    let t = teleport_tables();
    let mut checks = Vec::new();
    for f in &t.two_qubit_factors {
        if gate_filter.is_some_and(|g| !g.eq_ignore_ascii_case(&f.gate)) {
            continue;
        }
        let cu = make_gate(&f.gate)?;
        let (qf, pf) = (Formula::parse(&f.q)?, Formula::parse(&f.p)?);
        for transform in &f.transforms {
            let idx_forms = t
                .two_qubit_indices
                .iter()
                .find(|x| &x.transform == transform)
                .ok_or_else(|| Error::InvalidArgument(format!("no index forms for {transform}")))?;
            let phase_forms = t
                .two_qubit_phases
                .iter()
                .find(|x| &x.transform == transform)
                .ok_or_else(|| Error::InvalidArgument(format!("no phase forms for {transform}")))?;
            let abcd = [&idx_forms.a, &idx_forms.b, &idx_forms.c, &idx_forms.d]
                .map(|s| IndexExpr::parse(s))
                .into_iter()
                .collect::<Result<Vec<_>>>()?;
            let (eq, ep) = (Formula::parse(&phase_forms.e_q)?, Formula::parse(&phase_forms.e_p)?);
            let table = derive_corrections(&make_gate(transform)?)?;
            for idx in two_qubit_indices() {
                let mut env = Env::new();
                for (name, v) in TUPLE_VARS.iter().zip(idx) {
                    env.set_var(name, v.into());
                }
                for (name, e) in ["a", "b", "c", "d"].iter().zip(&abcd) {
                    let v = e.eval(&env)?.rem_euclid(2);
                    env.set_var(name, v);
                }
                env.set_scalar("E_Q", scalar_of(&eq.eval(&env)?));
                env.set_scalar("E_P", scalar_of(&ep.eval(&env)?));
                let expected = qf.eval(&env)?.tensor(&pf.eval(&env)?)?;
                let actual = two_gate_operator(&table, &cu, &idx)?;
                let tuple: String = idx.iter().map(|b| char::from(b'0' + b)).collect();
                checks.push(Check::new(
                    format!("two-qubit/{transform}/{}/{tuple}", f.gate),
                    expected == actual,
                    format!("{} ⊗ {}", render_operator(&qf.eval(&env)?), render_operator(&pf.eval(&env)?)),
                    if expected == actual { "match".to_string() } else { "different operator".to_string() },
                ));
            }
        }
    }
    Ok(checks)
}

/// Clifford / parity-preserving / matchgate class of each two-qubit transform.
pub fn check_classes() -> Result<Vec<Check>> {
    class_table()
        .iter()
        .map(|e| {
            let c = classify(&make_gate(&e.gate)?)?;
            let actual = (c.clifford, c.parity_preserving.unwrap_or(false), c.matchgate.unwrap_or(false));
            let expected = (e.clifford, e.parity_preserving, e.matchgate);
            let fmt = |(a, b, m): (bool, bool, bool)| format!("clifford={a} parity_preserving={b} matchgate={m}");
            Ok(Check::new(format!("classes/{}", e.gate), actual == expected, fmt(expected), fmt(actual)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(checks: &[Check]) {
        let bad: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
        assert!(bad.is_empty(), "{} failures, first: {:?}", bad.len(), bad.first());
    }

    #[test]
    fn conjugation_tables_match() {
        let c = check_conjugation().unwrap();
        assert!(c.len() > 100);
        all_pass(&c);
    }

    #[test]
    fn correction_closed_forms_match() {
        let c = check_corrections().unwrap();
        assert_eq!(c.len(), 4 * 8 + 8 * 8);
        all_pass(&c);
    }

    #[test]
    fn two_qubit_closed_forms_match_for_cnot() {
        let c = check_two_qubit(Some("CNOT")).unwrap();
        assert_eq!(c.len(), 4 * 256);
        all_pass(&c);
    }

    #[test]
    fn classes_match() {
        let c = check_classes().unwrap();
        assert_eq!(c.len(), 8);
        all_pass(&c);
    }
}
