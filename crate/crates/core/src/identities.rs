//! Registry of gate identities, loaded from `tables/identities.toml`.

use std::fmt;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::ring::RingScalar;

/// How the two sides of an identity must agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseMode {
    Exact,
    /// lhs = w^k rhs with w = e^{iπ/4}.
    Stated(u8),
    Any,
}

impl PhaseMode {
    pub fn parse(s: &str) -> Result<PhaseMode> {
        match s.trim() {
            "exact" => Ok(PhaseMode::Exact),
            "any" => Ok(PhaseMode::Any),
            other => {
                let k = other
                    .strip_prefix("w^")
                    .and_then(|k| k.parse::<i64>().ok())
                    .ok_or_else(|| Error::Parse(format!("phase mode `{other}`")))?;
                Ok(PhaseMode::Stated(k.rem_euclid(8) as u8))
            }
        }
    }
}

impl fmt::Display for PhaseMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhaseMode::Exact => f.write_str("exact"),
            PhaseMode::Stated(k) => write!(f, "w^{k}"),
            PhaseMode::Any => f.write_str("any"),
        }
    }
}

#[derive(Deserialize)]
struct RawFile {
    identity: Vec<RawIdentity>,
}

#[derive(Deserialize)]
struct RawIdentity {
    name: String,
    qubits: usize,
    lhs: String,
    rhs: String,
    #[serde(default = "exact")]
    phase: String,
    #[serde(default = "yes")]
    stated: bool,
    #[serde(default = "yes")]
    holds: bool,
    #[serde(default)]
    note: Option<String>,
}

fn exact() -> String {
    "exact".into()
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug)]
pub struct Identity {
    pub name: String,
    pub qubits: usize,
    pub lhs: Expr,
    pub rhs: Expr,
    pub phase: PhaseMode,
    /// Part of the published list (false for corrected forms).
    pub stated: bool,
    /// Expected verdict.
    pub expected_holds: bool,
    pub note: Option<String>,
}

const DATA: &str = include_str!("../tables/identities.toml");

fn load(src: &str) -> Result<Vec<Identity>> {
    let raw: RawFile = toml::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
    raw.identity
        .into_iter()
        .map(|r| {
            Ok(Identity {
                lhs: Expr::parse(&r.lhs)?,
                rhs: Expr::parse(&r.rhs)?,
                phase: PhaseMode::parse(&r.phase)?,
                name: r.name,
                qubits: r.qubits,
                stated: r.stated,
                expected_holds: r.holds,
                note: r.note,
            })
        })
        .collect()
}

pub fn registry() -> &'static [Identity] {
    static REG: OnceLock<Vec<Identity>> = OnceLock::new();
    REG.get_or_init(|| load(DATA).expect("identity table"))
}

pub fn identity_names() -> Vec<&'static str> {
    registry().iter().map(|i| i.name.as_str()).collect()
}

pub fn find_identity(name: &str) -> Result<&'static Identity> {
    registry().iter().find(|i| i.name == name).ok_or_else(|| Error::UnknownIdentity {
        name: name.to_string(),
        known: identity_names().join(", "),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub name: String,
    pub holds: bool,
    pub expected_holds: bool,
    pub stated: bool,
    pub mode: PhaseMode,
    /// lhs = phase · rhs, when the sides agree up to a global phase.
    pub phase_found: Option<RingScalar>,
    /// Number of entries where lhs and rhs differ.
    pub residual_entries: usize,
}

impl IdentityOutcome {
    pub fn as_expected(&self) -> bool {
        self.holds == self.expected_holds
    }

    /// Human-readable summary of the comparison.
    pub fn report(&self) -> String {
        let phase = match &self.phase_found {
            Some(p) => match p.omega_exponent() {
                Some(k) => format!("w^{k}"),
                None => p.render(),
            },
            None => "none".into(),
        };
        format!(
            "{}: {} (mode {}, phase found {phase}, differing entries {})",
            self.name,
            if self.holds { "holds" } else { "fails" },
            self.mode,
            self.residual_entries
        )
    }
}

pub fn check_identity(id: &Identity) -> Result<IdentityOutcome> {
    let l = id.lhs.eval(id.qubits)?;
    let r = id.rhs.eval(id.qubits)?;
    let phase_found = l.equal_up_to_phase(&r);
    let residual_entries = l.data().iter().zip(r.data()).filter(|(a, b)| a != b).count();
    let holds = match id.phase {
        PhaseMode::Exact => residual_entries == 0,
        PhaseMode::Stated(k) => phase_found.as_ref().is_some_and(|p| p.omega_exponent() == Some(k)),
        PhaseMode::Any => phase_found.is_some(),
    };
    Ok(IdentityOutcome {
        name: id.name.clone(),
        holds,
        expected_holds: id.expected_holds,
        stated: id.stated,
        mode: id.phase,
        phase_found,
        residual_entries,
    })
}

pub fn verify_identity(name: &str) -> Result<IdentityOutcome> {
    check_identity(find_identity(name)?)
}

pub fn verify_all() -> Result<Vec<IdentityOutcome>> {
    registry().iter().map(check_identity).collect()
}
