use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ghzkit::gates::{normalize_name, Family};
use ghzkit::interchange::resolve_operator;
use ghzkit::report::SuiteReport;
use ghzkit::suites::{self, TeleportOptions};
use ghzkit::Result;

#[derive(Parser)]
#[command(name = "ghzkit", version, about = "Exact checks for GHZ/Bell transforms, teleportation and gate identities")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// In text output, list only failing checks.
    #[arg(long, global = true)]
    failures_only: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Pauli conjugation tables against the reference data.
    Tables {
        /// Family name: CH_N, B_N, BPRIME_N or RPRIME_N.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Class and (P, E) factorization of a gate or matrix file.
    Classify { operator: String },
    /// Teleportation equations, gate teleportation and sampling.
    Teleport {
        /// Bell transform used for the resource state.
        #[arg(long)]
        bell: String,
        /// One-qubit gate to teleport.
        #[arg(long)]
        u: Option<String>,
        /// Two-qubit gate to teleport.
        #[arg(long)]
        cu: Option<String>,
        /// Number of sampled runs per input state.
        #[arg(long, requires = "seed")]
        simulate: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Resource label as two bits, e.g. 01.
        #[arg(long, value_parser = parse_kl)]
        kl: Option<(u8, u8)>,
    },
    /// Non-local parameters and entangling power.
    Entangle {
        operator: String,
        /// Monte Carlo samples for the independent estimate.
        #[arg(long, requires = "seed")]
        oracle: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Yang-Baxter relation.
    Ybe { operator: String },
    /// Decomposition and exponential identities.
    Identities {
        #[arg(long)]
        name: Option<String>,
    },
    /// All suites.
    Report {
        /// Seed for the entangling power estimates.
        #[arg(long)]
        seed: u64,
    },
}

fn parse_kl(s: &str) -> std::result::Result<(u8, u8), String> {
    match s.as_bytes() {
        [k @ (b'0' | b'1'), l @ (b'0' | b'1')] => Ok((k - b'0', l - b'0')),
        _ => Err(format!("expected two bits such as 01, got `{s}`")),
    }
}

/// The catalog name when `arg` names a gate rather than a file.
fn gate_name(arg: &str) -> Option<String> {
    ghzkit::gates::make_gate(arg).ok().map(|_| normalize_name(arg))
}

fn run(cli: &Cli) -> Result<SuiteReport> {
    match &cli.command {
        Command::Tables { family, n } => {
            let family = family.as_deref().map(Family::parse).transpose()?;
            suites::tables(family, *n)
        }
        Command::Classify { operator } => {
            let m = resolve_operator(operator)?;
            suites::classify_operator(gate_name(operator).as_deref(), m.exact()?)
        }
        Command::Teleport { bell, u, cu, simulate, seed, kl } => suites::teleport(&TeleportOptions {
            bell: bell.clone(),
            u: u.clone(),
            cu: cu.clone(),
            kl: *kl,
            simulate: simulate.zip(*seed),
        }),
        Command::Entangle { operator, oracle, seed } => {
            let m = resolve_operator(operator)?;
            suites::entangle(gate_name(operator).as_deref(), &m, oracle.zip(*seed))
        }
        Command::Ybe { operator } => {
            let m = resolve_operator(operator)?;
            suites::ybe(gate_name(operator).as_deref(), m.exact()?)
        }
        Command::Identities { name } => suites::identities(name.as_deref()),
        Command::Report { seed } => Ok(SuiteReport::merge("report", suites::all_suites(*seed)?)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.to_text(cli.failures_only)),
                Format::Json => match report.to_json() {
                    Ok(j) => println!("{j}"),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                },
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
