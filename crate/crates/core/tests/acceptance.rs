//! Acceptance criteria. Prints one PASS/FAIL line per criterion, then fails
//! the test if any criterion outside `KNOWN_UNATTAINABLE` fails.
//!
//! Run with `cargo test -p ghzkit --test acceptance -- --nocapture` to see
//! the lines.

use std::f64::consts::FRAC_PI_4;
use std::time::{Duration, Instant};

use ghzkit::gates::{ch_n, make_gate, parity_gate, permutation_gate, phase_gate};
use ghzkit::ghz::factor_transform;
use ghzkit::nonlocal::{complex_matrix, entangling_power, entangling_power_oracle, nonlocal_params_exact, Mat4, NonlocalParams};
use ghzkit::pauli::{conjugate_by, is_clifford, PauliWord};
use ghzkit::suites::{self, BELL_TRANSFORMS, MAXIMALLY_ENTANGLING};
use ghzkit::{DenseMatrix, RingScalar};
use nalgebra::Matrix2;
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Criteria that cannot pass as stated; see the expectations in `main`.
const KNOWN_UNATTAINABLE: [u32; 1] = [6];

/// Published identities that do not hold as printed.
const KNOWN_MISPRINTS: [&str; 3] =
    ["b-clifford-circuit-as-printed", "r-clifford-circuit-as-printed", "r-inverse-from-bprime-inverse-as-printed"];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn conjugation_tables() -> Outcome {
    let (r, dt) = timed(|| suites::tables(None, None).unwrap());
    let rows = 4 * (4 + 6 + 8 + 10) + 8 * 4 + 2 * 6;
    outcome(
        r.all_passed() && r.summary.total == rows && dt < Duration::from_secs(5),
        format!("{}/{} rows in {:.2}s", r.summary.passed, rows, dt.as_secs_f64()),
    )
}

fn teleportation_equations() -> Outcome {
    let r = suites::teleport_all().unwrap();
    let eq: Vec<_> = r.checks.iter().filter(|c| c.id.starts_with("teleport/")).collect();
    let bad = eq.iter().filter(|c| !c.passed()).count();
    let expected = BELL_TRANSFORMS.len() * 8 + 3 * 2;
    outcome(bad == 0 && eq.len() == expected, format!("{} equations, {bad} failing", eq.len()))
}

fn correction_tables() -> Outcome {
    let r = suites::teleport_all().unwrap();
    let rel: Vec<_> = r
        .checks
        .iter()
        .filter(|c| c.id.starts_with("corrections/") || c.id.starts_with("gate-corrections/") || c.id.starts_with("gate-levels/"))
        .collect();
    let bad = rel.iter().filter(|c| !c.passed()).count();
    outcome(bad == 0 && rel.len() == 32 + 64 + 8, format!("{} entries and level checks, {bad} failing", rel.len()))
}

fn two_qubit_tables() -> Outcome {
    let (r, dt) = timed(|| suites::two_qubit(None).unwrap());
    outcome(
        r.all_passed() && r.summary.total == 2 * 2 * 10 * 256 && dt < Duration::from_secs(60),
        format!("{}/{} factorizations in {:.2}s", r.summary.passed, r.summary.total, dt.as_secs_f64()),
    )
}

fn entangling_power_criterion() -> Outcome {
    let mut problems = Vec::new();
    let cnot_class = NonlocalParams { a: FRAC_PI_4, b: 0.0, c: 0.0 };
    let r_class = NonlocalParams::canonical(FRAC_PI_4, 0.0, FRAC_PI_4, 1e-12);
    for name in MAXIMALLY_ENTANGLING {
        let u = complex_matrix(&make_gate(name).unwrap()).unwrap();
        let ep = entangling_power(&u).unwrap();
        if (ep - 1.0).abs() >= 1e-9 {
            problems.push(format!("e_p({name}) = {ep}"));
        }
        let samples = 100_000;
        let mc = entangling_power_oracle(&u, samples, 17).unwrap();
        if (mc - ep).abs() >= 5.0 / (samples as f64).sqrt() {
            problems.push(format!("oracle({name}) = {mc}"));
        }
    }
    for (name, want) in [("CH", cnot_class), ("B", cnot_class), ("Q", cnot_class), ("BPRIMEINV", cnot_class), ("R", r_class), ("RINV", r_class)] {
        let p = nonlocal_params_exact(&make_gate(name).unwrap()).unwrap();
        if !p.approx_eq(&want, 1e-9) {
            problems.push(format!("params({name}) = {p}"));
        }
    }
    outcome(problems.is_empty(), if problems.is_empty() { "8 gates maximal, parameters match".into() } else { problems.join("; ") })
}

fn identities_criterion() -> (Outcome, Vec<String>) {
    let failing = suites::failing_stated_identities().unwrap();
    let ybe = suites::ybe_all().unwrap();
    let detail = if failing.is_empty() {
        format!("all published identities hold; Yang-Baxter {}", if ybe.all_passed() { "as expected" } else { "unexpected" })
    } else {
        format!("published identities failing as written: {}", failing.join(", "))
    };
    (outcome(failing.is_empty() && ybe.all_passed(), detail), failing)
}

fn ghz_criterion() -> Outcome {
    let r = suites::ghz_structure(8).unwrap();
    outcome(r.all_passed(), format!("{}/{} checks", r.summary.passed, r.summary.total))
}

fn simulation_criterion() -> Outcome {
    let runs = 10_000;
    let chi2 = ChiSquared::new(3.0).unwrap();
    let mut worst_p: f64 = 1.0;
    let mut lost = 0;
    for (t, name) in BELL_TRANSFORMS.iter().enumerate() {
        let b = make_gate(name).unwrap();
        for (s, (_, psi)) in suites::simulation_inputs().into_iter().enumerate() {
            let (k, l) = (((t + s) >> 1 & 1) as u8, ((t + s) & 1) as u8);
            let stats = suites::simulate_runs(&b, &psi, k, l, runs, 1000 + (t * 3 + s) as u64).unwrap();
            lost += runs - stats.recovered;
            worst_p = worst_p.min(1.0 - chi2.cdf(stats.chi_square()));
        }
    }
    outcome(lost == 0 && worst_p > 0.001, format!("{lost} runs lost, smallest uniformity p = {worst_p:.4}"))
}

fn ring_scalar() -> impl Strategy<Value = RingScalar> {
    (-30i64..30, -30i64..30, -30i64..30, -30i64..30, 0u32..6).prop_map(|(a, b, c, d, k)| RingScalar::new(a, b, c, d, k).unwrap())
}

/// Random single-qubit Clifford+T words.
fn one_qubit_gate() -> impl Strategy<Value = DenseMatrix> {
    prop::collection::vec(prop::sample::select(vec!["H", "S", "T", "X", "Z", "W"]), 0..8).prop_map(|names| {
        names.iter().fold(DenseMatrix::identity(2), |acc, n| acc.matmul(&make_gate(n).unwrap()).unwrap())
    })
}

fn two_qubit_clifford() -> impl Strategy<Value = DenseMatrix> {
    let gens = vec!["H1", "H2", "S1", "S2", "CNOT12", "CNOT21", "CZ"];
    prop::collection::vec(prop::sample::select(gens), 0..12).prop_map(|names| {
        let src = if names.is_empty() { "I1".to_string() } else { names.join(" ") };
        ghzkit::expr::Expr::parse(&src).unwrap().eval(2).unwrap()
    })
}

fn su2() -> impl Strategy<Value = Matrix2<Complex64>> {
    (0.0..std::f64::consts::TAU, 0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU).prop_map(|(a, b, c)| {
        let (cb, sb) = ((b / 2.0).cos(), (b / 2.0).sin());
        let e = |t: f64| Complex64::from_polar(1.0, t);
        Matrix2::new(e(-(a + c) / 2.0) * cb, -e(-(a - c) / 2.0) * sb, e((a - c) / 2.0) * sb, e((a + c) / 2.0) * cb)
    })
}

fn run_property<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn property_criterion() -> Outcome {
    let mut failures = Vec::new();
    let mut record = |name: &str, r: Result<(), String>| {
        if let Err(e) = r {
            failures.push(format!("{name}: {e}"));
        }
    };
    record(
        "ring laws",
        run_property((ring_scalar(), ring_scalar(), ring_scalar()), |(x, y, z)| {
            prop_assert_eq!((x * y) * z, x * (y * z));
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!(x * (y + z), x * y + x * z);
            prop_assert_eq!(x.conj().conj(), x);
            prop_assert_eq!((x * y).conj(), x.conj() * y.conj());
            Ok(())
        }),
    );
    record(
        "parity product law",
        run_property((one_qubit_gate(), one_qubit_gate(), one_qubit_gate(), one_qubit_gate()), |(a, b, c, d)| {
            let lhs = parity_gate(&a, &b).unwrap().matmul(&parity_gate(&c, &d).unwrap()).unwrap();
            let rhs = parity_gate(&a.matmul(&c).unwrap(), &b.matmul(&d).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(parity_gate(&a, &b).unwrap().dagger(), parity_gate(&a.dagger(), &b.dagger()).unwrap());
            Ok(())
        }),
    );
    record(
        "factorization round trip",
        run_property((2usize..5).prop_flat_map(|n| (Just(n), Just((0..1usize << n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(0i64..8, 1 << n))), |(n, perm, ks)| {
            let phases: Vec<RingScalar> = ks.iter().map(|&k| RingScalar::omega_pow(k)).collect();
            let u = ch_n(n).unwrap().matmul(&permutation_gate(n, &perm).unwrap()).unwrap().matmul(&phase_gate(n, &phases).unwrap()).unwrap();
            let f = factor_transform(&u).unwrap();
            prop_assert_eq!(f.perm(), &perm[..]);
            prop_assert_eq!(f.phases(), &phases[..]);
            prop_assert_eq!(f.rebuild().unwrap(), u);
            Ok(())
        }),
    );
    record(
        "clifford closure",
        run_property((two_qubit_clifford(), two_qubit_clifford(), 0u32..4, 0u32..4), |(u, v, x, z)| {
            let uv = u.matmul(&v).unwrap();
            prop_assert!(is_clifford(&uv).unwrap().is_clifford());
            let p = PauliWord::new(2, 0, x, z).unwrap();
            prop_assert!(conjugate_by(&uv, &p).unwrap().as_pauli().is_some());
            Ok(())
        }),
    );
    let catalog: Vec<Mat4> = ["CNOT", "CH", "B", "BPRIME", "Q", "R", "CHT", "BT", "RT", "SWAP"]
        .iter()
        .map(|g| complex_matrix(&make_gate(g).unwrap()).unwrap())
        .collect();
    record(
        "local invariance of e_p",
        run_property((0..catalog.len(), su2(), su2(), su2(), su2()), |(g, u1, u2, v1, v2)| {
            let u = &catalog[g];
            let dressed = u1.kronecker(&u2) * u * v1.kronecker(&v2);
            let diff = (entangling_power(&dressed).unwrap() - entangling_power(u).unwrap()).abs();
            prop_assert!(diff < 1e-8, "difference {}", diff);
            Ok(())
        }),
    );
    outcome(failures.is_empty(), if failures.is_empty() { "5 properties x 100 cases".into() } else { failures.join("; ") })
}

#[test]
fn acceptance() {
    let (c6, misprints) = identities_criterion();
    let results = vec![
        (1, "conjugation tables", conjugation_tables()),
        (2, "teleportation equations", teleportation_equations()),
        (3, "correction tables", correction_tables()),
        (4, "two-qubit gate teleportation tables", two_qubit_tables()),
        (5, "entangling power", entangling_power_criterion()),
        (6, "identities", c6),
        (7, "GHZ structure", ghz_criterion()),
        (8, "teleportation sampling", simulation_criterion()),
        (9, "property suites", property_criterion()),
    ];
    for (n, name, o) in &results {
        println!("{} criterion {n} ({name}): {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    for (n, name, o) in &results {
        if KNOWN_UNATTAINABLE.contains(n) {
            continue;
        }
        assert!(o.passed, "criterion {n} ({name}) failed: {}", o.detail);
    }
    // The identity criterion fails only because of the known misprints;
    // their corrected forms are checked by the identities suite.
    assert_eq!(misprints, KNOWN_MISPRINTS);
    assert!(suites::ybe_all().unwrap().all_passed());
    assert!(suites::identities(None).unwrap().all_passed());
}
