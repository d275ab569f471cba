//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use lorentz::{certify, gamma_of, lambda_of, Counterexample, Family64, Gamma, Sequence64, Verdict, Weights64};
use lorentz_cli::selftest::{self, Sampler, SuiteReport};
use serde_json::Value;

const SEED: u64 = 42;
const BUDGET: usize = 10_000_000;
const LADDER: [f64; 3] = [0.1, 0.01, 0.001];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn cli_report(args: &[&str]) -> (i32, Value, Duration) {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("report.json");
    let mut argv = vec!["lorentz"];
    argv.extend_from_slice(args);
    argv.extend(["--out", path.to_str().expect("utf-8 path")]);
    let started = Instant::now();
    let code = lorentz_cli::run(argv);
    let elapsed = started.elapsed();
    let report = std::fs::read_to_string(&path)
        .ok()
        .and_then(|t| serde_json::from_str(&t).ok())
        .unwrap_or(Value::Null);
    (code, report, elapsed)
}

fn suites(reports: &[SuiteReport]) -> (bool, String) {
    let passed = reports.iter().all(SuiteReport::passed);
    let summary = reports
        .iter()
        .map(|r| {
            let mut s = format!("{}: {} trials, {} checks, {} failures", r.name, r.trials, r.checks, r.failures);
            if let Some(first) = &r.first_failure {
                s.push_str(&format!(" (first: {first})"));
            }
            s
        })
        .collect::<Vec<_>>()
        .join("; ");
    (passed, summary)
}

fn reference_value() -> Outcome {
    let (code, report, elapsed) = cli_report(&[
        "norm",
        "--seq",
        r#"{"kind": "power", "c": 1, "s": 1}"#,
        "--p",
        "1",
        "--w",
        "harmonic",
        "--tol",
        "1e-6",
    ]);
    let lo = report["norm_pth"]["lo"].as_f64().unwrap_or(f64::NAN);
    let hi = report["norm_pth"]["hi"].as_f64().unwrap_or(f64::NAN);
    let target = std::f64::consts::PI.powi(2) / 6.0;
    outcome(
        code == 0 && hi - lo <= 1e-6 && lo <= target && target <= hi && elapsed < Duration::from_secs(5),
        format!("[{lo}, {hi}] width {:.2e}, exit {code}, {elapsed:.2?}", hi - lo),
    )
}

fn divergent_case() -> Outcome {
    let (code, report, elapsed) = cli_report(&[
        "member",
        "--seq",
        r#"{"kind": "power", "c": 1, "s": 0.5}"#,
        "--p",
        "1",
        "--w",
        "invsqrt",
    ]);
    let reason = report["details"]["reason"].as_str().unwrap_or("");
    outcome(
        code == 1 && report["verdict"] == "NotMember" && reason.contains("diverges") && elapsed < Duration::from_secs(1),
        format!("verdict {}, exit {code}, {elapsed:.2?}: {reason}", report["verdict"]),
    )
}

fn oracle_equivalence() -> Outcome {
    let started = Instant::now();
    let report = selftest::oracle_equivalence(SEED, 2000);
    let elapsed = started.elapsed();
    let (passed, summary) = suites(std::slice::from_ref(&report));
    outcome(
        passed && report.checks == 8000 && elapsed < Duration::from_secs(60),
        format!("{summary}, tolerance {:e}, {elapsed:.2?}", selftest::ORACLE_TOL),
    )
}

fn inequality_suite() -> Outcome {
    let reports = [
        selftest::seminorm_monotonicity(SEED, 1000),
        selftest::seminorm_convergence(SEED, 1000),
        selftest::permutation_dominance(SEED, 1000),
        selftest::decomposition_chain(SEED, 1000),
        selftest::domination_monotonicity(SEED, 1000),
    ];
    let (passed, summary) = suites(&reports);
    outcome(passed, summary)
}

fn compactness_fixtures() -> Outcome {
    let h = Weights64::harmonic();
    let mut problems = Vec::new();
    let mut agreements = 0;
    let mut fixtures = 0;
    let mut tally = |c: &lorentz::Certificate64, problems: &mut Vec<String>, name: &str| {
        fixtures += 1;
        if c.cross_check_agreement {
            agreements += 1;
        } else {
            problems.push(format!("{name}: criteria disagree"));
        }
    };

    let shift = Family64::shift(Sequence64::unit(1)).expect("finite base");
    for eps in [0.5, 0.4, 0.25, 0.1, 0.01, 0.001, 1e-6] {
        let c = certify(&shift, 1.0, &h, &[eps], 1e-9, BUDGET).expect("valid arguments");
        tally(&c, &mut problems, "shift");
        let witnessed = matches!(
            &c.counterexample,
            Some(Counterexample::NotEquinormed { witness, .. }) if witness.gap.lo >= eps
        );
        if c.verdict != Verdict::NotPrecompact || !witnessed {
            problems.push(format!("shift at eps = {eps}: {:?}", c.verdict));
        }
    }

    let mut sampler = Sampler::new(SEED, 100);
    for _ in 0..50 {
        let members = sampler.explicit_family(10, 7);
        let family = Family64::explicit(members).expect("finite members");
        for w in [Weights64::harmonic(), Weights64::inv_sqrt()] {
            for p in [1.0, 2.0] {
                let c = certify(&family, p, &w, &LADDER, 1e-10, BUDGET).expect("valid arguments");
                tally(&c, &mut problems, "explicit");
                if c.verdict != Verdict::Precompact {
                    problems.push(format!("explicit family {family:?}: {:?}", c.verdict));
                }
            }
        }
    }

    let mut tables = Vec::new();
    for scale in [0.5, 1.0, 3.0] {
        let g = Sequence64::power(scale, 2.0).expect("valid power");
        let family = Family64::dominated(g, vec![]).expect("analytic envelope");
        let ladder = [0.5, 0.1, 0.05, 0.01, 0.005, 0.001];
        let c = certify(&family, 1.0, &h, &ladder, 1e-10, BUDGET).expect("valid arguments");
        tally(&c, &mut problems, "dominated");
        let indices: Vec<u64> = c.equinorm_table.iter().map(|&(_, n)| n).collect();
        // the ladder decreases, so N must not decrease along it
        let monotone = indices.windows(2).all(|pair| pair[0] <= pair[1]);
        if c.verdict != Verdict::Precompact || !monotone || indices.len() != ladder.len() {
            problems.push(format!("dominated {scale}/i²: {:?} {indices:?}", c.verdict));
        }
        tables.push(format!("{scale}/i²: {indices:?}"));
    }

    outcome(
        problems.is_empty(),
        format!(
            "{fixtures} certificates, {agreements} agreeing; N(ε) {}{}",
            tables.join(", "),
            problems.first().map(|p| format!("; first problem: {p}")).unwrap_or_default()
        ),
    )
}

fn auxiliary_bounds() -> Outcome {
    let lambda = lambda_of(1.0, 0.5, 1.0, &Weights64::harmonic());
    let dominated = Family64::dominated(Sequence64::power(1.0, 1.0).expect("valid power"), vec![]).expect("analytic");
    let gamma = gamma_of(&dominated, 0.25);
    let reports = [selftest::lambda_soundness(SEED, 1000), selftest::gamma_soundness(SEED, 1000)];
    let (passed, summary) = suites(&reports);
    outcome(
        lambda == Ok(3) && gamma == Ok(Gamma::Finite(5)) && passed,
        format!("λ = {lambda:?}, γ = {gamma:?}; {summary}"),
    )
}

fn difference_propagation() -> Outcome {
    let report = selftest::difference_propagation(SEED, 200);
    let (passed, summary) = suites(std::slice::from_ref(&report));
    outcome(passed, summary)
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("reference value", reference_value),
        ("divergent case", divergent_case),
        ("oracle equivalence", oracle_equivalence),
        ("inequality suite", inequality_suite),
        ("compactness fixtures", compactness_fixtures),
        ("auxiliary bounds", auxiliary_bounds),
        ("A - A propagation", difference_propagation),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let result = check();
        let status = if result.passed { "PASS" } else { "FAIL" };
        failed += usize::from(!result.passed);
        println!(
            "criterion {} {status} {name} ({:.2?}): {}",
            k + 1,
            started.elapsed(),
            result.detail
        );
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
