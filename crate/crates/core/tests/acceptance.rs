//! Acceptance checklist I1–I13: runs the default suite and prints one line per criterion.
//! Built without the libtest harness so the lines are always shown; exits 1 on failure.

use std::process::ExitCode;
use std::time::Instant;

use amalgam_core::verify::{criterion_summary, run_check, InequalityCase, Status, SuiteConfig};

const CRITERIA: [(&str, &str); 13] = [
    ("I1", "diagonal identity ‖f‖^π_{p,p} = ‖f‖_p"),
    ("I2", "Fubini identity for the ball norm"),
    ("I3", "partition/ball equivalence constants"),
    ("I4", "embedding ‖f‖_{q,p,α} ≤ ‖f‖_α"),
    ("I5", "Hölder inequality for fractional norms"),
    ("I6", "sandwiches at α = q and α = p"),
    ("I7", "monotonicity in (q, p)"),
    ("I8", "Kolmogorov condition"),
    ("I9", "weak-Lorentz embedding, p = ∞"),
    ("I10", "degeneracy slopes"),
    ("I11", "sparse-union counterexample"),
    ("I12", "counting bounds and limit property"),
    ("I13", "tail constant and local lemma"),
];

fn main() -> ExitCode {
    let config = SuiteConfig::default();
    let mut cases: Vec<InequalityCase> = Vec::new();
    for entry in &config.checks {
        let t = Instant::now();
        let got = run_check(entry, config.seed);
        eprintln!("  ran {} ({} cases) in {:.1?}", entry.criterion, got.len(), t.elapsed());
        cases.extend(got);
    }
    let summary = criterion_summary(&cases);
    let mut all_ok = true;
    for (label, what) in CRITERIA {
        let line = match summary.iter().find(|s| s.criterion == label) {
            Some(s) => {
                all_ok &= s.ok();
                format!(
                    "{label:<4} {} {what}: {}/{} pass, {} misuse, worst slack {:.3e}",
                    if s.ok() { "PASS" } else { "FAIL" },
                    s.passed,
                    s.cases,
                    s.misuse,
                    s.worst_slack
                )
            }
            None => {
                all_ok = false;
                format!("{label:<4} FAIL {what}: no cases")
            }
        };
        println!("{line}");
    }
    for c in cases.iter().filter(|c| c.status == Status::Fail).take(20) {
        println!("  failed {} lhs={:e} rhs={:e} constant={:e} margin={:e} [{}]", c.id, c.lhs, c.rhs, c.constant, c.margin, c.context);
    }
    if all_ok {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
