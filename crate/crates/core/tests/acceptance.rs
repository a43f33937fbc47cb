//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines show in `cargo test` output; exits nonzero if any fails.

use std::time::{Duration, Instant};

use isobessel::harness::{run, CheckRecord, Report, RunConfig, Status, Suite};

/// Pinned tolerances.
const EQUIVARIANCE_REL: f64 = 1e-6;
const LINEARITY_REL: f64 = 1e-8;
const MIDPOINT_REL: f64 = 1e-3;
const MC_SAMPLES: usize = 1_000_000;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn config(n: usize, suites: &[Suite]) -> RunConfig {
    let base = RunConfig::default();
    if n == 2 {
        return RunConfig {
            suites: suites.to_vec(),
            ..base
        };
    }
    RunConfig {
        n,
        nu: (0..n).map(|i| [(n - i) as f64 + 1.0, 0.0]).collect(),
        eta_bits: vec![false; n],
        suites: suites.to_vec(),
        ..base
    }
}

fn timed(c: &RunConfig) -> (Report, Duration) {
    let t = Instant::now();
    let r = run(c, false);
    (r, t.elapsed())
}

fn failures(r: &Report) -> Vec<&CheckRecord> {
    r.records
        .iter()
        .filter(|c| c.status != Status::Pass)
        .collect()
}

/// Every check passed (none skipped), within the time budget.
fn all_pass(reports: &[(Report, Duration)], budget: Duration) -> Verdict {
    let mut detail = Vec::new();
    let mut pass = true;
    for (r, t) in reports {
        let bad = failures(r);
        pass &= bad.is_empty() && *t < budget;
        detail.push(format!(
            "n={} {}/{} in {:.1}s",
            r.summary.n,
            r.summary.passed,
            r.summary.total,
            t.as_secs_f64()
        ));
        for b in bad.iter().take(3) {
            detail.push(format!(
                "{} {:?}: {} vs {}",
                b.check_id, b.status, b.lhs, b.rhs
            ));
        }
    }
    Verdict {
        pass,
        detail: detail.join("; "),
    }
}

fn tolerance_pinned(r: &Report, prefix: &str, tol: f64) -> bool {
    let matching: Vec<_> = r
        .records
        .iter()
        .filter(|c| c.check_id.starts_with(prefix))
        .collect();
    !matching.is_empty() && matching.iter().all(|c| c.tolerance == Some(tol))
}

fn criterion_1() -> Verdict {
    let reports: Vec<_> = [2, 3]
        .iter()
        .map(|&n| timed(&config(n, &[Suite::ExactAlgebra])))
        .collect();
    let rho = reports
        .iter()
        .map(|(r, _)| {
            r.records
                .iter()
                .find(|c| c.check_id == "exact-algebra.rho")
                .map(|c| c.lhs.clone())
        })
        .collect::<Vec<_>>();
    let mut v = all_pass(&reports, Duration::from_secs(60));
    v.pass &= rho
        == [
            Some("(3/2, 1/2)".to_string()),
            Some("(5/2, 3/2, 1/2)".to_string()),
        ];
    v
}

fn criterion_2() -> Verdict {
    let reports: Vec<_> = [2, 3]
        .iter()
        .map(|&n| timed(&config(n, &[Suite::Uniqueness])))
        .collect();
    let trials: Vec<_> = reports
        .iter()
        .filter_map(|(r, _)| {
            r.records
                .iter()
                .find(|c| c.check_id == "uniqueness.round-trips")
                .map(|c| c.rhs.clone())
        })
        .collect();
    let mut v = all_pass(&reports, Duration::from_secs(120));
    v.pass &= trials == ["100 trials", "25 trials"];
    v
}

fn criterion_3() -> Verdict {
    let mut c = config(2, &[Suite::Equivariance]);
    c.tol = EQUIVARIANCE_REL;
    let (r, t) = timed(&c);
    let u1 = r
        .records
        .iter()
        .filter(|c| c.check_id.starts_with("equivariance.u1."))
        .count();
    let m = r
        .records
        .iter()
        .filter(|c| c.check_id.starts_with("equivariance.m."))
        .count();
    let pinned = tolerance_pinned(&r, "equivariance.u1.", EQUIVARIANCE_REL)
        && tolerance_pinned(&r, "equivariance.m.", EQUIVARIANCE_REL)
        && tolerance_pinned(&r, "equivariance.linearity", LINEARITY_REL);
    let mut v = all_pass(&[(r, t)], Duration::from_secs(600));
    v.pass &= pinned && u1 >= 10 && m >= 10;
    v
}

fn criterion_4() -> Verdict {
    let (r, t) = timed(&config(2, &[Suite::Domination]));
    let bounds = r
        .records
        .iter()
        .filter(|c| c.check_id.starts_with("domination.bound."))
        .count();
    let pinned = tolerance_pinned(&r, "domination.midpoint.", MIDPOINT_REL);
    let mut v = all_pass(&[(r, t)], Duration::from_secs(600));
    v.pass &= pinned && bounds == 3;
    v
}

fn criterion_5() -> Verdict {
    let (r, t) = timed(&config(2, &[Suite::Nonvanishing]));
    let grid = r
        .records
        .iter()
        .filter(|c| c.check_id.starts_with("nonvanishing.grid."))
        .count();
    let mut v = all_pass(&[(r, t)], Duration::from_secs(900));
    v.pass &= grid == 12;
    v
}

fn criterion_6() -> Verdict {
    let mut c = config(2, &[Suite::CrossMethod]);
    c.mc_samples = MC_SAMPLES;
    let (r, t) = timed(&c);
    all_pass(&[(r, t)], Duration::from_secs(1200))
}

fn criterion_7() -> Verdict {
    let mut c = config(
        2,
        &[
            Suite::ExactAlgebra,
            Suite::Uniqueness,
            Suite::Nonvanishing,
            Suite::CrossMethod,
        ],
    );
    c.mc_samples = 1 << 17;
    let a = run(&c, false).without_runtimes().to_jsonl();
    let b = run(&c, false).without_runtimes().to_jsonl();
    let p = run(&c, true).without_runtimes().to_jsonl();
    Verdict {
        pass: a == b && a == p,
        detail: format!(
            "{} bytes; rerun identical: {}; parallel identical: {}",
            a.len(),
            a == b,
            a == p
        ),
    }
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("exact algebra at n = 2, 3", criterion_1),
        ("uniqueness round trips at n = 2, 3", criterion_2),
        ("equivariance and linearity at n = 2", criterion_3),
        ("domination at three half-space points", criterion_4),
        ("non-vanishing grid and support-vanishing", criterion_5),
        ("Monte Carlo against the factored value", criterion_6),
        ("reproducible reports", criterion_7),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        failed += usize::from(!v.pass);
        println!(
            "criterion {} {}: {} ({})",
            k + 1,
            if v.pass { "PASS" } else { "FAIL" },
            name,
            v.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
