//! The release gate: eight scenario checks, each reported as one pass/fail
//! line. Every scenario drives the public suite runner exactly the way the
//! binary does.

use std::time::Instant;

use bfcalc::spec::Config;
use bfcalc::suites::run_suite;

struct Gate {
    lines: Vec<(String, bool)>,
}

impl Gate {
    fn new() -> Gate {
        Gate { lines: Vec::new() }
    }

    fn record(&mut self, name: &str, pass: bool, detail: String) {
        let line = format!(
            "[{}] {name}: {detail}",
            if pass { "PASS" } else { "FAIL" }
        );
        println!("{line}");
        self.lines.push((line, pass));
    }

    fn close(self) {
        let failed: Vec<&str> = self
            .lines
            .iter()
            .filter(|(_, p)| !p)
            .map(|(l, _)| l.as_str())
            .collect();
        assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
    }
}

#[test]
fn acceptance() {
    let mut gate = Gate::new();

    // 1: scalar inequalities at full budget, under a minute
    {
        let cfg = Config {
            triples: Some(200),
            points: Some(2048),
            ..Config::default()
        };
        let t0 = Instant::now();
        let rep = run_suite("scalar-inequalities", 2024, 1.0, &cfg).unwrap();
        let secs = t0.elapsed().as_secs_f64();
        let pass = rep.all_pass() && rep.checks.len() == 9 && secs <= 60.0;
        gate.record(
            "scalar-inequalities 200x2048",
            pass,
            format!(
                "{} checks, {} fail, worst margin {:+.3e}, {secs:.1}s",
                rep.checks.len(),
                rep.summary.fail_count,
                rep.summary.worst_margin
            ),
        );
    }

    // 2: 50 random contour-bound draws stay under the explicit constant
    {
        let cfg = Config {
            draws: Some(50),
            ..Config::default()
        };
        let rep = run_suite("contour-bounds", 2024, 1.0, &cfg).unwrap();
        let samples: usize = rep.checks.iter().map(|c| c.samples).sum();
        gate.record(
            "contour bound 50 draws",
            rep.all_pass() && samples == 50,
            format!(
                "{samples} draws, worst margin {:+.3e}",
                rep.summary.worst_margin
            ),
        );
    }

    // 3: three calculus routes agree to 1e-6 on 30 normal matrices
    {
        let cfg = Config {
            matrices: Some(30),
            ..Config::default()
        };
        let rep = run_suite("calculi-compat", 2024, 1.0, &cfg).unwrap();
        gate.record(
            "calculus route agreement",
            rep.all_pass(),
            format!(
                "{} comparisons, worst residual margin {:+.3e}",
                rep.checks.iter().map(|c| c.samples).sum::<usize>(),
                rep.summary.worst_margin
            ),
        );
    }

    // 4: resolvent identity residual below 1e-5, random and fixture matrices
    {
        let cfg = Config {
            draws: Some(30),
            ..Config::default()
        };
        let rep = run_suite("resolvent-identity", 2024, 1.0, &cfg).unwrap();
        let fixture = rep
            .checks
            .iter()
            .any(|c| c.id == "RESOLVENT-IDENTITY-FIXTURES" && c.pass && c.samples == 4);
        gate.record(
            "resolvent identity",
            rep.all_pass() && fixture,
            format!(
                "{} residuals, worst margin {:+.3e}",
                rep.checks.iter().map(|c| c.samples).sum::<usize>(),
                rep.summary.worst_margin
            ),
        );
    }

    // 5: sampled sups never exceed the closed-form constants, 20 matrices
    {
        let cfg = Config {
            matrices: Some(20),
            ..Config::default()
        };
        let rep = run_suite("sectoriality-constants", 2024, 1.0, &cfg).unwrap();
        let rel_ok = rep
            .checks
            .iter()
            .all(|c| c.worst_margin >= -1e-4 * c.worst_scale.max(1.0));
        gate.record(
            "constant certification 20 matrices",
            rep.all_pass() && rel_ok && rep.checks.len() == 7,
            format!(
                "{} ids, worst margin {:+.3e}",
                rep.checks.len(),
                rep.summary.worst_margin
            ),
        );
    }

    // 6: subordinator transforms, matrix subordination, closed-form gamma flow
    {
        let rep = run_suite("subordination", 2024, 1.0, &Config::default()).unwrap();
        let ids = ["LAPLACE", "SUBORDINATE", "GAMMA-EIGEN"];
        let core_ok = ids
            .iter()
            .all(|id| rep.checks.iter().any(|c| c.id == *id && c.pass));
        gate.record(
            "subordination",
            rep.all_pass() && core_ok,
            format!(
                "{} checks, worst margin {:+.3e}",
                rep.checks.len(),
                rep.summary.worst_margin
            ),
        );
    }

    // 7: sign alternation to order 8 at 16 grid points, no violations
    {
        let rep = run_suite("cm-appendix", 2024, 1.0, &Config::default()).unwrap();
        let shaped = rep.checks.iter().all(|c| c.samples == 16 * 9);
        let clean = rep
            .checks
            .iter()
            .all(|c| c.pass && !c.extra.contains_key("violated_x"));
        gate.record(
            "monotonicity appendix",
            rep.all_pass() && shaped && clean,
            format!("{} cases, zero violations: {clean}", rep.checks.len()),
        );
    }

    // 8: identical seeds give byte-identical reports
    {
        let cfg = Config {
            draws: Some(10),
            matrices: Some(5),
            triples: Some(5),
            points: Some(128),
            ..Config::default()
        };
        let mut pass = true;
        for suite in [
            "scalar-inequalities",
            "contour-bounds",
            "calculi-compat",
            "sectoriality-constants",
            "subordination",
            "cm-appendix",
        ] {
            let a = run_suite(suite, 77, 1.0, &cfg).unwrap().to_json();
            let b = run_suite(suite, 77, 1.0, &cfg).unwrap().to_json();
            if a.as_bytes() != b.as_bytes() {
                pass = false;
            }
        }
        gate.record(
            "determinism",
            pass,
            "byte-identical reports across repeated runs".to_string(),
        );
    }

    gate.close();
}
