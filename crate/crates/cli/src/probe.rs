//! The `probe-conjecture` report.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use riesz_lab::conjecture::{conjecture_probe, exact_l2_blocks, relative_gap, ProbeConfig};
use riesz_lab::random;
use riesz_lab::Vector;

use crate::report::describe_error;
use crate::spec::{describe, Instance};

#[derive(Debug, Clone)]
pub struct ProbeRun {
    pub text: String,
    /// Only `p = 2` has an exact answer to fail against.
    pub failed: bool,
}

pub fn probe(
    inst: &Instance,
    p: f64,
    restarts: usize,
    cases: usize,
    tol: f64,
    seed: u64,
) -> Result<ProbeRun, String> {
    let t = &inst.cond_exp;
    let mut cfg = ProbeConfig::new(p).map_err(|e| describe_error(&e))?;
    cfg.restarts = restarts;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fs: Vec<Vector> = inst.vectors.iter().map(|(_, v)| v.clone()).collect();
    while fs.len() < cases.max(1) {
        fs.push(random::vector(&mut rng, t.space()));
    }
    fs.truncate(cases.max(1));
    let report = conjecture_probe(t, &fs, &cfg, tol, &mut rng).map_err(|e| describe_error(&e))?;

    let mut text = String::new();
    let _ = writeln!(text, "# riesz-lab conjecture probe (evidence only, float arithmetic)");
    let _ = writeln!(text, "spec {}", describe(t));
    let _ = writeln!(text, "seed {seed}");
    let _ = writeln!(text, "p {p} q {}", cfg.q());
    let _ = writeln!(text, "restarts {restarts}");
    let _ = writeln!(text, "tol {tol:e}");
    let mut failed = false;
    for (k, (f, o)) in fs.iter().zip(&report.outcomes).enumerate() {
        let mark = if o.relative_gap < tol { "within" } else { "outside" };
        let _ = writeln!(text, "instance {} f={} gap={:.3e} {mark}", k + 1, f, o.relative_gap);
        if p == 2.0 {
            let exact = exact_l2_blocks(t, f);
            let worst = o
                .blocks
                .iter()
                .map(|b| relative_gap(b.numeric, exact[b.block]))
                .fold(0.0f64, f64::max);
            if worst > tol {
                failed = true;
                let _ = writeln!(text, "  FAIL exact L2 cross-check gap={worst:.3e}");
            }
        }
    }
    let _ = writeln!(
        text,
        "summary instances={} within-tol={} fraction={:.4} max-gap={:.3e}",
        report.outcomes.len(),
        report.within_tol(),
        report.fraction_within_tol(),
        report.max_gap()
    );
    if p == 2.0 {
        let _ = writeln!(text, "exact L2 cross-check {}", if failed { "FAIL" } else { "PASS" });
    }
    Ok(ProbeRun { text, failed })
}
