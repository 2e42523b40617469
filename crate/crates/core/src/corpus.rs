//! The fixed test corpus: small named graphs plus 200 seeded triangulations.

use std::time::{Duration, Instant};

use crate::builder::{build_with, BuildOptions};
use crate::error::Result;
use crate::generate::{gen_triangulation, GeneratorConfig};
use crate::graph::Graph;
use crate::named;
use crate::verify::{verify, Limits};

pub fn named_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("K1", Graph::new(1)),
        ("K2", Graph::complete(2)),
        ("K3", Graph::complete(3)),
        ("K4", Graph::complete(4)),
        ("stack5", named::stack5()),
        ("octahedron", named::octahedron()),
        ("icosahedron", named::icosahedron()),
    ]
}

/// `count` configurations cycling `n` through `4..=60` and flips through
/// `0, n, 3n`; instance `i` uses seed `i`.
pub fn generated_configs(count: usize) -> Vec<GeneratorConfig> {
    (0..count)
        .map(|i| {
            let n = 4 + (i * 7) % 57;
            let flips = [0, n, 3 * n][i % 3];
            GeneratorConfig { seed: i as u64, n, flips }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub name: String,
    pub ok: bool,
    pub detail: String,
    pub elapsed: Duration,
}

/// Builds and verifies one graph; with `trace`, also requires both display
/// invariants after every step.
pub fn run_case(name: &str, g: &Graph, trace: bool) -> CaseResult {
    let started = Instant::now();
    let outcome = build_with(g, &BuildOptions { trace, ..Default::default() }).map(|out| {
        let report = verify(&out.representation, g, None);
        let mut problems = report.failures(Limits::default());
        for s in &out.steps {
            if !s.inner_check.passed() {
                problems.push(format!("decomposition of {:?}: {}", s.delta, s.inner_check.summary()));
            }
            if let Some(inv) = &s.invariants {
                if !(inv.i1_ok && inv.i2_ok == Some(true) && inv.matches_target) {
                    problems.push(format!("display invariants fail after inserting into {:?}", s.delta));
                }
            }
        }
        problems
    });
    let (ok, detail) = match outcome {
        Ok(p) if p.is_empty() => (true, String::new()),
        Ok(p) => (false, p.join("; ")),
        Err(e) => (false, e.to_string()),
    };
    CaseResult { name: name.to_string(), ok, detail, elapsed: started.elapsed() }
}

/// The whole corpus: named graphs, then `generated` seeded triangulations.
pub fn run_corpus(generated: usize, trace: bool) -> Result<Vec<CaseResult>> {
    let mut out: Vec<CaseResult> = named_graphs().iter().map(|(name, g)| run_case(name, g, trace)).collect();
    for cfg in generated_configs(generated) {
        let t = gen_triangulation(cfg)?;
        let name = format!("gen seed={} n={} flips={}", cfg.seed, cfg.n, cfg.flips);
        out.push(run_case(&name, t.graph(), trace));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn configs_cover_range() {
        let cfgs = generated_configs(200);
        assert_eq!(cfgs.len(), 200);
        assert!(cfgs.iter().all(|c| (4..=60).contains(&c.n)));
        assert!(cfgs.iter().any(|c| c.n == 60) && cfgs.iter().any(|c| c.n == 4));
        assert!(cfgs.iter().any(|c| c.flips == 3 * c.n && c.n > 4));
    }

    #[test]
    fn named_pass() {
        for (name, g) in named_graphs() {
            let r = run_case(name, &g, true);
            assert!(r.ok, "{name}: {}", r.detail);
        }
    }
}
