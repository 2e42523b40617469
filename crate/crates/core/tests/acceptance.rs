//! Acceptance criteria; prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use planar_intervals::builder::{base_triangle, build, build_depth2, build_with, BuildOptions};
use planar_intervals::corpus::{generated_configs, named_graphs};
use planar_intervals::decompose::{decompose_inner, verify_inner, Outer};
use planar_intervals::embedding::{is_four_connected, planar_embed, Triangulation};
use planar_intervals::generate::{gen_triangulation, GeneratorConfig};
use planar_intervals::interval::{q, Interval, Q};
use planar_intervals::named;
use planar_intervals::verify::{depth, displayed, intersection_graph, verify, Limits};
use planar_intervals::{Edge, Graph, Representation};
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

const CORPUS_BUDGET: Duration = Duration::from_secs(60);
const PIECE_BUDGET: Duration = Duration::from_secs(5);
const STACKED_BUDGET: Duration = Duration::from_secs(5);

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn corpus_graphs() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = named_graphs().into_iter().map(|(n, g)| (n.to_string(), g)).collect();
    for cfg in generated_configs(200) {
        let t = gen_triangulation(cfg).expect("generator");
        out.push((format!("seed={} n={} flips={}", cfg.seed, cfg.n, cfg.flips), t.graph().clone()));
    }
    out
}

fn criterion_1(corpus: &[(String, Graph)]) -> Outcome {
    let started = Instant::now();
    let mut failures = Vec::new();
    for (name, g) in corpus {
        match build(g) {
            Ok(rep) => {
                let r = verify(&rep, g, None);
                if !r.passes(Limits::default()) {
                    failures.push(format!("{name}: {}", r.failures(Limits::default()).join("; ")));
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    let elapsed = started.elapsed();
    if !failures.is_empty() {
        return fail(format!("{} failures, first: {}", failures.len(), failures[0]));
    }
    if elapsed >= CORPUS_BUDGET {
        return fail(format!("{} graphs took {elapsed:.1?}", corpus.len()));
    }
    pass(format!("{} graphs, <=3 intervals, depth <=3, exact intersection graph, {elapsed:.1?}", corpus.len()))
}

fn criterion_2() -> Outcome {
    let (rep, _) = base_triangle(0, 1, 2);
    let mut want = Representation::new();
    want.insert(0, Interval::ints(0, 3));
    want.insert(1, Interval::ints(1, 4));
    want.insert(1, Interval::ints(6, 7));
    want.insert(2, Interval::ints(2, 5));
    let edges: Vec<Edge> = displayed(&rep).edges.keys().copied().collect();
    if rep != want {
        return fail(format!("got {}", rep.to_json().trim()));
    }
    if edges != [Edge(0, 1), Edge(1, 2)] {
        return fail(format!("displayed edges {edges:?}"));
    }
    pass("f(x)=[0,3], f(y)=[1,4]u[6,7], f(z)=[2,5]; displayed edges xy, yz")
}

/// Criteria 3 and 4 share one traced pass over the corpus.
struct Traced {
    steps: usize,
    invariant_failures: Vec<String>,
    inner_failures: Vec<String>,
    slow_small_pieces: Vec<String>,
    pieces: Vec<Graph>,
}

fn traced_run(corpus: &[(String, Graph)]) -> Traced {
    let mut t = Traced {
        steps: 0,
        invariant_failures: Vec::new(),
        inner_failures: Vec::new(),
        slow_small_pieces: Vec::new(),
        pieces: Vec::new(),
    };
    for (name, g) in corpus {
        let out = match build_with(g, &BuildOptions { trace: true, ..Default::default() }) {
            Ok(out) => out,
            Err(e) => {
                t.invariant_failures.push(format!("{name}: {e}"));
                continue;
            }
        };
        let base_ok = out.base.as_ref().is_some_and(|b| b.i1_ok && b.i2_ok == Some(true));
        if !base_ok {
            t.invariant_failures.push(format!("{name}: base triangle"));
        }
        for s in &out.steps {
            t.steps += 1;
            let inv = s.invariants.as_ref().expect("traced");
            if !(inv.i1_ok && inv.i2_ok == Some(true) && inv.matches_target && inv.depth <= 3) {
                t.invariant_failures.push(format!("{name}: after {:?}", s.delta));
            }
            if !s.inner_check.passed() {
                t.inner_failures.push(format!("{name}: {:?}: {}", s.delta, s.inner_check.summary()));
            }
            if s.piece_vertices <= 14 && s.elapsed >= PIECE_BUDGET {
                t.slow_small_pieces.push(format!("{name}: {:?} took {:.1?}", s.delta, s.elapsed));
            }
        }
        t.pieces.extend(piece_graphs(g));
    }
    t
}

/// Graphs of all 4-connected pieces of `g` with 5 to 14 vertices.
fn piece_graphs(g: &Graph) -> Vec<Graph> {
    use planar_intervals::embedding::triangulate_induced;
    use planar_intervals::split::peel;
    let t = triangulate_induced(&planar_embed(g).unwrap()).unwrap();
    peel(&t)
        .unwrap()
        .steps
        .iter()
        .filter(|s| (5..=14).contains(&s.piece.tri.n()))
        .map(|s| s.piece.tri.graph().clone())
        .collect()
}

fn criterion_3(t: &Traced) -> Outcome {
    if t.invariant_failures.is_empty() {
        pass(format!("both display invariants hold after all {} peeling steps", t.steps))
    } else {
        fail(format!("{} failures, first: {}", t.invariant_failures.len(), t.invariant_failures[0]))
    }
}

fn criterion_4(t: &Traced) -> Outcome {
    let mut failures = t.inner_failures.clone();
    failures.extend(t.slow_small_pieces.iter().cloned());
    let mut direct = 0;
    for (name, g) in [("octahedron", named::octahedron()), ("icosahedron", named::icosahedron())] {
        let tri = Triangulation::new(planar_embed(&g).unwrap(), g.n()).unwrap();
        let [a, b, c] = tri.outer();
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b), (a, c, b), (b, a, c), (c, b, a)] {
            let started = Instant::now();
            match decompose_inner(&tri, Outer::new(x, y, z)) {
                Ok(d) => {
                    let report = verify_inner(&tri, &d);
                    if !report.passed() {
                        failures.push(format!("{name}: {}", report.summary()));
                    }
                    if started.elapsed() >= PIECE_BUDGET {
                        failures.push(format!("{name}: took {:.1?}", started.elapsed()));
                    }
                    direct += 1;
                }
                Err(e) => failures.push(format!("{name} ({x},{y},{z}): {e}")),
            }
        }
    }
    if failures.is_empty() {
        pass(format!(
            "{} pieces from the corpus plus {direct} direct labelings certified; pieces <=14 vertices under {PIECE_BUDGET:?}",
            t.steps
        ))
    } else {
        fail(format!("{} failures, first: {}", failures.len(), failures[0]))
    }
}

fn criterion_5(pieces: &[Graph]) -> Outcome {
    let mut inputs: Vec<(String, Graph)> = vec![
        ("K4".into(), Graph::complete(4)),
        ("octahedron".into(), named::octahedron()),
        ("icosahedron".into(), named::icosahedron()),
    ];
    // generated instances that are 4-connected outright
    for seed in 0..400u64 {
        let n = 5 + (seed as usize % 10);
        let t = gen_triangulation(GeneratorConfig { seed, n, flips: 4 * n }).unwrap();
        if is_four_connected(t.graph()).unwrap() {
            inputs.push((format!("gen seed={seed} n={n}"), t.graph().clone()));
        }
    }
    let generated = inputs.len() - 3;
    for (i, g) in pieces.iter().enumerate() {
        inputs.push((format!("piece {i}"), g.clone()));
    }
    let limits = Limits { max_intervals: 3, max_depth: 2 };
    let mut failures = Vec::new();
    for (name, g) in &inputs {
        match build_depth2(g) {
            Ok(rep) => {
                let r = verify(&rep, g, None);
                if !r.passes(limits) {
                    failures.push(format!("{name}: {}", r.failures(limits).join("; ")));
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    if failures.is_empty() {
        pass(format!(
            "{} instances ({generated} generated, {} corpus pieces): depth <=2, <=3 intervals, exact",
            inputs.len(),
            pieces.len()
        ))
    } else {
        fail(format!("{} failures, first: {}", failures.len(), failures[0]))
    }
}

fn random_rep(rng: &mut Xoshiro256StarStar) -> Representation {
    let mut rep = Representation::new();
    let intervals = rng.random_range(1..=20);
    let vertices = rng.random_range(1..=8);
    for _ in 0..intervals {
        let a: i64 = rng.random_range(0..40);
        let b: i64 = rng.random_range(a + 1..=40);
        rep.insert(rng.random_range(0..vertices), Interval::ints(a, b));
    }
    rep
}

fn criterion_6() -> Outcome {
    let mut rng = Xoshiro256StarStar::seed_from_u64(6);
    for k in 0..500 {
        let rep = random_rep(&mut rng);
        let all: Vec<(usize, &Interval)> = rep.iter().flat_map(|(v, l)| l.iter().map(move |iv| (v, iv))).collect();
        let n = rep.vertex_ids().last().unwrap() + 1;
        let mut brute = Graph::new(n);
        for (i, (u, a)) in all.iter().enumerate() {
            for (v, b) in &all[i + 1..] {
                if u != v && a.lo() <= b.hi() && b.lo() <= a.hi() {
                    brute.add_edge(*u, *v).unwrap();
                }
            }
        }
        if intersection_graph(&rep) != brute {
            return fail(format!("intersection graph mismatch on sample {k}: {}", rep.to_json().trim()));
        }
        let pts = rep.endpoints();
        let mut samples: Vec<Q> = pts.clone();
        samples.extend(pts.windows(2).map(|w| (&w[0] + &w[1]) / q(2)));
        let brute_depth = samples
            .iter()
            .map(|p| rep.iter().filter(|(_, l)| l.iter().any(|iv| iv.contains(p))).count())
            .max()
            .unwrap_or(0);
        if depth(&rep) != brute_depth {
            return fail(format!("depth mismatch on sample {k}"));
        }
    }
    pass("500 random representations: sweep agrees with pairwise overlap and pointwise depth")
}

fn criterion_7() -> Outcome {
    let g = Graph::complete(4);
    let out = build_with(&g, &BuildOptions::default()).unwrap();
    let rep = out.full;
    let tri = &out.triangulation;
    let faces: Vec<[usize; 3]> = tri.inner_faces().map(|f| [f[0], f[1], f[2]]).collect();
    let base = verify(&rep, tri.graph(), Some(&faces));
    if !(base.matches_target && base.i1_ok && base.i2_ok == Some(true)) {
        return fail("unmutated K4 representation does not certify");
    }
    let mut mutants = 0;
    for v in rep.vertex_ids().collect::<Vec<_>>() {
        for i in 0..rep.intervals(v).len() {
            let mut m = rep.clone();
            m.remove_interval(v, i);
            let r = verify(&m, tri.graph(), Some(&faces));
            mutants += 1;
            if r.matches_target && r.i1_ok && r.i2_ok == Some(true) {
                return fail(format!("deleting interval {i} of vertex {v} went unnoticed"));
            }
        }
    }
    pass(format!("all {mutants} single-interval deletions detected"))
}

fn criterion_8() -> Outcome {
    let started = Instant::now();
    let t = gen_triangulation(GeneratorConfig { seed: 8, n: 200, flips: 0 }).unwrap();
    let g = t.graph().clone();
    let out = build_with(&g, &BuildOptions::default());
    let elapsed = started.elapsed();
    match out {
        Ok(out) => {
            if out.steps.iter().any(|s| s.piece_vertices != 4) {
                return fail("a piece of the stacked triangulation is not K4");
            }
            if !verify(&out.representation, &g, None).passes(Limits::default()) {
                return fail("representation does not certify");
            }
            if elapsed >= STACKED_BUDGET {
                return fail(format!("took {elapsed:.1?}"));
            }
            pass(format!("n=200 stacked, {} K4 pieces, {elapsed:.1?}", out.steps.len()))
        }
        Err(e) => fail(e.to_string()),
    }
}

fn main() -> ExitCode {
    let corpus = corpus_graphs();
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    results.push(("1 planar graphs get certified 3-interval representations", criterion_1(&corpus)));
    results.push(("2 base triangle is exact", criterion_2()));
    let traced = traced_run(&corpus);
    results.push(("3 display invariants after every step", criterion_3(&traced)));
    results.push(("4 inner decompositions certify", criterion_4(&traced)));
    results.push(("5 depth-2 construction on 4-connected inputs", criterion_5(&traced.pieces)));
    results.push(("6 sweep matches brute force", criterion_6()));
    results.push(("7 single-interval deletions are detected", criterion_7()));
    results.push(("8 stacked n=200 performance", criterion_8()));
    let mut failed = 0;
    for (name, o) in &results {
        println!("criterion {name}: {} ({})", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.ok);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
