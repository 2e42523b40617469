//! Construction of 3-interval representations.
//!
//! [`build`] triangulates the input, peels it into 4-connected pieces and
//! replays the peeling from the outer triangle inwards. Each replayed piece
//! gets its inner vertices from a decomposition of its inner edges: the path
//! is laid out as a chain of overlapping intervals on fresh line, and every
//! tree edge becomes a short child interval placed inside a displayed
//! portion of its parent. Depth stays at most 3.
//!
//! [`build_depth2`] handles 4-connected triangulations in one pass with
//! depth at most 2.
//!
//! The builder tracks where each vertex and edge is displayed in a
//! [`DisplayState`]; the verifier never reads it.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use crate::decompose::{
    decompose_inner_any, extend_full, verify_inner, InnerDecomposition, InnerReport, Outer, SearchLimits,
    SearchStats,
};
use crate::embedding::{is_four_connected, planar_embed, triangulate_induced, Triangulation};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::interval::{q, Interval, Portion, Representation, Q};
use crate::split::{peel, Piece};
use crate::verify::{check_invariants, verify, Limits, VerificationReport};

/// Where each vertex and edge is currently known to be displayed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplayState {
    vertex_portion: BTreeMap<VertexId, Portion>,
    edge_portion: BTreeMap<Edge, Portion>,
    cursor: Q,
}

/// A displayed portion a child interval can be placed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Host {
    Vertex(VertexId),
    Edge(Edge),
}

impl DisplayState {
    pub fn new(cursor: Q) -> Self {
        DisplayState { vertex_portion: BTreeMap::new(), edge_portion: BTreeMap::new(), cursor }
    }

    pub fn vertex_portion(&self, v: VertexId) -> Option<&Portion> {
        self.vertex_portion.get(&v)
    }

    pub fn edge_portion(&self, e: Edge) -> Option<&Portion> {
        self.edge_portion.get(&e)
    }

    pub fn displayed_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edge_portion.keys().copied()
    }

    /// Strictly greater than every endpoint placed so far.
    pub fn cursor(&self) -> &Q {
        &self.cursor
    }
}

/// The base case on the triangle `x y z`:
/// `f(x) = [0,3]`, `f(y) = [1,4] ∪ [6,7]`, `f(z) = [2,5]`.
pub fn base_triangle(x: VertexId, y: VertexId, z: VertexId) -> (Representation, DisplayState) {
    let mut rep = Representation::new();
    rep.insert(x, Interval::ints(0, 3));
    rep.insert(y, Interval::ints(1, 4));
    rep.insert(y, Interval::ints(6, 7));
    rep.insert(z, Interval::ints(2, 5));
    let mut state = DisplayState::new(q(8));
    let p = |a, b| Portion::new(q(a), q(b));
    state.vertex_portion.insert(x, p(0, 1));
    state.vertex_portion.insert(z, p(4, 5));
    state.vertex_portion.insert(y, p(6, 7));
    state.edge_portion.insert(Edge::new(x, y), p(1, 2));
    state.edge_portion.insert(Edge::new(y, z), p(3, 4));
    (rep, state)
}

/// Lays `path` out at the cursor: vertex `i` gets `[c+2i, c+2i+3]`, so
/// consecutive intervals overlap on `[c+2i+2, c+2i+3]` and each keeps a
/// private unit gap. Returns the new intervals.
pub fn represent_path(path: &[VertexId], rep: &mut Representation, state: &mut DisplayState) -> Vec<Interval> {
    let c = state.cursor.clone();
    let at = |k: usize| &c + q(k as i64);
    let mut out = Vec::with_capacity(path.len());
    for (i, &v) in path.iter().enumerate() {
        let iv = Interval::new(at(2 * i), at(2 * i + 3)).expect("unit gaps");
        rep.insert(v, iv.clone());
        let private = if i == 0 { Portion::new(at(0), at(2)) } else { Portion::new(at(2 * i + 1), at(2 * i + 2)) };
        state.vertex_portion.insert(v, private);
        if i + 1 < path.len() {
            state
                .edge_portion
                .insert(Edge::new(v, path[i + 1]), Portion::new(at(2 * i + 2), at(2 * i + 3)));
        }
        out.push(iv);
    }
    if path.len() == 1 {
        state.vertex_portion.insert(path[0], Portion::new(at(0), at(3)));
    }
    state.cursor = at(2 * path.len() + 2);
    out
}

/// Places a new interval for `v` strictly inside the displayed portion of
/// `host`. With the portion `(a, b)` of length `L`, the child is
/// `[a + L/4, a + L/2]` and the host keeps `(a + L/2, b)`, so the host stays
/// displayed and later siblings land to the right, disjoint from this one.
///
/// For a vertex host `w` the child's interior is covered by exactly `v` and
/// `w`, which displays the edge `vw`.
pub fn attach_child(v: VertexId, host: Host, rep: &mut Representation, state: &mut DisplayState) -> Result<Interval> {
    let portion = match host {
        Host::Vertex(w) => state.vertex_portion.get_mut(&w),
        Host::Edge(e) => state.edge_portion.get_mut(&e),
    }
    .ok_or_else(|| Error::InvariantViolation(format!("{host:?} has no displayed portion")))?;
    let len = portion.len();
    let lo = &portion.lo + &len / q(4);
    let hi = &portion.lo + &len / q(2);
    let child = Interval::new(lo.clone(), hi.clone())?;
    portion.lo = hi.clone();
    if let Host::Vertex(w) = host {
        state.edge_portion.insert(Edge::new(v, w), Portion::new(lo, hi));
    }
    rep.insert(v, child.clone());
    Ok(child)
}

/// Adds the inner vertices of `piece` to a representation of the graph
/// outside it. `d` must be a decomposition of the piece (local ids) whose
/// `x z` edge is displayed.
pub fn extend_representation(
    rep: &mut Representation,
    state: &mut DisplayState,
    piece: &Piece,
    d: &InnerDecomposition,
) -> Result<()> {
    let n = piece.tri.n();
    let g = |v: VertexId| piece.labels[v];
    let Outer { x, y, z } = d.outer;
    let xz = Edge::new(g(x), g(z));
    if !state.edge_portion.contains_key(&xz) {
        return Err(Error::InvariantViolation(format!("edge {xz} of the separating triangle is not displayed")));
    }
    let inner: Vec<VertexId> = (0..n).filter(|&v| v != x && v != y && v != z).collect();

    // f1: the path without x
    let path: Vec<VertexId> = d.path_order[1..].iter().map(|&v| g(v)).collect();
    represent_path(&path, rep, state);

    // f2: F_y rooted at y
    let py = d.f_y_parents(n);
    for &v in &inner {
        let w = py[v].ok_or_else(|| Error::InvariantViolation(format!("vertex {} has no F_y parent", g(v))))?;
        attach_child(g(v), Host::Vertex(g(w)), rep, state)?;
    }

    // f3: F_z - u_y z rooted at u_y, z, x; u_y itself goes into edge xz
    let pz = d.f_z_parents(n);
    let u_y = d.opposing.u_y;
    for &v in &inner {
        if v == u_y {
            continue;
        }
        let w = pz[v].ok_or_else(|| Error::InvariantViolation(format!("vertex {} has no F_z parent", g(v))))?;
        attach_child(g(v), Host::Vertex(g(w)), rep, state)?;
    }
    attach_child(g(u_y), Host::Edge(xz), rep, state)?;
    Ok(())
}

#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    pub limits: SearchLimits,
    /// Run the full verifier on the current graph after every step.
    pub trace: bool,
}

/// What happened in one peeling step.
#[derive(Clone, Debug)]
pub struct StepRecord {
    /// Separating triangle in triangulation ids.
    pub delta: [VertexId; 3],
    pub piece_vertices: usize,
    /// Labels used for the decomposition, in triangulation ids.
    pub outer: [VertexId; 3],
    pub inner_check: InnerReport,
    pub search: SearchStats,
    pub elapsed: Duration,
    /// Present when tracing: report on the graph built so far.
    pub invariants: Option<VerificationReport>,
}

#[derive(Clone, Debug)]
pub struct BuildOutput {
    pub triangulation: Triangulation,
    /// Representation of the whole triangulation.
    pub full: Representation,
    /// Restricted to the input graph's vertices.
    pub representation: Representation,
    /// Present when tracing: report on the base triangle.
    pub base: Option<VerificationReport>,
    pub steps: Vec<StepRecord>,
}

/// A certified representation of a planar graph with at most 3 intervals per
/// vertex and depth at most 3.
pub fn build(g: &Graph) -> Result<Representation> {
    build_with(g, &BuildOptions::default()).map(|o| o.representation)
}

pub fn build_with(g: &Graph, opts: &BuildOptions) -> Result<BuildOutput> {
    if g.n() == 0 {
        return Err(Error::Validation("graph has no vertices".into()));
    }
    let t = triangulate_induced(&planar_embed(g)?)?;
    let schedule = peel(&t)?;
    let [a, b, c] = schedule.outer;
    let (mut rep, mut state) = base_triangle(a, b, c);
    let mut present: Vec<VertexId> = vec![a, b, c];
    let base = if opts.trace { Some(snapshot(&t, &rep, &present, schedule.outer)?) } else { None };

    let mut steps = Vec::with_capacity(schedule.steps.len());
    for step in schedule.steps.iter().rev() {
        let [p, r, s] = step.delta.vertices;
        // any displayed edge of the triangle can play xz, in either direction
        let piece = &step.piece;
        let local = |v| piece.local(v).expect("triangle vertex in piece");
        let labelings: Vec<Outer> = [(p, r), (p, s), (r, s)]
            .into_iter()
            .filter(|&(u, v)| state.edge_portion.contains_key(&Edge::new(u, v)))
            .flat_map(|(u, v)| [(u, v), (v, u)])
            .map(|(ex, ez)| Outer::new(local(ex), local(p + r + s - ex - ez), local(ez)))
            .collect();
        if labelings.is_empty() {
            return Err(Error::InvariantViolation(format!("no displayed edge on triangle {:?}", step.delta.vertices)));
        }
        let started = Instant::now();
        let (d, search) = decompose_inner_any(&piece.tri, &labelings, opts.limits)?;
        let elapsed = started.elapsed();
        let inner_check = verify_inner(&piece.tri, &d);
        extend_representation(&mut rep, &mut state, piece, &d)?;
        present.extend(&step.delta.interior);
        let invariants = if opts.trace { Some(snapshot(&t, &rep, &present, schedule.outer)?) } else { None };
        steps.push(StepRecord {
            delta: step.delta.vertices,
            piece_vertices: piece.tri.n(),
            outer: [d.outer.x, d.outer.y, d.outer.z].map(|v| piece.labels[v]),
            inner_check,
            search,
            elapsed,
            invariants,
        });
    }

    let mut restricted = rep.clone();
    restricted.retain(|v| v < g.n());
    let report = verify(&restricted, g, None);
    if !report.passes(Limits::default()) {
        return Err(Error::Certification(report.failures(Limits::default()).join("; ")));
    }
    Ok(BuildOutput { triangulation: t, full: rep, representation: restricted, base, steps })
}

/// Verifier report for the triangulation induced by `present`.
fn snapshot(t: &Triangulation, rep: &Representation, present: &[VertexId], outer: [VertexId; 3]) -> Result<VerificationReport> {
    let mut keep = present.to_vec();
    keep.sort_unstable();
    let (sub, labels) = t.restrict(&keep, outer)?;
    check_invariants(&rep.relabel(&labels), &sub)
}

/// Depth-2 representation of a 4-connected triangulation with at most 3
/// intervals per vertex.
///
/// The edges split into a path `y, x, u_y, ..., u_x` and two trees
/// `F_y + yz` (spanning all but `x`) and `F_z + xz` (spanning all but `y`).
/// The path becomes a chain whose private gaps serve as hosts; `z`, the only
/// vertex off the path, gets one host interval of its own. Rooting both
/// trees at `z`, every other vertex gets one child interval per tree inside
/// its parent's host gap. Hosts are covered once and children never overlap,
/// so no point is covered three times.
pub fn build_depth2(g: &Graph) -> Result<Representation> {
    let n = g.n();
    if n < 4 || g.m() != 3 * n - 6 || !is_four_connected(g)? {
        return Err(Error::Validation("depth-2 construction needs a 4-connected triangulation".into()));
    }
    let t = Triangulation::new(planar_embed(g)?, n)?;
    let [a, b, c] = t.outer();
    let labelings = [(a, b, c), (b, c, a), (c, a, b), (a, c, b), (b, a, c), (c, b, a)].map(|(x, y, z)| Outer::new(x, y, z));
    let (d, _) = decompose_inner_any(&t, &labelings, SearchLimits::default())?;
    let Outer { z, .. } = d.outer;
    let full = extend_full(&t, &d)?;

    let mut rep = Representation::new();
    let mut state = DisplayState::new(q(0));
    represent_path(&full.path, &mut rep, &mut state);
    let c = state.cursor.clone();
    rep.insert(z, Interval::new(c.clone(), &c + q(3))?);
    state.vertex_portion.insert(z, Portion::new(c.clone(), &c + q(3)));
    state.cursor = &c + q(4);

    for forest in [&full.forest_a, &full.forest_b] {
        let parents = parents_from(n, forest, z);
        for (v, p) in parents.iter().enumerate() {
            if let Some(w) = p {
                attach_child(v, Host::Vertex(*w), &mut rep, &mut state)?;
            }
        }
    }
    let limits = Limits { max_intervals: 3, max_depth: 2 };
    let report = verify(&rep, g, None);
    if !report.passes(limits) {
        return Err(Error::Certification(report.failures(limits).join("; ")));
    }
    Ok(rep)
}

fn parents_from(n: usize, edges: &[Edge], root: VertexId) -> Vec<Option<VertexId>> {
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        adj[e.0].push(e.1);
        adj[e.1].push(e.0);
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                stack.push(w);
            }
        }
    }
    parent
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::verify::{depth, displayed, intersection_graph};

    #[test]
    fn base_triangle_exact() {
        let (rep, state) = base_triangle(0, 1, 2);
        assert_eq!(rep.to_json(), "{\"vertices\":{\"0\":[[\"0\",\"3\"]],\"1\":[[\"1\",\"4\"],[\"6\",\"7\"]],\"2\":[[\"2\",\"5\"]]}}\n");
        assert_eq!(state.cursor(), &q(8));
        let shown = displayed(&rep);
        for v in 0..3 {
            assert_eq!(state.vertex_portion(v), shown.vertices.get(&v));
        }
        assert_eq!(state.displayed_edges().collect::<Vec<_>>(), vec![Edge(0, 1), Edge(1, 2)]);
        assert_eq!(depth(&rep), 3);
    }

    #[test]
    fn path_layout() {
        let mut rep = Representation::new();
        let mut state = DisplayState::new(q(0));
        represent_path(&[5], &mut rep, &mut state);
        assert_eq!(displayed(&rep).vertices.len(), 1);

        let mut rep = Representation::new();
        let mut state = DisplayState::new(q(10));
        represent_path(&[0, 1, 2], &mut rep, &mut state);
        assert_eq!(depth(&rep), 2);
        let shown = displayed(&rep);
        assert_eq!(shown.vertices.len(), 3);
        assert_eq!(shown.edges.keys().copied().collect::<Vec<_>>(), vec![Edge(0, 1), Edge(1, 2)]);
        assert!(state.cursor() > &q(15));
        assert_eq!(intersection_graph(&rep).m(), 2);
    }

    #[test]
    fn attach_child_rule() {
        let mut rep = Representation::new();
        rep.insert(0, Interval::ints(-1, 2));
        let mut state = DisplayState::new(q(3));
        state.vertex_portion.insert(0, Portion::new(q(0), q(1)));
        let c1 = attach_child(1, Host::Vertex(0), &mut rep, &mut state).unwrap();
        assert_eq!(c1, Interval::new(q(1) / q(4), q(1) / q(2)).unwrap());
        let c2 = attach_child(2, Host::Vertex(0), &mut rep, &mut state).unwrap();
        assert!(!c1.intersects(&c2) && c2.lo() > c1.hi());
        let shown = displayed(&rep);
        assert!(shown.vertices.contains_key(&0));
        assert!(shown.edges.contains_key(&Edge(0, 1)) && shown.edges.contains_key(&Edge(0, 2)));
        assert!(attach_child(3, Host::Vertex(9), &mut rep, &mut state).is_err());
    }

    #[test]
    fn child_in_edge_portion_has_depth_three() {
        let (mut rep, mut state) = base_triangle(0, 1, 2);
        attach_child(3, Host::Edge(Edge(0, 1)), &mut rep, &mut state).unwrap();
        assert_eq!(depth(&rep), 3);
        assert!(displayed(&rep).edges.contains_key(&Edge(0, 1)));
    }

    fn certify(g: &Graph) -> BuildOutput {
        let out = build_with(g, &BuildOptions { trace: true, ..Default::default() }).unwrap();
        let rep = &out.representation;
        assert_eq!(&intersection_graph(rep), g);
        assert!(rep.max_intervals() <= 3 && depth(rep) <= 3);
        assert!(out.base.as_ref().unwrap().i1_ok);
        for s in &out.steps {
            let inv = s.invariants.as_ref().unwrap();
            assert!(inv.i1_ok && inv.i2_ok == Some(true) && inv.matches_target && inv.depth <= 3, "{s:?}");
            assert!(s.inner_check.passed());
        }
        out
    }

    #[test]
    fn small_graphs() {
        certify(&Graph::new(1));
        certify(&Graph::complete(2));
        certify(&Graph::complete(3));
        let out = certify(&Graph::complete(4));
        assert_eq!(out.steps.len(), 1);
        certify(&named::stack5());
        certify(&Graph::new(5));
        certify(&Graph::cycle(7));
    }

    #[test]
    fn named_graphs() {
        certify(&named::octahedron());
        certify(&named::icosahedron());
    }

    #[test]
    fn k4_u_y_inside_xz_portion() {
        let out = certify(&Graph::complete(4));
        let rep = &out.full;
        // the inner vertex has one interval in the path region, one under
        // y's portion and one inside the displayed xz portion
        assert_eq!(rep.max_intervals(), 3);
    }

    #[test]
    fn nonplanar_rejected() {
        assert_eq!(build(&Graph::complete(5)), Err(Error::NonPlanar));
        assert!(build(&Graph::new(0)).is_err());
    }

    #[test]
    fn depth2_named() {
        for g in [Graph::complete(4), named::octahedron(), named::icosahedron()] {
            let rep = build_depth2(&g).unwrap();
            assert_eq!(intersection_graph(&rep), g);
            assert!(depth(&rep) <= 2);
            assert!(rep.max_intervals() <= 3);
        }
        assert!(build_depth2(&named::stack5()).is_err());
        assert!(build_depth2(&Graph::cycle(5)).is_err());
    }
}
