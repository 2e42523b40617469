//! Partition of the inner edges of a 4-connected triangulation with outer
//! triangle `x y z` into
//!
//! * `F_x`, a Hamiltonian path of `G - {y, z}` from `x` to `u_x`,
//! * `F_y`, a spanning tree of `G - {x, z}`,
//! * `F_z`, a spanning forest of `G - {y}` made of two trees, one holding
//!   `x` and one holding `z`,
//!
//! where `u_v` is the inner vertex opposing outer vertex `v`.
//!
//! The search enumerates Hamiltonian paths `x, u_y, ..., u_x` by pruned
//! backtracking. For each complete path the remaining inner edges must split
//! into a base of the graphic matroid of `G - {x, z}` (for `F_y`) and a base
//! of the graphic matroid of `G - {y}` with `x` and `z` identified (for
//! `F_z`); that split is decided exactly by matroid partition.

use std::collections::VecDeque;

use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::Serialize;

use crate::embedding::Triangulation;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

/// Labels of the outer triangle as used by the decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Outer {
    pub x: VertexId,
    pub y: VertexId,
    pub z: VertexId,
}

impl Outer {
    pub fn new(x: VertexId, y: VertexId, z: VertexId) -> Self {
        Outer { x, y, z }
    }

    fn contains(&self, v: VertexId) -> bool {
        v == self.x || v == self.y || v == self.z
    }

    pub fn is_outer_edge(&self, e: Edge) -> bool {
        self.contains(e.0) && self.contains(e.1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OpposingVertices {
    pub u_x: VertexId,
    pub u_y: VertexId,
    pub u_z: VertexId,
}

fn check_outer(t: &Triangulation, outer: Outer) -> Result<()> {
    let mut want = [outer.x, outer.y, outer.z];
    want.sort_unstable();
    let mut have = t.outer();
    have.sort_unstable();
    if want != have {
        return Err(Error::Validation(format!(
            "{want:?} is not the outer face {have:?}"
        )));
    }
    Ok(())
}

/// The unique inner vertex adjacent to both `b` and `c`.
fn opposing(g: &Graph, outer: Outer, b: VertexId, c: VertexId) -> Result<VertexId> {
    let common: Vec<VertexId> = g
        .neighbors(b)
        .iter()
        .copied()
        .filter(|&w| !outer.contains(w) && g.has_edge(c, w))
        .collect();
    match common.as_slice() {
        [u] => Ok(*u),
        [] => Err(Error::Validation(format!("no inner vertex adjacent to {b} and {c}"))),
        [_, w, ..] => {
            let mut tri = [b, c, *w];
            tri.sort_unstable();
            Err(Error::NotFourConnected(tri))
        }
    }
}

pub fn opposing_vertices(t: &Triangulation, outer: Outer) -> Result<OpposingVertices> {
    check_outer(t, outer)?;
    if t.n() < 4 {
        return Err(Error::Validation("no inner vertices".into()));
    }
    let g = t.graph();
    Ok(OpposingVertices {
        u_x: opposing(g, outer, outer.y, outer.z)?,
        u_y: opposing(g, outer, outer.x, outer.z)?,
        u_z: opposing(g, outer, outer.x, outer.y)?,
    })
}

/// The three edge classes, with the path also kept in vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerDecomposition {
    pub outer: Outer,
    pub opposing: OpposingVertices,
    /// `x, u_y, ..., u_x`.
    pub path_order: Vec<VertexId>,
    pub f_x: Vec<Edge>,
    pub f_y: Vec<Edge>,
    pub f_z: Vec<Edge>,
}

impl InnerDecomposition {
    /// Whether the piece is K4 (all opposing vertices coincide).
    pub fn is_k4(&self) -> bool {
        self.opposing.u_x == self.opposing.u_y && self.opposing.u_y == self.opposing.u_z
    }

    /// Parent of every vertex of `F_y` other than its root `y`.
    pub fn f_y_parents(&self, n: usize) -> Vec<Option<VertexId>> {
        root_forest(n, &self.f_y, &[self.outer.y])
    }

    /// Parents in `F_z - {u_y z}`, whose trees are rooted at `u_y`, `z` and
    /// `x` (for K4, `x` is a one-vertex tree).
    pub fn f_z_parents(&self, n: usize) -> Vec<Option<VertexId>> {
        let cut = Edge::new(self.opposing.u_y, self.outer.z);
        let edges: Vec<Edge> = self.f_z.iter().copied().filter(|&e| e != cut).collect();
        root_forest(n, &edges, &[self.opposing.u_y, self.outer.z, self.outer.x])
    }

    /// `{"F_x": [[u, v], ..], "F_y": .., "F_z": .., "path_order": [..]}`,
    /// with ids passed through `label`.
    pub fn to_json(&self, label: impl Fn(VertexId) -> VertexId) -> String {
        #[derive(Serialize)]
        struct Doc {
            #[serde(rename = "F_x")]
            f_x: Vec<[VertexId; 2]>,
            #[serde(rename = "F_y")]
            f_y: Vec<[VertexId; 2]>,
            #[serde(rename = "F_z")]
            f_z: Vec<[VertexId; 2]>,
            path_order: Vec<VertexId>,
        }
        let map = |es: &[Edge]| {
            let mut out: Vec<[VertexId; 2]> = es
                .iter()
                .map(|e| {
                    let (a, b) = (label(e.0), label(e.1));
                    [a.min(b), a.max(b)]
                })
                .collect();
            out.sort_unstable();
            out
        };
        let doc = Doc {
            f_x: map(&self.f_x),
            f_y: map(&self.f_y),
            f_z: map(&self.f_z),
            path_order: self.path_order.iter().map(|&v| label(v)).collect(),
        };
        serde_json::to_string(&doc).expect("decomposition serializes")
    }
}

/// BFS parent pointers of a forest from the given roots; vertices not reached
/// from any root get `None`, as do the roots.
fn root_forest(n: usize, edges: &[Edge], roots: &[VertexId]) -> Vec<Option<VertexId>> {
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        adj[e.0].push(e.1);
        adj[e.1].push(e.0);
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    for &r in roots {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut queue = VecDeque::from([r]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
    }
    parent
}

/// Search effort bounds.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    /// Maximum number of path-extension steps.
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_nodes: 50_000_000 }
    }
}

/// Node cap of the first search attempt; later caps follow the Luby sequence.
const RESTART_UNIT: u64 = 2_000;

/// `1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...`
fn luby(i: u64) -> u64 {
    let mut i = i;
    loop {
        let mut k = 1u32;
        while (1u64 << k) - 1 < i {
            k += 1;
        }
        if i == (1u64 << k) - 1 {
            return 1u64 << (k - 1);
        }
        i -= (1u64 << (k - 1)) - 1;
    }
}

/// Counters from one search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub paths_tried: u64,
}

pub fn decompose_inner(t: &Triangulation, outer: Outer) -> Result<InnerDecomposition> {
    decompose_inner_with(t, outer, SearchLimits::default()).map(|(d, _)| d)
}

/// Finds a decomposition and certifies it with [`verify_inner`] before
/// returning.
pub fn decompose_inner_with(
    t: &Triangulation,
    outer: Outer,
    limits: SearchLimits,
) -> Result<(InnerDecomposition, SearchStats)> {
    decompose_inner_any(t, &[outer], limits)
}

/// Like [`decompose_inner_with`], but any of `labelings` will do.
///
/// Restart attempts are interleaved over the labelings, each searched from
/// both ends of the path, on one Luby schedule, so a variant that happens to
/// be hard for the search does not hold up the others. An attempt that ends without hitting its cap was exhaustive; that
/// contradicts the existence guarantee and is reported at once.
pub fn decompose_inner_any(
    t: &Triangulation,
    labelings: &[Outer],
    limits: SearchLimits,
) -> Result<(InnerDecomposition, SearchStats)> {
    let Some(&first) = labelings.first() else {
        return Err(Error::Validation("no outer labeling to try".into()));
    };
    let opps = labelings.iter().map(|&o| opposing_vertices(t, o)).collect::<Result<Vec<_>>>()?;
    let g = t.graph();
    let mut stats = SearchStats::default();
    let mut found = None;
    let mut exhausted = None;
    let variants = 2 * labelings.len() as u64;
    for i in 0u64.. {
        let remaining = limits.max_nodes.saturating_sub(stats.nodes);
        if remaining == 0 {
            break;
        }
        let v = i % variants;
        let (k, backward) = ((v / 2) as usize, v % 2 == 1);
        let attempt = i / variants;
        let cap = (RESTART_UNIT * luby(attempt + 1)).min(remaining);
        let mut search = PathSearch::new(g, labelings[k], opps[k], backward, cap, attempt);
        let res = search.run();
        stats.nodes += search.stats.nodes;
        stats.paths_tried += search.stats.paths_tried;
        if let Some(res) = res {
            found = Some((k, res));
            break;
        }
        if !search.cut {
            exhausted = Some(labelings[k]);
            break;
        }
    }
    let Some((k, (path, f_y, f_z))) = found else {
        let (reason, o) = match exhausted {
            Some(o) => ("search space exhausted".to_string(), o),
            None => (format!("node budget of {} reached", limits.max_nodes), first),
        };
        return Err(Error::SearchExhausted(format!(
            "{reason} after {} paths on {} vertices (outer {:?})",
            stats.paths_tried,
            g.n(),
            [o.x, o.y, o.z]
        )));
    };
    let d = InnerDecomposition {
        outer: labelings[k],
        opposing: opps[k],
        f_x: path.windows(2).map(|w| Edge::new(w[0], w[1])).collect(),
        path_order: path,
        f_y,
        f_z,
    };
    let report = verify_inner(t, &d);
    if !report.passed() {
        return Err(Error::Certification(report.summary()));
    }
    Ok((d, stats))
}

struct PathSearch<'g> {
    g: &'g Graph,
    outer: Outer,
    opp: OpposingVertices,
    cap: u64,
    cut: bool,
    // None keeps plain id order for tie-breaks
    rng: Option<Xoshiro256StarStar>,
    stats: SearchStats,
    in_domain: Vec<bool>,
    visited: Vec<bool>,
    // unvisited domain neighbours per vertex
    free_deg: Vec<usize>,
    backward: bool,
    // the path grows from one end towards this vertex
    target: VertexId,
    path: Vec<VertexId>,
    target_len: usize,
    // edges known to be off the path, already split between F_y and F_z
    fixed: Vec<bool>,
    edge_index: std::collections::HashMap<Edge, usize>,
    edges: Vec<Edge>,
    // (neighbour, edge id)
    adj: Vec<Vec<(VertexId, usize)>>,
    partition: ForestPartition,
    spanning: SpanningBase,
}

type Found = (Vec<VertexId>, Vec<Edge>, Vec<Edge>);

impl<'g> PathSearch<'g> {
    fn new(g: &'g Graph, outer: Outer, opp: OpposingVertices, backward: bool, cap: u64, attempt: u64) -> Self {
        let n = g.n();
        // K4 has a single path edge; only the forward search handles it
        let backward = backward && n > 4;
        let in_domain: Vec<bool> = (0..n).map(|v| v != outer.y && v != outer.z).collect();
        let free_deg = (0..n)
            .map(|v| g.neighbors(v).iter().filter(|&&w| in_domain[w]).count())
            .collect();
        let edges: Vec<Edge> = g.edges().collect();
        let edge_index: std::collections::HashMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let adj = (0..n).map(|v| g.neighbors(v).iter().map(|&w| (w, edge_index[&Edge::new(v, w)])).collect()).collect();
        PathSearch {
            g,
            outer,
            opp,
            cap,
            cut: false,
            rng: (attempt > 0).then(|| Xoshiro256StarStar::seed_from_u64(attempt)),
            stats: SearchStats::default(),
            in_domain,
            visited: vec![false; n],
            free_deg,
            backward,
            target: if backward { opp.u_y } else { opp.u_x },
            path: Vec::with_capacity(n),
            // backward, x stays off the grown path
            target_len: if backward { n - 3 } else { n - 2 },
            fixed: vec![false; g.m()],
            edge_index,
            adj,
            partition: ForestPartition::new(g.n(), outer),
            spanning: SpanningBase::new(n, outer, edges.clone()),
            edges,
        }
    }

    fn visit(&mut self, v: VertexId) {
        self.visited[v] = true;
        self.path.push(v);
        for &w in self.g.neighbors(v) {
            self.free_deg[w] -= 1;
        }
    }

    fn unvisit(&mut self) {
        let v = self.path.pop().expect("non-empty path");
        self.visited[v] = false;
        for &w in self.g.neighbors(v) {
            self.free_deg[w] += 1;
        }
    }

    /// Fixes every inner edge at `v` other than `keep` as off-path. Returns
    /// the newly fixed edge ids and whether they could all be placed.
    fn close(&mut self, v: VertexId, keep: &[VertexId]) -> (Vec<usize>, bool) {
        let mut added = Vec::new();
        for &w in self.g.neighbors(v) {
            let e = Edge::new(v, w);
            if keep.contains(&w) || self.outer.is_outer_edge(e) {
                continue;
            }
            let i = self.edge_index[&e];
            if self.fixed[i] {
                continue;
            }
            self.fixed[i] = true;
            added.push(i);
            if !self.partition.insert(e) {
                return (added, false);
            }
        }
        (added, true)
    }

    fn unfix(&mut self, added: &[usize]) {
        for &i in added {
            self.fixed[i] = false;
        }
    }

    fn run(&mut self) -> Option<Found> {
        let Outer { x, y, z } = self.outer;
        let u_y = self.opp.u_y;
        let (_, ok) = self.close(y, &[]);
        if !ok {
            return None;
        }
        let (_, ok) = self.close(z, &[]);
        if !ok {
            return None;
        }
        self.visit(x);
        let (_, ok) = self.close(x, &[u_y]);
        if !ok || !self.spanning.remove(self.edge_index[&Edge::new(x, u_y)]) {
            return None;
        }
        if self.target_len == 2 {
            // K4: the path is the single edge x u
            self.visit(u_y);
            return self.complete();
        }
        if u_y == self.opp.u_x {
            return None;
        }
        if self.backward {
            // grow u_x, ..., u_y; x u_y is already on the path
            self.path.pop();
            self.visit(self.opp.u_x);
        } else {
            self.visit(u_y);
        }
        self.extend()
    }

    /// `x, u_y, ..., u_x` from the grown path.
    fn path_order(&self) -> Vec<VertexId> {
        if self.backward {
            std::iter::once(self.outer.x).chain(self.path.iter().rev().copied()).collect()
        } else {
            self.path.clone()
        }
    }

    /// Path neighbours of the path's end that are already decided.
    fn kept_at_end(&self) -> Vec<VertexId> {
        let mut keep: Vec<VertexId> = self.path.len().checked_sub(2).map(|i| self.path[i]).into_iter().collect();
        if self.backward && self.path.last() == Some(&self.target) {
            keep.push(self.outer.x);
        }
        keep
    }

    fn complete(&mut self) -> Option<Found> {
        self.stats.paths_tried += 1;
        let last = *self.path.last().unwrap();
        let keep = self.kept_at_end();
        let saved = self.partition.snapshot();
        let (added, ok) = self.close(last, &keep);
        let res = if ok && self.partition.len() == 2 * (self.g.n() - 3) {
            let (f_y, f_z) = self.partition.classes();
            Some((self.path_order(), f_y, f_z))
        } else {
            None
        };
        self.unfix(&added);
        self.partition.restore(saved);
        res
    }

    fn extend(&mut self) -> Option<Found> {
        self.stats.nodes += 1;
        if self.stats.nodes >= self.cap {
            self.cut = true;
            return None;
        }
        let end = *self.path.last().unwrap();
        let remaining = self.target_len - self.path.len();
        let target = self.target;
        if remaining == 1 {
            if !self.g.has_edge(end, target) {
                return None;
            }
            return self.step(end, target);
        }
        if !self.viable(end) {
            return None;
        }
        let state = self.propagate(end)?;

        // forced edges will be on the path, excluded ones will not
        let saved = self.partition.snapshot();
        let saved_base = self.spanning.snapshot();
        let mut added = Vec::new();
        let mut ok = true;
        for (i, &st) in state.iter().enumerate() {
            let e = self.edges[i];
            if e.contains(end) {
                continue;
            }
            match st {
                EdgeState::Forced => ok = self.spanning.remove(i),
                EdgeState::Excluded if !self.fixed[i] => {
                    self.fixed[i] = true;
                    added.push(i);
                    ok = self.partition.insert(e);
                }
                _ => {}
            }
            if !ok {
                break;
            }
        }
        let mut res = None;
        if ok {
            let next: Vec<VertexId> = self.adj[end]
                .iter()
                .filter(|&&(w, i)| self.in_h(w, end) && w != end && w != target && state[i] != EdgeState::Excluded)
                .map(|&(w, _)| w)
                .collect();
            // Warnsdorff order: most constrained first
            let mut keyed: Vec<(usize, u64, VertexId)> = next
                .iter()
                .map(|&w| {
                    let tie = self.rng.as_mut().map_or(w as u64, |r| r.next_u64());
                    (self.free_deg[w], tie, w)
                })
                .collect();
            keyed.sort_unstable();
            for (_, _, w) in keyed {
                res = self.step(end, w);
                if res.is_some() || self.cut {
                    break;
                }
            }
        }
        self.unfix(&added);
        self.partition.restore(saved);
        self.spanning.restore(saved_base);
        res
    }

    /// Whether `v` is still to be placed on the path, or is its end.
    fn in_h(&self, v: VertexId, end: VertexId) -> bool {
        v == end || (self.in_domain[v] && !self.visited[v])
    }

    /// Degree propagation on the unvisited vertices plus `end`: each needs
    /// exactly two more path edges (the target and `end` one). A vertex with
    /// only as many candidate edges as it needs forces them; a satisfied
    /// vertex excludes the rest. Forced edges must not close a cycle or join
    /// `end` to the target early. `None` means no completion exists.
    fn propagate(&self, end: VertexId) -> Option<Vec<EdgeState>> {
        let n = self.g.n();
        let target = self.target;
        let mut state = vec![EdgeState::Open; self.edges.len()];
        let usable = |w: VertexId, v: VertexId| {
            self.in_h(w, end) && !((v == end && w == target) || (v == target && w == end))
        };
        let need = |v: VertexId| if v == end || v == target { 1 } else { 2 };
        let mut dsu = UndoDsu::new(n);
        let mut forced_count = 0usize;
        let mut h_size = 0usize;
        let mut queue: Vec<VertexId> = Vec::new();
        for v in 0..n {
            if self.in_h(v, end) {
                h_size += 1;
                queue.push(v);
            }
        }
        let mut queued = vec![true; n];
        while let Some(v) = queue.pop() {
            queued[v] = false;
            let (mut open, mut forced) = (0, 0);
            for &(w, i) in &self.adj[v] {
                if !usable(w, v) {
                    continue;
                }
                match state[i] {
                    EdgeState::Open => open += 1,
                    EdgeState::Forced => forced += 1,
                    EdgeState::Excluded => {}
                }
            }
            let k = need(v);
            if forced > k || forced + open < k {
                return None;
            }
            if open == 0 {
                continue;
            }
            let mark = if forced == k {
                EdgeState::Excluded
            } else if forced + open == k {
                EdgeState::Forced
            } else {
                continue;
            };
            for &(w, i) in &self.adj[v] {
                if !usable(w, v) || state[i] != EdgeState::Open {
                    continue;
                }
                state[i] = mark;
                if mark == EdgeState::Forced {
                    if !dsu.union(v, w) {
                        return None;
                    }
                    forced_count += 1;
                }
                if !queued[w] {
                    queued[w] = true;
                    queue.push(w);
                }
            }
        }
        if dsu.same(end, target) && forced_count != h_size - 1 {
            return None;
        }
        Some(state)
    }

    /// Extends the path from `end` to `w`, closing `end`.
    fn step(&mut self, end: VertexId, w: VertexId) -> Option<Found> {
        let mut keep = self.kept_at_end();
        keep.push(w);
        let saved = self.partition.snapshot();
        let saved_base = self.spanning.snapshot();
        let (added, ok) = self.close(end, &keep);
        let mut res = None;
        if ok && self.spanning.remove(self.edge_index[&Edge::new(end, w)]) {
            self.visit(w);
            res = if self.path.len() == self.target_len { self.complete() } else { self.extend() };
            self.unvisit();
        }
        self.unfix(&added);
        self.partition.restore(saved);
        self.spanning.restore(saved_base);
        res
    }

    /// Necessary conditions for completing the path from `end`.
    fn viable(&self, end: VertexId) -> bool {
        let target = self.target;
        // every unvisited inner vertex other than the target needs two ways in/out
        for v in 0..self.g.n() {
            if !self.in_domain[v] || self.visited[v] {
                continue;
            }
            let avail = self.free_deg[v] + self.g.has_edge(v, end) as usize;
            let need = if v == target { 1 } else { 2 };
            if avail < need {
                return false;
            }
        }
        self.blocks_form_a_path(end)
    }

    /// In `H` = unvisited vertices plus `end`, a Hamiltonian path from `end`
    /// to the target exists only if `H` is connected and every cut vertex
    /// splits off exactly one part, which holds the target. Checked with one
    /// lowpoint DFS
    /// rooted at `end`.
    fn blocks_form_a_path(&self, end: VertexId) -> bool {
        let n = self.g.n();
        let target = self.target;
        let in_h = |v: VertexId| v == end || (self.in_domain[v] && !self.visited[v]);
        const NONE: usize = usize::MAX;
        let mut disc = vec![NONE; n];
        let mut low = vec![0; n];
        let mut size = vec![1usize; n];
        let mut split_children = vec![0u8; n];
        let mut separated: Vec<(VertexId, VertexId)> = Vec::new();
        let mut clock = 0;
        disc[end] = clock;
        low[end] = clock;
        clock += 1;
        // (vertex, parent, next neighbour index)
        let mut stack = vec![(end, NONE, 0usize)];
        let mut root_children = 0;
        while let Some(top) = stack.last_mut() {
            let (u, parent, i) = *top;
            let nbrs = self.g.neighbors(u);
            if i < nbrs.len() {
                top.2 += 1;
                let w = nbrs[i];
                if !in_h(w) || w == parent {
                    continue;
                }
                if disc[w] == NONE {
                    disc[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    if u == end {
                        root_children += 1;
                    }
                    stack.push((w, u, 0));
                } else {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != NONE {
                    low[parent] = low[parent].min(low[u]);
                    size[parent] += size[u];
                    if parent != end && low[u] >= disc[parent] {
                        split_children[parent] += 1;
                        if split_children[parent] > 1 {
                            return false;
                        }
                        separated.push((parent, u));
                    }
                }
            }
        }
        if root_children > 1 {
            return false;
        }
        let reached = size[end];
        if reached != self.target_len - self.path.len() + 1 {
            return false;
        }
        separated
            .iter()
            .all(|&(_, s)| disc[s] <= disc[target] && disc[target] < disc[s] + size[s])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EdgeState {
    Open,
    Forced,
    Excluded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Y,
    Z,
}

/// Endpoints of `e` in the matroid for `side`, or `None` if the edge is a
/// loop there (touches an excluded vertex).
fn matroid_ends(outer: Outer, e: Edge, side: Side) -> Option<(VertexId, VertexId)> {
    let Outer { x, y, z } = outer;
    match side {
        Side::Y => (!e.contains(x) && !e.contains(z)).then_some((e.0, e.1)),
        Side::Z => {
            if e.contains(y) {
                return None;
            }
            // z is identified with x so the two trees stay apart
            let m = |v: VertexId| if v == z { x } else { v };
            Some((m(e.0), m(e.1)))
        }
    }
}

/// Incremental split of off-path edges into an independent set of the graphic
/// matroid of `G - {x, z}` (future `F_y`) and one of `G - {y}` with `x` and
/// `z` identified (future `F_z`). Insertion uses shortest augmenting paths,
/// so a failed insertion proves no split exists.
///
/// Exchanges along an augmenting path keep each side's spanned partition;
/// only the final free insertion merges two components. Each side therefore
/// tracks its components in an undoable union-find, and an element joining
/// two components is placed without building any tree.
struct ForestPartition {
    n: usize,
    outer: Outer,
    elems: Vec<Edge>,
    assign: Vec<Side>,
    comps: [UndoDsu; 2],
}

/// `(elements, assignments, union-find log lengths)`
type PartitionMark = (usize, Vec<Side>, [usize; 2]);

impl ForestPartition {
    fn new(n: usize, outer: Outer) -> Self {
        ForestPartition {
            n,
            outer,
            elems: Vec::new(),
            assign: Vec::new(),
            comps: [UndoDsu::new(n), UndoDsu::new(n)],
        }
    }

    fn len(&self) -> usize {
        self.elems.len()
    }

    fn snapshot(&self) -> PartitionMark {
        (self.elems.len(), self.assign.clone(), [self.comps[0].mark(), self.comps[1].mark()])
    }

    fn restore(&mut self, (len, assign, marks): PartitionMark) {
        self.elems.truncate(len);
        self.assign = assign;
        for (c, m) in self.comps.iter_mut().zip(marks) {
            c.undo_to(m);
        }
    }

    fn classes(&self) -> (Vec<Edge>, Vec<Edge>) {
        let pick = |side| {
            self.elems
                .iter()
                .zip(&self.assign)
                .filter(|(_, a)| **a == side)
                .map(|(e, _)| *e)
                .collect::<Vec<_>>()
        };
        (pick(Side::Y), pick(Side::Z))
    }

    fn ends(&self, e: Edge, side: Side) -> Option<(VertexId, VertexId)> {
        matroid_ends(self.outer, e, side)
    }

    /// Inserts `e`, re-balancing earlier elements if needed. On failure the
    /// element is dropped and the state is unchanged.
    fn insert(&mut self, e: Edge) -> bool {
        for (k, side) in [Side::Y, Side::Z].into_iter().enumerate() {
            if let Some((a, b)) = self.ends(e, side) {
                if self.comps[k].union(a, b) {
                    self.elems.push(e);
                    self.assign.push(side);
                    return true;
                }
            }
        }
        let s = self.elems.len();
        self.elems.push(e);
        let mut forests: [Option<RootedForest>; 2] = [None, None];
        let mut pred: Vec<Option<(usize, Side)>> = vec![None; s + 1];
        let mut seen = vec![false; s + 1];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(cur) = queue.pop_front() {
            for (k, side) in [Side::Y, Side::Z].into_iter().enumerate() {
                if cur < s && self.assign[cur] == side {
                    continue;
                }
                let Some((a, b)) = self.ends(self.elems[cur], side) else {
                    continue;
                };
                if self.comps[k].same(a, b) {
                    let forest = forests[k].get_or_insert_with(|| self.forest(side));
                    for f in forest.path(a, b).expect("same component") {
                        if !seen[f] {
                            seen[f] = true;
                            pred[f] = Some((cur, side));
                            queue.push_back(f);
                        }
                    }
                    continue;
                }
                // cur enters `side` freely; unwind the exchanges
                self.comps[k].union(a, b);
                self.assign.push(side);
                let (mut at, mut to) = (cur, side);
                loop {
                    self.assign[at] = to;
                    match pred[at] {
                        Some((p, ps)) => {
                            at = p;
                            to = ps;
                        }
                        None => break,
                    }
                }
                return true;
            }
        }
        self.elems.pop();
        false
    }

    fn forest(&self, side: Side) -> RootedForest {
        let items: Vec<(VertexId, VertexId, usize)> = (0..self.assign.len())
            .filter(|&i| self.assign[i] == side)
            .map(|i| {
                let (u, v) = self.ends(self.elems[i], side).expect("assigned elements are not loops");
                (u, v, i)
            })
            .collect();
        RootedForest::build(self.n, &items)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    In(Side),
    Spare,
    Gone,
}

/// A base of the union of the two matroids inside the inner edges that are
/// not on the path. A completion exists only while that base stays full, so
/// every edge put on the path that was in the base needs a replacement.
struct SpanningBase {
    n: usize,
    outer: Outer,
    edges: Vec<Edge>,
    slot: Vec<Slot>,
    size: usize,
}

impl SpanningBase {
    /// `edges` indexed like the search's edge ids; outer edges never count.
    fn new(n: usize, outer: Outer, edges: Vec<Edge>) -> Self {
        let slot = edges.iter().map(|&e| if outer.is_outer_edge(e) { Slot::Gone } else { Slot::Spare }).collect();
        let mut b = SpanningBase { n, outer, edges, slot, size: 0 };
        while b.augment() {}
        b
    }

    fn snapshot(&self) -> (Vec<Slot>, usize) {
        (self.slot.clone(), self.size)
    }

    fn restore(&mut self, (slot, size): (Vec<Slot>, usize)) {
        self.slot = slot;
        self.size = size;
    }

    /// Drops edge `i` for good; returns whether the base could be refilled.
    fn remove(&mut self, i: usize) -> bool {
        let was = self.slot[i];
        self.slot[i] = Slot::Gone;
        match was {
            Slot::In(_) => {
                self.size -= 1;
                self.augment()
            }
            Slot::Spare | Slot::Gone => true,
        }
    }

    fn forest(&self, side: Side) -> RootedForest {
        let items: Vec<(VertexId, VertexId, usize)> = (0..self.slot.len())
            .filter(|&i| self.slot[i] == Slot::In(side))
            .map(|i| {
                let (u, v) = matroid_ends(self.outer, self.edges[i], side).expect("base elements are not loops");
                (u, v, i)
            })
            .collect();
        RootedForest::build(self.n, &items)
    }

    /// Grows the base by one through a shortest augmenting path from any
    /// spare edge.
    fn augment(&mut self) -> bool {
        let forests = [self.forest(Side::Y), self.forest(Side::Z)];
        let mut pred: Vec<Option<(usize, Side)>> = vec![None; self.slot.len()];
        let mut seen: Vec<bool> = self.slot.iter().map(|&s| s == Slot::Spare).collect();
        let mut queue: VecDeque<usize> = (0..self.slot.len()).filter(|&i| seen[i]).collect();
        while let Some(cur) = queue.pop_front() {
            for (k, side) in [Side::Y, Side::Z].into_iter().enumerate() {
                if self.slot[cur] == Slot::In(side) {
                    continue;
                }
                let Some((a, b)) = matroid_ends(self.outer, self.edges[cur], side) else {
                    continue;
                };
                match forests[k].path(a, b) {
                    Some(cycle) => {
                        for f in cycle {
                            if !seen[f] {
                                seen[f] = true;
                                pred[f] = Some((cur, side));
                                queue.push_back(f);
                            }
                        }
                    }
                    None => {
                        let (mut at, mut to) = (cur, side);
                        loop {
                            self.slot[at] = Slot::In(to);
                            match pred[at] {
                                Some((p, ps)) => {
                                    at = p;
                                    to = ps;
                                }
                                None => break,
                            }
                        }
                        self.size += 1;
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Union-find without path compression, so unions can be undone in order.
struct UndoDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    log: Vec<usize>,
}

impl UndoDsu {
    fn new(n: usize) -> Self {
        UndoDsu { parent: (0..n).collect(), size: vec![1; n], log: Vec::new() }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn same(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.log.push(rb);
        true
    }

    fn mark(&self) -> usize {
        self.log.len()
    }

    fn undo_to(&mut self, mark: usize) {
        while self.log.len() > mark {
            let rb = self.log.pop().expect("log entry");
            let ra = self.parent[rb];
            self.size[ra] -= self.size[rb];
            self.parent[rb] = rb;
        }
    }
}

/// A forest with parent pointers for path queries.
struct RootedForest {
    parent: Vec<(VertexId, usize)>,
    depth: Vec<usize>,
    root: Vec<VertexId>,
}

impl RootedForest {
    /// `items` are `(u, v, element id)`.
    fn build(n: usize, items: &[(VertexId, VertexId, usize)]) -> Self {
        // flat adjacency: offsets into one array of (neighbour, element)
        let mut start = vec![0usize; n + 1];
        for &(u, v, _) in items {
            start[u + 1] += 1;
            start[v + 1] += 1;
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut adj = vec![(0, 0); start[n]];
        for &(u, v, i) in items {
            adj[fill[u]] = (v, i);
            fill[u] += 1;
            adj[fill[v]] = (u, i);
            fill[v] += 1;
        }
        let mut parent = vec![(usize::MAX, usize::MAX); n];
        let mut depth = vec![usize::MAX; n];
        let mut root = vec![0; n];
        let mut stack = Vec::new();
        for r in 0..n {
            if depth[r] != usize::MAX {
                continue;
            }
            depth[r] = 0;
            root[r] = r;
            stack.push(r);
            while let Some(u) = stack.pop() {
                for &(w, i) in &adj[start[u]..start[u + 1]] {
                    if depth[w] == usize::MAX {
                        depth[w] = depth[u] + 1;
                        parent[w] = (u, i);
                        root[w] = r;
                        stack.push(w);
                    }
                }
            }
        }
        RootedForest { parent, depth, root }
    }

    /// Element ids on the tree path between `a` and `b`, or `None` if they
    /// lie in different trees.
    fn path(&self, mut a: VertexId, mut b: VertexId) -> Option<Vec<usize>> {
        if self.root[a] != self.root[b] {
            return None;
        }
        let mut out = Vec::new();
        while self.depth[a] > self.depth[b] {
            let (p, i) = self.parent[a];
            out.push(i);
            a = p;
        }
        while self.depth[b] > self.depth[a] {
            let (p, i) = self.parent[b];
            out.push(i);
            b = p;
        }
        while a != b {
            let (pa, ia) = self.parent[a];
            let (pb, ib) = self.parent[b];
            out.push(ia);
            out.push(ib);
            a = pa;
            b = pb;
        }
        Some(out)
    }
}

/// Outcome of one named condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InnerReport {
    pub checks: Vec<Check>,
}

impl InnerReport {
    fn push(&mut self, name: &'static str, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            ok,
            detail: if ok { String::new() } else { detail.into() },
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.ok)
    }

    pub fn summary(&self) -> String {
        self.checks
            .iter()
            .filter(|c| !c.ok)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

pub const CHECK_PARTITION: &str = "partition of inner edges";
pub const CHECK_PATH: &str = "F_x Hamiltonian path of G-{y,z} from x to u_x";
pub const CHECK_PATH_ORDER: &str = "path order matches F_x";
pub const CHECK_TREE_Y: &str = "F_y spanning tree of G-{x,z}";
pub const CHECK_FOREST_Z: &str = "F_z two-tree spanning forest of G-{y}";
pub const CHECK_XUY: &str = "x u_y in F_x";
pub const CHECK_ZUY: &str = "z u_y in F_z";
pub const CHECK_COUNTS: &str = "|F_x| = |F_y| = |F_z| = n-3";

/// Union-find over vertex ids.
struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = v;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Whether `edges` form a forest on `domain` whose components number
/// `components`; errors name the first violation.
fn forest_on(n: usize, edges: &[Edge], domain: &[bool], components: usize) -> std::result::Result<Dsu, String> {
    let mut dsu = Dsu::new(n);
    for e in edges {
        if !domain[e.0] || !domain[e.1] {
            return Err(format!("edge {e} leaves the vertex domain"));
        }
        if !dsu.union(e.0, e.1) {
            return Err(format!("edge {e} closes a cycle"));
        }
    }
    let size = domain.iter().filter(|&&d| d).count();
    let got = size - edges.len();
    if got != components {
        return Err(format!("{got} components, expected {components}"));
    }
    Ok(dsu)
}

/// Checks every condition of the decomposition against the triangulation.
pub fn verify_inner(t: &Triangulation, d: &InnerDecomposition) -> InnerReport {
    let mut rep = InnerReport::default();
    let g = t.graph();
    let n = g.n();
    let Outer { x, y, z } = d.outer;
    let opp = d.opposing;
    let outer_ok = check_outer(t, d.outer).is_ok()
        && opposing_vertices(t, d.outer).map(|o| o == opp).unwrap_or(false);
    if !outer_ok {
        rep.push(CHECK_PARTITION, false, "outer labels or opposing vertices do not match the triangulation");
        return rep;
    }

    // partition
    let mut all: Vec<Edge> = d.f_x.iter().chain(&d.f_y).chain(&d.f_z).copied().collect();
    all.sort_unstable();
    let inner: Vec<Edge> = g.edges().filter(|&e| !d.outer.is_outer_edge(e)).collect();
    let dup = all.windows(2).find(|w| w[0] == w[1]).map(|w| w[0]);
    let partition_detail = if let Some(e) = dup {
        format!("edge {e} used twice")
    } else if all != inner {
        let missing: Vec<String> = inner.iter().filter(|e| all.binary_search(e).is_err()).map(|e| e.to_string()).collect();
        let extra: Vec<String> = all.iter().filter(|e| inner.binary_search(e).is_err()).map(|e| e.to_string()).collect();
        format!("missing [{}], extra [{}]", missing.join(" "), extra.join(" "))
    } else {
        String::new()
    };
    rep.push(CHECK_PARTITION, partition_detail.is_empty(), partition_detail);

    // F_x
    let dom_x: Vec<bool> = (0..n).map(|v| v != y && v != z).collect();
    let path_detail = (|| {
        let dsu = forest_on(n, &d.f_x, &dom_x, 1)?;
        drop(dsu);
        let mut deg = vec![0usize; n];
        for e in &d.f_x {
            deg[e.0] += 1;
            deg[e.1] += 1;
        }
        for v in (0..n).filter(|&v| dom_x[v]) {
            let want = if n == 4 || v == x || v == opp.u_x { 1 } else { 2 };
            if deg[v] != want {
                return Err(format!("vertex {v} has path degree {}, expected {want}", deg[v]));
            }
        }
        Ok(())
    })();
    rep.push(CHECK_PATH, path_detail.is_ok(), path_detail.err().unwrap_or_default());

    let mut from_order: Vec<Edge> = d.path_order.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
    from_order.sort_unstable();
    let mut fx_sorted = d.f_x.clone();
    fx_sorted.sort_unstable();
    let order_ok = d.path_order.first() == Some(&x) && d.path_order.last() == Some(&opp.u_x) && from_order == fx_sorted;
    rep.push(CHECK_PATH_ORDER, order_ok, format!("path order {:?}", d.path_order));

    let dom_y: Vec<bool> = (0..n).map(|v| v != x && v != z).collect();
    let tree_y = forest_on(n, &d.f_y, &dom_y, 1);
    rep.push(CHECK_TREE_Y, tree_y.is_ok(), tree_y.err().unwrap_or_default());

    let dom_z: Vec<bool> = (0..n).map(|v| v != y).collect();
    let forest_z = forest_on(n, &d.f_z, &dom_z, 2).and_then(|mut dsu| {
        if dsu.find(x) == dsu.find(z) {
            Err("x and z share a tree".to_string())
        } else {
            Ok(())
        }
    });
    rep.push(CHECK_FOREST_Z, forest_z.is_ok(), forest_z.err().unwrap_or_default());

    let xuy = Edge::new(x, opp.u_y);
    rep.push(CHECK_XUY, d.f_x.contains(&xuy), format!("{xuy} not in F_x"));
    let zuy = Edge::new(z, opp.u_y);
    rep.push(CHECK_ZUY, d.f_z.contains(&zuy), format!("{zuy} not in F_z"));

    let k = n.saturating_sub(3);
    let counts_ok = d.f_x.len() == k && d.f_y.len() == k && d.f_z.len() == k;
    rep.push(
        CHECK_COUNTS,
        counts_ok,
        format!("sizes {} {} {}, expected {k}", d.f_x.len(), d.f_y.len(), d.f_z.len()),
    );
    rep
}

/// A path and two forests covering every edge of the triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullDecomposition {
    /// `y, x, u_y, ..., u_x`.
    pub path: Vec<VertexId>,
    /// `F_y + yz`, a spanning tree of `G - {x}`.
    pub forest_a: Vec<Edge>,
    /// `F_z + xz`, a spanning tree of `G - {y}`.
    pub forest_b: Vec<Edge>,
}

/// Adds the outer edges: `xy` to the path, `yz` to `F_y`, `xz` to `F_z`.
pub fn extend_full(t: &Triangulation, d: &InnerDecomposition) -> Result<FullDecomposition> {
    let Outer { x, y, z } = d.outer;
    let mut path = vec![y];
    path.extend(&d.path_order);
    let mut forest_a = d.f_y.clone();
    forest_a.push(Edge::new(y, z));
    let mut forest_b = d.f_z.clone();
    forest_b.push(Edge::new(x, z));
    let full = FullDecomposition { path, forest_a, forest_b };
    verify_full(t.graph(), &full).map_err(Error::Certification)?;
    Ok(full)
}

/// Checks that the path and both forests partition `E(g)`.
pub fn verify_full(g: &Graph, d: &FullDecomposition) -> std::result::Result<(), String> {
    let n = g.n();
    let mut seen = vec![false; n];
    for &v in &d.path {
        if v >= n || seen[v] {
            return Err(format!("path repeats or leaves the graph at {v}"));
        }
        seen[v] = true;
    }
    let path_edges: Vec<Edge> = d.path.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
    let all_dom = vec![true; n];
    for (name, forest) in [("forest_a", &d.forest_a), ("forest_b", &d.forest_b)] {
        let mut dsu = Dsu::new(n);
        for e in forest.iter() {
            if e.1 >= n || !all_dom[e.0] || !dsu.union(e.0, e.1) {
                return Err(format!("{name} is not a forest at {e}"));
            }
        }
    }
    let mut all: Vec<Edge> = path_edges.iter().chain(&d.forest_a).chain(&d.forest_b).copied().collect();
    all.sort_unstable();
    let edges: Vec<Edge> = g.edges().collect();
    if all != edges {
        return Err("path and forests do not partition the edge set".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::planar_embed;
    use crate::named;

    fn tri(g: &Graph, outer: [VertexId; 3]) -> Triangulation {
        let t = Triangulation::new(planar_embed(g).unwrap(), g.n()).unwrap();
        let all: Vec<_> = (0..g.n()).collect();
        t.restrict(&all, outer).unwrap().0
    }

    #[test]
    fn k4_opposing_coincide() {
        let t = tri(&Graph::complete(4), [0, 1, 2]);
        let o = opposing_vertices(&t, Outer::new(0, 1, 2)).unwrap();
        assert_eq!((o.u_x, o.u_y, o.u_z), (3, 3, 3));
    }

    // Octahedron: outer 0 1 2, inner 3 4 5, non-edges 0-3, 1-4, 2-5.
    // Inner vertices adjacent to both 1 and 2: {3} (4 misses 1, 5 misses 2).
    #[test]
    fn octahedron_opposing() {
        let t = tri(&named::octahedron(), [0, 1, 2]);
        let o = opposing_vertices(&t, Outer::new(0, 1, 2)).unwrap();
        assert_eq!((o.u_x, o.u_y, o.u_z), (3, 4, 5));
    }

    #[test]
    fn stack5_not_four_connected() {
        let t = tri(&named::stack5(), [0, 1, 2]);
        // 0 and 1 have inner common neighbours 3 and 4
        assert!(matches!(
            opposing_vertices(&t, Outer::new(2, 0, 1)),
            Err(Error::NotFourConnected(_))
        ));
    }

    #[test]
    fn k4_decomposition_forced() {
        let t = tri(&Graph::complete(4), [0, 1, 2]);
        let d = decompose_inner(&t, Outer::new(0, 1, 2)).unwrap();
        assert_eq!(d.path_order, vec![0, 3]);
        assert_eq!(d.f_y, vec![Edge(1, 3)]);
        assert_eq!(d.f_z, vec![Edge(2, 3)]);
        assert!(d.is_k4());
        assert!(verify_inner(&t, &d).passed());
        let pz = d.f_z_parents(4);
        assert_eq!(pz, vec![None, None, None, None]);
        assert_eq!(d.f_y_parents(4)[3], Some(1));
    }

    #[test]
    fn swapped_classes_fail() {
        let t = tri(&Graph::complete(4), [0, 1, 2]);
        let mut d = decompose_inner(&t, Outer::new(0, 1, 2)).unwrap();
        std::mem::swap(&mut d.f_y, &mut d.f_z);
        let rep = verify_inner(&t, &d);
        assert_eq!(rep.check(CHECK_TREE_Y), Some(false));
        assert!(!rep.passed());
    }

    #[test]
    fn octahedron_all_labelings() {
        let t = tri(&named::octahedron(), [0, 1, 2]);
        for (x, y, z) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
            let d = decompose_inner(&t, Outer::new(x, y, z)).unwrap();
            assert_eq!((d.f_x.len(), d.f_y.len(), d.f_z.len()), (3, 3, 3));
            assert_eq!(d.path_order.len(), 4);
        }
    }

    #[test]
    fn moved_path_edge_fails() {
        let t = tri(&named::octahedron(), [0, 1, 2]);
        let mut d = decompose_inner(&t, Outer::new(0, 1, 2)).unwrap();
        let e = d.f_x.remove(1);
        d.f_y.push(e);
        let rep = verify_inner(&t, &d);
        assert_eq!(rep.check(CHECK_PATH), Some(false));
    }

    #[test]
    fn icosahedron_decomposes() {
        let t = tri(&named::icosahedron(), [0, 1, 2]);
        let d = decompose_inner(&t, Outer::new(0, 1, 2)).unwrap();
        assert!(verify_inner(&t, &d).passed());
        assert_eq!(d.f_x.len(), 9);
    }

    #[test]
    fn full_extension_counts() {
        let t = tri(&Graph::complete(4), [0, 1, 2]);
        let d = decompose_inner(&t, Outer::new(0, 1, 2)).unwrap();
        let full = extend_full(&t, &d).unwrap();
        assert_eq!(full.path, vec![1, 0, 3]);
        let mut a = full.forest_a.clone();
        a.sort();
        assert_eq!(a, vec![Edge(1, 2), Edge(1, 3)]);
        let mut b = full.forest_b.clone();
        b.sort();
        assert_eq!(b, vec![Edge(0, 2), Edge(2, 3)]);

        let t = tri(&named::octahedron(), [0, 1, 2]);
        let d = decompose_inner(&t, Outer::new(0, 1, 2)).unwrap();
        let full = extend_full(&t, &d).unwrap();
        assert_eq!((full.path.len() - 1, full.forest_a.len(), full.forest_b.len()), (4, 4, 4));
    }

    #[test]
    fn luby_sequence() {
        let got: Vec<u64> = (1..=15).map(luby).collect();
        assert_eq!(got, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    #[test]
    fn rooted_f_z_has_three_roots() {
        let t = tri(&named::icosahedron(), [0, 1, 2]);
        let d = decompose_inner(&t, Outer::new(0, 1, 2)).unwrap();
        let parents = d.f_z_parents(12);
        let roots: Vec<_> = (0..12).filter(|&v| v != 1 && parents[v].is_none()).collect();
        let mut want = vec![0, 2, d.opposing.u_y];
        want.sort();
        assert_eq!(roots, want);
    }
}
