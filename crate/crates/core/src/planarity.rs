//! Left-right planarity test with embedding extraction.
//!
//! Follows Brandes' formulation of the de Fraysseix–Rosenstiehl criterion:
//! a DFS orientation computes lowpoints and nesting depths, a second DFS
//! maintains a stack of conflict pairs to assign each back edge a side, and
//! a third DFS turns the sides into a rotation system.
//!
//! Vertices are visited in id order and adjacency lists are sorted, so the
//! result is a deterministic function of the graph.

use crate::graph::{Graph, VertexId};

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState<'g> {
    g: &'g Graph,
    // per directed-edge data, indexed by edge id; each undirected edge gets
    // exactly one orientation during the first DFS
    src: Vec<usize>,
    dst: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    reference: Vec<Option<usize>>,
    side: Vec<i64>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<usize>,
    // per vertex
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    out_edges: Vec<Vec<usize>>,
    stack: Vec<ConflictPair>,
}

/// Returns a clockwise rotation system for `g`, or `None` if `g` is not
/// planar.
pub fn lr_planar_rotation(g: &Graph) -> Option<Vec<Vec<VertexId>>> {
    let n = g.n();
    let m = g.m();
    if n > 2 && m > 3 * n - 6 {
        return None;
    }
    let mut st = LrState {
        g,
        src: Vec::with_capacity(m),
        dst: Vec::with_capacity(m),
        lowpt: Vec::with_capacity(m),
        lowpt2: Vec::with_capacity(m),
        nesting: Vec::with_capacity(m),
        reference: Vec::new(),
        side: Vec::new(),
        stack_bottom: Vec::new(),
        lowpt_edge: Vec::new(),
        height: vec![NONE; n],
        parent_edge: vec![NONE; n],
        out_edges: vec![Vec::new(); n],
        stack: Vec::new(),
    };
    let mut oriented = vec![Vec::<VertexId>::new(); n];
    let mut roots = Vec::new();
    for v in 0..n {
        if st.height[v] == NONE {
            st.height[v] = 0;
            roots.push(v);
            st.orient(v, &mut oriented);
        }
    }
    let m = st.src.len();
    st.reference = vec![None; m];
    st.side = vec![1; m];
    st.stack_bottom = vec![0; m];
    st.lowpt_edge = vec![NONE; m];

    for v in 0..n {
        let nesting = &st.nesting;
        st.out_edges[v].sort_by_key(|&e| nesting[e]);
    }
    for &r in &roots {
        if !st.test(r) {
            return None;
        }
    }

    for e in 0..m {
        let s = st.sign(e);
        st.nesting[e] *= s;
    }
    for v in 0..n {
        let nesting = &st.nesting;
        st.out_edges[v].sort_by_key(|&e| nesting[e]);
    }

    let mut emb = HalfEdgeRing::new(n);
    for v in 0..n {
        let mut prev = None;
        for &e in &st.out_edges[v] {
            let w = st.dst[e];
            emb.add_cw(v, w, prev);
            prev = Some(w);
        }
    }
    let mut left_ref = vec![NONE; n];
    let mut right_ref = vec![NONE; n];
    for &r in &roots {
        st.embed(r, &mut emb, &mut left_ref, &mut right_ref);
    }
    Some(emb.into_rotation())
}

impl LrState<'_> {
    fn orient(&mut self, root: VertexId, oriented: &mut [Vec<VertexId>]) {
        // explicit stack of (vertex, next neighbour index)
        let mut frames: Vec<(VertexId, usize)> = vec![(root, 0)];
        let is_oriented = |oriented: &[Vec<VertexId>], a: VertexId, b: VertexId| {
            oriented[a].contains(&b) || oriented[b].contains(&a)
        };
        while let Some(&mut (v, ref mut idx)) = frames.last_mut() {
            let nbrs = self.g.neighbors(v);
            if *idx >= nbrs.len() {
                frames.pop();
                if let Some(&(p, pidx)) = frames.last() {
                    // finish the tree edge p -> v
                    let w = self.g.neighbors(p)[pidx - 1];
                    debug_assert_eq!(w, v);
                    let e = self.parent_edge[v];
                    self.finish_edge(p, e);
                }
                continue;
            }
            let w = nbrs[*idx];
            *idx += 1;
            if is_oriented(oriented, v, w) {
                continue;
            }
            oriented[v].push(w);
            let e = self.src.len();
            self.src.push(v);
            self.dst.push(w);
            self.lowpt.push(self.height[v]);
            self.lowpt2.push(self.height[v]);
            self.nesting.push(0);
            self.out_edges[v].push(e);
            if self.height[w] == NONE {
                self.parent_edge[w] = e;
                self.height[w] = self.height[v] + 1;
                frames.push((w, 0));
            } else {
                self.lowpt[e] = self.height[w];
                self.finish_edge(v, e);
            }
        }
    }

    /// Nesting depth of `e = (v, w)` and lowpoint propagation into the parent
    /// edge of `v`.
    fn finish_edge(&mut self, v: VertexId, e: usize) {
        self.nesting[e] = 2 * self.lowpt[e] as i64;
        if self.lowpt2[e] < self.height[v] {
            self.nesting[e] += 1;
        }
        let pe = self.parent_edge[v];
        if pe != NONE {
            if self.lowpt[e] < self.lowpt[pe] {
                self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[e]);
                self.lowpt[pe] = self.lowpt[e];
            } else if self.lowpt[e] > self.lowpt[pe] {
                self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[e]);
            } else {
                self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[e]);
            }
        }
    }

    fn test(&mut self, root: VertexId) -> bool {
        // frames hold (vertex, index into out_edges); the edge at index-1 is
        // the one being processed when a child returns
        let mut frames: Vec<(VertexId, usize)> = vec![(root, 0)];
        while let Some(&(v, idx)) = frames.last() {
            if idx > 0 {
                // returning from, or having just handled, out_edges[v][idx-1]
            }
            if idx >= self.out_edges[v].len() {
                frames.pop();
                let e = self.parent_edge[v];
                if e != NONE {
                    self.remove_back_edges(e);
                    let parent = self.src[e];
                    let (_, pidx) = *frames.last().expect("parent frame");
                    debug_assert_eq!(self.out_edges[parent][pidx - 1], e);
                    if !self.integrate(parent, e) {
                        return false;
                    }
                }
                continue;
            }
            let ei = self.out_edges[v][idx];
            frames.last_mut().unwrap().1 += 1;
            self.stack_bottom[ei] = self.stack.len();
            let w = self.dst[ei];
            if self.parent_edge[w] == ei {
                frames.push((w, 0));
            } else {
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval {
                        low: Some(ei),
                        high: Some(ei),
                    },
                });
                if !self.integrate(v, ei) {
                    return false;
                }
            }
        }
        true
    }

    /// Integrates the return edges of `ei`, an outgoing edge of `v`.
    fn integrate(&mut self, v: VertexId, ei: usize) -> bool {
        if self.lowpt[ei] < self.height[v] {
            let e = self.parent_edge[v];
            if self.out_edges[v][0] == ei {
                if e != NONE {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                }
            } else if !self.add_constraints(ei, e) {
                return false;
            }
        }
        true
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        match i.high {
            Some(h) => !i.is_empty() && self.lowpt[h] > self.lowpt[b],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        match (p.left.low, p.right.low) {
            (None, Some(r)) => self.lowpt[r],
            (Some(l), None) => self.lowpt[l],
            (Some(l), Some(r)) => self.lowpt[l].min(self.lowpt[r]),
            (None, None) => NONE,
        }
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("return edges on stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let ql = q.right.low.expect("non-empty right interval");
            if self.lowpt[ql] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    let pl = p.right.low.expect("non-empty");
                    self.reference[pl] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[ql] = Some(self.lowpt_edge[e]);
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(pl) = p.right.low {
                self.reference[pl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(pl) = p.left.low {
                self.reference[pl] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.reference[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.reference[r] = p.left.low;
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("return edge of e on stack");
            let hl = top.left.high;
            let hr = top.right.high;
            self.reference[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    /// Resolves relative sides along reference chains.
    fn sign(&mut self, e: usize) -> i64 {
        let mut chain = vec![e];
        while let Some(r) = self.reference[*chain.last().unwrap()] {
            chain.push(r);
        }
        // the last element has no reference; fold back towards e
        let mut acc = self.side[*chain.last().unwrap()];
        for &c in chain.iter().rev().skip(1) {
            self.side[c] *= acc;
            self.reference[c] = None;
            acc = self.side[c];
        }
        self.side[e]
    }

    fn embed(
        &self,
        root: VertexId,
        emb: &mut HalfEdgeRing,
        left_ref: &mut [usize],
        right_ref: &mut [usize],
    ) {
        let mut frames: Vec<(VertexId, usize)> = vec![(root, 0)];
        while let Some(&mut (v, ref mut idx)) = frames.last_mut() {
            if *idx >= self.out_edges[v].len() {
                frames.pop();
                continue;
            }
            let ei = self.out_edges[v][*idx];
            *idx += 1;
            let w = self.dst[ei];
            if self.parent_edge[w] == ei {
                emb.add_first(w, v);
                left_ref[v] = w;
                right_ref[v] = w;
                frames.push((w, 0));
            } else if self.side[ei] == 1 {
                emb.add_cw(w, v, Some(right_ref[w]));
            } else {
                emb.add_ccw(w, v, Some(left_ref[w]));
                left_ref[w] = v;
            }
        }
    }
}

/// Per-vertex cyclic neighbour lists supporting insertion relative to an
/// existing neighbour.
struct HalfEdgeRing {
    // cw successor / predecessor keyed by (vertex, neighbour)
    cw: Vec<std::collections::HashMap<VertexId, VertexId>>,
    ccw: Vec<std::collections::HashMap<VertexId, VertexId>>,
    first: Vec<Option<VertexId>>,
}

impl HalfEdgeRing {
    fn new(n: usize) -> Self {
        HalfEdgeRing {
            cw: vec![Default::default(); n],
            ccw: vec![Default::default(); n],
            first: vec![None; n],
        }
    }

    fn add_cw(&mut self, v: VertexId, w: VertexId, reference: Option<VertexId>) {
        match reference {
            None => {
                self.cw[v].insert(w, w);
                self.ccw[v].insert(w, w);
                self.first[v] = Some(w);
            }
            Some(r) => {
                let after = self.cw[v][&r];
                self.cw[v].insert(r, w);
                self.cw[v].insert(w, after);
                self.ccw[v].insert(after, w);
                self.ccw[v].insert(w, r);
            }
        }
    }

    fn add_ccw(&mut self, v: VertexId, w: VertexId, reference: Option<VertexId>) {
        match reference {
            None => self.add_cw(v, w, None),
            Some(r) => {
                let before = self.ccw[v][&r];
                self.add_cw(v, w, Some(before));
                if self.first[v] == Some(r) {
                    self.first[v] = Some(w);
                }
            }
        }
    }

    fn add_first(&mut self, v: VertexId, w: VertexId) {
        let reference = self.first[v];
        self.add_ccw(v, w, reference);
        if reference.is_none() {
            self.first[v] = Some(w);
        }
    }

    fn into_rotation(self) -> Vec<Vec<VertexId>> {
        (0..self.first.len())
            .map(|v| {
                let mut out = Vec::with_capacity(self.cw[v].len());
                if let Some(start) = self.first[v] {
                    let mut cur = start;
                    loop {
                        out.push(cur);
                        cur = self.cw[v][&cur];
                        if cur == start {
                            break;
                        }
                    }
                }
                out
            })
            .collect()
    }
}
