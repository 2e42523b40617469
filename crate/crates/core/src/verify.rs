//! Independent checks on a representation, computed from the raw intervals.
//!
//! The line is cut into cells: every distinct endpoint (a point cell) and the
//! open gap between consecutive endpoints (a gap cell). Every closed interval
//! is a contiguous run of cells, so the set of vertices covering each cell is
//! found by one sweep, and every notion below is read off the cell covers:
//!
//! * `uv` is an edge iff some cell is covered by both `u` and `v`,
//! * depth is the largest cover,
//! * `v` is displayed iff some gap cell is covered by `v` alone,
//! * `uv` is displayed iff some gap cell is covered by exactly `u` and `v`,
//! * an endpoint of `f(v)` is a broken end iff its point cell is covered by
//!   `v` alone.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::embedding::Triangulation;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::interval::{Portion, Representation, Q};

/// Cover sets of all cells, in left-to-right order.
#[derive(Clone, Debug)]
pub struct Cells {
    points: Vec<Q>,
    // covers[2i] is the point points[i]; covers[2i+1] is (points[i], points[i+1])
    covers: Vec<Vec<VertexId>>,
}

impl Cells {
    pub fn new(rep: &Representation) -> Self {
        let points = rep.endpoints();
        let cells = (2 * points.len()).saturating_sub(1);
        let mut start: Vec<Vec<VertexId>> = vec![Vec::new(); cells + 1];
        let mut stop: Vec<Vec<VertexId>> = vec![Vec::new(); cells + 1];
        for (v, list) in rep.iter() {
            for iv in list {
                let a = 2 * points.binary_search(iv.lo()).expect("endpoint");
                let b = 2 * points.binary_search(iv.hi()).expect("endpoint");
                start[a].push(v);
                stop[b + 1].push(v);
            }
        }
        let mut active: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut covers = Vec::with_capacity(cells);
        for c in 0..cells {
            for &v in &stop[c] {
                let k = active.get_mut(&v).expect("active");
                *k -= 1;
                if *k == 0 {
                    active.remove(&v);
                }
            }
            for &v in &start[c] {
                *active.entry(v).or_default() += 1;
            }
            covers.push(active.keys().copied().collect());
        }
        Cells { points, covers }
    }

    pub fn len(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covers.is_empty()
    }

    pub fn cover(&self, cell: usize) -> &[VertexId] {
        &self.covers[cell]
    }

    /// The open gap of an odd cell.
    pub fn gap(&self, cell: usize) -> Option<Portion> {
        (cell % 2 == 1).then(|| Portion::new(self.points[cell / 2].clone(), self.points[cell / 2 + 1].clone()))
    }

    pub fn point(&self, cell: usize) -> Option<&Q> {
        cell.is_multiple_of(2).then(|| &self.points[cell / 2])
    }

    fn point_cell(&self, p: &Q) -> usize {
        2 * self.points.binary_search(p).expect("endpoint")
    }
}

/// Intersection graph on ids `0..=max id` (ids absent from `rep` are
/// isolated).
pub fn intersection_graph(rep: &Representation) -> Graph {
    intersection_graph_from(rep, &Cells::new(rep))
}

fn intersection_graph_from(rep: &Representation, cells: &Cells) -> Graph {
    let n = rep.vertex_ids().last().map_or(0, |v| v + 1);
    let mut edges = Vec::new();
    for c in &cells.covers {
        for (i, &a) in c.iter().enumerate() {
            for &b in &c[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges).expect("cover sets are simple")
}

/// Maximum number of vertices covering a single point.
pub fn depth(rep: &Representation) -> usize {
    Cells::new(rep).covers.iter().map(Vec::len).max().unwrap_or(0)
}

/// Displayed vertices and edges, each with one witness gap.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Displayed {
    pub vertices: BTreeMap<VertexId, Portion>,
    pub edges: BTreeMap<Edge, Portion>,
}

pub fn displayed(rep: &Representation) -> Displayed {
    displayed_from(&Cells::new(rep))
}

fn displayed_from(cells: &Cells) -> Displayed {
    let mut out = Displayed::default();
    for (c, cover) in cells.covers.iter().enumerate().skip(1).step_by(2) {
        match cover.as_slice() {
            [v] => {
                out.vertices.entry(*v).or_insert_with(|| cells.gap(c).unwrap());
            }
            [a, b] => {
                out.edges.entry(Edge::new(*a, *b)).or_insert_with(|| cells.gap(c).unwrap());
            }
            _ => {}
        }
    }
    out
}

/// Endpoints of `f(v)` not covered by any other vertex, in vertex then
/// position order.
pub fn broken_ends(rep: &Representation) -> Vec<(VertexId, Q)> {
    broken_ends_from(rep, &Cells::new(rep))
}

fn broken_ends_from(rep: &Representation, cells: &Cells) -> Vec<(VertexId, Q)> {
    let mut out = Vec::new();
    for (v, list) in rep.iter() {
        for iv in list {
            for p in [iv.lo(), iv.hi()] {
                if cells.cover(cells.point_cell(p)) == [v] {
                    out.push((v, p.clone()));
                }
            }
        }
    }
    out
}

/// True iff every vertex of `rep` uses at most `k` intervals after merging.
pub fn count_check(rep: &Representation, k: usize) -> bool {
    rep.max_intervals() <= k
}

/// Everything the verifier knows about one representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub intersection_graph: Graph,
    pub depth: usize,
    pub max_intervals_per_vertex: usize,
    pub displayed: Displayed,
    pub broken_ends: Vec<(VertexId, Q)>,
    /// Target vertices without a displayed portion.
    pub undisplayed_vertices: Vec<VertexId>,
    pub i1_ok: bool,
    /// `None` when no embedding was supplied.
    pub i2_ok: Option<bool>,
    /// Inner faces with no displayed edge.
    pub bare_faces: Vec<[VertexId; 3]>,
    pub missing_vertices: Vec<VertexId>,
    pub extra_vertices: Vec<VertexId>,
    pub missing_edges: Vec<Edge>,
    pub extra_edges: Vec<Edge>,
    pub matches_target: bool,
}

/// Acceptance thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_intervals: usize,
    pub max_depth: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_intervals: 3, max_depth: 3 }
    }
}

impl VerificationReport {
    /// Exact target, within the interval and depth limits.
    pub fn passes(&self, limits: Limits) -> bool {
        self.matches_target && self.max_intervals_per_vertex <= limits.max_intervals && self.depth <= limits.max_depth
    }

    /// One line per failed check.
    pub fn failures(&self, limits: Limits) -> Vec<String> {
        let mut out = Vec::new();
        let show = |es: &[Edge]| es.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
        if !self.missing_vertices.is_empty() {
            out.push(format!("vertices without intervals: {:?}", self.missing_vertices));
        }
        if !self.extra_vertices.is_empty() {
            out.push(format!("intervals for unknown vertices: {:?}", self.extra_vertices));
        }
        if !self.missing_edges.is_empty() {
            out.push(format!("missing edges: {}", show(&self.missing_edges)));
        }
        if !self.extra_edges.is_empty() {
            out.push(format!("extra edges: {}", show(&self.extra_edges)));
        }
        if self.max_intervals_per_vertex > limits.max_intervals {
            out.push(format!(
                "a vertex uses {} intervals (limit {})",
                self.max_intervals_per_vertex, limits.max_intervals
            ));
        }
        if self.depth > limits.max_depth {
            out.push(format!("depth {} exceeds {}", self.depth, limits.max_depth));
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Witness<T> {
            id: T,
            portion: [String; 2],
        }
        #[derive(Serialize)]
        struct Doc {
            matches_target: bool,
            depth: usize,
            max_intervals_per_vertex: usize,
            i1_ok: bool,
            i2_ok: Option<bool>,
            missing_vertices: Vec<VertexId>,
            extra_vertices: Vec<VertexId>,
            missing_edges: Vec<[VertexId; 2]>,
            extra_edges: Vec<[VertexId; 2]>,
            undisplayed_vertices: Vec<VertexId>,
            bare_faces: Vec<[VertexId; 3]>,
            displayed_vertices: Vec<Witness<VertexId>>,
            displayed_edges: Vec<Witness<[VertexId; 2]>>,
            broken_ends: Vec<(VertexId, String)>,
        }
        let portion = |p: &Portion| [p.lo.to_string(), p.hi.to_string()];
        let pair = |e: &Edge| [e.0, e.1];
        let doc = Doc {
            matches_target: self.matches_target,
            depth: self.depth,
            max_intervals_per_vertex: self.max_intervals_per_vertex,
            i1_ok: self.i1_ok,
            i2_ok: self.i2_ok,
            missing_vertices: self.missing_vertices.clone(),
            extra_vertices: self.extra_vertices.clone(),
            missing_edges: self.missing_edges.iter().map(pair).collect(),
            extra_edges: self.extra_edges.iter().map(pair).collect(),
            undisplayed_vertices: self.undisplayed_vertices.clone(),
            bare_faces: self.bare_faces.clone(),
            displayed_vertices: self
                .displayed
                .vertices
                .iter()
                .map(|(&v, p)| Witness { id: v, portion: portion(p) })
                .collect(),
            displayed_edges: self
                .displayed
                .edges
                .iter()
                .map(|(e, p)| Witness { id: pair(e), portion: portion(p) })
                .collect(),
            broken_ends: self.broken_ends.iter().map(|(v, p)| (*v, p.to_string())).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }
}

/// Compares `rep` with `target` (vertex ids `0..target.n()`); when `faces`
/// is given, also checks that each face has a displayed edge.
pub fn verify(rep: &Representation, target: &Graph, faces: Option<&[[VertexId; 3]]>) -> VerificationReport {
    let cells = Cells::new(rep);
    let ig = intersection_graph_from(rep, &cells);
    let shown = displayed_from(&cells);
    let n = target.n();
    let missing_vertices: Vec<VertexId> = (0..n).filter(|&v| !rep.contains_vertex(v)).collect();
    let extra_vertices: Vec<VertexId> = rep.vertex_ids().filter(|&v| v >= n).collect();
    let has = |g: &Graph, e: Edge| e.1 < g.n() && g.has_edge(e.0, e.1);
    let missing_edges: Vec<Edge> = target.edges().filter(|&e| !has(&ig, e)).collect();
    let extra_edges: Vec<Edge> = ig.edges().filter(|&e| !has(target, e)).collect();
    let undisplayed_vertices: Vec<VertexId> = (0..n).filter(|v| !shown.vertices.contains_key(v)).collect();
    let bare_faces: Vec<[VertexId; 3]> = faces
        .unwrap_or(&[])
        .iter()
        .filter(|f| {
            let es = [Edge::new(f[0], f[1]), Edge::new(f[1], f[2]), Edge::new(f[0], f[2])];
            !es.iter().any(|e| shown.edges.contains_key(e))
        })
        .copied()
        .collect();
    VerificationReport {
        depth: cells.covers.iter().map(Vec::len).max().unwrap_or(0),
        max_intervals_per_vertex: rep.max_intervals(),
        broken_ends: broken_ends_from(rep, &cells),
        i1_ok: undisplayed_vertices.is_empty() && missing_vertices.is_empty(),
        i2_ok: faces.map(|_| bare_faces.is_empty()),
        matches_target: missing_vertices.is_empty()
            && extra_vertices.is_empty()
            && missing_edges.is_empty()
            && extra_edges.is_empty(),
        intersection_graph: ig,
        displayed: shown,
        undisplayed_vertices,
        bare_faces,
        missing_vertices,
        extra_vertices,
        missing_edges,
        extra_edges,
    }
}

/// Full report against a triangulation, with both display invariants checked
/// over its inner faces.
pub fn check_invariants(rep: &Representation, t: &Triangulation) -> Result<VerificationReport> {
    let n = t.n();
    let ids: Vec<VertexId> = rep.vertex_ids().collect();
    if ids.len() != n || ids.iter().enumerate().any(|(i, &v)| i != v) {
        return Err(Error::Validation(format!(
            "representation covers {} vertices, triangulation has ids 0..{n}",
            ids.len()
        )));
    }
    let faces: Vec<[VertexId; 3]> = t.inner_faces().map(|f| [f[0], f[1], f[2]]).collect();
    Ok(verify(rep, t.graph(), Some(&faces)))
}

/// Re-checks every witness pointwise, by scanning all intervals at the
/// witness midpoint (or endpoint). Independent of the sweep.
pub fn confirm_witnesses(rep: &Representation, report: &VerificationReport) -> bool {
    let cover_at = |p: &Q| -> Vec<VertexId> {
        rep.iter().filter(|(_, l)| l.iter().any(|iv| iv.contains(p))).map(|(v, _)| v).collect()
    };
    report.displayed.vertices.iter().all(|(&v, p)| cover_at(&p.midpoint()) == [v])
        && report.displayed.edges.iter().all(|(e, p)| cover_at(&p.midpoint()) == [e.0, e.1])
        && report.broken_ends.iter().all(|(v, p)| cover_at(p) == [*v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{q, Interval};

    fn rep(items: &[(VertexId, i64, i64)]) -> Representation {
        let mut r = Representation::new();
        for &(v, a, b) in items {
            r.insert(v, Interval::ints(a, b));
        }
        r
    }

    fn base() -> Representation {
        rep(&[(0, 0, 3), (1, 1, 4), (1, 6, 7), (2, 2, 5)])
    }

    #[test]
    fn base_triangle_facts() {
        let r = base();
        assert_eq!(intersection_graph(&r), Graph::complete(3));
        assert_eq!(depth(&r), 3);
        let d = displayed(&r);
        assert_eq!(d.vertices.keys().copied().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(d.edges.keys().copied().collect::<Vec<_>>(), vec![Edge(0, 1), Edge(1, 2)]);
        assert_eq!(d.vertices[&1], Portion::new(q(6), q(7)));
        let b = broken_ends(&r);
        assert_eq!(b, vec![(0, q(0)), (1, q(6)), (1, q(7)), (2, q(5))]);
        assert!(count_check(&r, 3));
        assert!(!count_check(&r, 1));
    }

    #[test]
    fn small_cases() {
        let r = rep(&[(0, 0, 1), (1, 2, 3)]);
        assert_eq!(intersection_graph(&r).m(), 0);
        let r = rep(&[(0, 0, 1), (1, 1, 2)]);
        assert_eq!(intersection_graph(&r).m(), 1);
        assert_eq!(broken_ends(&r), vec![(0, q(0)), (1, q(2))]);
        let r = rep(&[(0, 0, 2), (1, 0, 2)]);
        let d = displayed(&r);
        assert!(d.vertices.is_empty());
        assert_eq!(d.edges.len(), 1);
        let r = rep(&[(0, 0, 2), (1, 0, 2), (2, 0, 2)]);
        let d = displayed(&r);
        assert!(d.vertices.is_empty() && d.edges.is_empty());
        let r = rep(&[(0, 0, 1), (0, 3, 4)]);
        assert_eq!(depth(&r), 1);
        assert_eq!(broken_ends(&r).len(), 4);
        assert_eq!(depth(&Representation::new()), 0);
    }

    #[test]
    fn invariants_on_triangle() {
        use crate::embedding::planar_embed;
        let t = Triangulation::new(planar_embed(&Graph::complete(3)).unwrap(), 3).unwrap();
        let report = check_invariants(&base(), &t).unwrap();
        assert!(report.i1_ok);
        assert_eq!(report.i2_ok, Some(true));
        assert!(report.matches_target);
        assert!(confirm_witnesses(&base(), &report));
        let mut r = base();
        r.remove_vertex(2);
        assert!(check_invariants(&r, &t).is_err());
    }

    #[test]
    fn missing_edge_diagnostic() {
        let r = rep(&[(0, 0, 1), (1, 2, 3), (2, 0, 3)]);
        let report = verify(&r, &Graph::complete(3), None);
        assert!(!report.matches_target);
        assert_eq!(report.missing_edges, vec![Edge(0, 1)]);
        assert_eq!(report.failures(Limits::default()), vec!["missing edges: 0-1".to_string()]);
    }
}
