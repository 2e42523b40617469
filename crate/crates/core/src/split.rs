//! Non-empty triangles of a triangulation and the peeling schedule that
//! splits it, innermost first, into 4-connected pieces.

use serde::Serialize;

use crate::embedding::{is_four_connected, Triangulation};
use crate::error::{Error, Result};
use crate::graph::VertexId;

/// A 3-clique together with the vertices strictly inside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleRef {
    /// Sorted ascending.
    pub vertices: [VertexId; 3],
    /// Sorted ascending.
    pub interior: Vec<VertexId>,
}

/// A triangulation restricted to a vertex subset; local vertex `i` is
/// `labels[i]` in the triangulation it was cut from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub tri: Triangulation,
    pub labels: Vec<VertexId>,
}

impl Piece {
    pub fn local(&self, v: VertexId) -> Option<VertexId> {
        self.labels.iter().position(|&l| l == v)
    }
}

#[derive(Clone, Debug)]
pub struct SplitResult {
    pub g_out: Piece,
    pub g_in: Piece,
    pub delta: TriangleRef,
}

#[derive(Clone, Debug, Default)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn len_minus(&self, removed: &BitSet) -> usize {
        self.0.iter().zip(&removed.0).map(|(a, r)| (a & !r).count_ones() as usize).sum()
    }
    /// `self \ removed` is a subset of `other \ removed`.
    fn subset_minus(&self, other: &BitSet, removed: &BitSet) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .zip(&removed.0)
            .all(|((a, b), r)| a & !r & !b == 0)
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
    }
}

/// Vertices on the side of the cycle `tri` that does not contain the outer
/// face, found by flooding faces from the outer face without crossing the
/// triangle's edges.
fn interior_of(t: &Triangulation, tri: [VertexId; 3]) -> BitSet {
    let emb = t.embedding();
    let faces = emb.faces();
    let blocked = |u: VertexId, v: VertexId| tri.contains(&u) && tri.contains(&v);
    let mut reached = vec![false; faces.len()];
    let mut stack = vec![emb.outer_face()];
    reached[emb.outer_face()] = true;
    while let Some(f) = stack.pop() {
        let walk = &faces[f];
        for i in 0..walk.len() {
            let (u, v) = (walk[i], walk[(i + 1) % walk.len()]);
            if blocked(u, v) {
                continue;
            }
            let g = emb.face_of_dart(v, u);
            if !reached[g] {
                reached[g] = true;
                stack.push(g);
            }
        }
    }
    let mut inside = BitSet::new(t.n());
    for (f, walk) in faces.iter().enumerate() {
        if !reached[f] {
            for &v in walk.iter().filter(|v| !tri.contains(v)) {
                inside.insert(v);
            }
        }
    }
    inside
}

/// Every 3-clique with at least one vertex inside it, in lexicographic order.
/// The outer triangle counts, with every other vertex as its interior.
pub fn find_nonempty_triangles(t: &Triangulation) -> Vec<TriangleRef> {
    t.graph()
        .triangles()
        .into_iter()
        .filter_map(|tri| {
            let inside = interior_of(t, tri);
            let interior: Vec<_> = inside.iter().collect();
            (!interior.is_empty()).then_some(TriangleRef { vertices: tri, interior })
        })
        .collect()
}

fn is_proper_subset(a: &[VertexId], b: &[VertexId]) -> bool {
    a.len() < b.len() && a.iter().all(|v| b.binary_search(v).is_ok())
}

/// A candidate whose interior contains no other candidate's interior;
/// among those, the lexicographically smallest triangle.
pub fn select_minimal(candidates: &[TriangleRef]) -> Result<TriangleRef> {
    candidates
        .iter()
        .filter(|c| !candidates.iter().any(|o| is_proper_subset(&o.interior, &c.interior)))
        .min_by(|a, b| a.vertices.cmp(&b.vertices))
        .cloned()
        .ok_or(Error::NoSeparator)
}

/// Splits `t` along `delta` into the outside part (interior removed) and the
/// inside part (delta plus interior, with delta as outer face).
pub fn split(t: &Triangulation, delta: &TriangleRef) -> Result<SplitResult> {
    let [a, b, c] = delta.vertices;
    if !(t.graph().has_edge(a, b) && t.graph().has_edge(b, c) && t.graph().has_edge(a, c)) {
        return Err(Error::Validation(format!("{:?} is not a triangle", delta.vertices)));
    }
    if delta.interior.is_empty() {
        return Err(Error::NoSeparator);
    }
    let g_in = inner_piece(t, delta)?;
    let mut outside: Vec<VertexId> = (0..t.n()).filter(|v| delta.interior.binary_search(v).is_err()).collect();
    outside.sort_unstable();
    let (tri, labels) = t.restrict(&outside, t.outer())?;
    Ok(SplitResult {
        g_out: Piece { tri, labels },
        g_in,
        delta: delta.clone(),
    })
}

fn inner_piece(t: &Triangulation, delta: &TriangleRef) -> Result<Piece> {
    let mut keep: Vec<VertexId> = delta.vertices.iter().chain(&delta.interior).copied().collect();
    keep.sort_unstable();
    let (tri, labels) = t.restrict(&keep, delta.vertices)?;
    if !is_four_connected(tri.graph())? {
        return Err(Error::MinimalityViolation(delta.vertices));
    }
    Ok(Piece { tri, labels })
}

/// One split of the peeling: `delta` with its interior at that moment and
/// the 4-connected piece it bounds.
#[derive(Clone, Debug)]
pub struct PeelStep {
    pub delta: TriangleRef,
    pub piece: Piece,
}

/// Splits in peeling order; replaying them in reverse rebuilds the
/// triangulation from its outer triangle.
#[derive(Clone, Debug)]
pub struct PeelingSchedule {
    pub outer: [VertexId; 3],
    pub steps: Vec<PeelStep>,
}

/// Repeatedly removes the interior of a minimal non-empty triangle until only
/// the outer triangle is left.
pub fn peel(t: &Triangulation) -> Result<PeelingSchedule> {
    let n = t.n();
    let mut candidates: Vec<([VertexId; 3], BitSet)> = t
        .graph()
        .triangles()
        .into_iter()
        .map(|tri| (tri, interior_of(t, tri)))
        .filter(|(_, inside)| inside.len_minus(&BitSet::new(n)) > 0)
        .collect();
    let mut removed = BitSet::new(n);
    let mut steps = Vec::new();
    loop {
        candidates.retain(|(tri, inside)| {
            tri.iter().all(|&v| !removed.contains(v)) && inside.len_minus(&removed) > 0
        });
        if candidates.is_empty() {
            break;
        }
        let sizes: Vec<usize> = candidates.iter().map(|(_, s)| s.len_minus(&removed)).collect();
        // candidates stay in lexicographic order, so the first minimal one wins
        let pick = (0..candidates.len())
            .find(|&i| {
                !(0..candidates.len()).any(|j| {
                    sizes[j] < sizes[i] && candidates[j].1.subset_minus(&candidates[i].1, &removed)
                })
            })
            .expect("a smallest interior is always minimal");
        let (tri, inside) = &candidates[pick];
        let interior: Vec<VertexId> = inside.iter().filter(|&v| !removed.contains(v)).collect();
        let delta = TriangleRef { vertices: *tri, interior };
        let piece = inner_piece(t, &delta)?;
        for &v in &delta.interior {
            removed.insert(v);
        }
        steps.push(PeelStep { delta, piece });
    }
    let mut outer = t.outer();
    outer.sort_unstable();
    let left = n - removed.len_minus(&BitSet::new(n));
    if left != 3 {
        return Err(Error::InvariantViolation(format!("peeling stopped with {left} vertices")));
    }
    Ok(PeelingSchedule { outer, steps })
}

#[derive(Serialize)]
struct StepJson<'a> {
    delta: [VertexId; 3],
    interior: &'a [VertexId],
    piece_edges: Vec<[VertexId; 2]>,
}

impl PeelingSchedule {
    /// `[{"delta": [..], "interior": [..], "piece_edges": [[u, v], ..]}, ..]`
    /// with piece edges in the ids of the peeled triangulation.
    pub fn to_json(&self) -> String {
        let steps: Vec<StepJson> = self
            .steps
            .iter()
            .map(|s| {
                let mut piece_edges: Vec<[VertexId; 2]> = s
                    .piece
                    .tri
                    .graph()
                    .edges()
                    .map(|e| {
                        let (a, b) = (s.piece.labels[e.0], s.piece.labels[e.1]);
                        [a.min(b), a.max(b)]
                    })
                    .collect();
                piece_edges.sort_unstable();
                StepJson {
                    delta: s.delta.vertices,
                    interior: &s.delta.interior,
                    piece_edges,
                }
            })
            .collect();
        serde_json::to_string(&steps).expect("schedule serializes")
    }
}
