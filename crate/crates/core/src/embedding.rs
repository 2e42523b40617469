//! Plane embeddings as rotation systems, face traversal, and the
//! induced-subgraph-preserving triangulation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::planarity::lr_planar_rotation;

/// A graph together with a cyclic order of neighbours around every vertex
/// and a designated outer face.
///
/// Faces are traced by following a dart `u -> v` with `v -> w`, where `w`
/// comes right after `u` in the rotation of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarEmbedding {
    graph: Graph,
    rotation: Vec<Vec<VertexId>>,
    // rot_pos[v][i] = position of graph.neighbors(v)[i] in rotation[v]
    rot_pos: Vec<Vec<usize>>,
    faces: Vec<Vec<VertexId>>,
    // dart_face[v][i] = face containing the dart v -> graph.neighbors(v)[i]
    dart_face: Vec<Vec<usize>>,
    outer_face: usize,
}

impl PlanarEmbedding {
    /// Builds an embedding from a rotation system. The outer face is the
    /// longest face, ties going to the face discovered first.
    pub fn from_rotation(graph: Graph, rotation: Vec<Vec<VertexId>>) -> Result<Self> {
        if rotation.len() != graph.n() {
            return Err(Error::Validation("rotation does not cover every vertex".into()));
        }
        let mut rot_pos = Vec::with_capacity(graph.n());
        for (v, rot) in rotation.iter().enumerate() {
            let nbrs = graph.neighbors(v);
            if rot.len() != nbrs.len() {
                return Err(Error::Validation(format!("rotation at {v} has wrong degree")));
            }
            let mut pos = vec![usize::MAX; nbrs.len()];
            for (p, &w) in rot.iter().enumerate() {
                let i = nbrs
                    .binary_search(&w)
                    .map_err(|_| Error::Validation(format!("rotation at {v} names non-neighbour {w}")))?;
                if pos[i] != usize::MAX {
                    return Err(Error::Validation(format!("rotation at {v} repeats {w}")));
                }
                pos[i] = p;
            }
            rot_pos.push(pos);
        }
        let mut emb = PlanarEmbedding {
            graph,
            rotation,
            rot_pos,
            faces: Vec::new(),
            dart_face: Vec::new(),
            outer_face: 0,
        };
        emb.trace_faces();
        let euler_ok = {
            let comps = emb.graph.components().len();
            emb.graph.n() + emb.faces.len() == emb.graph.m() + 2 * comps
        };
        if !euler_ok {
            return Err(Error::Validation("rotation system is not a plane embedding".into()));
        }
        emb.outer_face = (0..emb.faces.len())
            .max_by(|&a, &b| emb.faces[a].len().cmp(&emb.faces[b].len()).then(b.cmp(&a)))
            .unwrap_or(0);
        Ok(emb)
    }

    fn trace_faces(&mut self) {
        let n = self.graph.n();
        let mut dart_face: Vec<Vec<usize>> =
            (0..n).map(|v| vec![usize::MAX; self.graph.degree(v)]).collect();
        let mut faces = Vec::new();
        for v in 0..n {
            if self.graph.degree(v) == 0 {
                faces.push(vec![v]);
                continue;
            }
            for &start in &self.rotation[v] {
                let si = self.adj_index(v, start);
                if dart_face[v][si] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut walk = Vec::new();
                let (mut a, mut b) = (v, start);
                loop {
                    let ai = self.adj_index(a, b);
                    if dart_face[a][ai] != usize::MAX {
                        break;
                    }
                    dart_face[a][ai] = id;
                    walk.push(a);
                    let next = self.next_around(b, a);
                    a = b;
                    b = next;
                }
                faces.push(walk);
            }
        }
        self.faces = faces;
        self.dart_face = dart_face;
    }

    fn adj_index(&self, v: VertexId, w: VertexId) -> usize {
        self.graph
            .neighbors(v)
            .binary_search(&w)
            .expect("dart between adjacent vertices")
    }

    /// The neighbour following `w` in the rotation of `v`.
    pub fn next_around(&self, v: VertexId, w: VertexId) -> VertexId {
        let p = self.rot_pos[v][self.adj_index(v, w)];
        let rot = &self.rotation[v];
        rot[(p + 1) % rot.len()]
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<VertexId>] {
        &self.rotation
    }

    /// Every face as the cyclic sequence of dart tails along its boundary walk.
    pub fn faces(&self) -> &[Vec<VertexId>] {
        &self.faces
    }

    /// Face containing the dart `u -> v`.
    pub fn face_of_dart(&self, u: VertexId, v: VertexId) -> usize {
        self.dart_face[u][self.adj_index(u, v)]
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    pub fn set_outer_face(&mut self, face: usize) -> Result<()> {
        if face >= self.faces.len() {
            return Err(Error::Validation(format!("face {face} does not exist")));
        }
        self.outer_face = face;
        Ok(())
    }

    /// Restricts the embedding to the subgraph induced by `keep`; local vertex
    /// `i` is `keep[i]`. The outer face is reselected by `from_rotation`.
    pub fn restrict(&self, keep: &[VertexId]) -> Result<PlanarEmbedding> {
        let mut local = vec![usize::MAX; self.graph.n()];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let graph = self.graph.induced(keep);
        let rotation = keep
            .iter()
            .map(|&v| {
                self.rotation[v]
                    .iter()
                    .filter(|&&w| local[w] != usize::MAX)
                    .map(|&w| local[w])
                    .collect()
            })
            .collect();
        PlanarEmbedding::from_rotation(graph, rotation)
    }
}

/// Computes a plane embedding of `g`, or reports that none exists.
pub fn planar_embed(g: &Graph) -> Result<PlanarEmbedding> {
    let rotation = lr_planar_rotation(g).ok_or(Error::NonPlanar)?;
    PlanarEmbedding::from_rotation(g.clone(), rotation)
}

/// An embedding in which every face, the outer one included, is a triangle
/// on three distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    embedding: PlanarEmbedding,
    original: usize,
}

impl Triangulation {
    /// Wraps an embedding after checking that all faces are triangles.
    /// Vertices `0..original` are the input graph's vertices.
    pub fn new(embedding: PlanarEmbedding, original: usize) -> Result<Self> {
        let n = embedding.graph().n();
        if n < 3 {
            return Err(Error::Validation(format!("triangulation needs 3 vertices, got {n}")));
        }
        if original > n {
            return Err(Error::Validation("more original vertices than vertices".into()));
        }
        for face in embedding.faces() {
            let distinct = face.len() == 3 && face[0] != face[1] && face[1] != face[2] && face[0] != face[2];
            if !distinct {
                return Err(Error::Validation(format!("face {face:?} is not a triangle")));
            }
        }
        Ok(Triangulation { embedding, original })
    }

    pub fn embedding(&self) -> &PlanarEmbedding {
        &self.embedding
    }

    pub fn graph(&self) -> &Graph {
        self.embedding.graph()
    }

    pub fn n(&self) -> usize {
        self.graph().n()
    }

    /// Number of input vertices; they occupy ids `0..original_count()`.
    pub fn original_count(&self) -> usize {
        self.original
    }

    /// Vertices of the outer face in boundary order.
    pub fn outer(&self) -> [VertexId; 3] {
        let f = &self.embedding.faces()[self.embedding.outer_face()];
        [f[0], f[1], f[2]]
    }

    /// Faces other than the outer one.
    pub fn inner_faces(&self) -> impl Iterator<Item = &[VertexId]> + '_ {
        let outer = self.embedding.outer_face();
        self.embedding
            .faces()
            .iter()
            .enumerate()
            .filter(move |(i, _)| *i != outer)
            .map(|(_, f)| f.as_slice())
    }

    /// Restriction to `keep` with the outer face set to the face bounded by
    /// `outer`, which must be a face of the restriction.
    pub fn restrict(&self, keep: &[VertexId], outer: [VertexId; 3]) -> Result<(Triangulation, Vec<VertexId>)> {
        let mut emb = self.embedding.restrict(keep)?;
        let local = |v: VertexId| keep.iter().position(|&k| k == v);
        let [a, b, c] = outer.map(local);
        let (Some(a), Some(b), Some(c)) = (a, b, c) else {
            return Err(Error::Validation("outer triangle not kept".into()));
        };
        let mut want = [a, b, c];
        want.sort_unstable();
        let face = emb
            .faces()
            .iter()
            .position(|f| {
                let mut s = f.clone();
                s.sort_unstable();
                s == want
            })
            .ok_or_else(|| Error::Validation(format!("{outer:?} is not a face of the restriction")))?;
        emb.set_outer_face(face)?;
        let original = keep.iter().filter(|&&v| v < self.original).count();
        Ok((Triangulation::new(emb, original)?, keep.to_vec()))
    }
}

/// Adds new vertices until `g` is connected and has at least three
/// vertices. New vertices never create edges among existing ones.
pub fn augment_connected(g: &Graph) -> Graph {
    let mut h = g.clone();
    let comps = g.components();
    if comps.len() > 1 {
        let hub = h.add_vertex();
        for comp in &comps {
            h.add_edge(hub, comp[0]).expect("hub edge");
        }
    }
    while h.n() < 3 {
        let existing = h.n();
        let v = h.add_vertex();
        for u in 0..existing {
            h.add_edge(v, u).expect("padding edge");
        }
    }
    h
}

/// Extends a plane embedding to a triangulation in which the original
/// vertices still induce the original graph.
///
/// Non-triangular faces bounded by a simple cycle receive one new vertex
/// joined to every boundary vertex. Faces whose boundary walk repeats a
/// vertex first get a ring of new vertices, one per walk edge, so that the
/// remaining hole is a simple cycle of new vertices. Before that hole is
/// filled, chords between ring vertices cut off each pocket of the walk
/// between two visits of the same vertex `v`: the chord and `v` form a
/// separating triangle, which keeps the 4-connected pieces small.
pub fn triangulate_induced(e: &PlanarEmbedding) -> Result<Triangulation> {
    let original = e.graph().n();
    let mut emb = if e.graph().is_connected() && original >= 3 {
        e.clone()
    } else {
        planar_embed(&augment_connected(e.graph()))?
    };

    // the outer face is the triangle sitting on the first dart of the
    // longest face of the (augmented) embedding
    let outer_dart = {
        let f = &emb.faces()[emb.outer_face()];
        (f[0], f[1 % f.len()])
    };

    let mut graph = emb.graph().clone();
    let mut rotation = emb.rotations().to_vec();
    let mut chords: Vec<(VertexId, VertexId)> = Vec::new();
    loop {
        let faces: Vec<Vec<VertexId>> = emb.faces().iter().filter(|f| f.len() > 3).cloned().collect();
        if faces.is_empty() {
            break;
        }
        for walk in &faces {
            let mut sorted = walk.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() == walk.len() {
                for part in split_by_chords(&mut graph, &mut rotation, walk, &chords) {
                    if part.len() > 3 {
                        stellate(&mut graph, &mut rotation, &part);
                    }
                }
            } else {
                chords.extend(ring(&mut graph, &mut rotation, walk));
            }
        }
        emb = PlanarEmbedding::from_rotation(graph.clone(), rotation.clone())?;
    }
    let outer = emb.face_of_dart(outer_dart.0, outer_dart.1);
    emb.set_outer_face(outer)?;
    Triangulation::new(emb, original)
}

fn insert_after(rot: &mut Vec<VertexId>, anchor: VertexId, items: &[VertexId]) {
    let p = rot.iter().position(|&w| w == anchor).expect("anchor in rotation");
    for (k, &x) in items.iter().enumerate() {
        rot.insert(p + 1 + k, x);
    }
}

fn stellate(graph: &mut Graph, rotation: &mut Vec<Vec<VertexId>>, walk: &[VertexId]) {
    let k = walk.len();
    let s = graph.add_vertex();
    for &c in walk {
        graph.add_edge(s, c).expect("stellation edge");
    }
    for i in 0..k {
        let (prev, cur) = (walk[i], walk[(i + 1) % k]);
        insert_after(&mut rotation[cur], prev, &[s]);
    }
    rotation.push(walk.iter().rev().copied().collect());
}

/// Splits the simple face `walk` along every planned chord with both ends on
/// it; returns the resulting faces.
fn split_by_chords(
    graph: &mut Graph,
    rotation: &mut [Vec<VertexId>],
    walk: &[VertexId],
    chords: &[(VertexId, VertexId)],
) -> Vec<Vec<VertexId>> {
    let mut parts = vec![walk.to_vec()];
    for &(a, b) in chords {
        let Some(k) = parts.iter().position(|f| f.contains(&a) && f.contains(&b)) else {
            continue;
        };
        let f = &parts[k];
        let len = f.len();
        let i = f.iter().position(|&v| v == a).expect("on face");
        let j = f.iter().position(|&v| v == b).expect("on face");
        let (i, j) = (i.min(j), i.max(j));
        if j - i == 1 || (i == 0 && j == len - 1) || graph.has_edge(f[i], f[j]) {
            continue;
        }
        let (u, v) = (f[i], f[j]);
        // dart f[i-1] -> u is followed by u -> f[i+1]; put v between them
        insert_after(&mut rotation[u], f[(i + len - 1) % len], &[v]);
        insert_after(&mut rotation[v], f[j - 1], &[u]);
        graph.add_edge(u, v).expect("chord between new vertices");
        let inner: Vec<VertexId> = f[i..=j].to_vec();
        let outer: Vec<VertexId> = f[j..].iter().chain(&f[..=i]).copied().collect();
        parts[k] = inner;
        parts.push(outer);
    }
    parts
}

/// Rings the face `walk`; returns the chords planned for the hole.
fn ring(graph: &mut Graph, rotation: &mut Vec<Vec<VertexId>>, walk: &[VertexId]) -> Vec<(VertexId, VertexId)> {
    let k = walk.len();
    let first = graph.n();
    let r = |i: usize| first + (i % k);
    for _ in 0..k {
        graph.add_vertex();
    }
    for i in 0..k {
        graph.add_edge(r(i), walk[i]).expect("ring edge");
        graph.add_edge(r(i), walk[(i + 1) % k]).expect("ring edge");
        graph.add_edge(r(i), r(i + 1)).expect("ring edge");
    }
    for i in 0..k {
        let (prev, cur) = (walk[i], walk[(i + 1) % k]);
        insert_after(&mut rotation[cur], prev, &[r(i), r(i + 1)]);
    }
    for i in 0..k {
        rotation.push(vec![walk[(i + 1) % k], walk[i], r(i + k - 1), r(i + 1)]);
    }
    // r(i) sits on walk edge i; between consecutive visits p < q of a vertex,
    // r(p) and r(q - 1) both touch it
    let mut visits: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for (i, &v) in walk.iter().enumerate() {
        visits.entry(v).or_default().push(i);
    }
    let mut planned: Vec<(usize, usize)> = Vec::new();
    for ps in visits.values().filter(|ps| ps.len() > 1) {
        for (t, &p) in ps.iter().enumerate() {
            let q = if t + 1 < ps.len() { ps[t + 1] } else { ps[0] + k };
            let (a, b) = (p, q - 1);
            if b - a < 2 || (a + k - b) % k < 2 {
                continue;
            }
            let (a, b) = (a % k, b % k);
            let (a, b) = (a.min(b), a.max(b));
            let crosses = |&(c, d): &(usize, usize)| (a < c && c < b && b < d) || (c < a && a < d && d < b);
            if !planned.contains(&(a, b)) && !planned.iter().any(crosses) {
                planned.push((a, b));
            }
        }
    }
    planned.into_iter().map(|(a, b)| (r(a), r(b))).collect()
}

/// Whether `g`, the graph of a triangulation on at least four vertices, has
/// no vertex cut of size at most three. K4 counts as 4-connected.
pub fn is_four_connected(g: &Graph) -> Result<bool> {
    let n = g.n();
    if n < 4 {
        return Err(Error::Validation(format!("4-connectivity needs n >= 4, got {n}")));
    }
    if n == 4 {
        return Ok(g.m() == 6);
    }
    Ok(separating_triangle(g).is_none() && g.is_connected() && min_cut_at_least_four_small(g))
}

/// A 3-clique whose removal disconnects `g`, if one exists.
pub fn separating_triangle(g: &Graph) -> Option<[VertexId; 3]> {
    g.triangles().into_iter().find(|t| !g.is_connected_without(t))
}

// For triangulations every minimal separator of size <= 3 is a separating
// triangle; other graphs get a brute-force check over small vertex sets.
fn min_cut_at_least_four_small(g: &Graph) -> bool {
    let n = g.n();
    if g.m() == 3 * n - 6 {
        return true;
    }
    for a in 0..n {
        if !g.is_connected_without(&[a]) {
            return false;
        }
        for b in a + 1..n {
            if !g.is_connected_without(&[a, b]) {
                return false;
            }
            for c in b + 1..n {
                if !g.is_connected_without(&[a, b, c]) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn euler_ok(e: &PlanarEmbedding) {
        let g = e.graph();
        let total: usize = e.faces().iter().filter(|f| f.len() > 1 || g.degree(f[0]) > 0).map(Vec::len).sum();
        assert_eq!(total, 2 * g.m());
    }

    #[test]
    fn k4_has_four_faces() {
        let e = planar_embed(&Graph::complete(4)).unwrap();
        assert_eq!(e.faces().len(), 4);
        assert!(e.faces().iter().all(|f| f.len() == 3));
        assert_eq!(4 + e.faces().len(), 6 + 2);
        euler_ok(&e);
    }

    #[test]
    fn k5_and_k33_rejected() {
        assert_eq!(planar_embed(&Graph::complete(5)), Err(Error::NonPlanar));
        let k33 = Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
        assert_eq!(planar_embed(&k33), Err(Error::NonPlanar));
        // Petersen graph: sparse enough to pass the edge-count filter
        let petersen = Graph::from_edges(
            10,
            [
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        )
        .unwrap();
        assert_eq!(planar_embed(&petersen), Err(Error::NonPlanar));
    }

    #[test]
    fn single_edge_one_face() {
        let e = planar_embed(&Graph::from_edges(2, [(0, 1)]).unwrap()).unwrap();
        assert_eq!(e.faces().len(), 1);
    }

    #[test]
    fn triangle_and_c4_faces() {
        let e = planar_embed(&Graph::complete(3)).unwrap();
        assert_eq!(e.faces().len(), 2);
        for f in e.faces() {
            let mut s = f.clone();
            s.sort();
            assert_eq!(s, vec![0, 1, 2]);
        }
        let c4 = planar_embed(&Graph::cycle(4)).unwrap();
        assert_eq!(c4.faces().len(), 2);
        assert!(c4.faces().iter().all(|f| f.len() == 4));
    }

    #[test]
    fn named_triangulations_embed() {
        for g in [named::octahedron(), named::icosahedron(), named::stack5()] {
            let e = planar_embed(&g).unwrap();
            assert_eq!(e.faces().len(), 2 * g.n() - 4);
            assert!(e.faces().iter().all(|f| f.len() == 3));
        }
    }

    #[test]
    fn embedding_is_deterministic() {
        let g = named::icosahedron();
        assert_eq!(planar_embed(&g).unwrap(), planar_embed(&g).unwrap());
    }

    #[test]
    fn triangulate_keeps_triangle() {
        let e = planar_embed(&Graph::complete(3)).unwrap();
        let t = triangulate_induced(&e).unwrap();
        assert_eq!(t.n(), 3);
        let t4 = triangulate_induced(&planar_embed(&Graph::complete(4)).unwrap()).unwrap();
        assert_eq!(t4.n(), 4);
    }

    #[test]
    fn triangulate_c4() {
        let e = planar_embed(&Graph::cycle(4)).unwrap();
        let t = triangulate_induced(&e).unwrap();
        assert_eq!(t.n(), 6);
        assert_eq!(t.graph().m(), 3 * 6 - 6);
        assert_eq!(t.graph().induced(&[0, 1, 2, 3]), Graph::cycle(4));
        assert!(!t.graph().has_edge(0, 2) && !t.graph().has_edge(1, 3));
    }

    #[test]
    fn triangulate_trees_and_disconnected() {
        let cases = [
            Graph::new(1),
            Graph::from_edges(2, [(0, 1)]).unwrap(),
            Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap(),
            Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (4, 5)]).unwrap(),
            Graph::new(5),
        ];
        for g in cases {
            let e = planar_embed(&g).unwrap();
            let t = triangulate_induced(&e).unwrap();
            let n = t.n();
            assert_eq!(t.graph().m(), 3 * n - 6, "{g:?}");
            let orig: Vec<_> = (0..g.n()).collect();
            assert_eq!(t.graph().induced(&orig), g);
        }
    }

    #[test]
    fn four_connectivity() {
        assert!(is_four_connected(&named::octahedron()).unwrap());
        assert!(is_four_connected(&named::icosahedron()).unwrap());
        assert!(is_four_connected(&Graph::complete(4)).unwrap());
        assert!(!is_four_connected(&named::stack5()).unwrap());
        assert!(is_four_connected(&Graph::complete(3)).is_err());
    }
}
