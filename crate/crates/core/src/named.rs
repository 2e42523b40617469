//! Small named graphs used as fixtures and in the self-test corpus.

use crate::graph::Graph;

/// Octahedron with outer triangle `0 1 2`, inner triangle `3 4 5`, and the
/// non-edges `0-3`, `1-4`, `2-5`.
pub fn octahedron() -> Graph {
    let mut edges = vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
    for a in 0..3 {
        for b in 3..6 {
            if b != a + 3 {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(6, edges).unwrap()
}

/// Icosahedron: apex 0, upper ring 1..=5, lower ring 6..=10, apex 11.
pub fn icosahedron() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        let up = 1 + i;
        let up_next = 1 + (i + 1) % 5;
        let low = 6 + i;
        let low_next = 6 + (i + 1) % 5;
        edges.extend([(0, up), (up, up_next), (low, low_next), (11, low), (up, low), (up, low_next)]);
    }
    Graph::from_edges(12, edges).unwrap()
}

/// K4 on `0 1 2 3` with vertex 4 stacked into the face `0 1 3`.
pub fn stack5() -> Graph {
    Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 0), (4, 1), (4, 3)]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!((octahedron().n(), octahedron().m()), (6, 12));
        assert_eq!((icosahedron().n(), icosahedron().m()), (12, 30));
        assert!((0..12).all(|v| icosahedron().degree(v) == 5));
        assert_eq!(stack5().m(), 9);
    }
}
