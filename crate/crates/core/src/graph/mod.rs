//! Multigraphs with loops and parallel edges.
//!
//! Edges are stored as a list of unordered vertex pairs; a parallel edge is a
//! repeated pair and a loop is a pair `(v, v)`. Every edge has two half-edges,
//! addressed as `(edge index, side)` where side 0 sits at the first endpoint.

mod generators;
mod iso;

pub use generators::{generate, Family, Platonic};
pub use iso::{canonical_form, isomorphic, CanonicalForm};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {edge} refers to vertex {vertex}, but the graph has {vertices} vertices")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        vertices: usize,
    },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("graph has no vertices")]
    Empty,
    #[error("invalid graph json: {0}")]
    Json(String),
}

/// One endpoint slot of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdge {
    pub edge: usize,
    pub side: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    incidence: Vec<Vec<HalfEdge>>,
}

impl MultiGraph {
    /// Builds a graph; each pair is normalized to `(min, max)` but edge order is kept.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut normalized = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        edge: i,
                        vertex: w,
                        vertices: vertex_count,
                    });
                }
            }
            normalized.push((u.min(v), u.max(v)));
        }
        let mut incidence = vec![Vec::new(); vertex_count];
        for (i, &(u, v)) in normalized.iter().enumerate() {
            incidence[u].push(HalfEdge { edge: i, side: 0 });
            incidence[v].push(HalfEdge { edge: i, side: 1 });
        }
        Ok(MultiGraph {
            vertex_count,
            edges: normalized,
            incidence,
        })
    }

    /// Same as [`MultiGraph::new`] followed by sorting the edge list.
    pub fn with_sorted_edges(
        vertex_count: usize,
        mut edges: Vec<(usize, usize)>,
    ) -> Result<Self, GraphError> {
        for e in edges.iter_mut() {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        MultiGraph::new(vertex_count, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.edges[index]
    }

    /// Vertex carrying the given half-edge.
    pub fn endpoint(&self, half: HalfEdge) -> usize {
        let (u, v) = self.edges[half.edge];
        if half.side == 0 {
            u
        } else {
            v
        }
    }

    /// Half-edges at `v`; a loop contributes two.
    pub fn incident(&self, v: usize) -> &[HalfEdge] {
        &self.incidence[v]
    }

    pub fn half_edges(&self) -> impl Iterator<Item = (usize, HalfEdge)> + '_ {
        (0..self.vertex_count).flat_map(move |v| self.incidence[v].iter().map(move |h| (v, *h)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count).map(|v| self.degree(v)).collect()
    }

    /// Degrees sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn loop_count(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v && b == v).count()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        if self.has_loops() {
            return false;
        }
        let distinct: BTreeSet<&(usize, usize)> = self.edges.iter().collect();
        distinct.len() == self.edges.len()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    /// Connectivity; loops do not connect anything. The empty graph counts as disconnected.
    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.vertex_count;
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components == 1
    }

    /// Symmetric multiplicity matrix; loops are counted once on the diagonal.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![vec![0u32; self.vertex_count]; self.vertex_count];
        for &(u, v) in &self.edges {
            if u == v {
                adj[u][u] += 1;
            } else {
                adj[u][v] += 1;
                adj[v][u] += 1;
            }
        }
        adj
    }

    /// Edge multiset as a sorted list of normalized pairs.
    pub fn edge_multiset(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    /// Relabels vertices: vertex `v` becomes `mapping[v]`.
    pub fn relabeled(&self, mapping: &[usize]) -> MultiGraph {
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (mapping[u], mapping[v]))
            .collect();
        MultiGraph::new(self.vertex_count, edges).expect("mapping is a permutation")
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.vertex_count,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json_str(text: &str) -> Result<MultiGraph, GraphError> {
        let json: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        json.into_graph()
    }
}

/// `{"vertices": n, "edges": [[0,1],[1,1],...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphJson {
    pub fn into_graph(self) -> Result<MultiGraph, GraphError> {
        MultiGraph::new(self.vertices, self.edges.iter().map(|e| (e[0], e[1])).collect())
    }
}

/// Lengths of the valency sequence and of its odd and even parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValencyStats {
    pub av: usize,
    pub ov: usize,
    pub ev: usize,
}

pub fn valency_stats(graph: &MultiGraph) -> Result<ValencyStats, GraphError> {
    if graph.vertex_count() == 0 {
        return Err(GraphError::Empty);
    }
    let distinct: BTreeSet<usize> = graph.degrees().into_iter().collect();
    let ov = distinct.iter().filter(|d| *d % 2 == 1).count();
    Ok(ValencyStats {
        av: distinct.len(),
        ov,
        ev: distinct.len() - ov,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loops_count_twice_in_degree() {
        let g = MultiGraph::new(2, vec![(0, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.degrees(), vec![4, 2]);
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        assert_eq!(g.loop_count(0), 1);
        assert_eq!(g.multiplicity(1, 0), 2);
        assert!(!g.is_simple());
        assert!(g.is_connected());
    }

    #[test]
    fn loops_do_not_connect() {
        let g = MultiGraph::new(2, vec![(0, 0), (1, 1)]).unwrap();
        assert!(!g.is_connected());
        let single = MultiGraph::new(1, vec![(0, 0)]).unwrap();
        assert!(single.is_connected());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(
            MultiGraph::new(2, vec![(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"vertices": 3, "edges": [[0,1],[1,1],[2,1]]}"#;
        let g = MultiGraph::from_json_str(text).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 1), (1, 2)]);
        let back = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(MultiGraph::from_json_str(&back).unwrap(), g);
    }

    #[test]
    fn valency_examples() {
        let lattice = generate(&Family::SquareLattice { rows: 5, cols: 5 }).unwrap();
        assert_eq!(
            valency_stats(&lattice).unwrap(),
            ValencyStats { av: 3, ov: 1, ev: 2 }
        );
        let octa = generate(&Family::Platonic(Platonic::Octahedron)).unwrap();
        assert_eq!(
            valency_stats(&octa).unwrap(),
            ValencyStats { av: 1, ov: 0, ev: 1 }
        );
        let tube = generate(&Family::SquareTube { rows: 4, cols: 5 }).unwrap();
        assert_eq!(
            valency_stats(&tube).unwrap(),
            ValencyStats { av: 2, ov: 1, ev: 1 }
        );
        let empty = MultiGraph::new(0, vec![]).unwrap();
        assert_eq!(valency_stats(&empty), Err(GraphError::Empty));
    }
}
