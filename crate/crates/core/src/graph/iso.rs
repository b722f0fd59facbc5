//! Canonical labeling by colour refinement and individualization.
//!
//! The search tree is explored completely except for children pruned by
//! automorphisms discovered at earlier leaves. The canonical form is the
//! lexicographically smallest relabeled multiplicity matrix over all leaves.

use super::MultiGraph;

/// Relabeling-invariant description of a multigraph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    vertices: usize,
    /// Upper triangle (diagonal included) of the relabeled multiplicity matrix.
    matrix: Vec<u32>,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }
}

/// Canonical form together with the labeling that produced it:
/// vertex `v` of the input becomes vertex `labeling[v]`.
pub fn canonical_form(graph: &MultiGraph) -> (CanonicalForm, Vec<usize>) {
    let mut search = Search::new(graph);
    let initial = search.initial_colors();
    let mut prefix = Vec::new();
    search.explore(initial, &mut prefix);
    let (matrix, labeling) = search.best.expect("search reaches at least one leaf");
    (
        CanonicalForm {
            vertices: graph.vertex_count(),
            matrix,
        },
        labeling,
    )
}

/// Returns a vertex mapping `g -> h` when the graphs are isomorphic.
pub fn isomorphic(g: &MultiGraph, h: &MultiGraph) -> Option<Vec<usize>> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    if g.degree_sequence() != h.degree_sequence() {
        return None;
    }
    let mut gl: Vec<usize> = (0..g.vertex_count()).map(|v| g.loop_count(v)).collect();
    let mut hl: Vec<usize> = (0..h.vertex_count()).map(|v| h.loop_count(v)).collect();
    gl.sort_unstable();
    hl.sort_unstable();
    if gl != hl {
        return None;
    }
    let (cg, lg) = canonical_form(g);
    let (ch, lh) = canonical_form(h);
    if cg != ch {
        return None;
    }
    let mut inv_h = vec![0; lh.len()];
    for (v, &label) in lh.iter().enumerate() {
        inv_h[label] = v;
    }
    Some(lg.iter().map(|&label| inv_h[label]).collect())
}

struct Search {
    n: usize,
    adj: Vec<Vec<u32>>,
    neighbors: Vec<Vec<usize>>,
    best: Option<(Vec<u32>, Vec<usize>)>,
    first: Option<(Vec<u32>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search {
    fn new(graph: &MultiGraph) -> Self {
        let adj = graph.adjacency();
        let n = graph.vertex_count();
        let neighbors = (0..n)
            .map(|v| (0..n).filter(|&w| w != v && adj[v][w] > 0).collect())
            .collect();
        Search {
            n,
            adj,
            neighbors,
            best: None,
            first: None,
            automorphisms: Vec::new(),
        }
    }

    fn initial_colors(&self) -> Vec<usize> {
        vec![0; self.n]
    }

    /// Equitable refinement; colours stay ranks `0..k` ordered canonically.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut count = distinct(&colors);
        loop {
            let signatures: Vec<(usize, u32, Vec<(usize, u32)>)> = (0..self.n)
                .map(|v| {
                    let mut nb: Vec<(usize, u32)> = self.neighbors[v]
                        .iter()
                        .map(|&w| (colors[w], self.adj[v][w]))
                        .collect();
                    nb.sort_unstable();
                    (colors[v], self.adj[v][v], nb)
                })
                .collect();
            let mut sorted: Vec<&(usize, u32, Vec<(usize, u32)>)> = signatures.iter().collect();
            sorted.sort();
            sorted.dedup();
            colors = signatures
                .iter()
                .map(|s| sorted.binary_search(&s).expect("signature present"))
                .collect();
            let next = sorted.len();
            if next == count {
                return colors;
            }
            count = next;
        }
    }

    fn certificate(&self, labeling: &[usize]) -> Vec<u32> {
        let mut m = vec![vec![0u32; self.n]; self.n];
        for u in 0..self.n {
            for v in 0..self.n {
                m[labeling[u]][labeling[v]] = self.adj[u][v];
            }
        }
        let mut flat = Vec::with_capacity(self.n * (self.n + 1) / 2);
        for (i, row) in m.iter().enumerate() {
            flat.extend_from_slice(&row[i..]);
        }
        flat
    }

    fn explore(&mut self, colors: Vec<usize>, prefix: &mut Vec<usize>) {
        let colors = self.refine(colors);
        let k = distinct(&colors);
        if k == self.n {
            self.leaf(colors);
            return;
        }
        // First non-singleton cell in colour order.
        let mut sizes = vec![0usize; k];
        for &c in &colors {
            sizes[c] += 1;
        }
        let target = (0..k).find(|&c| sizes[c] > 1).expect("not discrete");
        let cell: Vec<usize> = (0..self.n).filter(|&v| colors[v] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.same_orbit(prefix, &explored, v) {
                continue;
            }
            explored.push(v);
            let child: Vec<usize> = colors
                .iter()
                .enumerate()
                .map(|(w, &c)| {
                    if c > target || (c == target && w != v) {
                        c + 1
                    } else {
                        c
                    }
                })
                .collect();
            prefix.push(v);
            self.explore(child, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, labeling: Vec<usize>) {
        let cert = self.certificate(&labeling);
        for reference in [&self.first, &self.best].into_iter().flatten() {
            if reference.0 == cert {
                let mut inv = vec![0; self.n];
                for (v, &l) in reference.1.iter().enumerate() {
                    inv[l] = v;
                }
                let auto: Vec<usize> = labeling.iter().map(|&l| inv[l]).collect();
                if auto.iter().enumerate().any(|(i, &j)| i != j) {
                    self.automorphisms.push(auto);
                }
                break;
            }
        }
        if self.first.is_none() {
            self.first = Some((cert.clone(), labeling.clone()));
        }
        let better = match &self.best {
            None => true,
            Some((b, _)) => cert < *b,
        };
        if better {
            self.best = Some((cert, labeling));
        }
    }

    /// Whether `v` shares an orbit with an explored sibling under the known
    /// automorphisms that fix the prefix pointwise.
    fn same_orbit(&self, prefix: &[usize], explored: &[usize], v: usize) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for auto in &self.automorphisms {
            if prefix.iter().all(|&p| auto[p] == p) {
                any = true;
                for (i, &j) in auto.iter().enumerate() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }
}

fn distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family, Platonic};

    fn permuted(g: &MultiGraph, seed: usize) -> MultiGraph {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        // Deterministic shuffle.
        let mut x = seed as u64 + 12345;
        for i in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (x >> 33) as usize % (i + 1);
            perm.swap(i, j);
        }
        g.relabeled(&perm)
    }

    fn check_witness(g: &MultiGraph, h: &MultiGraph, map: &[usize]) {
        assert_eq!(g.relabeled(map).edge_multiset(), h.edge_multiset());
    }

    #[test]
    fn cube_relabeled() {
        let cube = generate(&Family::Platonic(Platonic::Hexahedron)).unwrap();
        for seed in 0..5 {
            let h = permuted(&cube, seed);
            let map = isomorphic(&cube, &h).expect("isomorphic");
            check_witness(&cube, &h, &map);
        }
    }

    #[test]
    fn lattice_vs_doubled_path() {
        let lattice = generate(&Family::SquareLattice { rows: 2, cols: 3 }).unwrap();
        let other = MultiGraph::new(6, vec![(0, 1), (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (4, 5)])
            .unwrap();
        assert_eq!(lattice.degree_sequence(), other.degree_sequence());
        assert!(isomorphic(&lattice, &other).is_none());
    }

    #[test]
    fn degree_mismatch() {
        let c4 = generate(&Family::Cycle(4)).unwrap();
        let doubled = MultiGraph::new(4, vec![(0, 1), (0, 1), (2, 3), (2, 3)]).unwrap();
        assert!(isomorphic(&c4, &doubled).is_none());
    }

    #[test]
    fn complete_graphs_prune() {
        let k7 = generate(&Family::Complete(7)).unwrap();
        let h = permuted(&k7, 3);
        assert!(isomorphic(&k7, &h).is_some());
    }

    #[test]
    fn loops_matter() {
        let a = MultiGraph::new(2, vec![(0, 0), (0, 1)]).unwrap();
        let b = MultiGraph::new(2, vec![(1, 1), (0, 1)]).unwrap();
        let c = MultiGraph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        check_witness(&a, &b, &isomorphic(&a, &b).unwrap());
        assert!(isomorphic(&a, &c).is_none());
    }

    #[test]
    fn regular_non_isomorphic() {
        // Two 3-regular graphs on 6 vertices: K_{3,3} and the prism.
        let k33 = MultiGraph::new(
            6,
            vec![(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        let prism = MultiGraph::new(
            6,
            vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert!(isomorphic(&k33, &prism).is_none());
        assert_ne!(canonical_form(&k33).0, canonical_form(&prism).0);
    }
}
