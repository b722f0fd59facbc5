use std::time::Instant;

use tilepot::graph::canonical_form;
use tilepot::realize::find_realization;
use tilepot::reduction::{prp_pot, subdivided_target, three_colorable, Variant};
use tilepot::{Budget, MultiGraph};

/// Connected simple graphs on `n` vertices, one per isomorphism class.
fn connected_graphs(n: usize) -> Vec<MultiGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<_> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        let g = MultiGraph::new(n, edges).unwrap();
        if g.edge_count() == 0 || !g.is_connected() {
            continue;
        }
        if seen.insert(canonical_form(&g).0) {
            out.push(g);
        }
    }
    out
}

#[test]
fn class_counts() {
    let counts: Vec<usize> = (2..=5).map(|n| connected_graphs(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 6, 21]);
}

#[test]
fn prp_matches_three_coloring() {
    let start = Instant::now();
    for n in 2..=5 {
        for g in connected_graphs(n) {
            let a = prp_pot(&g).unwrap();
            assert_eq!(a.pot.len(), 3 * g.vertex_count() + 6 * g.edge_count());
            let t = subdivided_target(&g, Variant::Prp).unwrap();
            assert_eq!(t.vertex_count(), a.target_order);
            let realized = find_realization(&a.pot, &t, &mut Budget::default())
                .unwrap()
                .is_some();
            assert_eq!(realized, three_colorable(&g).is_some(), "{:?}", g.edges());
        }
    }
    eprintln!("prp biconditional: {:?}", start.elapsed());
}
