use std::collections::BTreeSet;

use proptest::prelude::*;

use tilepot::graph::{canonical_form, CanonicalForm};
use tilepot::realize::{enumerate_realizable, find_realization, verify_design};
use tilepot::spectrum::balance_holds;
use tilepot::{Budget, CohesiveEnd, MultiGraph, Pot, Tile};

/// Every assembly of `n` tiles by matching half-edges directly, up to isomorphism.
fn naive_outputs(pot: &Pot, n: usize) -> BTreeSet<CanonicalForm> {
    let mut out = BTreeSet::new();
    let mut choice = Vec::new();
    multisets(pot.len(), n, 0, &mut choice, &mut |tiles| {
        let mut halves: Vec<(usize, &CohesiveEnd)> = Vec::new();
        for (v, &t) in tiles.iter().enumerate() {
            for e in pot.tile(t).ends() {
                halves.push((v, e));
            }
        }
        let mut used = vec![false; halves.len()];
        let mut edges = Vec::new();
        matchings(&halves, &mut used, &mut edges, &mut |edges| {
            let g = MultiGraph::new(n, edges.to_vec()).unwrap();
            out.insert(canonical_form(&g).0);
        });
    });
    out
}

fn multisets(p: usize, n: usize, from: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == n {
        f(cur);
        return;
    }
    for t in from..p {
        cur.push(t);
        multisets(p, n, t, cur, f);
        cur.pop();
    }
}

fn matchings(
    halves: &[(usize, &CohesiveEnd)],
    used: &mut [bool],
    edges: &mut Vec<(usize, usize)>,
    f: &mut dyn FnMut(&[(usize, usize)]),
) {
    let Some(i) = used.iter().position(|u| !u) else {
        f(edges);
        return;
    };
    used[i] = true;
    for j in i + 1..halves.len() {
        if !used[j] && halves[j].1 == &halves[i].1.complement() {
            used[j] = true;
            edges.push((halves[i].0, halves[j].0));
            matchings(halves, used, edges, f);
            edges.pop();
            used[j] = false;
        }
    }
    used[i] = false;
}

fn small_pot() -> impl Strategy<Value = Pot> {
    let end = (0u8..2, any::<bool>()).prop_map(|(s, hat)| {
        let sym = tilepot::BondSymbol::new(["a", "b"][s as usize]).unwrap();
        if hat {
            CohesiveEnd::hatted(sym)
        } else {
            CohesiveEnd::unhatted(sym)
        }
    });
    prop::collection::vec(prop::collection::vec(end, 1..=3), 1..=3)
        .prop_filter_map("pot must be closed", |tiles| {
            Pot::new(tiles.into_iter().map(|t| Tile::new(t).unwrap()).collect()).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn enumeration_matches_naive_matching(pot in small_pot(), n in 1usize..=5) {
        let expected = naive_outputs(&pot, n);
        let e = enumerate_realizable(&pot, n as u64, false, &mut Budget::default()).unwrap();
        prop_assert!(e.complete);
        let got: BTreeSet<CanonicalForm> = e.graphs.iter().map(|g| g.form.clone()).collect();
        prop_assert_eq!(&got, &expected);
        for g in &e.graphs {
            prop_assert_eq!(verify_design(&g.graph, &g.certificate.design, &pot), Ok(true));
            prop_assert!(balance_holds(&pot, &g.certificate.counts));
            prop_assert!(find_realization(&pot, &g.graph, &mut Budget::default()).unwrap().is_some());
        }
    }

    #[test]
    fn realization_matches_naive_outputs(
        pot in small_pot(),
        n in 1usize..=4,
        raw in prop::collection::vec((0usize..4, 0usize..4), 1..=6),
    ) {
        let edges: Vec<(usize, usize)> = raw.into_iter().map(|(u, v)| (u % n, v % n)).collect();
        let g = MultiGraph::new(n, edges).unwrap();
        let expected = naive_outputs(&pot, n).contains(&canonical_form(&g).0);
        let got = find_realization(&pot, &g, &mut Budget::default()).unwrap();
        prop_assert_eq!(got.is_some(), expected);
        if let Some(cert) = got {
            prop_assert_eq!(verify_design(&g, &cert.design, &pot), Ok(true));
        }
    }
}
