use proptest::prelude::*;

use tilepot::graph::{generate, Family, Platonic};
use tilepot::pot::collapse_bonds;
use tilepot::realize::{assembling_pot, enumerate_realizable, find_realization, AssemblyDesign};
use tilepot::scenario::{
    check_scenario, find_passing_pot, results_registry, search_optimum, t1_bounds, Limits, OptimaValue,
    Quantity, Verdict, VerificationStatus,
};
use tilepot::{BondSymbol, Budget, MultiGraph};

fn design_case() -> impl Strategy<Value = (MultiGraph, AssemblyDesign)> {
    (1usize..=5)
        .prop_flat_map(|n| prop::collection::vec((0..n, 0..n, 0u8..3, any::<bool>()), 1..=7))
        .prop_map(|raw| {
            let mut used: Vec<usize> = raw.iter().flat_map(|e| [e.0, e.1]).collect();
            used.sort_unstable();
            used.dedup();
            let idx = |v: usize| used.binary_search(&v).unwrap();
            let g = MultiGraph::new(used.len(), raw.iter().map(|e| (idx(e.0), idx(e.1))).collect()).unwrap();
            let labels: Vec<(BondSymbol, usize)> = raw
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let (u, v) = g.edge(i);
                    (BondSymbol::new(["a", "b", "c"][e.2 as usize]).unwrap(), if e.3 { v } else { u })
                })
                .collect();
            let d = AssemblyDesign::oriented(&g, &labels).unwrap();
            (g, d)
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn levels_are_nested((g, d) in design_case()) {
        let p = assembling_pot(&g, &d).unwrap();
        let v: Vec<Verdict> = (1..=3)
            .map(|l| check_scenario(&p, &g, l, &mut Budget::default()).unwrap().verdict)
            .collect();
        prop_assert_eq!(v[0], Verdict::Holds);
        if v[2] == Verdict::Holds {
            prop_assert_eq!(v[1], Verdict::Holds);
        }
    }

    #[test]
    fn scenario_two_matches_smaller_outputs((g, d) in design_case()) {
        let p = assembling_pot(&g, &d).unwrap();
        let n = g.vertex_count() as u64;
        let smaller = (1..n).any(|k| {
            !enumerate_realizable(&p, k, false, &mut Budget::default()).unwrap().graphs.is_empty()
        });
        let r = check_scenario(&p, &g, 2, &mut Budget::default()).unwrap();
        prop_assert_eq!(r.verdict == Verdict::Holds, !smaller);
    }

    #[test]
    fn collapse_keeps_scenario_one((g, d) in design_case()) {
        let p = collapse_bonds(&assembling_pot(&g, &d).unwrap());
        prop_assert!(find_realization(&p, &g, &mut Budget::default()).unwrap().is_some());
    }
}

#[test]
fn t1_lies_within_valency_bounds() {
    let graphs = [
        Family::Complete(4),
        Family::Cycle(5),
        Family::Platonic(Platonic::Octahedron),
        Family::SquareLattice { rows: 2, cols: 3 },
        Family::SquareLattice { rows: 3, cols: 3 },
        Family::TriangleLattice { rows: 2, cols: 3 },
        Family::TriangleTube { rows: 3, cols: 4 },
    ];
    for f in graphs {
        let g = generate(&f).unwrap();
        let (lo, hi) = t1_bounds(&g).unwrap();
        let r = search_optimum(&g, Quantity::T, 1, Limits::default()).unwrap();
        let v = r.value.exact().unwrap_or_else(|| panic!("{f}: {:?}", r.value));
        assert!(lo <= v && v <= hi, "{f}: {v} outside [{lo}, {hi}]");
    }
}

#[test]
fn b1_is_one_for_small_graphs() {
    for f in [Family::Complete(4), Family::Platonic(Platonic::Hexahedron), Family::Cycle(3)] {
        let g = generate(&f).unwrap();
        let r = search_optimum(&g, Quantity::B, 1, Limits::default()).unwrap();
        assert_eq!(r.value, OptimaValue::Exact(1), "{f}");
    }
}

#[test]
fn k4_scenario_three_optima() {
    let g = generate(&Family::Complete(4)).unwrap();
    let limits = Limits { max_tiles: 6, max_bonds: 4, budget: 50_000_000 };
    assert_eq!(search_optimum(&g, Quantity::B, 3, limits).unwrap().value, OptimaValue::Exact(3));
    assert_eq!(search_optimum(&g, Quantity::T, 3, limits).unwrap().value, OptimaValue::Exact(4));
}

#[test]
fn passing_pot_search_agrees_with_optimum() {
    let g = generate(&Family::Platonic(Platonic::Hexahedron)).unwrap();
    let s = find_passing_pot(&g, 2, 3, 2, 50_000_000).unwrap();
    let (p, _) = s.found.expect("a 3-tile, 2-bond pot passes scenario 2");
    assert!(p.len() <= 3 && p.symbol_count() <= 2);
    assert!(check_scenario(&p, &g, 2, &mut Budget::default()).unwrap().holds());
    let s = find_passing_pot(&g, 2, 2, 4, 50_000_000).unwrap();
    assert!(s.complete && s.found.is_none());
}

#[test]
fn registry_witnesses_pass() {
    for e in results_registry().into_iter().filter(|e| e.witness.is_some()) {
        let pot = e.witness_pot().unwrap();
        let r = check_scenario(&pot, &e.build_graph(), e.scenario, &mut Budget::default()).unwrap();
        assert!(r.holds(), "{} {}: {:?}", e.family, e.instance, r.verdict);
    }
}

#[test]
fn registry_verify_witness_only_entries() {
    for e in results_registry().into_iter().filter(|e| e.witness.is_some() && e.search.is_none()) {
        let v = e.verify(100_000_000);
        assert_eq!(v.status, VerificationStatus::Pass, "{} {}: {:?}", e.family, e.instance, v.details);
    }
}

#[test]
fn unsearched_entries_are_out_of_scope() {
    for e in results_registry().into_iter().filter(|e| e.witness.is_none() && e.search.is_none()) {
        assert_eq!(e.verify(1000).status, VerificationStatus::OutOfScope);
    }
}
