use proptest::prelude::*;
use tilepot::pot::{parse_pot, CohesiveEnd, Pot, Tile};
use tilepot::spectrum::*;
use tilepot::BondSymbol;

/// Brute force: every count vector with total `k`, checked against the balance rows.
fn oracle_feasible(pot: &Pot, k: u64) -> Vec<Vec<u64>> {
    let p = pot.len();
    let mut out = Vec::new();
    let mut counts = vec![0u64; p];
    fn rec(pot: &Pot, counts: &mut Vec<u64>, i: usize, left: u64, out: &mut Vec<Vec<u64>>) {
        if i + 1 == counts.len() {
            counts[i] = left;
            let ok = pot.symbols().iter().all(|a| {
                pot.tiles()
                    .iter()
                    .zip(counts.iter())
                    .map(|(t, &r)| t.net_count(a) * r as i64)
                    .sum::<i64>()
                    == 0
            });
            if ok {
                out.push(counts.clone());
            }
            return;
        }
        for v in 0..=left {
            counts[i] = v;
            rec(pot, counts, i + 1, left - v, out);
        }
    }
    rec(pot, &mut counts, 0, k, &mut out);
    out
}

fn pot(text: &str) -> Pot {
    parse_pot(text).unwrap()
}

#[test]
fn cube_pot_spectra() {
    let s2 = pot("a,b,b ; a,a,^b ; a,^a,^a");
    let m = min_order(&s2, 16, false).unwrap();
    assert_eq!(m.witnesses, vec![OrderWitness { order: 8, counts: vec![1, 2, 5] }]);
    assert_eq!(oracle_feasible(&s2, 8), vec![vec![1, 2, 5]]);
    for k in 1..8 {
        assert!(oracle_feasible(&s2, k).is_empty());
    }
}

#[test]
fn lattice_example_agrees_with_oracle() {
    let p = pot("a,b ; a,^b ; ^a,^a,b ; ^a,^a,^b");
    for k in 1..=12 {
        let mine = count_vectors(&p, k, &mut tilepot::Budget::unlimited()).unwrap();
        assert_eq!(mine, oracle_feasible(&p, k), "k = {k}");
    }
}

fn arb_tile(symbols: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0..symbols, any::<bool>()), 1..=4)
}

/// Random pots of up to four tiles of arity at most four, closed by adding
/// complement tiles when needed.
fn arb_pot() -> impl Strategy<Value = Pot> {
    (1usize..=2)
        .prop_flat_map(|s| prop::collection::vec(arb_tile(s), 1..=4))
        .prop_filter_map("closure", |tiles| {
            let names = ["a", "b"];
            let built: Vec<Tile> = tiles
                .iter()
                .map(|t| {
                    Tile::new(
                        t.iter()
                            .map(|&(s, hat)| {
                                let sym = BondSymbol::new(names[s]).unwrap();
                                if hat {
                                    CohesiveEnd::hatted(sym)
                                } else {
                                    CohesiveEnd::unhatted(sym)
                                }
                            })
                            .collect(),
                    )
                    .unwrap()
                })
                .collect();
            Pot::new(built).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn min_order_agrees_with_feasibility(p in arb_pot()) {
        let least = (1..=12u64).find(|&k| !oracle_feasible(&p, k).is_empty());
        for k in 1..=12u64 {
            let w = integer_feasible_at(&p, k);
            let brute = oracle_feasible(&p, k);
            prop_assert_eq!(w.map(|w| w.counts), brute.first().cloned());
        }
        let m = min_order(&p, 12, true).unwrap();
        prop_assert_eq!(m.minimum(), least);
        for w in &m.witnesses {
            prop_assert!(balance_holds(&p, &w.counts));
            prop_assert_eq!(w.counts.iter().sum::<u64>(), w.order);
        }
    }

    #[test]
    fn spectrum_points_solve_the_matrix(p in arb_pot()) {
        let s = spectrum(&p);
        let m = construction_matrix(&p);
        let a = RationalMatrix::from_integers(&m.rows);
        if s.consistent {
            let zero_free = vec![rational(0); s.free_count()];
            let base = a.mul_vec(&s.point(&zero_free));
            let want: Vec<Rational> = m.rhs.iter().map(|&b| rational(b)).collect();
            prop_assert_eq!(base, want.clone());
            for j in 0..s.free_count() {
                let mut t = zero_free.clone();
                t[j] = ratio(1, 3);
                prop_assert_eq!(a.mul_vec(&s.point(&t)), want.clone());
            }
        }
    }

    #[test]
    fn rref_is_idempotent(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 1..5)) {
        let m = RationalMatrix::from_integers(&rows);
        let (r, pivots) = rref(&m);
        let (rr, pivots2) = rref(&r);
        prop_assert_eq!(&r, &rr);
        prop_assert_eq!(pivots, pivots2);
    }
}
