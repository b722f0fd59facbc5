//! Backtracking search for an assembly design whose vertex tiles lie in a pot.
//!
//! Variables are edges; a value is a symbol together with the endpoint that
//! carries the unhatted end. Each vertex keeps the pot tiles of matching arity
//! that still dominate the ends already placed on it. The next edge is the one
//! with the fewest remaining values; a branch dies when a vertex runs out of
//! tiles or when some symbol can no longer balance across all vertices.

use crate::budget::{Budget, BudgetExhausted};
use crate::graph::MultiGraph;
use crate::pot::{BondSymbol, Pot};
use crate::spectrum::BoundedSolver;

use super::{AssemblyDesign, RealizationCertificate};

/// Nodes granted to the tile-count precheck before falling through to the search.
const PRECHECK_BUDGET: u64 = 200_000;

struct TileData {
    arity: usize,
    unhatted: Vec<u16>,
    hatted: Vec<u16>,
    net: Vec<i32>,
}

#[derive(Clone)]
struct VertexState {
    compat: Vec<u32>,
    cap_u: Vec<u64>,
    cap_h: Vec<u64>,
    lo: Vec<i32>,
    hi: Vec<i32>,
}

struct Search<'a> {
    graph: &'a MultiGraph,
    tiles: Vec<TileData>,
    symbols: usize,
    words: usize,
    used_u: Vec<Vec<u16>>,
    used_h: Vec<Vec<u16>>,
    state: Vec<VertexState>,
    sum_lo: Vec<i64>,
    sum_hi: Vec<i64>,
    /// `(symbol, unhatted side)` per assigned edge.
    label: Vec<Option<(usize, u8)>>,
    unassigned: usize,
}

/// Searches for a design realizing `graph` with tiles from `pot`.
pub fn find_realization(
    pot: &Pot,
    graph: &MultiGraph,
    budget: &mut Budget,
) -> Result<Option<RealizationCertificate>, BudgetExhausted> {
    if graph.vertex_count() == 0 {
        return Ok(None);
    }
    if !counts_possible(pot, graph, budget)? {
        return Ok(None);
    }
    let Some(mut search) = Search::new(pot, graph) else {
        return Ok(None);
    };
    if !search.balance_possible() {
        return Ok(None);
    }
    if !search.solve(budget)? {
        return Ok(None);
    }
    Ok(Some(search.certificate(pot)))
}

/// Whether tile counts exist that fill every degree class and conserve every
/// end. A budget overrun here is inconclusive and lets the search decide.
fn counts_possible(pot: &Pot, graph: &MultiGraph, budget: &mut Budget) -> Result<bool, BudgetExhausted> {
    let mut classes: Vec<(usize, i64)> = Vec::new();
    for d in graph.degrees() {
        match classes.iter_mut().find(|c| c.0 == d) {
            Some(c) => c.1 += 1,
            None => classes.push((d, 1)),
        }
    }
    let arity: Vec<usize> = pot.tiles().iter().map(|t| t.arity()).collect();
    let mut rows: Vec<Vec<i64>> = crate::spectrum::balance_rows(pot);
    let mut rhs = vec![0i64; rows.len()];
    for &(d, count) in &classes {
        rows.push(arity.iter().map(|&a| i64::from(a == d)).collect());
        rhs.push(count);
    }
    // Tiles of unused arity are pinned to zero through their upper bound.
    let upper: Vec<i64> = arity
        .iter()
        .map(|a| classes.iter().find(|c| c.0 == *a).map_or(0, |c| c.1))
        .collect();
    let Ok(solver) = BoundedSolver::new(&rows, &rhs) else {
        return Ok(true);
    };
    let mut local = Budget::new(PRECHECK_BUDGET.min(budget.remaining()));
    let mut found = false;
    let outcome = solver.for_each(1, &upper, &mut local, |_| {
        found = true;
        false
    });
    for _ in 0..local.used() {
        budget.tick()?;
    }
    Ok(match outcome {
        Ok(_) => found,
        Err(_) => true,
    })
}

impl<'a> Search<'a> {
    fn new(pot: &Pot, graph: &'a MultiGraph) -> Option<Self> {
        let symbols = pot.symbol_count();
        let words = symbols.div_ceil(64).max(1);
        let tiles: Vec<TileData> = pot
            .profiles()
            .iter()
            .map(|p| {
                let mut unhatted = vec![0u16; symbols];
                let mut hatted = vec![0u16; symbols];
                for &(s, u, h) in &p.ends {
                    unhatted[s] = u as u16;
                    hatted[s] = h as u16;
                }
                let net = (0..symbols).map(|s| unhatted[s] as i32 - hatted[s] as i32).collect();
                TileData {
                    arity: p.arity,
                    unhatted,
                    hatted,
                    net,
                }
            })
            .collect();
        let n = graph.vertex_count();
        let mut search = Search {
            graph,
            symbols,
            words,
            used_u: vec![vec![0; symbols]; n],
            used_h: vec![vec![0; symbols]; n],
            state: Vec::with_capacity(n),
            sum_lo: vec![0; symbols],
            sum_hi: vec![0; symbols],
            label: vec![None; graph.edge_count()],
            unassigned: graph.edge_count(),
            tiles,
        };
        for v in 0..n {
            let d = graph.degree(v);
            let compat: Vec<u32> = (0..search.tiles.len() as u32)
                .filter(|&t| search.tiles[t as usize].arity == d)
                .collect();
            if compat.is_empty() {
                return None;
            }
            let st = search.summarize(v, compat);
            for s in 0..symbols {
                search.sum_lo[s] += st.lo[s] as i64;
                search.sum_hi[s] += st.hi[s] as i64;
            }
            search.state.push(st);
        }
        Some(search)
    }

    fn summarize(&self, v: usize, compat: Vec<u32>) -> VertexState {
        let mut cap_u = vec![0u64; self.words];
        let mut cap_h = vec![0u64; self.words];
        let mut lo = vec![i32::MAX; self.symbols];
        let mut hi = vec![i32::MIN; self.symbols];
        for &t in &compat {
            let tile = &self.tiles[t as usize];
            for s in 0..self.symbols {
                if tile.unhatted[s] > self.used_u[v][s] {
                    cap_u[s / 64] |= 1 << (s % 64);
                }
                if tile.hatted[s] > self.used_h[v][s] {
                    cap_h[s / 64] |= 1 << (s % 64);
                }
                lo[s] = lo[s].min(tile.net[s]);
                hi[s] = hi[s].max(tile.net[s]);
            }
        }
        if compat.is_empty() {
            lo.fill(0);
            hi.fill(0);
        }
        VertexState {
            compat,
            cap_u,
            cap_h,
            lo,
            hi,
        }
    }

    fn balance_possible(&self) -> bool {
        (0..self.symbols).all(|s| self.sum_lo[s] <= 0 && self.sum_hi[s] >= 0)
    }

    fn fits(&self, v: usize, t: u32) -> bool {
        let tile = &self.tiles[t as usize];
        (0..self.symbols)
            .all(|s| tile.unhatted[s] >= self.used_u[v][s] && tile.hatted[s] >= self.used_h[v][s])
    }

    /// Recomputes the state of `v` after its used ends changed. Returns the
    /// old state and whether `v` still has a tile.
    fn refresh(&mut self, v: usize) -> (VertexState, bool) {
        let compat: Vec<u32> = self.state[v]
            .compat
            .iter()
            .copied()
            .filter(|&t| self.fits(v, t))
            .collect();
        let alive = !compat.is_empty();
        let fresh = self.summarize(v, compat);
        let old = std::mem::replace(&mut self.state[v], fresh);
        for s in 0..self.symbols {
            self.sum_lo[s] += self.state[v].lo[s] as i64 - old.lo[s] as i64;
            self.sum_hi[s] += self.state[v].hi[s] as i64 - old.hi[s] as i64;
        }
        (old, alive)
    }

    fn restore(&mut self, v: usize, old: VertexState) {
        for s in 0..self.symbols {
            self.sum_lo[s] += old.lo[s] as i64 - self.state[v].lo[s] as i64;
            self.sum_hi[s] += old.hi[s] as i64 - self.state[v].hi[s] as i64;
        }
        self.state[v] = old;
    }

    fn options(&self, e: usize) -> Vec<(usize, u8)> {
        let (u, v) = self.graph.edge(e);
        let (su, sv) = (&self.state[u], &self.state[v]);
        let mut out = Vec::new();
        for w in 0..self.words {
            let forward = su.cap_u[w] & sv.cap_h[w];
            let backward = if u == v { 0 } else { su.cap_h[w] & sv.cap_u[w] };
            let mut bits = forward | backward;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let s = w * 64 + b;
                if forward >> b & 1 == 1 {
                    out.push((s, 0));
                }
                if backward >> b & 1 == 1 {
                    out.push((s, 1));
                }
            }
        }
        out
    }

    fn option_count(&self, e: usize) -> u32 {
        let (u, v) = self.graph.edge(e);
        let (su, sv) = (&self.state[u], &self.state[v]);
        (0..self.words)
            .map(|w| {
                let f = (su.cap_u[w] & sv.cap_h[w]).count_ones();
                if u == v {
                    f
                } else {
                    f + (su.cap_h[w] & sv.cap_u[w]).count_ones()
                }
            })
            .sum()
    }

    fn pick_edge(&self) -> Option<(usize, u32)> {
        let mut best: Option<(usize, u32)> = None;
        for e in 0..self.label.len() {
            if self.label[e].is_some() {
                continue;
            }
            let c = self.option_count(e);
            if best.is_none_or(|b| c < b.1) {
                best = Some((e, c));
                if c <= 1 {
                    break;
                }
            }
        }
        best
    }

    fn place(&mut self, e: usize, s: usize, side: u8, delta: i32) {
        let (u, v) = self.graph.edge(e);
        let (plain, hat) = if side == 0 { (u, v) } else { (v, u) };
        let apply = |x: &mut u16| *x = (*x as i32 + delta) as u16;
        apply(&mut self.used_u[plain][s]);
        apply(&mut self.used_h[hat][s]);
    }

    fn solve(&mut self, budget: &mut Budget) -> Result<bool, BudgetExhausted> {
        if self.unassigned == 0 {
            return Ok(true);
        }
        let Some((e, count)) = self.pick_edge() else {
            return Ok(true);
        };
        if count == 0 {
            return Ok(false);
        }
        let (u, v) = self.graph.edge(e);
        for (s, side) in self.options(e) {
            budget.tick()?;
            self.place(e, s, side, 1);
            self.label[e] = Some((s, side));
            self.unassigned -= 1;
            let (old_u, alive_u) = self.refresh(u);
            let mut old_v = None;
            let mut alive = alive_u;
            if v != u {
                let (o, a) = self.refresh(v);
                old_v = Some(o);
                alive &= a;
            }
            if alive && self.balance_possible() && self.solve(budget)? {
                return Ok(true);
            }
            if let Some(o) = old_v {
                self.restore(v, o);
            }
            self.restore(u, old_u);
            self.unassigned += 1;
            self.label[e] = None;
            self.place(e, s, side, -1);
        }
        Ok(false)
    }

    fn certificate(&self, pot: &Pot) -> RealizationCertificate {
        let symbols: &[BondSymbol] = pot.symbols();
        let labels: Vec<(BondSymbol, usize)> = self
            .label
            .iter()
            .enumerate()
            .map(|(e, l)| {
                let (s, side) = l.expect("complete assignment");
                let (u, v) = self.graph.edge(e);
                (symbols[s].clone(), if side == 0 { u } else { v })
            })
            .collect();
        let design = AssemblyDesign::oriented(self.graph, &labels).expect("labels match edges");
        RealizationCertificate::from_design(self.graph, design, pot)
            .expect("search only completes on valid designs")
    }
}
