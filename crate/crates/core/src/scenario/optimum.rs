//! Exhaustive searches for `T_i(G)` and `B_i(G)`.
//!
//! Two candidate spaces are used.
//!
//! * Single-bond pots, for `T_1`: collapsing every bond type of a pot into
//!   one keeps Scenario 1 intact and never adds tiles, so the optimum is
//!   attained over pots with one bond type.
//! * Assembly designs of `G`, for everything else: if a pot passes a scenario
//!   for `G` then so does the assembling pot of its design, which has no more
//!   tiles and no more bond types. Designs are generated with bond types
//!   introduced in order and the first use of each bond type oriented from
//!   the lower endpoint, which removes renaming and hat-flip duplicates.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::budget::Budget;
use crate::graph::{valency_stats, MultiGraph};
use crate::pot::{BondSymbol, CohesiveEnd, Pot, Tile};
use crate::realize::{find_realization, RealizationCertificate};

use super::{check_scenario, ScenarioError, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Quantity {
    /// Number of tile types.
    T,
    /// Number of bond-edge types.
    B,
}

impl Quantity {
    pub fn parse(text: &str) -> Option<Quantity> {
        match text {
            "T" | "t" => Some(Quantity::T),
            "B" | "b" => Some(Quantity::B),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_tiles: usize,
    pub max_bonds: usize,
    pub budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_tiles: 6,
            max_bonds: 4,
            budget: crate::budget::DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OptimaValue {
    Exact(usize),
    /// `hi` is `None` when no passing pot was found within the limits.
    Interval { lo: usize, hi: Option<usize> },
}

impl OptimaValue {
    pub fn exact(&self) -> Option<usize> {
        match self {
            OptimaValue::Exact(v) => Some(*v),
            _ => None,
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        match *self {
            OptimaValue::Exact(x) => x == v,
            OptimaValue::Interval { lo, hi } => v >= lo && hi.is_none_or(|h| v <= h),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchSpace {
    SingleBondPots,
    Designs,
}

#[derive(Debug, Clone)]
pub struct OptimaResult {
    pub quantity: Quantity,
    pub scenario: u8,
    pub value: OptimaValue,
    pub witness_pot: Option<Pot>,
    pub witness_certificate: Option<RealizationCertificate>,
    pub space: SearchSpace,
    /// Distinct candidate pots whose scenario was checked.
    pub candidates_checked: usize,
    pub budget_exhausted: bool,
}

pub fn search_optimum(
    graph: &MultiGraph,
    quantity: Quantity,
    scenario: u8,
    limits: Limits,
) -> Result<OptimaResult, ScenarioError> {
    if !(1..=3).contains(&scenario) {
        return Err(ScenarioError::Level(scenario));
    }
    let stats = valency_stats(graph)?;
    let mut budget = Budget::new(limits.budget);
    if quantity == Quantity::T && scenario == 1 {
        return Ok(single_bond_t1(graph, stats.av, limits, &mut budget));
    }
    Ok(design_search(graph, quantity, scenario, stats.av, limits, &mut budget))
}

fn symbol_name(i: usize) -> BondSymbol {
    let name = if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("s{i}")
    };
    BondSymbol::new(name).expect("generated names are valid")
}

fn make_tile(ends: &[(u8, bool)]) -> Tile {
    Tile::new(
        ends.iter()
            .map(|&(s, hat)| {
                let sym = symbol_name(s as usize);
                if hat {
                    CohesiveEnd::hatted(sym)
                } else {
                    CohesiveEnd::unhatted(sym)
                }
            })
            .collect(),
    )
    .expect("nonempty tile")
}

fn single_bond_t1(graph: &MultiGraph, av: usize, limits: Limits, budget: &mut Budget) -> OptimaResult {
    let mut degrees: Vec<usize> = graph.degrees();
    degrees.sort_unstable();
    degrees.dedup();
    // (arity, hats)
    let shapes: Vec<(usize, usize)> = degrees
        .iter()
        .flat_map(|&d| (0..=d).map(move |h| (d, h)))
        .collect();
    let flip: Vec<usize> = shapes
        .iter()
        .map(|&(d, h)| shapes.iter().position(|&s| s == (d, d - h)).expect("flip exists"))
        .collect();
    let mut result = OptimaResult {
        quantity: Quantity::T,
        scenario: 1,
        value: OptimaValue::Interval {
            lo: av,
            hi: None,
        },
        witness_pot: None,
        witness_certificate: None,
        space: SearchSpace::SingleBondPots,
        candidates_checked: 0,
        budget_exhausted: false,
    };
    let mut sure_lo = av.max(1);
    for k in av.max(1)..=limits.max_tiles.min(shapes.len()) {
        let mut unknown = false;
        let mut found = None;
        for_each_combination(shapes.len(), k, &mut |subset| {
            if !degrees.iter().all(|d| subset.iter().any(|&i| shapes[i].0 == *d)) {
                return true;
            }
            let has_plain = subset.iter().any(|&i| shapes[i].1 < shapes[i].0);
            let has_hat = subset.iter().any(|&i| shapes[i].1 > 0);
            if !(has_plain && has_hat) {
                return true;
            }
            let mut flipped: Vec<usize> = subset.iter().map(|&i| flip[i]).collect();
            flipped.sort_unstable();
            if flipped.as_slice() < subset {
                return true;
            }
            let tiles: Vec<Tile> = subset
                .iter()
                .map(|&i| {
                    let (d, h) = shapes[i];
                    let ends: Vec<(u8, bool)> = (0..d).map(|j| (0, j < h)).collect();
                    make_tile(&ends)
                })
                .collect();
            let pot = Pot::new(tiles).expect("closed by construction");
            result.candidates_checked += 1;
            match find_realization(&pot, graph, budget) {
                Ok(Some(cert)) => {
                    found = Some((pot, cert));
                    false
                }
                Ok(None) => true,
                Err(_) => {
                    unknown = true;
                    false
                }
            }
        });
        if let Some((pot, cert)) = found {
            result.value = if sure_lo == k {
                OptimaValue::Exact(k)
            } else {
                OptimaValue::Interval { lo: sure_lo, hi: Some(k) }
            };
            result.witness_pot = Some(pot);
            result.witness_certificate = Some(cert);
            return result;
        }
        if unknown {
            result.budget_exhausted = true;
            result.value = OptimaValue::Interval { lo: sure_lo, hi: None };
            return result;
        }
        sure_lo = k + 1;
    }
    result.value = OptimaValue::Interval { lo: sure_lo, hi: None };
    result
}

/// Outcome of [`find_passing_pot`].
#[derive(Debug, Clone)]
pub struct PotSearch {
    pub found: Option<(Pot, RealizationCertificate)>,
    /// False when the budget ran out or some candidate was indeterminate.
    pub complete: bool,
    pub candidates_checked: usize,
}

/// Looks for a pot with at most `max_tiles` tiles and `max_bonds` bond-edge
/// types satisfying `scenario` for `graph`. Only assembling pots of designs
/// are tried; a passing pot contains such a pot, which passes as well.
pub fn find_passing_pot(
    graph: &MultiGraph,
    scenario: u8,
    max_tiles: usize,
    max_bonds: usize,
    budget: u64,
) -> Result<PotSearch, ScenarioError> {
    if !(1..=3).contains(&scenario) {
        return Err(ScenarioError::Level(scenario));
    }
    valency_stats(graph)?;
    let mut budget = Budget::new(budget);
    let mut out = PotSearch {
        found: None,
        complete: true,
        candidates_checked: 0,
    };
    let mut seen: HashSet<PotKey> = HashSet::new();
    let finished = enumerate_designs(graph, max_bonds.max(1), Some(max_tiles), &mut budget, &mut |key, budget| {
        if !seen.insert(key.clone()) {
            return true;
        }
        let pot = Pot::new(key.iter().map(|t| make_tile(t)).collect()).expect("assembling pots are closed");
        out.candidates_checked += 1;
        let report = check_scenario(&pot, graph, scenario, budget).expect("level validated above");
        match report.verdict {
            Verdict::Holds => {
                out.found = Some((pot, report.certificate.expect("holds implies certificate")));
                false
            }
            Verdict::Fails => true,
            Verdict::Indeterminate => {
                out.complete = false;
                true
            }
        }
    });
    if !finished && out.found.is_none() {
        out.complete = false;
    }
    Ok(out)
}

/// Visits every increasing `k`-subset of `0..n`; the visitor returns false to stop.
fn for_each_combination(n: usize, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(
        start: usize,
        n: usize,
        k: usize,
        cur: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return visit(cur);
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            let go = rec(i + 1, n, k, cur, visit);
            cur.pop();
            if !go {
                return false;
            }
        }
        true
    }
    rec(0, n, k, &mut Vec::new(), visit);
}

type PotKey = Vec<Vec<(u8, bool)>>;

fn design_search(
    graph: &MultiGraph,
    quantity: Quantity,
    scenario: u8,
    av: usize,
    limits: Limits,
    budget: &mut Budget,
) -> OptimaResult {
    let edges = graph.edge_count();
    let max_degree = graph.degrees().into_iter().max().unwrap_or(0);
    let mut result = OptimaResult {
        quantity,
        scenario,
        value: OptimaValue::Interval { lo: 1, hi: None },
        witness_pot: None,
        witness_certificate: None,
        space: SearchSpace::Designs,
        candidates_checked: 0,
        budget_exhausted: false,
    };
    let mut verdicts: HashMap<PotKey, Verdict> = HashMap::new();
    let (start, end) = match quantity {
        Quantity::T => (av.max(1), limits.max_tiles),
        Quantity::B => (1, limits.max_bonds),
    };
    let mut sure_lo = start;
    for cap in start..=end {
        let (tile_cap, bond_cap, truncated) = match quantity {
            Quantity::T => {
                let needed = (cap * max_degree / 2).min(edges).max(1);
                let bonds = needed.min(limits.max_bonds.max(1));
                (Some(cap), bonds, bonds < needed)
            }
            Quantity::B => (None, cap, false),
        };
        let mut unknown = false;
        let mut winner: Option<(Pot, RealizationCertificate)> = None;
        let mut seen: HashSet<PotKey> = HashSet::new();
        let completed = enumerate_designs(graph, bond_cap, tile_cap, budget, &mut |key, budget| {
            if !seen.insert(key.clone()) {
                return true;
            }
            let verdict = match verdicts.get(key) {
                Some(v) => *v,
                None => {
                    let pot = Pot::new(key.iter().map(|t| make_tile(t)).collect())
                        .expect("assembling pots are closed");
                    result.candidates_checked += 1;
                    let report = check_scenario(&pot, graph, scenario, budget)
                        .expect("level validated above");
                    if report.verdict == Verdict::Holds {
                        winner = Some((pot, report.certificate.expect("holds implies certificate")));
                    }
                    verdicts.insert(key.clone(), report.verdict);
                    report.verdict
                }
            };
            match verdict {
                Verdict::Holds => {
                    if winner.is_none() {
                        let pot = Pot::new(key.iter().map(|t| make_tile(t)).collect())
                            .expect("assembling pots are closed");
                        let cert = find_realization(&pot, graph, &mut Budget::unlimited())
                            .ok()
                            .flatten()
                            .expect("pot realized before");
                        winner = Some((pot, cert));
                    }
                    false
                }
                Verdict::Indeterminate => {
                    unknown = true;
                    true
                }
                Verdict::Fails => true,
            }
        });
        if let Some((pot, cert)) = winner {
            let v = match quantity {
                Quantity::T => pot.len(),
                Quantity::B => pot.symbol_count(),
            };
            result.value = if sure_lo >= v {
                OptimaValue::Exact(v)
            } else {
                OptimaValue::Interval { lo: sure_lo, hi: Some(v) }
            };
            result.witness_pot = Some(pot);
            result.witness_certificate = Some(cert);
            return result;
        }
        if !completed {
            result.budget_exhausted = true;
            result.value = OptimaValue::Interval { lo: sure_lo, hi: None };
            return result;
        }
        if !unknown && !truncated && sure_lo == cap {
            sure_lo = cap + 1;
        }
    }
    result.value = OptimaValue::Interval { lo: sure_lo, hi: None };
    result
}

/// Enumerates canonical designs with at most `bond_cap` bond types whose
/// assembling pot has at most `tile_cap` tiles, calling `visit` with the
/// sorted pot. Returns false when the budget ran out or `visit` stopped.
fn enumerate_designs(
    graph: &MultiGraph,
    bond_cap: usize,
    tile_cap: Option<usize>,
    budget: &mut Budget,
    visit: &mut dyn FnMut(&PotKey, &mut Budget) -> bool,
) -> bool {
    let order = edge_order(graph);
    let n = graph.vertex_count();
    let mut walk = DesignWalk {
        graph,
        order,
        bond_cap,
        tile_cap: tile_cap.unwrap_or(usize::MAX),
        symbols: 0,
        remaining: graph.degrees(),
        ends: vec![Vec::new(); n],
        tiles: Vec::new(),
        stopped: false,
    };
    walk.go(0, budget, visit);
    !walk.stopped
}

/// Edges sorted so that vertices complete as early as possible.
fn edge_order(graph: &MultiGraph) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut pos = vec![usize::MAX; n];
    let mut next = 0;
    for root in 0..n {
        if pos[root] != usize::MAX {
            continue;
        }
        pos[root] = next;
        next += 1;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for h in graph.incident(v) {
                let (a, b) = graph.edge(h.edge);
                let w = if a == v { b } else { a };
                if pos[w] == usize::MAX {
                    pos[w] = next;
                    next += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..graph.edge_count()).collect();
    order.sort_by_key(|&e| {
        let (u, v) = graph.edge(e);
        (pos[u].max(pos[v]), pos[u].min(pos[v]), e)
    });
    order
}

struct DesignWalk<'a> {
    graph: &'a MultiGraph,
    order: Vec<usize>,
    bond_cap: usize,
    tile_cap: usize,
    symbols: usize,
    remaining: Vec<usize>,
    ends: Vec<Vec<(u8, bool)>>,
    /// Distinct completed vertex tiles with multiplicity.
    tiles: Vec<(Vec<(u8, bool)>, usize)>,
    stopped: bool,
}

impl DesignWalk<'_> {
    fn go(&mut self, i: usize, budget: &mut Budget, visit: &mut dyn FnMut(&PotKey, &mut Budget) -> bool) {
        if self.stopped {
            return;
        }
        if budget.tick().is_err() {
            self.stopped = true;
            return;
        }
        if i == self.order.len() {
            let mut key: PotKey = self.tiles.iter().map(|t| t.0.clone()).collect();
            key.sort();
            if !visit(&key, budget) {
                self.stopped = true;
            }
            return;
        }
        let e = self.order[i];
        let (u, v) = self.graph.edge(e);
        let limit = (self.symbols + 1).min(self.bond_cap);
        for s in 0..limit {
            let fresh = s == self.symbols;
            let sides: &[u8] = if fresh || u == v { &[0] } else { &[0, 1] };
            for &side in sides {
                let (plain, hat) = if side == 0 { (u, v) } else { (v, u) };
                if fresh {
                    self.symbols += 1;
                }
                let ok = self.attach(plain, (s as u8, false)) & self.attach(hat, (s as u8, true));
                if ok {
                    self.go(i + 1, budget, visit);
                }
                self.detach(hat);
                self.detach(plain);
                if fresh {
                    self.symbols -= 1;
                }
                if self.stopped {
                    return;
                }
            }
        }
    }

    /// Adds an end at `v`; false when completing `v` exceeds the tile cap.
    fn attach(&mut self, v: usize, end: (u8, bool)) -> bool {
        self.ends[v].push(end);
        self.remaining[v] -= 1;
        if self.remaining[v] > 0 {
            return true;
        }
        let mut tile = self.ends[v].clone();
        tile.sort_unstable();
        match self.tiles.iter_mut().find(|t| t.0 == tile) {
            Some(t) => t.1 += 1,
            None => self.tiles.push((tile, 1)),
        }
        self.tiles.len() <= self.tile_cap
    }

    fn detach(&mut self, v: usize) {
        if self.remaining[v] == 0 {
            let mut tile = self.ends[v].clone();
            tile.sort_unstable();
            let idx = self.tiles.iter().position(|t| t.0 == tile).expect("tile recorded");
            self.tiles[idx].1 -= 1;
            if self.tiles[idx].1 == 0 {
                self.tiles.remove(idx);
            }
        }
        self.ends[v].pop();
        self.remaining[v] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family, Platonic};

    #[test]
    fn loop_vertex_needs_one_tile() {
        let g = MultiGraph::new(1, vec![(0, 0)]).unwrap();
        let r = search_optimum(&g, Quantity::T, 1, Limits::default()).unwrap();
        assert_eq!(r.value, OptimaValue::Exact(1));
        assert_eq!(r.witness_pot.unwrap().render(), "a,^a");
    }

    #[test]
    fn cube_t1() {
        let g = generate(&Family::Platonic(Platonic::Hexahedron)).unwrap();
        let r = search_optimum(&g, Quantity::T, 1, Limits::default()).unwrap();
        assert_eq!(r.value, OptimaValue::Exact(2));
        let d = search_optimum(&g, Quantity::B, 1, Limits::default()).unwrap();
        assert_eq!(d.value, OptimaValue::Exact(1));
    }

    #[test]
    fn lattice_two_by_three_b2() {
        let g = generate(&Family::SquareLattice { rows: 2, cols: 3 }).unwrap();
        let r = search_optimum(&g, Quantity::B, 2, Limits::default()).unwrap();
        assert_eq!(r.value, OptimaValue::Exact(2));
    }

    #[test]
    fn design_enumeration_counts() {
        // A single edge: one canonical design per bond cap.
        let g = MultiGraph::new(2, vec![(0, 1)]).unwrap();
        let mut count = 0;
        enumerate_designs(&g, 3, None, &mut Budget::unlimited(), &mut |_, _| {
            count += 1;
            true
        });
        assert_eq!(count, 1);
        // Path on three vertices: (a,a same way), (a,a opposite), (a,b).
        let g = MultiGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let mut count = 0;
        enumerate_designs(&g, 2, None, &mut Budget::unlimited(), &mut |_, _| {
            count += 1;
            true
        });
        assert_eq!(count, 3);
    }
}
