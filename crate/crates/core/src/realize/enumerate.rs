//! All graphs of a given order assembled from a pot.
//!
//! For every balanced tile-count vector the vertices receive their tiles in
//! pot order. For each symbol, a transport matrix says how many unhatted ends
//! at vertex `u` join hatted ends at vertex `v`; every combination of matrices
//! is one multigraph (with loops when `u = v`).

use std::collections::BTreeMap;

use crate::budget::{Budget, BudgetExhausted};
use crate::graph::{canonical_form, CanonicalForm, MultiGraph};
use crate::pot::{BondSymbol, Pot};
use crate::spectrum::{count_vectors, SpectrumError};

use super::{AssemblyDesign, RealizationCertificate};

#[derive(Debug, Clone)]
pub struct RealizedGraph {
    pub graph: MultiGraph,
    pub certificate: RealizationCertificate,
    pub form: CanonicalForm,
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    /// One graph per isomorphism class, sorted by canonical form.
    pub graphs: Vec<RealizedGraph>,
    /// False when the budget ran out; `explored` then lists the count vectors
    /// that were fully processed.
    pub complete: bool,
    pub explored: Vec<Vec<u64>>,
}

/// Every graph of order `n` in the output of `pot`, up to isomorphism.
pub fn enumerate_realizable(
    pot: &Pot,
    n: u64,
    connected_only: bool,
    budget: &mut Budget,
) -> Result<Enumeration, SpectrumError> {
    let vectors = match count_vectors(pot, n, budget) {
        Ok(v) => v,
        Err(SpectrumError::Budget(_)) => {
            return Ok(Enumeration {
                graphs: Vec::new(),
                complete: false,
                explored: Vec::new(),
            })
        }
        Err(e) => return Err(e),
    };
    let mut classes: BTreeMap<CanonicalForm, RealizedGraph> = BTreeMap::new();
    let mut explored = Vec::new();
    let mut complete = true;
    for counts in vectors {
        let outcome = for_each_assembly(pot, &counts, budget, |graph, cert| {
            if connected_only && !graph.is_connected() {
                return true;
            }
            let (form, _) = canonical_form(graph);
            classes.entry(form.clone()).or_insert_with(|| RealizedGraph {
                graph: graph.clone(),
                certificate: cert.clone(),
                form,
            });
            true
        });
        match outcome {
            Ok(_) => explored.push(counts),
            Err(_) => {
                complete = false;
                break;
            }
        }
    }
    Ok(Enumeration {
        graphs: classes.into_values().collect(),
        complete,
        explored,
    })
}

/// Calls `visit` on every assembly with the given tile counts (connected or
/// not, possibly repeating isomorphic graphs). Stops when `visit` returns
/// false; returns whether the enumeration ran to completion.
pub fn for_each_assembly<F>(
    pot: &Pot,
    counts: &[u64],
    budget: &mut Budget,
    mut visit: F,
) -> Result<bool, BudgetExhausted>
where
    F: FnMut(&MultiGraph, &RealizationCertificate) -> bool,
{
    assert_eq!(counts.len(), pot.len());
    let tile_of: Vec<usize> = counts
        .iter()
        .enumerate()
        .flat_map(|(t, &c)| std::iter::repeat_n(t, c as usize))
        .collect();
    let n = tile_of.len();
    let profiles = pot.profiles();
    let symbols = pot.symbol_count();
    // Per symbol: vertices with unhatted ends and how many, likewise hatted.
    let mut plain: Vec<Vec<(usize, u32)>> = vec![Vec::new(); symbols];
    let mut hats: Vec<Vec<(usize, u32)>> = vec![Vec::new(); symbols];
    for (v, &t) in tile_of.iter().enumerate() {
        for &(s, u, h) in &profiles[t].ends {
            if u > 0 {
                plain[s].push((v, u));
            }
            if h > 0 {
                hats[s].push((v, h));
            }
        }
    }
    for s in 0..symbols {
        let a: u32 = plain[s].iter().map(|x| x.1).sum();
        let b: u32 = hats[s].iter().map(|x| x.1).sum();
        if a != b {
            return Ok(true);
        }
    }
    let mut walk = Walk {
        pot,
        n,
        tile_of,
        counts: counts.to_vec(),
        plain,
        hats,
        col_left: Vec::new(),
        edges: Vec::new(),
        visit: &mut visit,
    };
    walk.symbol(0, budget)
}

struct Walk<'a, F> {
    pot: &'a Pot,
    n: usize,
    tile_of: Vec<usize>,
    counts: Vec<u64>,
    plain: Vec<Vec<(usize, u32)>>,
    hats: Vec<Vec<(usize, u32)>>,
    col_left: Vec<u32>,
    /// `(unhatted vertex, hatted vertex, symbol)`
    edges: Vec<(usize, usize, usize)>,
    visit: &'a mut F,
}

impl<F> Walk<'_, F>
where
    F: FnMut(&MultiGraph, &RealizationCertificate) -> bool,
{
    fn symbol(&mut self, s: usize, budget: &mut Budget) -> Result<bool, BudgetExhausted> {
        budget.tick()?;
        if s == self.plain.len() {
            return Ok(self.emit());
        }
        let saved = std::mem::replace(
            &mut self.col_left,
            self.hats[s].iter().map(|x| x.1).collect(),
        );
        let r = self.row(s, 0, 0, 0, budget);
        self.col_left = saved;
        r
    }

    /// Distributes the unhatted ends of row `i` (of which `placed` are done)
    /// over columns `j..`.
    fn row(
        &mut self,
        s: usize,
        i: usize,
        j: usize,
        placed: u32,
        budget: &mut Budget,
    ) -> Result<bool, BudgetExhausted> {
        let rows = self.plain[s].len();
        if i == rows {
            return self.symbol(s + 1, budget);
        }
        let (u, need) = self.plain[s][i];
        let left = need - placed;
        if left == 0 {
            return self.row(s, i + 1, 0, 0, budget);
        }
        let cols = self.hats[s].len();
        if j == cols {
            return Ok(true);
        }
        // Remaining capacity in later columns must be able to absorb the rest.
        let later: u32 = self.col_left[j + 1..].iter().sum();
        let lo = left.saturating_sub(later);
        let hi = left.min(self.col_left[j]);
        let v = self.hats[s][j].0;
        for take in (lo..=hi).rev() {
            budget.tick()?;
            self.col_left[j] -= take;
            for _ in 0..take {
                self.edges.push((u, v, s));
            }
            let r = self.row(s, i, j + 1, placed + take, budget);
            self.edges.truncate(self.edges.len() - take as usize);
            self.col_left[j] += take;
            if !r? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn emit(&mut self) -> bool {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v, _)| (u, v)).collect();
        let graph = MultiGraph::new(self.n, pairs).expect("vertices in range");
        let symbols: &[BondSymbol] = self.pot.symbols();
        let labels: Vec<(BondSymbol, usize)> = self
            .edges
            .iter()
            .map(|&(u, _, s)| (symbols[s].clone(), u))
            .collect();
        let design = AssemblyDesign::oriented(&graph, &labels).expect("labels match edges");
        let cert = RealizationCertificate {
            tile_of: self.tile_of.clone(),
            counts: self.counts.clone(),
            design,
        };
        (self.visit)(&graph, &cert)
    }
}
