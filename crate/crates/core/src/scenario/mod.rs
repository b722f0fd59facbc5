//! Scenario checks, optimum searches and the table of known results.
//!
//! Scenario 1 asks that the pot realize the graph. Scenario 2 additionally
//! forbids any smaller graph in the output; Scenario 3 further forbids any
//! non-isomorphic connected graph of the same order.

mod optimum;
mod registry;

pub use optimum::{
    find_passing_pot, search_optimum, Limits, PotSearch, OptimaResult, OptimaValue, Quantity,
    SearchSpace,
};
pub use registry::{results_registry, Claim, RegistryEntry, Verification, VerificationStatus};

use serde::Serialize;

use crate::budget::Budget;
use crate::graph::{canonical_form, valency_stats, GraphError, MultiGraph};
use crate::pot::Pot;
use crate::realize::{find_realization, for_each_assembly, RealizationCertificate};
use crate::spectrum::{count_vectors, min_order_budgeted, OrderWitness, SpectrumError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    /// The budget ran out before the question was settled.
    Indeterminate,
}

#[derive(Debug, Clone)]
pub enum Violation {
    NotRealizable,
    SmallerOrder(OrderWitness),
    NonIsomorphic {
        graph: MultiGraph,
        certificate: RealizationCertificate,
    },
}

#[derive(Debug, Clone)]
pub struct ScenarioReport {
    pub level: u8,
    pub verdict: Verdict,
    pub violation: Option<Violation>,
    /// Realization of the target graph, when one was found.
    pub certificate: Option<RealizationCertificate>,
    pub note: Option<String>,
}

impl ScenarioReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    fn new(level: u8, verdict: Verdict) -> Self {
        ScenarioReport {
            level,
            verdict,
            violation: None,
            certificate: None,
            note: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScenarioError {
    #[error("scenario level must be 1, 2 or 3, got {0}")]
    Level(u8),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Checks scenario `level` for `pot` and `graph`.
pub fn check_scenario(
    pot: &Pot,
    graph: &MultiGraph,
    level: u8,
    budget: &mut Budget,
) -> Result<ScenarioReport, ScenarioError> {
    if !(1..=3).contains(&level) {
        return Err(ScenarioError::Level(level));
    }
    let indeterminate = |note: &str, cert: Option<RealizationCertificate>| {
        let mut r = ScenarioReport::new(level, Verdict::Indeterminate);
        r.note = Some(note.to_string());
        r.certificate = cert;
        r
    };
    let certificate = match find_realization(pot, graph, budget) {
        Ok(Some(c)) => c,
        Ok(None) => {
            let mut r = ScenarioReport::new(level, Verdict::Fails);
            r.violation = Some(Violation::NotRealizable);
            return Ok(r);
        }
        Err(_) => return Ok(indeterminate("budget exhausted during realization search", None)),
    };
    let n = graph.vertex_count() as u64;
    if level >= 2 && n > 1 {
        match min_order_budgeted(pot, n - 1, true, budget) {
            Ok(m) => {
                if let Some(w) = m.witnesses.into_iter().next() {
                    let mut r = ScenarioReport::new(level, Verdict::Fails);
                    r.violation = Some(Violation::SmallerOrder(w));
                    r.certificate = Some(certificate);
                    return Ok(r);
                }
            }
            Err(SpectrumError::Budget(_)) => {
                return Ok(indeterminate(
                    "budget exhausted during minimum-order search",
                    Some(certificate),
                ))
            }
            Err(e) => return Ok(indeterminate(&e.to_string(), Some(certificate))),
        }
    }
    if level == 3 {
        match same_order_intruder(pot, graph, budget) {
            Ok(Some((h, cert))) => {
                let mut r = ScenarioReport::new(level, Verdict::Fails);
                r.violation = Some(Violation::NonIsomorphic {
                    graph: h,
                    certificate: cert,
                });
                r.certificate = Some(certificate);
                return Ok(r);
            }
            Ok(None) => {}
            Err(()) => {
                return Ok(indeterminate(
                    "budget exhausted while enumerating same-order outputs",
                    Some(certificate),
                ))
            }
        }
    }
    let mut r = ScenarioReport::new(level, Verdict::Holds);
    r.certificate = Some(certificate);
    Ok(r)
}

/// First connected graph of the same order that is not isomorphic to `graph`.
fn same_order_intruder(
    pot: &Pot,
    graph: &MultiGraph,
    budget: &mut Budget,
) -> Result<Option<(MultiGraph, RealizationCertificate)>, ()> {
    let n = graph.vertex_count() as u64;
    let target = canonical_form(graph).0;
    let degrees = graph.degree_sequence();
    let vectors = count_vectors(pot, n, budget).map_err(|_| ())?;
    let mut found = None;
    for counts in vectors {
        for_each_assembly(pot, &counts, budget, |h, cert| {
            if !h.is_connected() {
                return true;
            }
            let same = h.degree_sequence() == degrees
                && h.edge_count() == graph.edge_count()
                && canonical_form(h).0 == target;
            if same {
                return true;
            }
            found = Some((h.clone(), cert.clone()));
            false
        })
        .map_err(|_| ())?;
        if found.is_some() {
            break;
        }
    }
    Ok(found)
}

/// `[av(G), ev(G) + 2 ov(G)]`. Each odd valency needs a pair of tiles with
/// opposite net counts; an even one is served by a single balanced tile.
pub fn t1_bounds(graph: &MultiGraph) -> Result<(usize, usize), GraphError> {
    let v = valency_stats(graph)?;
    Ok((v.av, v.ev + 2 * v.ov))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family, Platonic};
    use crate::pot::parse_pot;

    fn cube() -> MultiGraph {
        generate(&Family::Platonic(Platonic::Hexahedron)).unwrap()
    }

    #[test]
    fn cube_scenario_two_pot() {
        let p = parse_pot("a,b,b ; a,a,^b ; a,^a,^a").unwrap();
        let mut b = Budget::default();
        assert!(check_scenario(&p, &cube(), 1, &mut b).unwrap().holds());
        assert!(check_scenario(&p, &cube(), 2, &mut b).unwrap().holds());
        let r = check_scenario(&p, &cube(), 3, &mut b).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        match r.violation {
            Some(Violation::NonIsomorphic { graph, .. }) => {
                assert_eq!(graph.vertex_count(), 8);
                assert!(crate::graph::isomorphic(&graph, &cube()).is_none());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn smaller_order_violation() {
        let p = parse_pot("a,a,^a ; ^a,^a,^a ; a,^a,^a ; a,a,a").unwrap();
        let r = check_scenario(&p, &cube(), 2, &mut Budget::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert!(matches!(r.violation, Some(Violation::SmallerOrder(ref w)) if w.order < 8));
    }

    #[test]
    fn tiny_budget_is_indeterminate() {
        let p = parse_pot("a,b,b ; a,a,^b ; a,^a,^a").unwrap();
        let r = check_scenario(&p, &cube(), 3, &mut Budget::new(3)).unwrap();
        assert_eq!(r.verdict, Verdict::Indeterminate);
    }

    #[test]
    fn bounds() {
        let g = generate(&Family::SquareLattice { rows: 2, cols: 5 }).unwrap();
        assert_eq!(t1_bounds(&g).unwrap(), (2, 3));
        let g = generate(&Family::Platonic(Platonic::Octahedron)).unwrap();
        assert_eq!(t1_bounds(&g).unwrap(), (1, 1));
        let g = generate(&Family::SquareLattice { rows: 5, cols: 5 }).unwrap();
        assert_eq!(t1_bounds(&g).unwrap(), (3, 4));
        let g = generate(&Family::TriangleTube { rows: 4, cols: 5 }).unwrap();
        assert_eq!(t1_bounds(&g).unwrap(), (2, 2));
        let g = generate(&Family::Complete(4)).unwrap();
        assert_eq!(t1_bounds(&g).unwrap(), (1, 2));
    }
}
