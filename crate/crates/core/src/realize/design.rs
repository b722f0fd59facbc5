use serde::{Deserialize, Serialize};

use crate::graph::{HalfEdge, MultiGraph};
use crate::pot::{BondSymbol, CohesiveEnd, Pot, PotError, Tile};

use super::RealizeError;

/// A cohesive-end label on both half-edges of every edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AssemblyDesign {
    labels: Vec<[CohesiveEnd; 2]>,
}

impl AssemblyDesign {
    /// `labels[e][side]` labels the half-edge of edge `e` on `side`.
    pub fn new(labels: Vec<[CohesiveEnd; 2]>) -> Self {
        AssemblyDesign { labels }
    }

    /// Unhatted `symbol[e]` at the endpoint `from[e]`, hatted at the other.
    pub fn oriented(
        graph: &MultiGraph,
        labels: &[(BondSymbol, usize)],
    ) -> Result<Self, RealizeError> {
        if labels.len() != graph.edge_count() {
            return Err(RealizeError::Malformed {
                expected: graph.edge_count(),
                found: labels.len(),
            });
        }
        let mut out = Vec::with_capacity(labels.len());
        for (e, (symbol, from)) in labels.iter().enumerate() {
            let (u, v) = graph.edge(e);
            let plain = CohesiveEnd::unhatted(symbol.clone());
            let hat = CohesiveEnd::hatted(symbol.clone());
            if *from == u {
                out.push([plain, hat]);
            } else if *from == v {
                out.push([hat, plain]);
            } else {
                return Err(RealizeError::NotAnEndpoint { edge: e, vertex: *from });
            }
        }
        Ok(AssemblyDesign { labels: out })
    }

    pub fn labels(&self) -> &[[CohesiveEnd; 2]] {
        &self.labels
    }

    pub fn label(&self, half: HalfEdge) -> &CohesiveEnd {
        &self.labels[half.edge][half.side as usize]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    fn check_shape(&self, graph: &MultiGraph) -> Result<(), RealizeError> {
        if self.labels.len() != graph.edge_count() {
            return Err(RealizeError::Malformed {
                expected: graph.edge_count(),
                found: self.labels.len(),
            });
        }
        Ok(())
    }

    /// Index of the first edge whose two labels are not complementary.
    pub fn first_conflict(&self) -> Option<usize> {
        self.labels.iter().position(|[a, b]| a.complement() != *b)
    }

    /// `t_v`: the multiset of labels on the half-edges at `v`.
    pub fn vertex_tile(&self, graph: &MultiGraph, v: usize) -> Result<Tile, RealizeError> {
        self.check_shape(graph)?;
        let ends: Vec<CohesiveEnd> = graph.incident(v).iter().map(|&h| self.label(h).clone()).collect();
        Tile::new(ends).map_err(|e| match e {
            PotError::EmptyTile => RealizeError::IsolatedVertex(v),
            other => RealizeError::Pot(other),
        })
    }

    /// Per edge: `(symbol, vertex carrying the unhatted end)`.
    pub fn orientations(&self, graph: &MultiGraph) -> Vec<(BondSymbol, usize)> {
        self.labels
            .iter()
            .enumerate()
            .map(|(e, [a, _])| {
                let (u, v) = graph.edge(e);
                (a.symbol.clone(), if a.is_hatted() { v } else { u })
            })
            .collect()
    }
}

/// Complementarity on every edge and every induced vertex tile in the pot.
pub fn verify_design(
    graph: &MultiGraph,
    design: &AssemblyDesign,
    pot: &Pot,
) -> Result<bool, RealizeError> {
    design.check_shape(graph)?;
    if design.first_conflict().is_some() {
        return Ok(false);
    }
    for v in 0..graph.vertex_count() {
        match design.vertex_tile(graph, v) {
            Ok(tile) => {
                if !pot.contains(&tile) {
                    return Ok(false);
                }
            }
            Err(RealizeError::IsolatedVertex(_)) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

/// `P_λ(G)`: the distinct vertex tiles, in order of first appearance.
pub fn assembling_pot(graph: &MultiGraph, design: &AssemblyDesign) -> Result<Pot, RealizeError> {
    design.check_shape(graph)?;
    if let Some(edge) = design.first_conflict() {
        return Err(RealizeError::NotComplementary { edge });
    }
    let tiles = (0..graph.vertex_count())
        .map(|v| design.vertex_tile(graph, v))
        .collect::<Result<Vec<_>, _>>()?;
    Pot::new(tiles).map_err(RealizeError::Pot)
}

/// A realization of a graph by a pot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationCertificate {
    /// Pot index of the tile placed at each vertex.
    pub tile_of: Vec<usize>,
    /// How often each pot tile is used.
    pub counts: Vec<u64>,
    pub design: AssemblyDesign,
}

impl RealizationCertificate {
    pub fn from_design(
        graph: &MultiGraph,
        design: AssemblyDesign,
        pot: &Pot,
    ) -> Result<Self, RealizeError> {
        if !verify_design(graph, &design, pot)? {
            return Err(RealizeError::NotRealized);
        }
        let mut counts = vec![0u64; pot.len()];
        let tile_of = (0..graph.vertex_count())
            .map(|v| {
                let t = pot
                    .index_of(&design.vertex_tile(graph, v)?)
                    .ok_or(RealizeError::NotRealized)?;
                counts[t] += 1;
                Ok(t)
            })
            .collect::<Result<Vec<_>, RealizeError>>()?;
        Ok(RealizationCertificate {
            tile_of,
            counts,
            design,
        })
    }

    pub fn to_json(&self, graph: &MultiGraph) -> CertificateJson {
        CertificateJson {
            tiles: self.tile_of.clone(),
            edge_labels: self
                .design
                .orientations(graph)
                .into_iter()
                .enumerate()
                .map(|(e, (s, from))| (e, s.as_str().to_string(), from))
                .collect(),
        }
    }
}

/// `{"tiles": [tile index per vertex], "edge_labels": [[edge, symbol, oriented_from]]}`
/// where `oriented_from` is the endpoint holding the unhatted end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub tiles: Vec<usize>,
    pub edge_labels: Vec<(usize, String, usize)>,
}

impl CertificateJson {
    pub fn into_certificate(
        self,
        graph: &MultiGraph,
        pot: &Pot,
    ) -> Result<RealizationCertificate, RealizeError> {
        let mut labels = vec![None; graph.edge_count()];
        for (e, s, from) in self.edge_labels {
            let slot = labels.get_mut(e).ok_or(RealizeError::Malformed {
                expected: graph.edge_count(),
                found: e + 1,
            })?;
            *slot = Some((BondSymbol::new(s).map_err(RealizeError::Pot)?, from));
        }
        let found = labels.iter().filter(|l| l.is_some()).count();
        let labels: Vec<(BondSymbol, usize)> = labels
            .into_iter()
            .collect::<Option<_>>()
            .ok_or(RealizeError::Malformed {
                expected: graph.edge_count(),
                found,
            })?;
        let design = AssemblyDesign::oriented(graph, &labels)?;
        let cert = RealizationCertificate::from_design(graph, design, pot)?;
        if cert.tile_of != self.tiles {
            return Err(RealizeError::NotRealized);
        }
        Ok(cert)
    }
}
