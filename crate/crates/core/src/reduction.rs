//! Pots that encode 3-coloring.
//!
//! The vertex-edge-color triples of the constructions become single bond
//! symbols `v{vertex}_e{edge}_{color}`; the self-pairing arms of the
//! substructure gadget are `v{vertex}_{color}{color}`. `_` is reserved as the
//! separator, so the parts can always be read back.

use serde::Serialize;
use thiserror::Error;

use crate::graph::MultiGraph;
use crate::pot::{BondSymbol, CohesiveEnd, Pot, PotError, Tile};
use crate::realize::{assembling_pot, AssemblyDesign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    B,
    G,
    R,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::B, Color::G, Color::R];

    pub fn letter(self) -> char {
        match self {
            Color::B => 'b',
            Color::G => 'g',
            Color::R => 'r',
        }
    }

    fn others(self) -> [Color; 2] {
        match self {
            Color::B => [Color::G, Color::R],
            Color::G => [Color::B, Color::R],
            Color::R => [Color::B, Color::G],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Prp,
    Srp,
}

impl Variant {
    pub fn parse(name: &str) -> Option<Variant> {
        match name.to_ascii_lowercase().as_str() {
            "prp" => Some(Variant::Prp),
            "srp" => Some(Variant::Srp),
            _ => None,
        }
    }
}

/// Where a tile of a reduction pot comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TileOrigin {
    Vertex { vertex: usize, color: Color },
    /// `colors` are at the first and second endpoint of the source edge.
    Edge { edge: usize, colors: (Color, Color) },
}

/// Graph whose assembling pot is the reduction pot, with the design used.
#[derive(Debug, Clone)]
pub struct HostGraph {
    pub graph: MultiGraph,
    pub design: AssemblyDesign,
}

#[derive(Debug, Clone)]
pub struct ReductionArtifact {
    pub variant: Variant,
    pub pot: Pot,
    pub target_order: usize,
    /// One entry per pot tile, in pot order.
    pub provenance: Vec<TileOrigin>,
    pub host: Option<HostGraph>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("input graph must be connected")]
    Disconnected,
    #[error("input graph must be simple (no loops or parallel edges)")]
    NotSimple,
    #[error("input graph must have at least one edge")]
    NoEdges,
    #[error("input graph must be 4-regular: vertex {vertex} has degree {degree}")]
    NotFourRegular { vertex: usize, degree: usize },
    #[error(transparent)]
    Pot(#[from] PotError),
}

fn check_input(g: &MultiGraph) -> Result<(), ReductionError> {
    if g.edge_count() == 0 {
        return Err(ReductionError::NoEdges);
    }
    if !g.is_simple() {
        return Err(ReductionError::NotSimple);
    }
    if !g.is_connected() {
        return Err(ReductionError::Disconnected);
    }
    Ok(())
}

fn check_four_regular(g: &MultiGraph) -> Result<(), ReductionError> {
    check_input(g)?;
    match (0..g.vertex_count()).find(|&v| g.degree(v) != 4) {
        Some(v) => Err(ReductionError::NotFourRegular {
            vertex: v,
            degree: g.degree(v),
        }),
        None => Ok(()),
    }
}

fn symbol(name: String) -> BondSymbol {
    BondSymbol::new(name).expect("generated names are valid")
}

fn arm(v: usize, e: usize, c: Color) -> BondSymbol {
    symbol(format!("v{v}_e{e}_{}", c.letter()))
}

fn pair_arm(v: usize, x: Color, y: Color) -> BondSymbol {
    let (a, b) = if x <= y { (x, y) } else { (y, x) };
    symbol(format!("v{v}_{}{}", a.letter(), b.letter()))
}

fn incident_edges(g: &MultiGraph, v: usize) -> Vec<usize> {
    let mut es: Vec<usize> = g.incident(v).iter().map(|h| h.edge).collect();
    es.sort_unstable();
    es
}

/// The six ordered proper colorings of an edge's endpoints.
fn edge_colorings() -> impl Iterator<Item = (Color, Color)> {
    Color::ALL
        .into_iter()
        .flat_map(|x| x.others().into_iter().map(move |y| (x, y)))
}

fn vertex_tile(g: &MultiGraph, v: usize, c: Color, self_pairs: bool) -> Tile {
    let mut ends: Vec<CohesiveEnd> = incident_edges(g, v)
        .into_iter()
        .map(|e| CohesiveEnd::unhatted(arm(v, e, c)))
        .collect();
    if self_pairs {
        for y in [c, c.others()[0], c.others()[1]] {
            let s = pair_arm(v, c, y);
            ends.push(CohesiveEnd::unhatted(s.clone()));
            ends.push(CohesiveEnd::hatted(s));
        }
    }
    Tile::new(ends).expect("vertex has arms")
}

fn edge_tile(g: &MultiGraph, e: usize, x: Color, y: Color) -> Tile {
    let (u, v) = g.edge(e);
    Tile::new(vec![
        CohesiveEnd::hatted(arm(u, e, x)),
        CohesiveEnd::hatted(arm(v, e, y)),
    ])
    .expect("two arms")
}

/// Pot that realizes a graph of order `|V| + |E|` exactly when `g` is
/// 3-colorable. Vertex tiles have one arm per incident edge.
pub fn prp_pot(g: &MultiGraph) -> Result<ReductionArtifact, ReductionError> {
    check_input(g)?;
    let mut tiles = Vec::new();
    let mut provenance = Vec::new();
    for v in 0..g.vertex_count() {
        for c in Color::ALL {
            tiles.push(vertex_tile(g, v, c, false));
            provenance.push(TileOrigin::Vertex { vertex: v, color: c });
        }
    }
    for e in 0..g.edge_count() {
        for (x, y) in edge_colorings() {
            tiles.push(edge_tile(g, e, x, y));
            provenance.push(TileOrigin::Edge { edge: e, colors: (x, y) });
        }
    }
    let pot = Pot::new(tiles)?;
    debug_assert_eq!(pot.len(), provenance.len());
    Ok(ReductionArtifact {
        variant: Variant::Prp,
        pot,
        target_order: g.vertex_count() + g.edge_count(),
        provenance,
        host: None,
    })
}

/// Assembling pot of the blown-up graph of a 4-regular `g`. It realizes a
/// graph of order `3|V|` exactly when `g` is 3-colorable.
///
/// Each source vertex becomes six degree-10 vertices, two per color; the
/// self-pairing arms join them into one gadget (a double edge between the two
/// copies of a color, a 4-cycle through the copies of two colors). Each source
/// edge becomes six subdivided edges, one per ordered proper coloring.
pub fn srp_pot(g: &MultiGraph) -> Result<ReductionArtifact, ReductionError> {
    check_four_regular(g)?;
    let k = g.vertex_count();
    let color_index = |c: Color| Color::ALL.iter().position(|&x| x == c).unwrap();
    let copy = |v: usize, c: Color, i: usize| 6 * v + 2 * color_index(c) + i;
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut origin = vec![None; 6 * k + 6 * g.edge_count()];
    for v in 0..k {
        for c in Color::ALL {
            for i in 0..2 {
                origin[copy(v, c, i)] = Some(TileOrigin::Vertex { vertex: v, color: c });
            }
            let s = pair_arm(v, c, c);
            for (from, to) in [(0, 1), (1, 0)] {
                edges.push((copy(v, c, from), copy(v, c, to)));
                labels.push((s.clone(), copy(v, c, from)));
            }
        }
        for (x, y) in [(Color::B, Color::G), (Color::B, Color::R), (Color::G, Color::R)] {
            let s = pair_arm(v, x, y);
            let cycle = [copy(v, x, 0), copy(v, y, 0), copy(v, x, 1), copy(v, y, 1)];
            for i in 0..4 {
                let (a, b) = (cycle[i], cycle[(i + 1) % 4]);
                edges.push((a, b));
                labels.push((s.clone(), a));
            }
        }
    }
    for e in 0..g.edge_count() {
        let (u, v) = g.edge(e);
        for (j, (x, y)) in edge_colorings().enumerate() {
            let mid = 6 * k + 6 * e + j;
            origin[mid] = Some(TileOrigin::Edge { edge: e, colors: (x, y) });
            let cu = x.others().iter().position(|&c| c == y).unwrap();
            let cv = y.others().iter().position(|&c| c == x).unwrap();
            let (a, b) = (copy(u, x, cu), copy(v, y, cv));
            edges.push((a, mid));
            labels.push((arm(u, e, x), a));
            edges.push((b, mid));
            labels.push((arm(v, e, y), b));
        }
    }
    let host = MultiGraph::new(origin.len(), edges).expect("indices in range");
    let design = AssemblyDesign::oriented(&host, &labels).expect("one label per edge");
    let pot = assembling_pot(&host, &design).expect("design is complementary");
    let mut provenance = vec![None; pot.len()];
    for (v, o) in origin.iter().enumerate() {
        let tile = design.vertex_tile(&host, v).expect("every vertex has arms");
        let t = pot.index_of(&tile).expect("assembling pot holds every vertex tile");
        provenance[t] = *o;
    }
    Ok(ReductionArtifact {
        variant: Variant::Srp,
        pot,
        target_order: 3 * k,
        provenance: provenance.into_iter().map(|o| o.expect("all tiles placed")).collect(),
        host: Some(HostGraph {
            graph: host,
            design,
        }),
    })
}

pub fn reduction_pot(g: &MultiGraph, variant: Variant) -> Result<ReductionArtifact, ReductionError> {
    match variant {
        Variant::Prp => prp_pot(g),
        Variant::Srp => srp_pot(g),
    }
}

/// `g` with every edge subdivided; for `Srp` each original vertex also gets
/// three loops. New vertex `|V| + e` sits on edge `e`.
pub fn subdivided_target(g: &MultiGraph, variant: Variant) -> Result<MultiGraph, ReductionError> {
    match variant {
        Variant::Prp => check_input(g)?,
        Variant::Srp => check_four_regular(g)?,
    }
    let n = g.vertex_count();
    let mut edges = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        edges.push((u, n + e));
        edges.push((v, n + e));
    }
    if variant == Variant::Srp {
        for v in 0..n {
            edges.extend(std::iter::repeat_n((v, v), 3));
        }
    }
    Ok(MultiGraph::new(n + g.edge_count(), edges).expect("indices in range"))
}

/// A proper 3-coloring by backtracking, or `None`. Graphs with loops have none.
pub fn three_colorable(g: &MultiGraph) -> Option<Vec<Color>> {
    if g.has_loops() {
        return None;
    }
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut colors: Vec<Option<Color>> = vec![None; n];
    fn go(v: usize, adj: &[Vec<usize>], colors: &mut [Option<Color>]) -> bool {
        if v == adj.len() {
            return true;
        }
        for c in Color::ALL {
            if adj[v].iter().any(|&w| colors[w] == Some(c)) {
                continue;
            }
            colors[v] = Some(c);
            if go(v + 1, adj, colors) {
                return true;
            }
        }
        colors[v] = None;
        false
    }
    go(0, &adj, &mut colors).then(|| colors.into_iter().map(|c| c.unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::graph::{generate, Family, Platonic};
    use crate::realize::find_realization;

    fn cycle(n: usize) -> MultiGraph {
        MultiGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    fn octahedron() -> MultiGraph {
        generate(&Family::Platonic(Platonic::Octahedron)).unwrap()
    }

    #[test]
    fn coloring_oracle() {
        assert!(three_colorable(&cycle(5)).is_some());
        assert!(three_colorable(&generate(&Family::Complete(4)).unwrap()).is_none());
        let g = octahedron();
        let c = three_colorable(&g).unwrap();
        assert!(g.edges().iter().all(|&(u, v)| c[u] != c[v]));
    }

    #[test]
    fn prp_sizes() {
        let a = prp_pot(&octahedron()).unwrap();
        assert_eq!((a.pot.len(), a.target_order), (90, 18));
        let a = prp_pot(&cycle(5)).unwrap();
        assert_eq!((a.pot.len(), a.target_order), (45, 10));
        assert_eq!(a.provenance.len(), 45);
        let k4 = generate(&Family::Complete(4)).unwrap();
        assert_eq!(prp_pot(&k4).unwrap().target_order, 10);
    }

    #[test]
    fn prp_rejects_disconnected() {
        let g = MultiGraph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(prp_pot(&g).unwrap_err(), ReductionError::Disconnected);
    }

    #[test]
    fn prp_c5_and_k4() {
        let c5 = cycle(5);
        let a = prp_pot(&c5).unwrap();
        let t = subdivided_target(&c5, Variant::Prp).unwrap();
        assert!(crate::graph::isomorphic(&t, &cycle(10)).is_some());
        assert!(find_realization(&a.pot, &t, &mut Budget::default()).unwrap().is_some());

        let k4 = generate(&Family::Complete(4)).unwrap();
        let a = prp_pot(&k4).unwrap();
        let t = subdivided_target(&k4, Variant::Prp).unwrap();
        assert_eq!(t.degree_sequence(), vec![3, 3, 3, 3, 2, 2, 2, 2, 2, 2]);
        assert!(find_realization(&a.pot, &t, &mut Budget::default()).unwrap().is_none());
    }

    #[test]
    fn srp_octahedron() {
        let g = octahedron();
        let a = srp_pot(&g).unwrap();
        let host = a.host.as_ref().unwrap();
        assert_eq!(host.graph.vertex_count(), 108);
        assert!(host.graph.is_connected());
        assert_eq!(a.target_order, 18);
        assert_eq!(a.pot.len(), 3 * 6 + 6 * 12);
        for (t, o) in a.pot.tiles().iter().zip(&a.provenance) {
            match o {
                TileOrigin::Vertex { .. } => {
                    assert_eq!(t.arity(), 10);
                    let pairs = t.ends().iter().filter(|e| !e.is_hatted() && t.count(&e.complement()) > 0).count();
                    assert_eq!(pairs, 3);
                }
                TileOrigin::Edge { .. } => assert_eq!(t.arity(), 2),
            }
        }
        for v in 0..6 {
            for c in Color::ALL {
                assert!(a.pot.contains(&vertex_tile(&g, v, c, true)));
            }
        }
        let target = subdivided_target(&g, Variant::Srp).unwrap();
        assert_eq!(target.vertex_count(), 18);
        assert!((0..6).all(|v| target.degree(v) == 10 && target.loop_count(v) == 3));
        assert!(find_realization(&a.pot, &target, &mut Budget::default()).unwrap().is_some());
    }

    #[test]
    fn srp_k5_has_no_target() {
        let k5 = generate(&Family::Complete(5)).unwrap();
        assert!(three_colorable(&k5).is_none());
        let a = srp_pot(&k5).unwrap();
        let target = subdivided_target(&k5, Variant::Srp).unwrap();
        assert_eq!(a.target_order, 15);
        assert!(find_realization(&a.pot, &target, &mut Budget::default()).unwrap().is_none());
    }

    #[test]
    fn srp_needs_four_regular() {
        let cube = generate(&Family::Platonic(Platonic::Hexahedron)).unwrap();
        assert!(matches!(srp_pot(&cube), Err(ReductionError::NotFourRegular { degree: 3, .. })));
    }
}
