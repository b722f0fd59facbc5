//! Generators for the graph families used throughout the toolkit.
//!
//! Lattices and tubes number vertices row-major. In an `m x n` lattice tube
//! the first and last of the `n` drawn columns are the same column, so the
//! tube has `m * (n - 1)` vertices and every row closes into a cycle of
//! length `n - 1`. Diagonals of triangular lattices run from `(row, col)` to
//! `(row + 1, col + 1)`.

use super::{GraphError, MultiGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Platonic {
    Tetrahedron,
    Hexahedron,
    Octahedron,
    Icosahedron,
    Dodecahedron,
}

impl Platonic {
    pub fn parse(name: &str) -> Option<Platonic> {
        match name.to_ascii_lowercase().as_str() {
            "tetrahedron" | "tetra" => Some(Platonic::Tetrahedron),
            "hexahedron" | "hexa" | "cube" => Some(Platonic::Hexahedron),
            "octahedron" | "octa" => Some(Platonic::Octahedron),
            "icosahedron" | "icosa" => Some(Platonic::Icosahedron),
            "dodecahedron" | "dodeca" => Some(Platonic::Dodecahedron),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Platonic::Tetrahedron => "tetrahedron",
            Platonic::Hexahedron => "hexahedron",
            Platonic::Octahedron => "octahedron",
            Platonic::Icosahedron => "icosahedron",
            Platonic::Dodecahedron => "dodecahedron",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Complete(usize),
    /// `C_n`; `C_1` is a single loop and `C_2` a double edge.
    Cycle(usize),
    Platonic(Platonic),
    SquareLattice { rows: usize, cols: usize },
    TriangleLattice { rows: usize, cols: usize },
    SquareTube { rows: usize, cols: usize },
    TriangleTube { rows: usize, cols: usize },
}

impl Family {
    /// Parses a family name with its dimension list, e.g. `("square_tube", [4, 5])`.
    pub fn parse(name: &str, dims: &[usize]) -> Result<Family, GraphError> {
        let need = |k: usize| -> Result<(), GraphError> {
            if dims.len() == k {
                Ok(())
            } else {
                Err(GraphError::Degenerate(format!(
                    "family {name} takes {k} dimension(s), got {}",
                    dims.len()
                )))
            }
        };
        let family = match name {
            "complete" => {
                need(1)?;
                Family::Complete(dims[0])
            }
            "cycle" => {
                need(1)?;
                Family::Cycle(dims[0])
            }
            "square_lattice" => {
                need(2)?;
                Family::SquareLattice { rows: dims[0], cols: dims[1] }
            }
            "triangle_lattice" => {
                need(2)?;
                Family::TriangleLattice { rows: dims[0], cols: dims[1] }
            }
            "square_tube" => {
                need(2)?;
                Family::SquareTube { rows: dims[0], cols: dims[1] }
            }
            "triangle_tube" => {
                need(2)?;
                Family::TriangleTube { rows: dims[0], cols: dims[1] }
            }
            other => match Platonic::parse(other) {
                Some(p) => Family::Platonic(p),
                None => {
                    return Err(GraphError::Degenerate(format!("unknown graph family {other:?}")))
                }
            },
        };
        Ok(family)
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Family::Complete(n) => write!(f, "complete {n}"),
            Family::Cycle(n) => write!(f, "cycle {n}"),
            Family::Platonic(p) => f.write_str(p.name()),
            Family::SquareLattice { rows, cols } => write!(f, "square_lattice {rows}x{cols}"),
            Family::TriangleLattice { rows, cols } => write!(f, "triangle_lattice {rows}x{cols}"),
            Family::SquareTube { rows, cols } => write!(f, "square_tube {rows}x{cols}"),
            Family::TriangleTube { rows, cols } => write!(f, "triangle_tube {rows}x{cols}"),
        }
    }
}

/// Generates a member of `family`; the edge list comes back sorted.
pub fn generate(family: &Family) -> Result<MultiGraph, GraphError> {
    let (n, edges) = match *family {
        Family::Complete(n) => {
            at_least("complete graph order", n, 1)?;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
            (n, edges)
        }
        Family::Cycle(n) => {
            at_least("cycle length", n, 1)?;
            (n, (0..n).map(|i| (i, (i + 1) % n)).collect())
        }
        Family::Platonic(p) => platonic(p),
        Family::SquareLattice { rows, cols } => {
            lattice_dims(rows, cols)?;
            (rows * cols, lattice_edges(rows, cols, false))
        }
        Family::TriangleLattice { rows, cols } => {
            lattice_dims(rows, cols)?;
            (rows * cols, lattice_edges(rows, cols, true))
        }
        Family::SquareTube { rows, cols } => {
            tube_dims(rows, cols)?;
            (rows * (cols - 1), tube_edges(rows, cols - 1, false))
        }
        Family::TriangleTube { rows, cols } => {
            tube_dims(rows, cols)?;
            (rows * (cols - 1), tube_edges(rows, cols - 1, true))
        }
    };
    MultiGraph::with_sorted_edges(n, edges)
}

fn at_least(what: &str, value: usize, min: usize) -> Result<(), GraphError> {
    if value < min {
        Err(GraphError::Degenerate(format!("{what} must be at least {min}, got {value}")))
    } else {
        Ok(())
    }
}

fn lattice_dims(rows: usize, cols: usize) -> Result<(), GraphError> {
    at_least("lattice rows", rows, 2)?;
    at_least("lattice columns", cols, 2)
}

fn tube_dims(rows: usize, cols: usize) -> Result<(), GraphError> {
    at_least("tube rows", rows, 2)?;
    at_least("tube columns (n <= 3 is degenerate)", cols, 4)
}

fn lattice_edges(rows: usize, cols: usize, diagonals: bool) -> Vec<(usize, usize)> {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
                if diagonals && c + 1 < cols {
                    edges.push((id(r, c), id(r + 1, c + 1)));
                }
            }
        }
    }
    edges
}

/// `period` distinct columns; column indices wrap.
fn tube_edges(rows: usize, period: usize, diagonals: bool) -> Vec<(usize, usize)> {
    let id = |r: usize, c: usize| r * period + (c % period);
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..period {
            edges.push((id(r, c), id(r, c + 1)));
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
                if diagonals {
                    edges.push((id(r, c), id(r + 1, c + 1)));
                }
            }
        }
    }
    edges
}

fn platonic(p: Platonic) -> (usize, Vec<(usize, usize)>) {
    match p {
        Platonic::Tetrahedron => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        // Vertex i here is v_{i+1} of the usual cube drawing: v1 ~ v2, v3, v5 and
        // v7 is antipodal to v1.
        Platonic::Hexahedron => (
            8,
            vec![
                (0, 1),
                (0, 2),
                (0, 4),
                (1, 3),
                (1, 5),
                (2, 3),
                (2, 7),
                (3, 6),
                (4, 5),
                (4, 7),
                (5, 6),
                (6, 7),
            ],
        ),
        // Antipodal pairs (0,1), (2,3), (4,5).
        Platonic::Octahedron => (
            6,
            vec![
                (0, 2),
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 2),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 4),
                (2, 5),
                (3, 4),
                (3, 5),
            ],
        ),
        Platonic::Icosahedron => (
            12,
            vec![
                (0, 1),
                (0, 5),
                (0, 7),
                (0, 8),
                (0, 11),
                (1, 2),
                (1, 5),
                (1, 6),
                (1, 8),
                (2, 3),
                (2, 6),
                (2, 8),
                (2, 9),
                (3, 4),
                (3, 6),
                (3, 9),
                (3, 10),
                (4, 5),
                (4, 6),
                (4, 10),
                (4, 11),
                (5, 6),
                (5, 11),
                (7, 8),
                (7, 9),
                (7, 10),
                (7, 11),
                (8, 9),
                (9, 10),
                (10, 11),
            ],
        ),
        Platonic::Dodecahedron => (
            20,
            vec![
                (0, 1),
                (0, 10),
                (0, 19),
                (1, 2),
                (1, 8),
                (2, 3),
                (2, 6),
                (3, 4),
                (3, 19),
                (4, 5),
                (4, 17),
                (5, 6),
                (5, 15),
                (6, 7),
                (7, 8),
                (7, 14),
                (8, 9),
                (9, 10),
                (9, 13),
                (10, 11),
                (11, 12),
                (11, 18),
                (12, 13),
                (12, 16),
                (13, 14),
                (14, 15),
                (15, 16),
                (16, 17),
                (17, 18),
                (18, 19),
            ],
        ),
    }
}
