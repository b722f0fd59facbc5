//! Assembly designs, realization search and enumeration of outputs.

mod design;
mod enumerate;
mod search;

pub use design::{
    assembling_pot, verify_design, AssemblyDesign, CertificateJson, RealizationCertificate,
};
pub use enumerate::{enumerate_realizable, for_each_assembly, Enumeration, RealizedGraph};
pub use search::find_realization;

use crate::pot::PotError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealizeError {
    #[error("malformed design: graph has {expected} edges, labels cover {found}")]
    Malformed { expected: usize, found: usize },
    #[error("vertex {vertex} is not an endpoint of edge {edge}")]
    NotAnEndpoint { edge: usize, vertex: usize },
    #[error("edge {edge} does not carry complementary labels")]
    NotComplementary { edge: usize },
    #[error("vertex {0} has no incident edges and cannot hold a tile")]
    IsolatedVertex(usize),
    #[error("design does not realize the graph with this pot")]
    NotRealized,
    #[error(transparent)]
    Pot(PotError),
}
