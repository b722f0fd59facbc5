//! Flexible-tile pots: spectra, realizations, scenario checks and reductions.

pub mod budget;
pub mod cli;
pub mod graph;
pub mod pot;
pub mod realize;
pub mod reduction;
pub mod scenario;
pub mod spectrum;

pub use budget::{Budget, BudgetExhausted};
pub use graph::MultiGraph;
pub use pot::{parse_pot, BondSymbol, CohesiveEnd, Polarity, Pot, Tile};
