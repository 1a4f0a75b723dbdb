//! Laplacian and signless Laplacian spectra of simple graphs, composition
//! rules for graph operations, and recipes that build equienergetic,
//! non-cospectral graph pairs, each verified by direct eigendecomposition.

pub mod composition;
pub mod constructions;
pub mod edgelist;
pub mod eigen;
pub mod error;
pub mod graph;
pub mod sample;
pub mod spectra;
pub mod verify;

#[cfg(test)]
mod testutil;

pub use composition::{Lemma, RuleOutcome};
pub use constructions::{ClosedForm, ClosedFormMatch, Precondition, Recipe, RecipeId};
pub use edgelist::{parse_edge_list, read_edge_list, to_edge_list};
pub use error::{Error, Result};
pub use graph::{Graph, NamedFamily};
pub use spectra::{EnergyReport, MatrixKind, Spectrum};
pub use verify::{DiscrepancyRecord, Tolerances, VerificationReport};
