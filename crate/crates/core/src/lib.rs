//! Regular path queries under trail semantics.
//!
//! The crate classifies regular languages by the complexity of finding
//! trails (paths without repeated edges) whose label lies in the language,
//! and evaluates such queries on edge-labelled graphs:
//!
//! - [`automata`]: regular expressions, NFAs, minimal DFAs, boolean operations,
//!   containment and the transition monoid;
//! - [`classify`]: the tractability classes, trichotomy verdicts, hardness
//!   witnesses and the edge-disjoint-paths reduction gadget;
//! - [`graphdb`]: labelled graphs, trails and product-graph search;
//! - [`trailquery`]: shortest matching trails via the downward-closed fast
//!   path, the summary engine, or exhaustive search;
//! - [`enumerate`]: all matching trails in order of length.

pub mod automata;
pub mod classify;
pub mod enumerate;
mod error;
pub mod graphdb;
pub mod trailquery;

pub use automata::{MinimalDfa, RegexAst, StateId, Symbol, Word};
pub use classify::{classify, ClassificationReport, HardnessWitness, Trichotomy};
pub use error::{Error, Result};
pub use graphdb::{EdgeId, LabeledGraph, NodeId, Trail};
pub use trailquery::{solve, Engine, Language, QueryResult};
