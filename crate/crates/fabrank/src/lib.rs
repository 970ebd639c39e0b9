//! Preference-based fabric ranking and selection over force-labeled tactile
//! data.
//!
//! The crate covers the full desk-scale loop: deterministic synthetic fabric
//! datasets with synchronized GelSight/pressure press sessions, pairwise
//! comparison dataset construction under strict split isolation, pluggable
//! comparators (a calibrated ground-truth oracle and a remote model
//! endpoint), abstention-tolerant tournament ranking, multi-attribute
//! scenario selection with reasoning traces, and the evaluation metrics and
//! report formats used to score it all. The `fabrank` binary wires these into
//! reproducible command-line experiments.

pub mod data;
mod rng;
pub mod types;

pub use types::{Decision, Level, PropertyKind};
