//! Approximation algorithms.
//!
//! The pipeline runs in three stages for a guess D ≥ OPT^p: a
//! multiplicative-weights cover by low-cut sets ([`mwu_cover`]), an
//! uncrossing pass turning the cover into a partition ([`uncross`]), and an
//! aggregation of terminal-free parts into the k terminal parts
//! ([`aggregate`]). [`approx_solve`] sweeps D over a geometric grid.
//! [`trivial_solve`] is the isolating-cut baseline.

mod aggregate;
mod mwu;
mod pipeline;
mod trivial;
mod uncross;

pub use aggregate::{aggregate, Aggregation};
pub use mwu::{default_beta, level_count, mwu_cover, CutCollection, MwuOutcome, UtcConfig};
pub use pipeline::{approx_solve, d_grid, ApproxConfig, PipelineReport, RunSummary, Source};
pub use trivial::{trivial_solve, TrivialOutcome};
pub use uncross::{uncross, uncross_with, Uncrossing};
