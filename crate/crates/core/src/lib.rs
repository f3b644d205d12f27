//! Solvers for the minimum ℓp-norm multiway cut problem.
//!
//! Given a weighted undirected graph, terminals t_1..t_k and p ≥ 1, find a
//! partition (P_1, …, P_k) of the vertices with t_i ∈ P_i minimizing
//! (Σ_i w(δ(P_i))^p)^{1/p}.
//!
//! - [`exact`]: branch-and-bound enumeration, the reference oracle.
//! - [`approx`]: the isolating-cut baseline and the cover / uncross /
//!   aggregate pipeline.
//! - [`utc`]: the unbalanced-terminal-cut subroutine used by the pipeline.
//! - [`relax`]: scoring of fractional points of the convex relaxation.
//! - [`instances`]: gadget and random generators; [`format`]: text files.

pub mod approx;
pub mod error;
pub mod exact;
pub mod flow;
pub mod format;
pub mod graph;
pub mod instances;
pub mod relax;
pub mod report;
pub mod utc;

pub use error::{Error, Result};
pub use graph::{
    cut_weight, lp_objective, part_connectivity, part_cuts, Edge, Exponent, Graph, Instance,
    MultiwayCut, VertexSet,
};
