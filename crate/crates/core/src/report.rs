//! Machine-readable reports emitted by the command-line tool.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::{lp_objective, part_connectivity, part_cuts, Instance, MultiwayCut};

#[derive(Clone, Debug, Serialize)]
pub struct AlgorithmResult {
    pub algorithm: String,
    pub objective: Option<f64>,
    pub millis: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_vs_oracle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub algorithm: String,
    pub p: String,
    pub objective: f64,
    pub part_cuts: Vec<f64>,
    /// Part i (0-based here) holds terminal t_{i+1}.
    pub partition: Vec<Vec<usize>>,
    pub connected: Vec<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_grid: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_used: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub states_explored: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_vs_oracle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub timings_ms: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub algorithms: Vec<AlgorithmResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl SolveReport {
    pub fn for_cut(inst: &Instance, algorithm: &str, cut: &MultiwayCut) -> Self {
        Self {
            algorithm: algorithm.to_string(),
            p: inst.p.to_string(),
            objective: lp_objective(inst, cut),
            part_cuts: part_cuts(&inst.graph, cut.assignment(), cut.k()),
            partition: cut.parts().iter().map(|p| p.to_vec()).collect(),
            connected: part_connectivity(inst, cut),
            certified: None,
            d_grid: None,
            d_used: None,
            states_explored: None,
            threshold: None,
            ratio_vs_oracle: None,
            seed: None,
            timings_ms: BTreeMap::new(),
            algorithms: Vec::new(),
            details: None,
        }
    }

    /// Objective of the reported partition, recomputed from scratch.
    pub fn recompute_objective(&self, inst: &Instance) -> Option<f64> {
        let mut assignment = vec![usize::MAX; inst.n()];
        for (i, part) in self.partition.iter().enumerate() {
            for &v in part {
                *assignment.get_mut(v)? = i;
            }
        }
        let cut = MultiwayCut::new(inst, assignment).ok()?;
        Some(lp_objective(inst, &cut))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FractionalReport {
    pub p: String,
    pub objective: f64,
    pub part_cuts: Vec<f64>,
    pub feasible: bool,
}
