use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::isolating_cut;
use crate::graph::{lp_objective, Exponent, Instance, MultiwayCut};

use super::{aggregate, default_beta, mwu_cover, trivial_solve, uncross, UtcConfig};

/// Longest D grid explored by [`approx_solve`].
const MAX_GRID: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxConfig {
    /// c_β in β = c_β · √(max(1, log2 n) · max(1, log2 2k)).
    pub beta_coeff: f64,
    /// Overrides the computed β when set.
    pub beta: Option<f64>,
    pub utc: UtcConfig,
}

impl Default for ApproxConfig {
    fn default() -> Self {
        Self {
            beta_coeff: 1.0,
            beta: None,
            utc: UtcConfig::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Pipeline,
    Trivial,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunSummary {
    pub d: f64,
    pub objective: Option<f64>,
    pub certified: bool,
    pub mwu_sets: usize,
    pub uncross_steps: usize,
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub cut: MultiwayCut,
    pub objective: f64,
    /// D of the winning pipeline run; `None` when the trivial cut won.
    pub d_used: Option<f64>,
    pub mwu_sets: usize,
    pub uncross_steps: usize,
    /// Certification of the best pipeline run.
    pub certified: bool,
    pub source: Source,
    pub beta: f64,
    /// Σ_i (min isolating cut of t_i)^p ≤ OPT^p.
    pub lower_bound_p: f64,
    /// (trivial objective)^p ≥ OPT^p.
    pub upper_bound_p: f64,
    pub trivial_objective: f64,
    pub runs: Vec<RunSummary>,
}

/// {U/2^j : j ≥ 0} down to `lower` (at least one point, at most 64).
pub fn d_grid(upper: f64, lower: f64) -> Vec<f64> {
    let mut grid = vec![upper];
    while grid.len() < MAX_GRID {
        let next = grid[grid.len() - 1] / 2.0;
        if next < lower || next <= 0.0 {
            break;
        }
        grid.push(next);
    }
    grid
}

struct Run {
    summary: RunSummary,
    cut: Option<MultiwayCut>,
}

fn run_once(inst: &Instance, d: f64, beta: f64, utc: UtcConfig) -> Run {
    let mut summary = RunSummary {
        d,
        objective: None,
        certified: false,
        mwu_sets: 0,
        uncross_steps: 0,
        error: None,
    };
    let result = (|| {
        let cover = mwu_cover(inst, d, beta, utc)?;
        summary.certified = cover.certified;
        summary.mwu_sets = cover.collection.len();
        let partition = uncross(&inst.graph, &cover.collection)?;
        summary.uncross_steps = partition.steps;
        aggregate(inst, &partition.parts)
    })();
    match result {
        Ok(agg) => {
            summary.objective = Some(lp_objective(inst, &agg.cut));
            Run {
                summary,
                cut: Some(agg.cut),
            }
        }
        Err(e) => {
            summary.error = Some(e.to_string());
            Run { summary, cut: None }
        }
    }
}

pub fn approx_solve(inst: &Instance, config: &ApproxConfig) -> Result<PipelineReport> {
    let p = match inst.p {
        Exponent::Finite(p) => p,
        Exponent::Infinity => {
            return Err(Error::UnsupportedP(
                "the approximation pipeline needs finite p; use trivial or exact".into(),
            ))
        }
    };
    let beta = config
        .beta
        .unwrap_or_else(|| default_beta(inst.n(), inst.k(), config.beta_coeff));
    let trivial = trivial_solve(inst);
    let lower: f64 = (0..inst.k())
        .map(|i| isolating_cut(&inst.graph, &inst.terminals, i).value.powf(p))
        .sum();
    let upper = trivial.objective.powf(p);

    let grid = if upper > 0.0 {
        d_grid(upper, lower)
    } else {
        Vec::new()
    };
    let runs: Vec<Run> = grid
        .par_iter()
        .map(|&d| run_once(inst, d, beta, config.utc))
        .collect();

    let best = runs
        .iter()
        .filter_map(|r| Some((r.summary.objective?, r)))
        .min_by(|a, b| {
            a.0.total_cmp(&b.0)
                .then(a.1.summary.d.total_cmp(&b.1.summary.d))
        });

    let mut report = PipelineReport {
        cut: trivial.cut.clone(),
        objective: trivial.objective,
        d_used: None,
        mwu_sets: 0,
        uncross_steps: 0,
        certified: false,
        source: Source::Trivial,
        beta,
        lower_bound_p: lower,
        upper_bound_p: upper,
        trivial_objective: trivial.objective,
        runs: Vec::new(),
    };
    if let Some((objective, run)) = best {
        report.mwu_sets = run.summary.mwu_sets;
        report.uncross_steps = run.summary.uncross_steps;
        report.certified = run.summary.certified;
        if objective < trivial.objective {
            report.cut = run.cut.clone().expect("successful runs carry a cut");
            report.objective = objective;
            report.d_used = Some(run.summary.d);
            report.source = Source::Pipeline;
        }
    }
    report.runs = runs.into_iter().map(|r| r.summary).collect();
    Ok(report)
}
