//! Unbalanced terminal cut: the cheapest set carrying a τ fraction of the
//! vertex mass y and at most one terminal.
//!
//! `utc_exact` enumerates all subsets and is limited to small graphs.
//! `utc_heuristic` grows regions greedily from every seed and only
//! promises the relaxed mass bound `mass_factor · τ · y(V)`.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest vertex count accepted by [`utc_exact`].
pub const EXACT_LIMIT: usize = 24;
pub const DEFAULT_MASS_FACTOR: f64 = 0.25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum UtcMode {
    /// Exact when n ≤ [`EXACT_LIMIT`], heuristic otherwise.
    #[default]
    Auto,
    Exact,
    Heuristic,
}

#[derive(Clone, Copy, Debug)]
pub struct UtcQuery<'a> {
    pub graph: &'a Graph,
    pub y: &'a [f64],
    pub tau: f64,
    pub terminals: &'a [usize],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolvedBy {
    Exact,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UtcResult {
    pub set: VertexSet,
    pub cut: f64,
    pub y_mass: f64,
    pub mode: SolvedBy,
}

impl UtcQuery<'_> {
    fn total_mass(&self) -> f64 {
        self.y.iter().sum()
    }

    fn validate(&self) -> Result<()> {
        if self.y.len() != self.graph.n() {
            return Err(Error::DimensionMismatch(format!(
                "{} vertex weights for {} vertices",
                self.y.len(),
                self.graph.n()
            )));
        }
        if self.y.iter().any(|&m| !(m >= 0.0)) {
            return Err(Error::ConstraintViolation(
                "vertex weights must be nonnegative".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.tau) {
            return Err(Error::ConstraintViolation(format!(
                "tau = {} outside [0, 1]",
                self.tau
            )));
        }
        Ok(())
    }
}

/// Dispatches on `mode`; `Auto` picks exact for n ≤ [`EXACT_LIMIT`].
pub fn utc_solve(q: &UtcQuery<'_>, mode: UtcMode, mass_factor: f64) -> Result<UtcResult> {
    match mode {
        UtcMode::Exact => utc_exact(q),
        UtcMode::Heuristic => utc_heuristic(q, mass_factor),
        UtcMode::Auto if q.graph.n() <= EXACT_LIMIT => utc_exact(q),
        UtcMode::Auto => utc_heuristic(q, mass_factor),
    }
}

/// Keeps `best` as the minimum-cut candidate, ties (within the graph
/// tolerance) going to the lexicographically smaller set.
fn better(cut: f64, set: &VertexSet, best: &Option<(f64, VertexSet)>, tol: f64) -> bool {
    match best {
        None => true,
        Some((b, bs)) => cut < b - tol || (cut <= b + tol && set.lex_cmp(bs) == Ordering::Less),
    }
}

pub fn utc_exact(q: &UtcQuery<'_>) -> Result<UtcResult> {
    q.validate()?;
    let n = q.graph.n();
    if n > EXACT_LIMIT {
        return Err(Error::SizeLimit {
            n,
            limit: EXACT_LIMIT,
        });
    }
    let target = q.tau * q.total_mass();
    let mut is_terminal = vec![false; n];
    for &t in q.terminals {
        is_terminal[t] = true;
    }
    // suffix[v] = y(v..n)
    let mut suffix = vec![0.0; n + 1];
    for v in (0..n).rev() {
        suffix[v] = suffix[v + 1] + q.y[v];
    }
    let mut e = Enumerator {
        g: q.graph,
        y: q.y,
        is_terminal: &is_terminal,
        suffix: &suffix,
        target,
        slack: 1e-9 * target.abs().max(f64::MIN_POSITIVE),
        tol: q.graph.tolerance(),
        members: Vec::with_capacity(n),
        inside: vec![false; n],
        best: None,
    };
    e.walk(0, 0.0, 0.0, 0);
    let (_, set) = e.best.ok_or_else(|| {
        Error::Infeasible(format!(
            "no set with at most one terminal reaches mass {target}"
        ))
    })?;
    Ok(UtcResult {
        cut: q.graph.cut_weight(&set),
        y_mass: set.iter().map(|v| q.y[v]).sum(),
        set,
        mode: SolvedBy::Exact,
    })
}

struct Enumerator<'a> {
    g: &'a Graph,
    y: &'a [f64],
    is_terminal: &'a [bool],
    suffix: &'a [f64],
    target: f64,
    slack: f64,
    tol: f64,
    members: Vec<usize>,
    inside: Vec<bool>,
    best: Option<(f64, VertexSet)>,
}

impl Enumerator<'_> {
    fn walk(&mut self, v: usize, cut: f64, mass: f64, terminals: usize) {
        // even taking every remaining vertex cannot reach the target
        if mass + self.suffix[v] < self.target - self.slack {
            return;
        }
        let n = self.g.n();
        if v == n {
            if mass >= self.target {
                let set = VertexSet::from_ids(n, self.members.iter().copied());
                if better(cut, &set, &self.best, self.tol) {
                    self.best = Some((cut, set));
                }
            }
            return;
        }
        let t = usize::from(self.is_terminal[v]);
        if terminals + t <= 1 {
            let inner: f64 = self
                .g
                .neighbors(v)
                .iter()
                .filter(|&&(u, _)| self.inside[u])
                .map(|&(_, w)| w)
                .sum();
            let next_cut = cut + self.g.weighted_degree(v) - 2.0 * inner;
            self.inside[v] = true;
            self.members.push(v);
            self.walk(v + 1, next_cut, mass + self.y[v], terminals + t);
            self.members.pop();
            self.inside[v] = false;
        }
        self.walk(v + 1, cut, mass, terminals);
    }
}

pub fn utc_heuristic(q: &UtcQuery<'_>, mass_factor: f64) -> Result<UtcResult> {
    q.validate()?;
    let total = q.total_mass();
    if !(total > 0.0) {
        return Err(Error::ConstraintViolation(
            "heuristic needs y(V) > 0".into(),
        ));
    }
    let g = q.graph;
    let n = g.n();
    let threshold = mass_factor * q.tau * total;
    let tol = g.tolerance();
    let mut is_terminal = vec![false; n];
    for &t in q.terminals {
        is_terminal[t] = true;
    }
    let degree: Vec<f64> = (0..n).map(|v| g.weighted_degree(v)).collect();

    let grown: Vec<Option<(f64, VertexSet)>> = (0..n)
        .into_par_iter()
        .map(|seed| grow(g, q.y, &is_terminal, &degree, seed, threshold, tol))
        .collect();

    let mut best: Option<(f64, VertexSet)> = None;
    for v in 0..n {
        if q.y[v] >= threshold {
            let set = VertexSet::from_ids(n, [v]);
            if better(degree[v], &set, &best, tol) {
                best = Some((degree[v], set));
            }
        }
    }
    for (cut, set) in grown.into_iter().flatten() {
        if better(cut, &set, &best, tol) {
            best = Some((cut, set));
        }
    }
    let (_, set) = best.ok_or_else(|| {
        Error::Infeasible(format!(
            "no set with at most one terminal reaches mass {threshold}"
        ))
    })?;
    Ok(UtcResult {
        cut: g.cut_weight(&set),
        y_mass: set.iter().map(|v| q.y[v]).sum(),
        set,
        mode: SolvedBy::Heuristic,
    })
}

/// Greedy region growth from `seed`. Each step absorbs the vertex that
/// minimizes the resulting cut, preferring vertices adjacent to the
/// region; once the region holds a terminal no further terminal is
/// absorbed. Returns the cheapest prefix meeting `threshold`.
fn grow(
    g: &Graph,
    y: &[f64],
    is_terminal: &[bool],
    degree: &[f64],
    seed: usize,
    threshold: f64,
    tol: f64,
) -> Option<(f64, VertexSet)> {
    let n = g.n();
    let mut region = VertexSet::from_ids(n, [seed]);
    let mut to_region = vec![0.0; n];
    let mut adjacent = vec![false; n];
    for &(u, w) in g.neighbors(seed) {
        to_region[u] += w;
        adjacent[u] = true;
    }
    let mut has_terminal = is_terminal[seed];
    let mut cut = degree[seed];
    let mut mass = y[seed];
    let mut best: Option<(f64, VertexSet)> = None;
    loop {
        if mass >= threshold && better(cut, &region, &best, tol) {
            best = Some((cut, region.clone()));
        }
        let pick = (0..n)
            .filter(|&u| !region.contains(u) && !(has_terminal && is_terminal[u]))
            .map(|u| (!adjacent[u], cut + degree[u] - 2.0 * to_region[u], u))
            .min_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.cmp(&b.2)));
        let Some((_, next_cut, u)) = pick else { break };
        region.insert(u);
        cut = next_cut;
        mass += y[u];
        has_terminal |= is_terminal[u];
        for &(x, w) in g.neighbors(u) {
            to_region[x] += w;
            adjacent[x] = true;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_triples(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn exact_on_path() {
        let g = path3();
        let y = [1.0; 3];
        let q = UtcQuery {
            graph: &g,
            y: &y,
            tau: 1.0 / 3.0,
            terminals: &[0, 2],
        };
        let r = utc_exact(&q).unwrap();
        assert_eq!(r.set.to_vec(), vec![0]);
        assert_eq!(r.cut, 1.0);

        let q = UtcQuery {
            tau: 2.0 / 3.0,
            ..q
        };
        let r = utc_exact(&q).unwrap();
        assert_eq!(r.set.to_vec(), vec![0, 1]);
        assert_eq!(r.cut, 1.0);
        assert_eq!(r.y_mass, 2.0);

        let q = UtcQuery { tau: 1.0, ..q };
        assert!(matches!(utc_exact(&q), Err(Error::Infeasible(_))));
    }

    #[test]
    fn heuristic_on_path_matches_exact() {
        let g = path3();
        let y = [1.0; 3];
        let q = UtcQuery {
            graph: &g,
            y: &y,
            tau: 1.0 / 3.0,
            terminals: &[0, 2],
        };
        let r = utc_heuristic(&q, DEFAULT_MASS_FACTOR).unwrap();
        assert_eq!(r.cut, 1.0);
        assert_eq!(r.mode, SolvedBy::Heuristic);
        assert!(r.set.count_in(&[0, 2]) <= 1);
    }

    #[test]
    fn size_limit() {
        let g = Graph::new(25, vec![]).unwrap();
        let y = [1.0; 25];
        let q = UtcQuery {
            graph: &g,
            y: &y,
            tau: 0.5,
            terminals: &[0, 1],
        };
        assert!(matches!(utc_exact(&q), Err(Error::SizeLimit { n: 25, .. })));
        // Auto falls back to the heuristic
        let r = utc_solve(&q, UtcMode::Auto, DEFAULT_MASS_FACTOR).unwrap();
        assert_eq!(r.mode, SolvedBy::Heuristic);
    }

    #[test]
    fn heuristic_crosses_components() {
        // edgeless graph: growth must jump between components
        let g = Graph::new(4, vec![]).unwrap();
        let y = [1.0; 4];
        let q = UtcQuery {
            graph: &g,
            y: &y,
            tau: 1.0,
            terminals: &[0, 1],
        };
        // relaxed target 0.25 * 4 = 1: a singleton already suffices
        let r = utc_heuristic(&q, DEFAULT_MASS_FACTOR).unwrap();
        assert_eq!(r.cut, 0.0);
        // relaxed factor 1: needs all but one terminal
        let r = utc_heuristic(&q, 0.75).unwrap();
        assert!(r.y_mass >= 3.0);
        assert_eq!(r.set.count_in(&[0, 1]), 1);
    }

    #[test]
    fn heuristic_infeasible() {
        let g = path3();
        let y = [1.0, 0.0, 1.0];
        let q = UtcQuery {
            graph: &g,
            y: &y,
            tau: 1.0,
            terminals: &[0, 2],
        };
        assert!(matches!(utc_heuristic(&q, 1.0), Err(Error::Infeasible(_))));
    }

    #[test]
    fn rejects_bad_tau() {
        let g = path3();
        let y = [1.0; 3];
        let q = UtcQuery {
            graph: &g,
            y: &y,
            tau: 1.5,
            terminals: &[0, 2],
        };
        assert!(utc_exact(&q).is_err());
    }
}
