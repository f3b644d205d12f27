//! Evaluator for the convex relaxation
//!
//!   min (Σ_i (Σ_{uv∈E} w(uv)·|x(u,i) − x(v,i)|)^p)^{1/p}
//!   s.t. Σ_i x(v,i) = 1, x(t_i,i) = 1, x ≥ 0,
//!
//! and the star instance on which it loses a factor k^{1−1/p}/2.
//! Nothing here solves the program; it only scores given points.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{solve_exact, DEFAULT_BUDGET};
use crate::graph::{Exponent, Instance, MultiwayCut};
use crate::instances::gen_star;

/// Tolerance on row sums and bounds.
pub const FEAS_TOL: f64 = 1e-9;

/// Row-major n × k matrix of part memberships.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalAssignment {
    n: usize,
    k: usize,
    x: Vec<f64>,
}

impl FractionalAssignment {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let k = rows.first().map_or(0, Vec::len);
        if let Some(v) = rows.iter().position(|r| r.len() != k) {
            return Err(Error::DimensionMismatch(format!(
                "row {v} has {} entries, expected {k}",
                rows[v].len()
            )));
        }
        Ok(Self {
            n,
            k,
            x: rows.into_iter().flatten().collect(),
        })
    }

    /// The 0/1 indicator matrix of a multiway cut.
    pub fn indicator(cut: &MultiwayCut) -> Self {
        let n = cut.assignment().len();
        let k = cut.k();
        let mut x = vec![0.0; n * k];
        for (v, &i) in cut.assignment().iter().enumerate() {
            x[v * k + i] = 1.0;
        }
        Self { n, k, x }
    }

    /// x(v, ·) = 1/k for non-terminals.
    pub fn uniform(inst: &Instance) -> Self {
        let (n, k) = (inst.n(), inst.k());
        let mut x = vec![1.0 / k as f64; n * k];
        for (i, &t) in inst.terminals.iter().enumerate() {
            x[t * k..(t + 1) * k].fill(0.0);
            x[t * k + i] = 1.0;
        }
        Self { n, k, x }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, v: usize, i: usize) -> f64 {
        self.x[v * self.k + i]
    }

    pub fn row(&self, v: usize) -> &[f64] {
        &self.x[v * self.k..(v + 1) * self.k]
    }

    /// Checks the simplex and terminal constraints, naming the first
    /// violation.
    pub fn check(&self, inst: &Instance) -> Result<()> {
        if self.n != inst.n() || self.k != inst.k() {
            return Err(Error::DimensionMismatch(format!(
                "assignment is {}x{}, instance needs {}x{}",
                self.n,
                self.k,
                inst.n(),
                inst.k()
            )));
        }
        for v in 0..self.n {
            let row = self.row(v);
            if let Some(i) = row
                .iter()
                .position(|&x| !(-FEAS_TOL..=1.0 + FEAS_TOL).contains(&x))
            {
                return Err(Error::InfeasibleAssignment(format!(
                    "x({v},{}) = {} outside [0, 1]",
                    i + 1,
                    row[i]
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > FEAS_TOL {
                return Err(Error::InfeasibleAssignment(format!(
                    "row of vertex {v} sums to {sum}"
                )));
            }
        }
        for (i, &t) in inst.terminals.iter().enumerate() {
            if (self.get(t, i) - 1.0).abs() > FEAS_TOL {
                return Err(Error::InfeasibleAssignment(format!(
                    "terminal t_{} (vertex {t}) has x = {} in its own part",
                    i + 1,
                    self.get(t, i)
                )));
            }
        }
        Ok(())
    }
}

/// Per-part fractional cut values Σ_{uv} w(uv)·|x(u,i) − x(v,i)|.
pub fn fractional_cuts(inst: &Instance, x: &FractionalAssignment) -> Vec<f64> {
    let mut cuts = vec![0.0; x.k];
    for e in inst.graph.edges() {
        let (ru, rv) = (x.row(e.u), x.row(e.v));
        for i in 0..x.k {
            cuts[i] += e.w * (ru[i] - rv[i]).abs();
        }
    }
    cuts
}

pub fn cp_objective(inst: &Instance, x: &FractionalAssignment) -> Result<f64> {
    x.check(inst)?;
    Ok(inst.p.norm(&fractional_cuts(inst, x)))
}

#[derive(Clone, Debug, Serialize)]
pub struct StarGap {
    pub k: usize,
    pub p: f64,
    /// ((k−1)^p + k − 1)^{1/p}.
    pub integral_opt: f64,
    /// Integral optimum found by enumeration on the generated star.
    pub integral_exact: f64,
    /// (2k−2)/k · k^{1/p}, via the uniform assignment.
    pub fractional_value: f64,
    pub ratio: f64,
    /// k^{1−1/p}/2.
    pub gap_lower_bound: f64,
    pub holds: bool,
}

pub fn star_gap(k: usize, p: f64) -> Result<StarGap> {
    if k < 3 {
        return Err(Error::ConstraintViolation(format!(
            "star gap needs k >= 3, got {k}"
        )));
    }
    let exponent = match Exponent::finite(p)? {
        Exponent::Infinity => return Err(Error::UnsupportedP("star gap needs finite p".into())),
        e => e,
    };
    let kf = k as f64;
    let inst = gen_star(k, exponent)?;
    let integral_opt = ((kf - 1.0).powf(p) + kf - 1.0).powf(1.0 / p);
    let integral_exact = solve_exact(&inst, DEFAULT_BUDGET)?.objective;
    let fractional_value = cp_objective(&inst, &FractionalAssignment::uniform(&inst))?;
    let ratio = integral_exact / fractional_value;
    let gap_lower_bound = kf.powf(1.0 - 1.0 / p) / 2.0;
    Ok(StarGap {
        k,
        p,
        integral_opt,
        integral_exact,
        fractional_value,
        ratio,
        gap_lower_bound,
        holds: ratio >= gap_lower_bound * (1.0 - FEAS_TOL),
    })
}
