//! Exhaustive optimum for small instances.
//!
//! Non-terminals are assigned in vertex-id order, parts tried in
//! ascending index order, so the first optimum reached is the
//! lexicographically smallest one. Per-part cut values are maintained
//! incrementally along the search path; a partial assignment's objective
//! (counting only edges whose endpoints are both assigned) never exceeds
//! that of any completion, which makes it a valid pruning bound.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{lp_objective, Exponent, Instance, MultiwayCut};

pub const DEFAULT_BUDGET: u128 = 1 << 27;

const UNASSIGNED: usize = usize::MAX;
/// Below this many leaves the search stays on the calling thread.
const PARALLEL_THRESHOLD: u128 = 1 << 16;

#[derive(Clone, Debug)]
pub struct ExactReport {
    pub optimum: MultiwayCut,
    pub objective: f64,
    pub states_explored: u64,
}

/// Number of complete assignments, k^(n−k), saturating at `u128::MAX`.
pub fn state_count(inst: &Instance) -> u128 {
    let free = (inst.n() - inst.k()) as u32;
    (inst.k() as u128).checked_pow(free).unwrap_or(u128::MAX)
}

pub fn solve_exact(inst: &Instance, budget: u128) -> Result<ExactReport> {
    let required = state_count(inst);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let root = Search::new(inst);
    let shared = AtomicU64::new(f64::INFINITY.to_bits());

    let (best, states) = if root.order.is_empty() || required < PARALLEL_THRESHOLD {
        let mut s = root;
        s.dfs(0, &shared);
        (s.best, s.states)
    } else {
        let branches: Vec<_> = (0..inst.k())
            .into_par_iter()
            .map(|part| {
                let mut s = root.clone();
                s.states += 1;
                if s.descend(0, part, &shared) {
                    s.part_of[s.order[0]] = part;
                    s.dfs(1, &shared);
                }
                (s.best, s.states)
            })
            .collect();
        let states = branches.iter().map(|b| b.1).sum::<u64>() + 1;
        // ascending branch index == ascending lexicographic order
        let best = branches.into_iter().filter_map(|b| b.0).fold(
            None::<(f64, Vec<usize>)>,
            |acc, cand| match acc {
                Some(a) if a.0 <= cand.0 => Some(a),
                _ => Some(cand),
            },
        );
        (best, states)
    };

    let (_, assignment) = best.expect("enumeration always reaches at least one leaf");
    let optimum = MultiwayCut::new(inst, assignment)?;
    let objective = lp_objective(inst, &optimum);
    Ok(ExactReport {
        optimum,
        objective,
        states_explored: states,
    })
}

#[derive(Clone)]
struct Search {
    k: usize,
    p: Exponent,
    order: Vec<usize>,
    nbrs: Vec<Vec<(usize, f64)>>,
    part_of: Vec<usize>,
    /// Row d holds the per-part cut values after the first d assignments.
    cuts: Vec<f64>,
    terms: Vec<f64>,
    best: Option<(f64, Vec<usize>)>,
    states: u64,
}

impl Search {
    fn new(inst: &Instance) -> Self {
        let g = &inst.graph;
        let n = g.n();
        let k = inst.k();
        let total = g.total_weight();
        let scale = if total > 0.0 { 1.0 / total } else { 1.0 };
        let nbrs = (0..n)
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .filter(|&&(_, w)| w > 0.0)
                    .map(|&(u, w)| (u, w * scale))
                    .collect()
            })
            .collect();
        let mut part_of = vec![UNASSIGNED; n];
        for (i, &t) in inst.terminals.iter().enumerate() {
            part_of[t] = i;
        }
        let order: Vec<usize> = (0..n).filter(|&v| part_of[v] == UNASSIGNED).collect();
        let depth = order.len() + 1;
        let mut cuts = vec![0.0; depth * k];
        for e in g.edges() {
            let (pu, pv) = (part_of[e.u], part_of[e.v]);
            if pu != UNASSIGNED && pv != UNASSIGNED && pu != pv && e.w > 0.0 {
                cuts[pu] += e.w * scale;
                cuts[pv] += e.w * scale;
            }
        }
        let mut s = Self {
            k,
            p: inst.p,
            order,
            nbrs,
            part_of,
            cuts,
            terms: vec![0.0; depth * k],
            best: None,
            states: 0,
        };
        for i in 0..k {
            s.terms[i] = s.term(s.cuts[i]);
        }
        s
    }

    fn term(&self, c: f64) -> f64 {
        match self.p {
            Exponent::Finite(1.0) => c,
            Exponent::Finite(p) => c.powf(p),
            Exponent::Infinity => c,
        }
    }

    fn bound(&self, depth: usize) -> f64 {
        let row = &self.terms[depth * self.k..(depth + 1) * self.k];
        match self.p {
            Exponent::Infinity => row.iter().fold(0.0, |m, &x| m.max(x)),
            Exponent::Finite(_) => row.iter().sum(),
        }
    }

    fn cutoff(&self, shared: &AtomicU64) -> f64 {
        let global = f64::from_bits(shared.load(Ordering::Relaxed));
        match &self.best {
            Some((b, _)) => b.min(global),
            None => global,
        }
    }

    /// Fills row `depth + 1` for assigning `order[depth]` to `part`;
    /// returns false if the resulting bound is beaten by the incumbent.
    fn descend(&mut self, depth: usize, part: usize, shared: &AtomicU64) -> bool {
        let k = self.k;
        let v = self.order[depth];
        let (parent, child) = self.cuts.split_at_mut((depth + 1) * k);
        let child = &mut child[..k];
        child.copy_from_slice(&parent[depth * k..]);
        self.terms
            .copy_within(depth * k..(depth + 1) * k, (depth + 1) * k);
        for &(u, w) in &self.nbrs[v] {
            let pu = self.part_of[u];
            if pu != UNASSIGNED && pu != part {
                child[part] += w;
                child[pu] += w;
            }
        }
        let row = (depth + 1) * k;
        for &(u, _) in &self.nbrs[v] {
            let pu = self.part_of[u];
            if pu != UNASSIGNED && pu != part {
                self.terms[row + pu] = self.term(self.cuts[row + pu]);
            }
        }
        self.terms[row + part] = self.term(self.cuts[row + part]);
        self.bound(depth + 1) <= self.cutoff(shared)
    }

    fn dfs(&mut self, depth: usize, shared: &AtomicU64) {
        if depth == self.order.len() {
            let value = self.bound(depth);
            if self.best.as_ref().is_none_or(|(b, _)| value < *b) {
                self.best = Some((value, self.part_of.clone()));
                shared.fetch_min(value.to_bits(), Ordering::Relaxed);
            }
            return;
        }
        let v = self.order[depth];
        for part in 0..self.k {
            self.states += 1;
            if !self.descend(depth, part, shared) {
                continue;
            }
            self.part_of[v] = part;
            self.dfs(depth + 1, shared);
            self.part_of[v] = UNASSIGNED;
        }
    }
}
