//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use lpmwc::instances::{gen_random, RandomSpec};
use lpmwc::{Exponent, Graph, Instance, VertexSet};

/// Optimal objective by plain enumeration of every assignment, scoring each
/// part with `Graph::cut_weight` (no incremental bookkeeping, no pruning).
pub fn brute_force_opt(inst: &Instance) -> f64 {
    let n = inst.n();
    let k = inst.k();
    let free: Vec<usize> = (0..n).filter(|v| !inst.is_terminal(*v)).collect();
    let mut digits = vec![0usize; free.len()];
    let mut best = f64::INFINITY;
    loop {
        let mut parts: Vec<VertexSet> = (0..k).map(|_| VertexSet::empty(n)).collect();
        for (i, &t) in inst.terminals.iter().enumerate() {
            parts[i].insert(t);
        }
        for (&v, &d) in free.iter().zip(&digits) {
            parts[d].insert(v);
        }
        let cuts: Vec<f64> = parts.iter().map(|p| inst.graph.cut_weight(p)).collect();
        best = best.min(inst.p.norm(&cuts));
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return best;
            }
            digits[pos] += 1;
            if digits[pos] < k {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Minimum cut over all sets containing `sources` and avoiding `sinks`.
pub fn brute_min_st(g: &Graph, sources: &[usize], sinks: &[usize]) -> f64 {
    let n = g.n();
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << n) {
        let s = VertexSet::from_ids(n, (0..n).filter(|v| mask >> v & 1 == 1));
        if sources.iter().all(|&x| s.contains(x)) && sinks.iter().all(|&x| !s.contains(x)) {
            best = best.min(g.cut_weight(&s));
        }
    }
    best
}

pub fn random_instance(seed: u64, n: usize, k: usize, p: Exponent) -> Instance {
    gen_random(&RandomSpec {
        n,
        k,
        density: 0.5,
        weight_range: (1.0, 10.0),
        seed,
        p,
    })
    .unwrap()
    .instance
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
