//! Weighted undirected graphs, terminal instances, multiway cuts and the
//! ℓp objective.
//!
//! Parallel edges are kept as separate entries and their weights add up
//! whenever a cut is evaluated. Zero-weight edges are kept too: they never
//! change a cut value but they do count for connectivity.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used for every cut comparison.
pub const REL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, f64)>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (idx, e) in edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {idx} ({}, {}) references a vertex outside 0..{n}",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidGraph(format!(
                    "edge {idx} is a self-loop on {}",
                    e.u
                )));
            }
            if !(e.w >= 0.0) || !e.w.is_finite() {
                return Err(Error::InvalidGraph(format!(
                    "edge {idx} has weight {} (must be finite and nonnegative)",
                    e.w
                )));
            }
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
        }
        Ok(Self { n, edges, adj })
    }

    /// Convenience constructor from `(u, v, w)` triples.
    pub fn from_triples(n: usize, triples: &[(usize, usize, f64)]) -> Result<Self> {
        Self::new(
            n,
            triples.iter().map(|&(u, v, w)| Edge { u, v, w }).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v` with the weight of each incident edge; parallel
    /// edges appear once per edge.
    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adj[v]
    }

    pub fn weighted_degree(&self, v: usize) -> f64 {
        self.adj[v].iter().map(|&(_, w)| w).sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    /// Absolute slack for comparing cut values of this graph.
    pub fn tolerance(&self) -> f64 {
        REL_TOL * self.total_weight().max(1.0)
    }

    /// w(δ(S)): total weight of edges with exactly one endpoint in `s`.
    pub fn cut_weight(&self, s: &VertexSet) -> f64 {
        self.edges
            .iter()
            .filter(|e| s.contains(e.u) != s.contains(e.v))
            .map(|e| e.w)
            .sum()
    }

    /// Whether the subgraph induced by `s` is connected (empty and singleton
    /// sets count as connected).
    pub fn induces_connected(&self, s: &VertexSet) -> bool {
        let Some(start) = s.iter().next() else {
            return true;
        };
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &self.adj[u] {
                if s.contains(v) && !seen.contains(v) {
                    seen.insert(v);
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == s.len()
    }

    pub fn is_connected(&self) -> bool {
        self.induces_connected(&VertexSet::full(self.n))
    }
}

/// The exponent p of the objective, 1 ≤ p ≤ ∞.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn finite(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidP(format!("p must be at least 1, got {p}")));
        }
        if p.is_infinite() {
            return Ok(Exponent::Infinity);
        }
        Ok(Exponent::Finite(p))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    /// The p-norm of `values`, factoring out the largest entry before
    /// exponentiation so that large weights do not overflow.
    pub fn norm(&self, values: &[f64]) -> f64 {
        let max = values.iter().fold(0.0_f64, |m, &x| m.max(x.abs()));
        match *self {
            Exponent::Infinity => max,
            Exponent::Finite(_) if max == 0.0 => 0.0,
            Exponent::Finite(1.0) => values.iter().map(|x| x.abs()).sum(),
            Exponent::Finite(p) => {
                let s: f64 = values.iter().map(|&x| (x.abs() / max).powf(p)).sum();
                max * s.powf(1.0 / p)
            }
        }
    }

    /// Σ |x|^p (p finite); for p = ∞ this is the max.
    pub fn power_sum(&self, values: &[f64]) -> f64 {
        match *self {
            Exponent::Infinity => values.iter().fold(0.0_f64, |m, &x| m.max(x.abs())),
            Exponent::Finite(p) => values.iter().map(|x| x.abs().powf(p)).sum(),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

/// A set of vertex ids backed by a fixed-size bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet(FixedBitSet);

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut b = FixedBitSet::with_capacity(n);
        b.insert_range(..);
        Self(b)
    }

    pub fn from_ids(n: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut b = FixedBitSet::with_capacity(n);
        for v in ids {
            b.insert(v);
        }
        Self(b)
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(v)
    }

    pub fn insert(&mut self, v: usize) {
        self.0.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.0.set(v, false);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn intersects(&self, other: &Self) -> bool {
        !self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union_with(&mut self, other: &Self) {
        self.0.union_with(&other.0);
    }

    /// self ∖ other.
    pub fn difference(&self, other: &Self) -> Self {
        let mut b = self.0.clone();
        b.difference_with(&other.0);
        Self(b)
    }

    pub fn complement(&self) -> Self {
        let mut b = self.0.clone();
        b.toggle_range(..);
        Self(b)
    }

    /// Number of `ids` contained in the set.
    pub fn count_in(&self, ids: &[usize]) -> usize {
        ids.iter().filter(|&&t| self.contains(t)).count()
    }

    /// Lexicographic order on the ascending element lists.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Graph + ordered terminals t_1..t_k + exponent p.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub graph: Graph,
    pub terminals: Vec<usize>,
    pub p: Exponent,
}

impl Instance {
    pub fn new(graph: Graph, terminals: Vec<usize>, p: Exponent) -> Result<Self> {
        let n = graph.n();
        let k = terminals.len();
        if k < 2 || k > n {
            return Err(Error::InvalidInstance(format!(
                "need 2 <= k <= n, got k = {k}, n = {n}"
            )));
        }
        let mut seen = vec![false; n];
        for &t in &terminals {
            if t >= n {
                return Err(Error::InvalidInstance(format!("terminal {t} out of range")));
            }
            if std::mem::replace(&mut seen[t], true) {
                return Err(Error::InvalidInstance(format!("terminal {t} listed twice")));
            }
        }
        Ok(Self {
            graph,
            terminals,
            p,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.terminals.len()
    }

    /// Part index owned by vertex `v` if it is a terminal.
    pub fn terminal_index(&self, v: usize) -> Option<usize> {
        self.terminals.iter().position(|&t| t == v)
    }

    pub fn is_terminal(&self, v: usize) -> bool {
        self.terminals.contains(&v)
    }

    pub fn with_p(&self, p: Exponent) -> Self {
        Self { p, ..self.clone() }
    }
}

/// Assignment of every vertex to one of the k parts; part `i` (0-based)
/// contains terminal `t_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiwayCut {
    assignment: Vec<usize>,
    k: usize,
}

impl MultiwayCut {
    pub fn new(inst: &Instance, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != inst.n() {
            return Err(Error::InvalidCut(format!(
                "assignment covers {} vertices, instance has {}",
                assignment.len(),
                inst.n()
            )));
        }
        let k = inst.k();
        if let Some(v) = assignment.iter().position(|&a| a >= k) {
            return Err(Error::InvalidCut(format!(
                "vertex {v} assigned to part {} >= k",
                assignment[v]
            )));
        }
        for (i, &t) in inst.terminals.iter().enumerate() {
            if assignment[t] != i {
                return Err(Error::InvalidCut(format!(
                    "terminal t_{} (vertex {t}) is in part {} instead of {i}",
                    i + 1,
                    assignment[t]
                )));
            }
        }
        Ok(Self { assignment, k })
    }

    /// Builds a cut from k vertex sets, part i holding t_i.
    pub fn from_parts(inst: &Instance, parts: &[VertexSet]) -> Result<Self> {
        if parts.len() != inst.k() {
            return Err(Error::InvalidCut(format!(
                "{} parts for k = {}",
                parts.len(),
                inst.k()
            )));
        }
        let mut assignment = vec![usize::MAX; inst.n()];
        for (i, part) in parts.iter().enumerate() {
            for v in part.iter() {
                if v >= inst.n() {
                    return Err(Error::InvalidCut(format!("vertex {v} out of range")));
                }
                if assignment[v] != usize::MAX {
                    return Err(Error::InvalidCut(format!(
                        "vertex {v} appears in two parts"
                    )));
                }
                assignment[v] = i;
            }
        }
        if let Some(v) = assignment.iter().position(|&a| a == usize::MAX) {
            return Err(Error::InvalidCut(format!("vertex {v} is not assigned")));
        }
        Self::new(inst, assignment)
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn parts(&self) -> Vec<VertexSet> {
        let n = self.assignment.len();
        let mut parts = vec![VertexSet::empty(n); self.k];
        for (v, &i) in self.assignment.iter().enumerate() {
            parts[i].insert(v);
        }
        parts
    }
}

/// Cut value of each part, evaluated in one pass over the edge list.
pub fn part_cuts(g: &Graph, assignment: &[usize], k: usize) -> Vec<f64> {
    let mut cuts = vec![0.0; k];
    for e in g.edges() {
        let (pu, pv) = (assignment[e.u], assignment[e.v]);
        if pu != pv {
            cuts[pu] += e.w;
            cuts[pv] += e.w;
        }
    }
    cuts
}

pub fn cut_weight(g: &Graph, s: &VertexSet) -> f64 {
    g.cut_weight(s)
}

/// (Σ_i w(δ(P_i))^p)^{1/p}, or max_i w(δ(P_i)) for p = ∞.
pub fn lp_objective(inst: &Instance, cut: &MultiwayCut) -> f64 {
    inst.p
        .norm(&part_cuts(&inst.graph, cut.assignment(), cut.k()))
}

/// Per part, whether it induces a connected subgraph.
pub fn part_connectivity(inst: &Instance, cut: &MultiwayCut) -> Vec<bool> {
    cut.parts()
        .iter()
        .map(|p| inst.graph.induces_connected(p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star3() -> Graph {
        Graph::from_triples(4, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap()
    }

    #[test]
    fn star_cut_values() {
        let g = star3();
        assert_eq!(g.cut_weight(&VertexSet::from_ids(4, [1])), 1.0);
        assert_eq!(g.cut_weight(&VertexSet::from_ids(4, [0])), 3.0);
        assert_eq!(g.cut_weight(&VertexSet::empty(4)), 0.0);
        assert_eq!(g.cut_weight(&VertexSet::full(4)), 0.0);
    }

    #[test]
    fn parallel_edges_add_up() {
        let g = Graph::from_triples(2, &[(0, 1, 1.5), (1, 0, 2.0)]).unwrap();
        assert_eq!(g.cut_weight(&VertexSet::from_ids(2, [0])), 3.5);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_triples(2, &[(0, 0, 1.0)]).is_err());
        assert!(Graph::from_triples(2, &[(0, 2, 1.0)]).is_err());
        assert!(Graph::from_triples(2, &[(0, 1, -1.0)]).is_err());
        assert!(Graph::from_triples(2, &[(0, 1, f64::NAN)]).is_err());
    }

    #[test]
    fn instance_validation() {
        let g = star3();
        assert!(Instance::new(g.clone(), vec![1], Exponent::Finite(2.0)).is_err());
        assert!(Instance::new(g.clone(), vec![1, 1], Exponent::Finite(2.0)).is_err());
        assert!(Instance::new(g.clone(), vec![1, 7], Exponent::Finite(2.0)).is_err());
        assert!(Exponent::finite(0.5).is_err());
        assert_eq!(Exponent::finite(f64::INFINITY).unwrap(), Exponent::Infinity);
    }

    #[test]
    fn star4_objective_is_sqrt12() {
        let g =
            Graph::from_triples(5, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (0, 4, 1.0)]).unwrap();
        let inst = Instance::new(g, vec![1, 2, 3, 4], Exponent::Finite(2.0)).unwrap();
        let cut = MultiwayCut::new(&inst, vec![0, 0, 1, 2, 3]).unwrap();
        assert!((lp_objective(&inst, &cut) - 12f64.sqrt()).abs() < 1e-12);
        let one = inst.with_p(Exponent::Finite(1.0));
        assert_eq!(lp_objective(&one, &cut), 6.0);
    }

    #[test]
    fn infinity_norm_is_max() {
        assert_eq!(Exponent::Infinity.norm(&[5.0, 2.0, 2.0]), 5.0);
        assert_eq!(Exponent::Finite(1.0).norm(&[5.0, 2.0, 2.0]), 9.0);
    }

    #[test]
    fn scaled_norm_survives_huge_values() {
        let v = [1e200, 1e200];
        let got = Exponent::Finite(3.0).norm(&v);
        assert!((got / 1e200 - 2f64.powf(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn cut_rejects_misplaced_terminal() {
        let inst = Instance::new(star3(), vec![1, 2, 3], Exponent::Finite(2.0)).unwrap();
        assert!(MultiwayCut::new(&inst, vec![0, 1, 0, 2]).is_err());
        assert!(MultiwayCut::new(&inst, vec![0, 0, 1]).is_err());
        assert!(MultiwayCut::new(&inst, vec![0, 0, 1, 2]).is_ok());
    }

    #[test]
    fn connectivity_flags() {
        let inst = Instance::new(star3(), vec![1, 2, 3], Exponent::Finite(2.0)).unwrap();
        let cut = MultiwayCut::new(&inst, vec![0, 0, 1, 2]).unwrap();
        assert_eq!(part_connectivity(&inst, &cut), vec![true, true, true]);
        // {leaf1, leaf2} without the center is disconnected
        let g = star3();
        assert!(!g.induces_connected(&VertexSet::from_ids(4, [1, 2])));
        assert!(g.is_connected());
    }

    #[test]
    fn lex_order_on_sets() {
        let a = VertexSet::from_ids(4, [0]);
        let b = VertexSet::from_ids(4, [0, 1]);
        let c = VertexSet::from_ids(4, [1]);
        assert!(a.lex_cmp(&b).is_lt());
        assert!(b.lex_cmp(&c).is_lt());
    }
}
