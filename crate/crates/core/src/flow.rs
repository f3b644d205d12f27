//! Minimum s-t cuts via Dinic's algorithm.
//!
//! Multiple sources and sinks are attached to a virtual super-source and
//! super-sink with capacity `1 + total edge weight`. The returned source
//! side is the set reachable from the sources in the final residual
//! network, i.e. the unique inclusion-minimal minimum cut.

use std::collections::VecDeque;

use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq)]
pub struct StCut {
    pub source_side: VertexSet,
    pub value: f64,
}

struct Network {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    residual: Vec<f64>,
    level: Vec<i32>,
    next: Vec<usize>,
    eps: f64,
}

impl Network {
    fn new(n: usize, eps: f64) -> Self {
        Self {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            residual: Vec::new(),
            level: vec![0; n],
            next: vec![0; n],
            eps,
        }
    }

    /// Adds the arc pair (u→v, v→u); arc `e ^ 1` is the reverse of `e`.
    fn link(&mut self, u: usize, v: usize, cap_uv: f64, cap_vu: f64) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.residual.push(cap_uv);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.residual.push(cap_vu);
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.level[v] < 0 && self.residual[e] > self.eps {
                    self.level[v] = self.level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: f64) -> f64 {
        if u == t {
            return pushed;
        }
        while self.next[u] < self.head[u].len() {
            let e = self.head[u][self.next[u]];
            let v = self.to[e];
            if self.level[v] == self.level[u] + 1 && self.residual[e] > self.eps {
                let got = self.dfs(v, t, pushed.min(self.residual[e]));
                if got > 0.0 {
                    self.residual[e] -= got;
                    self.residual[e ^ 1] += got;
                    return got;
                }
            }
            self.next[u] += 1;
        }
        0.0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> f64 {
        let mut flow = 0.0;
        while self.bfs(s, t) {
            self.next.fill(0);
            loop {
                let f = self.dfs(s, t, f64::INFINITY);
                if f <= 0.0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if !seen[v] && self.residual[e] > self.eps {
                    seen[v] = true;
                    q.push_back(v);
                }
            }
        }
        seen
    }
}

/// Minimum-weight cut separating every vertex of `sources` from every
/// vertex of `sinks`.
///
/// Panics if either side is empty or the two sides overlap.
pub fn min_st_cut(g: &Graph, sources: &[usize], sinks: &[usize]) -> StCut {
    assert!(
        !sources.is_empty() && !sinks.is_empty(),
        "sources and sinks must be nonempty"
    );
    assert!(
        sources.iter().all(|s| !sinks.contains(s)),
        "sources and sinks must be disjoint"
    );
    let n = g.n();
    let total = g.total_weight();
    let infinite = 1.0 + total;
    let (ss, tt) = (n, n + 1);
    let mut net = Network::new(n + 2, 1e-12 * total.max(1.0));
    for e in g.edges() {
        if e.w > 0.0 {
            net.link(e.u, e.v, e.w, e.w);
        }
    }
    for &s in sources {
        net.link(ss, s, infinite, 0.0);
    }
    for &t in sinks {
        net.link(t, tt, infinite, 0.0);
    }
    net.max_flow(ss, tt);
    let seen = net.reachable(ss);
    let source_side = VertexSet::from_ids(n, (0..n).filter(|&v| seen[v]));
    let value = g.cut_weight(&source_side);
    StCut { source_side, value }
}

/// Minimum cut isolating `terminals[i]` from the remaining terminals.
pub fn isolating_cut(g: &Graph, terminals: &[usize], i: usize) -> StCut {
    let others: Vec<usize> = terminals
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &t)| t)
        .collect();
    min_st_cut(g, &[terminals[i]], &others)
}
