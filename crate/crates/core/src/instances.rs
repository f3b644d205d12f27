//! Instance generators: the star integrality-gap instance, the
//! disconnected-optimum example, the bisection and 3-partition hardness
//! gadgets, the equipartition reduction, and seeded random graphs.
//!
//! Gadget generators record their parameters and decision threshold in a
//! [`GadgetMeta`], which the instance file format carries as comments.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Exponent, Graph, Instance, MultiwayCut, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetKind {
    Star,
    Fig1,
    Bisection,
    ThreePartition,
    Mskp,
    Random,
}

impl GadgetKind {
    pub fn name(&self) -> &'static str {
        match self {
            GadgetKind::Star => "star",
            GadgetKind::Fig1 => "fig1",
            GadgetKind::Bisection => "bisection",
            GadgetKind::ThreePartition => "3partition",
            GadgetKind::Mskp => "mskp",
            GadgetKind::Random => "random",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "star" => GadgetKind::Star,
            "fig1" => GadgetKind::Fig1,
            "bisection" => GadgetKind::Bisection,
            "3partition" => GadgetKind::ThreePartition,
            "mskp" => GadgetKind::Mskp,
            "random" => GadgetKind::Random,
            _ => return None,
        })
    }
}

/// Generator parameters, in a fixed order, plus the decision threshold
/// for the hardness gadgets.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GadgetMeta {
    pub kind: GadgetKind,
    pub params: Vec<(String, f64)>,
    pub threshold: Option<f64>,
}

impl GadgetMeta {
    fn new(kind: GadgetKind, params: &[(&str, f64)]) -> Self {
        Self {
            kind,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            threshold: None,
        }
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| k == name).map(|&(_, v)| v)
    }

    /// Recomputes the threshold from the stored parameters.
    pub fn recompute_threshold(&self) -> Option<f64> {
        let get = |k: &str| self.param(k);
        match self.kind {
            GadgetKind::Bisection => Some(bisection_threshold(
                get("n")?,
                get("a")?,
                get("b")?,
                get("C")?,
                get("p")?,
            )),
            GadgetKind::ThreePartition => Some(three_partition_threshold(
                get("m")?,
                get("d")?,
                get("B")?,
                get("p")?,
            )),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub instance: Instance,
    pub meta: GadgetMeta,
}

fn gadget_p(p: f64) -> Result<f64> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidP(format!(
            "gadgets need finite p > 1, got {p}"
        )));
    }
    Ok(p)
}

/// Star with k unit leaves (the terminals, ids 1..=k) around center 0.
pub fn gen_star(k: usize, p: Exponent) -> Result<Instance> {
    if k < 3 {
        return Err(Error::ConstraintViolation(format!(
            "star needs k >= 3, got {k}"
        )));
    }
    let edges = (1..=k).map(|i| Edge { u: 0, v: i, w: 1.0 }).collect();
    Instance::new(Graph::new(k + 1, edges)?, (1..=k).collect(), p)
}

pub fn gen_star_meta(k: usize, p: Exponent) -> Result<Generated> {
    Ok(Generated {
        instance: gen_star(k, p)?,
        meta: GadgetMeta::new(GadgetKind::Star, &[("k", k as f64)]),
    })
}

/// Vertex ids of the disconnected-optimum example.
pub mod fig1 {
    pub const U1: usize = 0;
    pub const U2: usize = 1;
    pub const V: [usize; 4] = [2, 3, 4, 5];
}

/// Six vertices u1, u2, v1..v4 with terminals u1, v1..v4. The v's form a
/// clique of weight a = 8^{p/(p−1)}; u1 and u2 each join every v_j with
/// weight 1 and are not adjacent to each other. Grouping u2 with u1 is
/// optimal for p > 1 although {u1, u2} induces a disconnected subgraph.
pub fn gen_fig1(p: f64) -> Result<Generated> {
    let p = gadget_p(p)?;
    let a = 8f64.powf(p / (p - 1.0));
    let mut edges = Vec::new();
    for (x, &vi) in fig1::V.iter().enumerate() {
        for &vj in &fig1::V[x + 1..] {
            edges.push(Edge { u: vi, v: vj, w: a });
        }
    }
    for &u in &[fig1::U1, fig1::U2] {
        for &v in &fig1::V {
            edges.push(Edge { u, v, w: 1.0 });
        }
    }
    let mut terminals = vec![fig1::U1];
    terminals.extend(fig1::V);
    Ok(Generated {
        instance: Instance::new(Graph::new(6, edges)?, terminals, Exponent::Finite(p))?,
        meta: GadgetMeta::new(GadgetKind::Fig1, &[("p", p), ("a", a)]),
    })
}

pub fn bisection_threshold(n: f64, a: f64, b: f64, c: f64, p: f64) -> f64 {
    Exponent::Finite(p).norm(&[b + a * n, b + a * n, 2.0 * a * n + c, 2.0 * a * n + c])
}

/// Bisection gadget on a unit-weight graph with an even number of
/// vertices: terminals u, d, ℓ, r (ids n..n+3) are appended, u–d gets
/// weight b and every original vertex joins all four terminals with
/// weight a.
pub fn gen_bisection(g: &Graph, c: u64, p: f64) -> Result<Generated> {
    let p = gadget_p(p)?;
    let n = g.n();
    if !n.is_multiple_of(2) {
        return Err(Error::OddN(n));
    }
    if g.edges().iter().any(|e| e.w != 1.0) {
        return Err(Error::ConstraintViolation(
            "bisection input must have unit weights".into(),
        ));
    }
    let nf = n as f64;
    let cf = c as f64;
    let a = 1f64.max(8.0 * nf.powi(3) / (p - 1.0)).max(2.0 * cf + 1.0);
    let b = 1.0
        + 1f64
            .max((2.0 * a * nf + cf).powf(p / (p - 1.0)))
            .max(3.0 * a * nf);
    let (u, d, l, r) = (n, n + 1, n + 2, n + 3);
    let mut edges = g.edges().to_vec();
    edges.push(Edge { u, v: d, w: b });
    for v in 0..n {
        for t in [u, d, l, r] {
            edges.push(Edge { u: v, v: t, w: a });
        }
    }
    let mut meta = GadgetMeta::new(
        GadgetKind::Bisection,
        &[("n", nf), ("C", cf), ("p", p), ("a", a), ("b", b)],
    );
    meta.threshold = Some(bisection_threshold(nf, a, b, cf, p));
    Ok(Generated {
        instance: Instance::new(
            Graph::new(n + 4, edges)?,
            vec![u, d, l, r],
            Exponent::Finite(p),
        )?,
        meta,
    })
}

pub fn three_partition_threshold(m: f64, d: f64, big_b: f64, p: f64) -> f64 {
    let heavy = 2.0 * d * big_b;
    // (9m·heavy^p + m·B^p)^{1/p}, scaled by the larger term
    heavy * (9.0 * m + m * (big_b / heavy).powf(p)).powf(1.0 / p)
}

/// Vertex ids of block `i` in the 3-partition gadget: x_i^1..x_i^3 then v_i.
pub fn three_partition_block(i: usize) -> ([usize; 3], usize) {
    let base = 4 * i;
    ([base, base + 1, base + 2], base + 3)
}

/// 3-partition gadget. Block i is a K4 on terminals x_i^1..x_i^3 and a
/// free vertex v_i: the x's pairwise joined by dB − a_i/6, each joined to
/// v_i by a_i/3, so that every x singleton cuts exactly 2dB and {v_i}
/// cuts a_i. The m isolated terminals t_1..t_m follow the blocks.
pub fn gen_3partition(weights: &[f64], big_b: f64, p: f64) -> Result<Generated> {
    let p = gadget_p(p)?;
    if weights.is_empty() || !weights.len().is_multiple_of(3) {
        return Err(Error::ConstraintViolation(format!(
            "need 3m weights, got {}",
            weights.len()
        )));
    }
    let m = weights.len() / 3;
    let mf = m as f64;
    let total: f64 = weights.iter().sum();
    if (total - mf * big_b).abs() > 1e-9 * (mf * big_b).abs().max(1.0) {
        return Err(Error::ConstraintViolation(format!(
            "weights sum to {total}, expected m·B = {}",
            mf * big_b
        )));
    }
    if let Some(&w) = weights
        .iter()
        .find(|&&w| !(big_b / 4.0 < w && w < big_b / 2.0))
    {
        return Err(Error::ConstraintViolation(format!(
            "weight {w} outside (B/4, B/2) = ({}, {})",
            big_b / 4.0,
            big_b / 2.0
        )));
    }
    let d = (12.0 * mf + 12.0).powf(1.0 / (p - 1.0));
    let mut edges = Vec::new();
    let mut terminals = Vec::new();
    for (i, &ai) in weights.iter().enumerate() {
        let (xs, v) = three_partition_block(i);
        for r in 0..3 {
            for s in r + 1..3 {
                edges.push(Edge {
                    u: xs[r],
                    v: xs[s],
                    w: d * big_b - ai / 6.0,
                });
            }
        }
        for &x in &xs {
            edges.push(Edge {
                u: x,
                v,
                w: ai / 3.0,
            });
        }
        terminals.extend(xs);
    }
    let n = 4 * weights.len() + m;
    terminals.extend(4 * weights.len()..n);
    let mut meta = GadgetMeta::new(
        GadgetKind::ThreePartition,
        &[("m", mf), ("B", big_b), ("p", p), ("d", d)],
    );
    meta.threshold = Some(three_partition_threshold(mf, d, big_b, p));
    Ok(Generated {
        instance: Instance::new(Graph::new(n, edges)?, terminals, Exponent::Finite(p))?,
        meta,
    })
}

/// Equipartition reduction: k new terminals (ids n..n+k) each joined to
/// every original vertex with weight B/n.
pub fn gen_mskp(g: &Graph, k: usize, big_b: f64, p: Exponent) -> Result<Generated> {
    if k < 2 {
        return Err(Error::ConstraintViolation(format!("need k >= 2, got {k}")));
    }
    if !(big_b > 0.0) {
        return Err(Error::ConstraintViolation(format!(
            "need B > 0, got {big_b}"
        )));
    }
    let n = g.n();
    let w = big_b / n as f64;
    let mut edges = g.edges().to_vec();
    for t in n..n + k {
        for v in 0..n {
            edges.push(Edge { u: t, v, w });
        }
    }
    Ok(Generated {
        instance: Instance::new(Graph::new(n + k, edges)?, (n..n + k).collect(), p)?,
        meta: GadgetMeta::new(
            GadgetKind::Mskp,
            &[("n", n as f64), ("k", k as f64), ("B", big_b)],
        ),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MskpExtraction {
    /// P_i = P'_i ∩ V as sorted vertex lists.
    pub parts: Vec<Vec<usize>>,
    /// Σ_i w(δ_G(P_i)) in the original graph.
    pub sum_of_cuts: f64,
    pub max_part_size: usize,
}

/// Restricts a multiway cut of the reduction back to the original graph.
pub fn extract_mskp(original: &Graph, cut: &MultiwayCut) -> MskpExtraction {
    let n = original.n();
    let parts: Vec<VertexSet> = cut
        .parts()
        .iter()
        .map(|p| VertexSet::from_ids(n, p.iter().filter(|&v| v < n)))
        .collect();
    MskpExtraction {
        sum_of_cuts: parts.iter().map(|p| original.cut_weight(p)).sum(),
        max_part_size: parts.iter().map(VertexSet::len).max().unwrap_or(0),
        parts: parts.iter().map(VertexSet::to_vec).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomSpec {
    pub n: usize,
    pub k: usize,
    /// Probability of each vertex pair being an edge.
    pub density: f64,
    /// Edge weights are uniform in [lo, hi].
    pub weight_range: (f64, f64),
    pub seed: u64,
    pub p: Exponent,
}

pub fn gen_random(spec: &RandomSpec) -> Result<Generated> {
    let RandomSpec {
        n,
        k,
        density,
        weight_range: (lo, hi),
        seed,
        p,
    } = *spec;
    if k < 2 || k > n {
        return Err(Error::ConstraintViolation(format!(
            "need 2 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::ConstraintViolation(format!(
            "density {density} outside [0, 1]"
        )));
    }
    if !(lo >= 0.0 && lo <= hi && hi.is_finite()) {
        return Err(Error::ConstraintViolation(format!(
            "bad weight range [{lo}, {hi}]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                let w = if lo == hi { lo } else { rng.gen_range(lo..=hi) };
                edges.push(Edge { u, v, w });
            }
        }
    }
    let terminals = sample(&mut rng, n, k).into_vec();
    Ok(Generated {
        instance: Instance::new(Graph::new(n, edges)?, terminals, p)?,
        meta: GadgetMeta::new(
            GadgetKind::Random,
            &[
                ("n", n as f64),
                ("k", k as f64),
                ("density", density),
                ("lo", lo),
                ("hi", hi),
                ("seed", seed as f64),
            ],
        ),
    })
}

/// Path 0–1–…–(n−1) with unit weights.
pub fn path_graph(n: usize) -> Graph {
    let edges = (1..n)
        .map(|v| Edge {
            u: v - 1,
            v,
            w: 1.0,
        })
        .collect();
    Graph::new(n, edges).expect("path edges are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{lp_objective, part_cuts};

    #[test]
    fn star_shape() {
        let s = gen_star(3, Exponent::Finite(2.0)).unwrap();
        assert_eq!(s.n(), 4);
        assert_eq!(s.graph.edges().len(), 3);
        assert!(s.graph.edges().iter().all(|e| e.w == 1.0));
        assert!(gen_star(2, Exponent::Finite(2.0)).is_err());
    }

    #[test]
    fn fig1_cut_identities() {
        let g = gen_fig1(2.0).unwrap();
        assert_eq!(g.meta.param("a"), Some(64.0));
        let inst = &g.instance;
        let grouped = MultiwayCut::new(inst, vec![0, 0, 1, 2, 3, 4]).unwrap();
        assert_eq!(
            part_cuts(&inst.graph, grouped.assignment(), 5),
            vec![8.0, 194.0, 194.0, 194.0, 194.0]
        );
        let with_v1 = MultiwayCut::new(inst, vec![0, 1, 1, 2, 3, 4]).unwrap();
        assert_eq!(
            part_cuts(&inst.graph, with_v1.assignment(), 5),
            vec![4.0, 196.0, 194.0, 194.0, 194.0]
        );
        assert!((lp_objective(inst, &grouped) - 150608f64.sqrt()).abs() < 1e-9);
        let alt = (196f64.powi(2) + 3.0 * 194f64.powi(2) + 16.0).sqrt();
        assert!((lp_objective(inst, &with_v1) - alt).abs() < 1e-9);
        assert!(alt > 389.0 && alt < 389.03);
        assert!(gen_fig1(1.0).is_err());
    }

    #[test]
    fn bisection_parameters() {
        let g = gen_bisection(&path_graph(4), 1, 2.0).unwrap();
        assert_eq!(g.meta.param("a"), Some(512.0));
        assert_eq!(g.meta.param("b"), Some(16_785_410.0));
        assert_eq!(g.instance.k(), 4);
        assert_eq!(g.instance.n(), 8);
        assert_eq!(g.meta.recompute_threshold(), g.meta.threshold);
        assert!(matches!(
            gen_bisection(&path_graph(3), 1, 2.0),
            Err(Error::OddN(3))
        ));
        assert!(matches!(
            gen_bisection(&path_graph(4), 1, 1.0),
            Err(Error::InvalidP(_))
        ));
    }

    #[test]
    fn three_partition_identities() {
        let g = gen_3partition(&[6.0, 7.0, 7.0], 20.0, 2.0).unwrap();
        assert_eq!(g.meta.param("d"), Some(24.0));
        let inst = &g.instance;
        assert_eq!(inst.n(), 13);
        assert_eq!(inst.k(), 10);
        for (i, &ai) in [6.0, 7.0, 7.0].iter().enumerate() {
            let (xs, v) = three_partition_block(i);
            for &x in &xs {
                let c = inst.graph.cut_weight(&VertexSet::from_ids(13, [x]));
                assert!((c - 960.0).abs() < 1e-9);
                let cv = inst.graph.cut_weight(&VertexSet::from_ids(13, [x, v]));
                assert!((cv - (960.0 + ai / 3.0)).abs() < 1e-9);
            }
            assert!((inst.graph.cut_weight(&VertexSet::from_ids(13, [v])) - ai).abs() < 1e-9);
        }
        let t = g.meta.threshold.unwrap();
        assert!((t - (9.0 * 960f64.powi(2) + 400.0).sqrt()).abs() < 1e-9);
        assert_eq!(g.meta.recompute_threshold(), Some(t));
    }

    #[test]
    fn three_partition_preconditions() {
        assert!(gen_3partition(&[6.0, 7.0, 8.0], 20.0, 2.0).is_err());
        assert!(gen_3partition(&[4.0, 6.0, 10.0], 20.0, 2.0).is_err());
        assert!(gen_3partition(&[6.0, 7.0], 20.0, 2.0).is_err());
    }

    #[test]
    fn mskp_sizes_and_extraction() {
        let base = path_graph(4);
        let g = gen_mskp(&base, 2, 3.0, Exponent::Finite(2.0)).unwrap();
        assert_eq!(g.instance.n(), 6);
        assert_eq!(g.instance.graph.edges().len(), 3 + 2 * 4);
        let cut = MultiwayCut::new(&g.instance, vec![0, 0, 1, 1, 0, 1]).unwrap();
        let ex = extract_mskp(&base, &cut);
        assert_eq!(ex.parts, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(ex.sum_of_cuts, 2.0);
        assert_eq!(ex.max_part_size, 2);
    }

    #[test]
    fn random_is_seeded() {
        let spec = RandomSpec {
            n: 8,
            k: 3,
            density: 0.5,
            weight_range: (1.0, 5.0),
            seed: 7,
            p: Exponent::Finite(2.0),
        };
        let a = gen_random(&spec).unwrap().instance;
        let b = gen_random(&spec).unwrap().instance;
        assert_eq!(a, b);
        let full = gen_random(&RandomSpec {
            density: 1.0,
            ..spec
        })
        .unwrap()
        .instance;
        assert_eq!(full.graph.edges().len(), 28);
        let empty = gen_random(&RandomSpec {
            density: 0.0,
            ..spec
        })
        .unwrap()
        .instance;
        assert!(empty.graph.edges().is_empty());
    }
}
