use crate::error::{Error, Result};
use crate::graph::{Exponent, Instance, VertexSet};
use crate::utc::{utc_solve, UtcMode, UtcQuery, DEFAULT_MASS_FACTOR};

/// Multiset of vertex subsets produced by the cover stage.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CutCollection {
    pub sets: Vec<VertexSet>,
}

impl CutCollection {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Whether every vertex lies in at least one set.
    pub fn covers(&self, n: usize) -> bool {
        let mut all = VertexSet::empty(n);
        for s in &self.sets {
            all.union_with(s);
        }
        all.len() == n
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UtcConfig {
    pub mode: UtcMode,
    /// Mass relaxation for the heuristic subroutine.
    pub mass_factor: f64,
}

impl Default for UtcConfig {
    fn default() -> Self {
        Self {
            mode: UtcMode::Auto,
            mass_factor: DEFAULT_MASS_FACTOR,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MwuOutcome {
    pub collection: CutCollection,
    /// N_v: how many collected sets contain v; y(v) = 2^(−N_v).
    pub coverage: Vec<u32>,
    pub iterations: usize,
    /// True iff every iteration passed its threshold test.
    pub certified: bool,
    /// Level i of the accepted candidate per iteration.
    pub levels: Vec<u32>,
}

/// ⌈log2(2k)⌉.
pub fn level_count(k: usize) -> u32 {
    (2 * k).next_power_of_two().trailing_zeros()
}

fn ceil_log2(n: usize) -> usize {
    n.max(2).next_power_of_two().trailing_zeros() as usize
}

/// c · √(max(1, log2 n) · max(1, log2 2k)).
pub fn default_beta(n: usize, k: usize, coeff: f64) -> f64 {
    let ln = (n as f64).log2().max(1.0);
    let lk = ((2 * k) as f64).log2().max(1.0);
    coeff * (ln * lk).sqrt()
}

pub fn mwu_cover(inst: &Instance, d: f64, beta: f64, utc: UtcConfig) -> Result<MwuOutcome> {
    let p = match inst.p {
        Exponent::Finite(p) => p,
        Exponent::Infinity => {
            return Err(Error::UnsupportedP("the cover stage needs finite p".into()))
        }
    };
    if !(d > 0.0) {
        return Err(Error::ConstraintViolation(format!(
            "D must be positive, got {d}"
        )));
    }
    let g = &inst.graph;
    let n = g.n();
    let k = inst.k();
    let levels = level_count(k);
    let cap = 64 * k * ceil_log2(n);
    let tol = g.tolerance();

    let mut coverage = vec![0u32; n];
    let mut y = vec![1.0; n];
    let mut collection = CutCollection::default();
    let mut accepted = Vec::new();
    let mut certified = true;

    while y.iter().sum::<f64>() > 1.0 / n as f64 {
        if collection.len() >= cap {
            return Err(Error::IterationCap { cap });
        }
        let mut fallback: Option<(f64, u32, VertexSet)> = None;
        let mut chosen = None;
        for i in 1..=levels {
            let scale = 2f64.powi(i as i32);
            let q = UtcQuery {
                graph: g,
                y: &y,
                tau: 1.0 / scale,
                terminals: &inst.terminals,
            };
            let r = match utc_solve(&q, utc.mode, utc.mass_factor) {
                Ok(r) => r,
                Err(Error::Infeasible(_)) => continue,
                Err(e) => return Err(e),
            };
            let threshold = beta * (4.0 * d / scale).powf(1.0 / p);
            if r.cut <= threshold + tol {
                chosen = Some((i, r.set));
                break;
            }
            let violation = r.cut.powf(p) * scale / (4.0 * d);
            if fallback.as_ref().is_none_or(|f| violation < f.0) {
                fallback = Some((violation, i, r.set));
            }
        }
        let (level, set) = match (chosen, fallback) {
            (Some(c), _) => c,
            (None, Some((_, i, s))) => {
                certified = false;
                (i, s)
            }
            (None, None) => {
                return Err(Error::Infeasible(
                    "no level produced a candidate set".into(),
                ))
            }
        };
        for v in set.iter() {
            coverage[v] += 1;
            y[v] = 2f64.powi(-(coverage[v] as i32));
        }
        accepted.push(level);
        collection.sets.push(set);
    }

    Ok(MwuOutcome {
        iterations: collection.len(),
        collection,
        coverage,
        certified,
        levels: accepted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn star(k: usize, p: f64) -> Instance {
        let edges: Vec<_> = (1..=k).map(|i| (0, i, 1.0)).collect();
        let g = Graph::from_triples(k + 1, &edges).unwrap();
        Instance::new(g, (1..=k).collect(), Exponent::Finite(p)).unwrap()
    }

    #[test]
    fn levels_and_beta() {
        assert_eq!(level_count(2), 2);
        assert_eq!(level_count(3), 3);
        assert_eq!(level_count(4), 3);
        assert_eq!(level_count(5), 4);
        assert!((default_beta(4, 2, 1.0) - 2.0).abs() < 1e-12);
        assert_eq!(default_beta(1, 1, 1.0), 1.0);
    }

    #[test]
    fn star3_coverage() {
        let inst = star(3, 2.0);
        // OPT^p for star(3), p=2: 2^2 + 2 = 6
        let out = mwu_cover(&inst, 6.0, default_beta(4, 3, 1.0), UtcConfig::default()).unwrap();
        assert!(out.coverage.iter().all(|&c| c >= 2));
        assert!(out.collection.covers(4));
        assert!(out.certified);
        for s in &out.collection.sets {
            assert!(s.count_in(&inst.terminals) <= 1);
        }
        assert!(out.collection.len() <= 64 * 3 * 2);
    }

    #[test]
    fn infinite_p_rejected() {
        let inst = star(3, 2.0).with_p(Exponent::Infinity);
        assert!(matches!(
            mwu_cover(&inst, 1.0, 1.0, UtcConfig::default()),
            Err(Error::UnsupportedP(_))
        ));
    }

    #[test]
    fn tiny_d_is_uncertified_but_terminates() {
        let inst = star(3, 2.0);
        let out = mwu_cover(&inst, 1e-6, 1.0, UtcConfig::default()).unwrap();
        assert!(!out.certified);
        assert!(out.collection.covers(4));
    }
}
