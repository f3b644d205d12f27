use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

use super::CutCollection;

#[derive(Clone, Debug)]
pub struct Uncrossing {
    /// Pairwise disjoint, nonempty, covering V; each part is a subset of
    /// some input set.
    pub parts: Vec<VertexSet>,
    pub steps: usize,
}

pub fn uncross(g: &Graph, sets: &CutCollection) -> Result<Uncrossing> {
    uncross_with(g, sets, |_| {})
}

/// Like [`uncross`], calling `observe` with the current family after
/// every replacement (emptied sets still present, as empty sets).
///
/// Sets only ever shrink, so a pair found disjoint stays disjoint; a
/// single pass over pairs in insertion order therefore always resolves
/// the first crossing pair of the current family.
pub fn uncross_with(
    g: &Graph,
    sets: &CutCollection,
    mut observe: impl FnMut(&[VertexSet]),
) -> Result<Uncrossing> {
    let n = g.n();
    let mut covered = VertexSet::empty(n);
    for s in &sets.sets {
        covered.union_with(s);
    }
    if let Some(v) = covered.complement().iter().next() {
        return Err(Error::UnionNotV(v));
    }

    let mut family = sets.sets.clone();
    let mut cuts: Vec<f64> = family.iter().map(|s| g.cut_weight(s)).collect();
    let mut steps = 0;
    for a in 0..family.len() {
        for b in a + 1..family.len() {
            if family[a].is_empty() {
                break;
            }
            if !family[a].intersects(&family[b]) {
                continue;
            }
            let a_minus_b = family[a].difference(&family[b]);
            let cut_a_minus_b = g.cut_weight(&a_minus_b);
            if cuts[a] >= cut_a_minus_b {
                family[a] = a_minus_b;
                cuts[a] = cut_a_minus_b;
            } else {
                family[b] = family[b].difference(&family[a]);
                cuts[b] = g.cut_weight(&family[b]);
            }
            steps += 1;
            observe(&family);
        }
    }
    family.retain(|s| !s.is_empty());
    Ok(Uncrossing {
        parts: family,
        steps,
    })
}
