use crate::error::{Error, Result};
use crate::graph::{Instance, MultiwayCut, VertexSet};

#[derive(Clone, Debug)]
pub struct Aggregation {
    pub cut: MultiwayCut,
    /// |F|, the number of terminal-free input parts.
    pub free_parts: usize,
    /// ⌈|F|/k⌉.
    pub bucket_cap: usize,
    /// Number of free parts merged into part i.
    pub bucket_sizes: Vec<usize>,
}

/// Merges the terminal-free parts of a partition into the k terminal
/// parts.
///
/// Free parts go, in descending order of cut value, into the bucket with
/// the smallest running cut sum among those still below the size cap.
/// The heaviest bucket then joins the terminal part with the smallest cut.
pub fn aggregate(inst: &Instance, parts: &[VertexSet]) -> Result<Aggregation> {
    let g = &inst.graph;
    let n = inst.n();
    let k = inst.k();

    let mut owner = vec![usize::MAX; n];
    for (idx, part) in parts.iter().enumerate() {
        for v in part.iter() {
            if owner[v] != usize::MAX {
                return Err(Error::InvalidCut(format!("vertex {v} lies in two parts")));
            }
            owner[v] = idx;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::UnionNotV(v));
    }

    let mut terminal_part = vec![usize::MAX; k];
    let mut holds_terminal = vec![false; parts.len()];
    for (i, &t) in inst.terminals.iter().enumerate() {
        let idx = owner[t];
        if holds_terminal[idx] {
            return Err(Error::InvalidCut(format!(
                "part {idx} holds more than one terminal"
            )));
        }
        holds_terminal[idx] = true;
        terminal_part[i] = idx;
    }

    let cuts: Vec<f64> = parts.iter().map(|p| g.cut_weight(p)).collect();
    let mut free: Vec<usize> = (0..parts.len()).filter(|&i| !holds_terminal[i]).collect();
    free.sort_by(|&a, &b| cuts[b].total_cmp(&cuts[a]).then(a.cmp(&b)));
    let cap = free.len().div_ceil(k);

    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut sums = vec![0.0_f64; k];
    for &f in &free {
        let j = (0..k)
            .filter(|&j| buckets[j].len() < cap)
            .min_by(|&a, &b| sums[a].total_cmp(&sums[b]).then(a.cmp(&b)))
            .expect("k * cap >= |F| leaves room");
        buckets[j].push(f);
        sums[j] += cuts[f];
    }

    let mut by_weight: Vec<usize> = (0..k).collect();
    by_weight.sort_by(|&a, &b| sums[b].total_cmp(&sums[a]).then(a.cmp(&b)));
    let mut by_cut: Vec<usize> = (0..k).collect();
    by_cut.sort_by(|&a, &b| {
        cuts[terminal_part[a]]
            .total_cmp(&cuts[terminal_part[b]])
            .then(a.cmp(&b))
    });

    let mut assignment = vec![0; n];
    for (v, a) in assignment.iter_mut().enumerate() {
        if holds_terminal[owner[v]] {
            *a = terminal_part.iter().position(|&p| p == owner[v]).unwrap();
        }
    }
    let mut bucket_sizes = vec![0; k];
    for (&bucket, &target) in by_weight.iter().zip(&by_cut) {
        bucket_sizes[target] = buckets[bucket].len();
        for &f in &buckets[bucket] {
            for v in parts[f].iter() {
                assignment[v] = target;
            }
        }
    }

    Ok(Aggregation {
        cut: MultiwayCut::new(inst, assignment)?,
        free_parts: free.len(),
        bucket_cap: cap,
        bucket_sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Exponent, Graph};

    #[test]
    fn no_free_parts() {
        let g = Graph::from_triples(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let inst = Instance::new(g, vec![0, 2], Exponent::Finite(2.0)).unwrap();
        let parts = [VertexSet::from_ids(3, [0, 1]), VertexSet::from_ids(3, [2])];
        let out = aggregate(&inst, &parts).unwrap();
        assert_eq!(out.cut.assignment(), &[0, 0, 1]);
        assert_eq!(out.free_parts, 0);
        assert_eq!(out.bucket_cap, 0);
    }

    #[test]
    fn free_part_joins_lighter_terminal() {
        // cut({t1, x}) = 5, cut({t2}) = 1, free part {r}
        let g =
            Graph::from_triples(4, &[(0, 1, 1.0), (1, 2, 1.0), (0, 3, 5.0), (3, 1, 4.0)]).unwrap();
        let inst = Instance::new(g, vec![0, 2], Exponent::Finite(2.0)).unwrap();
        let parts = [
            VertexSet::from_ids(4, [0, 3]),
            VertexSet::from_ids(4, [2]),
            VertexSet::from_ids(4, [1]),
        ];
        let out = aggregate(&inst, &parts).unwrap();
        assert_eq!(out.cut.assignment(), &[0, 1, 1, 0]);
        assert_eq!(out.bucket_sizes, vec![0, 1]);
    }

    #[test]
    fn rejects_two_terminals_in_one_part() {
        let g = Graph::from_triples(3, &[(0, 1, 1.0)]).unwrap();
        let inst = Instance::new(g, vec![0, 1], Exponent::Finite(2.0)).unwrap();
        let parts = [VertexSet::from_ids(3, [0, 1]), VertexSet::from_ids(3, [2])];
        assert!(aggregate(&inst, &parts).is_err());
    }
}
