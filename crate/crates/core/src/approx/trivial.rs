use crate::flow::{isolating_cut, StCut};
use crate::graph::{lp_objective, Instance, MultiwayCut, VertexSet};

#[derive(Clone, Debug)]
pub struct TrivialOutcome {
    pub cut: MultiwayCut,
    pub objective: f64,
    /// Minimum isolating cut of each terminal as returned by the flow solver.
    pub isolating: Vec<StCut>,
    /// The isolating sets after pairwise uncrossing; pairwise disjoint.
    pub uncrossed: Vec<VertexSet>,
}

/// Isolating-cut baseline: (S_1 ∪ R, S_2, …, S_k) where S_i is a minimum
/// cut separating t_i from the other terminals and R is what no S_i covers.
///
/// Crossing sets are uncrossed by S_i ← S_i ∖ S_j. Posimodularity plus
/// minimality makes both differences minimum isolating cuts again, and t_i
/// survives since S_j holds no other terminal.
pub fn trivial_solve(inst: &Instance) -> TrivialOutcome {
    let g = &inst.graph;
    let k = inst.k();
    let isolating: Vec<StCut> = (0..k)
        .map(|i| isolating_cut(g, &inst.terminals, i))
        .collect();
    let mut sets: Vec<VertexSet> = isolating.iter().map(|c| c.source_side.clone()).collect();
    for i in 0..k {
        for j in 0..k {
            if i != j && sets[i].intersects(&sets[j]) {
                sets[i] = sets[i].difference(&sets[j]);
            }
        }
    }

    let mut assignment = vec![0; inst.n()];
    for (i, s) in sets.iter().enumerate().skip(1) {
        for v in s.iter() {
            assignment[v] = i;
        }
    }
    let cut = MultiwayCut::new(inst, assignment).expect("isolating sets keep their terminals");
    TrivialOutcome {
        objective: lp_objective(inst, &cut),
        cut,
        isolating,
        uncrossed: sets,
    }
}
