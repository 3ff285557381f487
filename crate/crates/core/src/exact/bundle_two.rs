use crate::graph::{maximum_matching, Graph};
use crate::model::Allocation;
use crate::{Instance, SolveError, SolveOutcome, SolverId};

/// Graph on the items with an edge `ab` iff `{a, b}` is a feasible bundle
/// for agent 0: no conflict, `p(a) + p(b) >= P`, `c(a) + c(b) <= B`.
pub fn feasibility_graph(inst: &Instance) -> Graph {
    let n = inst.n();
    let mut h = Graph::empty(n);
    for a in 0..n {
        for b in a + 1..n {
            if !inst.graph().has_edge(a, b)
                && inst.utility(0, a) + inst.utility(0, b) >= inst.profit_floor()
                && inst.cost(0, a) + inst.cost(0, b) <= inst.budget()
            {
                h.add_edge(a, b);
            }
        }
    }
    h
}

/// Allocations in which every bundle has exactly two items correspond to
/// perfect matchings of the feasibility graph. Valuations must be identical
/// since matching edges are not tied to agents.
pub fn solve_bundle_size_two(inst: &Instance) -> Result<SolveOutcome, SolveError> {
    super::require_identical(inst)?;
    if inst.n() != 2 * inst.k() {
        return Ok(SolveOutcome::no(SolverId::BundleTwo));
    }
    let h = feasibility_graph(inst);
    let m = maximum_matching(&h);
    if !m.is_perfect(inst.n()) {
        return Ok(SolveOutcome::no(SolverId::BundleTwo));
    }
    let bundles = m.edges.iter().map(|&(a, b)| vec![a, b]).collect();
    Ok(SolveOutcome::yes(SolverId::BundleTwo, Allocation::new(bundles)))
}
