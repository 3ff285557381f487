use super::solve_pc_dp;
use crate::budget::Budget;
use crate::graph::{clique_tree, to_nice_decomposition};
use crate::{Instance, NoWitness, SolveError, SolveOutcome, SolverId};

/// Chordal conflict graphs: a clique larger than `k` rules out any proper
/// colouring; otherwise the clique tree has width below `k` and the PC-value
/// DP runs on it.
pub fn solve_chordal(inst: &Instance, budget: &Budget) -> Result<SolveOutcome, SolveError> {
    let td = clique_tree(inst.graph()).map_err(|_| SolveError::NotChordal)?;
    if let Some(bag) = td.bags().iter().find(|b| b.len() > inst.k()) {
        return Ok(SolveOutcome::no_because(SolverId::Chordal, NoWitness::Clique(bag.clone())));
    }
    let ntd = to_nice_decomposition(&td).map_err(SolveError::InvalidDecomposition)?;
    let mut out = solve_pc_dp(inst, &ntd, budget)?;
    out.solver = SolverId::Chordal;
    Ok(out)
}
