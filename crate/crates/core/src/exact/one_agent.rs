use super::require_k;
use crate::model::Allocation;
use crate::{Instance, NoWitness, SolveError, SolveOutcome, SolverId};

/// With a single agent the only candidate bundle is the whole item set.
pub fn solve_one_agent(inst: &Instance) -> Result<SolveOutcome, SolveError> {
    require_k(inst, 1)?;
    if let Some(&(u, v)) = inst.graph().edges().first() {
        return Ok(SolveOutcome::no_because(SolverId::OneAgent, NoWitness::Conflict(vec![u, v])));
    }
    let all: Vec<usize> = (0..inst.n()).collect();
    if inst.bundle_cost(0, &all) <= inst.budget() && inst.bundle_utility(0, &all) >= inst.profit_floor() {
        Ok(SolveOutcome::yes(SolverId::OneAgent, Allocation::new(vec![all])))
    } else {
        Ok(SolveOutcome::no(SolverId::OneAgent))
    }
}
