use super::require_k;
use crate::budget::Budget;
use crate::graph::{bipartition, connected_components, Bipartition};
use crate::model::Allocation;
use crate::{Instance, NoWitness, SolveError, SolveOutcome, SolverId};

/// Sides of every component of a 2-colourable conflict graph, or an odd
/// cycle.
pub(crate) fn component_sides(inst: &Instance) -> Result<Vec<(Vec<usize>, Vec<usize>)>, NoWitness> {
    connected_components(inst.graph())
        .iter()
        .map(|comp| match bipartition(inst.graph(), comp) {
            Bipartition::Bipartite { x, y } => Ok((x, y)),
            Bipartition::OddCycle(c) => Err(NoWitness::OddCycle(c)),
        })
        .collect()
}

/// k = 2: every component's two sides must go to different agents, so it
/// suffices to try the `2^r` orientations of the `r` components. Bit `j` of
/// the mask clear means side X of component `j` goes to agent 0.
pub fn solve_two_agents_components(inst: &Instance, budget: &Budget) -> Result<SolveOutcome, SolveError> {
    require_k(inst, 2)?;
    let sides = match component_sides(inst) {
        Ok(s) => s,
        Err(w) => return Ok(SolveOutcome::no_because(SolverId::TwoComponents, w)),
    };
    let r = sides.len();
    if r >= 63 {
        return Err(SolveError::EnumerationBudget(format!("2^{r} component orientations")));
    }
    // value[j][side][agent] = (utility, cost) of that side under that agent.
    let value: Vec<[[(u64, u64); 2]; 2]> = sides
        .iter()
        .map(|(x, y)| {
            let v = |set: &[usize], a: usize| (inst.bundle_utility(a, set), inst.bundle_cost(a, set));
            [[v(x, 0), v(x, 1)], [v(y, 0), v(y, 1)]]
        })
        .collect();
    let (floor, cap) = (inst.profit_floor(), inst.budget());
    for mask in 0u64..(1u64 << r) {
        if mask & 0xffff == 0 {
            budget.check_time()?;
        }
        let mut totals = [(0u64, 0u64); 2];
        for (j, val) in value.iter().enumerate() {
            let flip = (mask >> j & 1) as usize;
            // Side `flip` goes to agent 0, the other side to agent 1.
            for agent in 0..2 {
                let side = flip ^ agent;
                totals[agent].0 += val[side][agent].0;
                totals[agent].1 += val[side][agent].1;
            }
        }
        if totals.iter().all(|&(p, c)| p >= floor && c <= cap) {
            let mut bundles = vec![Vec::new(), Vec::new()];
            for (j, (x, y)) in sides.iter().enumerate() {
                let flip = (mask >> j & 1) as usize;
                let (to0, to1) = if flip == 0 { (x, y) } else { (y, x) };
                bundles[0].extend_from_slice(to0);
                bundles[1].extend_from_slice(to1);
            }
            return Ok(SolveOutcome::yes(SolverId::TwoComponents, Allocation::new(bundles)));
        }
    }
    Ok(SolveOutcome::no(SolverId::TwoComponents))
}
