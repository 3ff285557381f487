use super::oracle::first_assignment;
use crate::budget::Budget;
use crate::model::Allocation;
use crate::{Instance, SolveError, SolveOutcome, SolverId};

/// Exhaustive search over allocations whose bundles hold at most `s` items.
/// With `n > k * s` no such allocation exists, so the search space is at
/// most `k^(k s)`.
pub fn solve_bounded_bundles(inst: &Instance, s: usize, budget: &Budget) -> Result<SolveOutcome, SolveError> {
    if s == 0 {
        return Err(SolveError::InvalidParameters("bundle size must be at least 1".into()));
    }
    if inst.n() > inst.k().saturating_mul(s) {
        return Ok(SolveOutcome::no(SolverId::BoundedBundles));
    }
    match first_assignment(inst, Some((s, false)), budget)? {
        Some(a) => Ok(SolveOutcome::yes(SolverId::BoundedBundles, Allocation::from_assignment(inst.k(), &a))),
        None => Ok(SolveOutcome::no(SolverId::BoundedBundles)),
    }
}
