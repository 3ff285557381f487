use crate::budget::Budget;
use crate::model::Allocation;
use crate::{Instance, SolveError, SolveOutcome, SolverId};

/// Default cap on the number of item-to-agent assignments the oracle may
/// enumerate.
pub const DEFAULT_MAX_ASSIGNMENTS: u128 = 10_000_000;

#[derive(Debug, Clone)]
pub struct OracleOptions {
    pub max_assignments: u128,
    /// Restrict to allocations where every bundle has exactly this many
    /// items.
    pub exact_bundle_size: Option<usize>,
    pub budget: Budget,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            max_assignments: DEFAULT_MAX_ASSIGNMENTS,
            exact_bundle_size: None,
            budget: Budget::unlimited(),
        }
    }
}

/// Number of assignments the search space holds: `k^n`, or the multinomial
/// `n! / (s!)^k` when bundle sizes are fixed to `s`.
fn search_space(n: usize, k: usize, size: Option<usize>) -> Option<u128> {
    match size {
        None => (k as u128).checked_pow(n as u32),
        Some(s) => {
            if s.checked_mul(k) != Some(n) {
                return Some(0);
            }
            // Product of binomials C(n - i*s, s).
            let mut total: u128 = 1;
            let mut left = n;
            for _ in 0..k {
                let mut c: u128 = 1;
                for i in 0..s {
                    c = c.checked_mul((left - i) as u128)? / (i as u128 + 1);
                }
                total = total.checked_mul(c)?;
                left -= s;
            }
            Some(total)
        }
    }
}

/// Exhaustive search over all item-to-agent assignments with the default
/// limit.
pub fn solve_oracle(inst: &Instance) -> Result<SolveOutcome, SolveError> {
    solve_oracle_with(inst, &OracleOptions::default())
}

/// Enumerates assignment vectors in lexicographic order (item 0 first,
/// agent 0 first) and returns the first feasible one. Branches are cut only
/// when no completion can be feasible, so the answer is the same as for
/// plain enumeration.
pub fn solve_oracle_with(inst: &Instance, opts: &OracleOptions) -> Result<SolveOutcome, SolveError> {
    let (n, k) = (inst.n(), inst.k());
    let space = search_space(n, k, opts.exact_bundle_size);
    match space {
        Some(s) if s <= opts.max_assignments => {}
        _ => {
            return Err(SolveError::EnumerationBudget(format!(
                "{} assignments exceed the oracle limit of {}",
                space.map_or_else(|| format!("{k}^{n}"), |s| s.to_string()),
                opts.max_assignments
            )))
        }
    }
    if space == Some(0) {
        return Ok(SolveOutcome::no(SolverId::Oracle));
    }

    let cap = opts.exact_bundle_size.map(|s| (s, true));
    match first_assignment(inst, cap, &opts.budget)? {
        Some(a) => Ok(SolveOutcome::yes(SolverId::Oracle, Allocation::from_assignment(k, &a))),
        None => Ok(SolveOutcome::no(SolverId::Oracle)),
    }
}

/// Lexicographically first feasible assignment vector. `cap = (s, exact)`
/// limits every bundle to at most `s` items, or exactly `s` when `exact`.
pub(crate) fn first_assignment(
    inst: &Instance,
    cap: Option<(usize, bool)>,
    budget: &Budget,
) -> Result<Option<Vec<usize>>, SolveError> {
    let (n, k) = (inst.n(), inst.k());
    // suffix[a][i] = agent a's utility of items i..n
    let suffix: Vec<Vec<u64>> = (0..k)
        .map(|a| {
            let mut s = vec![0u64; n + 1];
            for i in (0..n).rev() {
                s[i] = s[i + 1] + inst.utility(a, i);
            }
            s
        })
        .collect();
    let mut search = Search {
        inst,
        suffix,
        cap,
        assignment: vec![0; n],
        utility: vec![0; k],
        cost: vec![0; k],
        size: vec![0; k],
        steps: 0,
        budget,
    };
    Ok(search.descend(0)?.then_some(search.assignment))
}

struct Search<'a> {
    inst: &'a Instance,
    suffix: Vec<Vec<u64>>,
    cap: Option<(usize, bool)>,
    assignment: Vec<usize>,
    utility: Vec<u64>,
    cost: Vec<u64>,
    size: Vec<usize>,
    steps: u64,
    budget: &'a Budget,
}

impl Search<'_> {
    fn descend(&mut self, i: usize) -> Result<bool, SolveError> {
        let inst = self.inst;
        let (n, k) = (inst.n(), inst.k());
        self.steps += 1;
        if self.steps & 0xfff == 0 {
            self.budget.check_time()?;
        }
        // Every agent must still be able to reach the floor.
        if (0..k).any(|a| self.utility[a] + self.suffix[a][i] < inst.profit_floor()) {
            return Ok(false);
        }
        if let Some((s, _)) = self.cap {
            if n - i > self.size.iter().map(|&z| s - z).sum::<usize>() {
                return Ok(false);
            }
        }
        if i == n {
            return Ok(self.cap.is_none_or(|(s, exact)| !exact || self.size.iter().all(|&z| z == s)));
        }
        for a in 0..k {
            if self.cap.is_some_and(|(s, _)| self.size[a] >= s) {
                continue;
            }
            let c = self.cost[a] + inst.cost(a, i);
            if c > inst.budget() {
                continue;
            }
            if inst.graph().neighbors(i).iter().any(|&w| w < i && self.assignment[w] == a) {
                continue;
            }
            self.assignment[i] = a;
            self.cost[a] = c;
            self.utility[a] += inst.utility(a, i);
            self.size[a] += 1;
            if self.descend(i + 1)? {
                return Ok(true);
            }
            self.size[a] -= 1;
            self.utility[a] -= inst.utility(a, i);
            self.cost[a] -= inst.cost(a, i);
        }
        Ok(false)
    }
}
