use std::collections::BTreeSet;

use super::check_decomposition;
use super::engine::{backtrack, run, Charge, Tables};
use crate::budget::Budget;
use crate::graph::NiceTreeDecomposition;
use crate::model::{type_table, Allocation};
use crate::{Instance, SolveError, SolveOutcome, SolverId};

/// Counts per agent per type, flattened agent-major.
struct Configs {
    k: usize,
    lambda: usize,
    /// `kind[a][v]`: type of item `v` when agent `a` holds it.
    kind: Vec<Vec<usize>>,
}

impl Configs {
    fn new(inst: &Instance) -> (Self, Vec<(u64, u64)>) {
        let types = type_table(inst);
        let kind = (0..inst.k())
            .map(|a| {
                (0..inst.n())
                    .map(|v| types.binary_search(&(inst.utility(a, v), inst.cost(a, v))).expect("type table is complete"))
                    .collect()
            })
            .collect();
        (Configs { k: inst.k(), lambda: types.len(), kind }, types)
    }
}

impl Charge for Configs {
    type Val = Vec<u32>;

    fn zero(&self) -> Vec<u32> {
        vec![0; self.k * self.lambda]
    }

    fn forget(&self, val: &Vec<u32>, agent: usize, item: usize) -> Option<Vec<u32>> {
        let mut out = val.clone();
        out[agent * self.lambda + self.kind[agent][item]] += 1;
        Some(out)
    }

    fn join(&self, a: &Vec<u32>, b: &Vec<u32>) -> Option<Vec<u32>> {
        Some(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }
}

/// Type histogram of `items` held by `agent`.
pub fn configuration(inst: &Instance, agent: usize, items: &[usize]) -> Vec<u32> {
    let (configs, _) = Configs::new(inst);
    let mut out = vec![0; configs.lambda];
    for &v in items {
        out[configs.kind[agent][v]] += 1;
    }
    out
}

fn root_tables(
    inst: &Instance,
    ntd: &NiceTreeDecomposition,
    budget: &Budget,
) -> Result<(Configs, Vec<(u64, u64)>, Tables<Vec<u32>>), SolveError> {
    check_decomposition(inst, ntd)?;
    let (configs, types) = Configs::new(inst);
    let tables = run(inst, ntd, &configs, budget)?;
    Ok((configs, types, tables))
}

/// Configurations at the root, one count vector per agent.
pub fn config_root_configurations(
    inst: &Instance,
    ntd: &NiceTreeDecomposition,
    budget: &Budget,
) -> Result<BTreeSet<Vec<Vec<u32>>>, SolveError> {
    let (configs, _, tables) = root_tables(inst, ntd, budget)?;
    Ok(tables[ntd.root()]
        .iter()
        .map(|e| e.val.chunks(configs.lambda.max(1)).map(<[u32]>::to_vec).take(configs.k).collect())
        .collect())
}

pub fn solve_config_dp(inst: &Instance, ntd: &NiceTreeDecomposition, budget: &Budget) -> Result<SolveOutcome, SolveError> {
    let (configs, types, tables) = root_tables(inst, ntd, budget)?;
    let lambda = configs.lambda;
    let feasible = |val: &Vec<u32>| {
        (0..inst.k()).all(|a| {
            let counts = &val[a * lambda..(a + 1) * lambda];
            let p: u64 = counts.iter().zip(&types).map(|(&n, &(u, _))| n as u64 * u).sum();
            let c: u64 = counts.iter().zip(&types).map(|(&n, &(_, c))| n as u64 * c).sum();
            p >= inst.profit_floor() && c <= inst.budget()
        })
    };
    match tables[ntd.root()].iter().position(|e| feasible(&e.val)) {
        Some(idx) => {
            let (assignment, _) = backtrack(ntd, &tables, inst.n(), idx);
            Ok(SolveOutcome::yes(SolverId::ConfigDp, Allocation::from_assignment(inst.k(), &assignment)))
        }
        None => Ok(SolveOutcome::no(SolverId::ConfigDp)),
    }
}
