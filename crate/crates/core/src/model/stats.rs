use std::collections::BTreeSet;

use serde::Serialize;

use super::{Instance, Valuations};

/// Aggregate sizes of an instance: total utility (`alpha`) and cost
/// (`gamma`) per agent, the number of distinct (cost, utility) types
/// (`lambda`) and the item count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceStats {
    /// One entry in identical mode, `k` entries otherwise.
    pub alpha: Vec<u64>,
    pub gamma: Vec<u64>,
    pub lambda: usize,
    pub n: usize,
}

impl InstanceStats {
    pub fn max_alpha(&self) -> u64 {
        self.alpha.iter().copied().max().unwrap_or(0)
    }

    pub fn max_gamma(&self) -> u64 {
        self.gamma.iter().copied().max().unwrap_or(0)
    }
}

/// Distinct `(utility, cost)` pairs, sorted; the union over agents in
/// per-agent mode.
pub(crate) fn type_table(inst: &Instance) -> Vec<(u64, u64)> {
    let agents = match inst.valuations() {
        Valuations::Identical { .. } => 1,
        Valuations::PerAgent { .. } => inst.k(),
    };
    let set: BTreeSet<(u64, u64)> = (0..agents)
        .flat_map(|a| (0..inst.n()).map(move |v| (inst.utility(a, v), inst.cost(a, v))))
        .collect();
    set.into_iter().collect()
}

pub fn compute_stats(inst: &Instance) -> InstanceStats {
    let agents = match inst.valuations() {
        Valuations::Identical { .. } => 1,
        Valuations::PerAgent { .. } => inst.k(),
    };
    let all: Vec<usize> = (0..inst.n()).collect();
    InstanceStats {
        alpha: (0..agents).map(|a| inst.bundle_utility(a, &all)).collect(),
        gamma: (0..agents).map(|a| inst.bundle_cost(a, &all)).collect(),
        lambda: type_table(inst).len(),
        n: inst.n(),
    }
}
