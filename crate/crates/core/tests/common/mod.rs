#![allow(dead_code)]

use bcfea_core::graph::Graph;
use bcfea_core::{Instance, Valuations};
use proptest::prelude::*;

/// Small instances: up to 7 items, 1 to 3 agents, values at most 6.
pub fn small_instance() -> impl Strategy<Value = Instance> {
    (0usize..=7, 1usize..=3, any::<bool>()).prop_flat_map(|(n, k, per_agent)| {
        let pairs = n * n.saturating_sub(1) / 2;
        let rows = if per_agent { k } else { 1 };
        (
            proptest::collection::vec(proptest::bool::weighted(0.3), pairs),
            proptest::collection::vec(proptest::collection::vec(0u64..=6, n), rows),
            proptest::collection::vec(proptest::collection::vec(0u64..=6, n), rows),
            0u64..=12,
            0u64..=12,
        )
            .prop_map(move |(mask, u, c, p, b)| {
                let edges = all_pairs(n).into_iter().zip(mask).filter(|(_, keep)| *keep).map(|(e, _)| e);
                let g = Graph::from_edges(n, edges);
                let valuations = if per_agent {
                    Valuations::PerAgent { utility: u, cost: c }
                } else {
                    Valuations::Identical { utility: u[0].clone(), cost: c[0].clone() }
                };
                Instance::from_parts(k, g, valuations, p, b).unwrap()
            })
    })
}

pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Feasibility of one assignment, recomputed from scratch.
pub fn assignment_feasible(inst: &Instance, assignment: &[usize]) -> bool {
    let g = inst.graph();
    if g.edges().iter().any(|&(u, v)| assignment[u] == assignment[v]) {
        return false;
    }
    (0..inst.k()).all(|a| {
        let items = (0..inst.n()).filter(|&v| assignment[v] == a);
        let (p, c) = items.fold((0, 0), |(p, c), v| (p + inst.utility(a, v), c + inst.cost(a, v)));
        p >= inst.profit_floor() && c <= inst.budget()
    })
}

/// Decides by trying all `k^n` assignments.
pub fn brute_force(inst: &Instance) -> bool {
    let (n, k) = (inst.n(), inst.k());
    let mut assignment = vec![0usize; n];
    loop {
        if assignment_feasible(inst, &assignment) {
            return true;
        }
        let mut i = 0;
        while i < n && assignment[i] == k - 1 {
            assignment[i] = 0;
            i += 1;
        }
        if i == n {
            return false;
        }
        assignment[i] += 1;
    }
}
