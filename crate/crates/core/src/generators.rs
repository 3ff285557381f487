//! Instances built from classical problems, plus seeded random instances.
//!
//! Every reduction keeps the source problem's answer: the generated
//! instance is a yes-instance iff the source instance is.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::{Instance, Valuations};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("values sum to {0}, which is odd")]
    OddTotal(u64),
    #[error("malformed input: {0}")]
    MalformedInput(String),
}

/// Source problem and its payload, as read by `bcfea gen`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeneratorSpec {
    Partition { values: Vec<u64> },
    ThreePartition { values: Vec<u64>, bound: u64 },
    KColoring { n: usize, edges: Vec<(usize, usize)>, k: usize },
    SantaClaus { profits: Vec<u64>, k: usize, tau: u64 },
    BinPacking { sizes: Vec<u64>, k: usize, capacity: u64 },
    Knapsack { profits: Vec<u64>, weights: Vec<u64>, target: u64, capacity: u64 },
    MatchedPartition { values: Vec<u64> },
    Random(RandomSpec),
}

/// Inclusive ranges; values are drawn uniformly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSpec {
    pub n: usize,
    pub k: usize,
    pub edge_prob: f64,
    pub utility: (u64, u64),
    pub cost: (u64, u64),
    pub profit_floor: (u64, u64),
    pub budget: (u64, u64),
    /// Draw separate values for every agent.
    #[serde(default)]
    pub per_agent: bool,
    #[serde(default)]
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Instance, GeneratorError> {
        match self {
            GeneratorSpec::Partition { values } => from_partition(values),
            GeneratorSpec::ThreePartition { values, bound } => from_three_partition(values, *bound),
            GeneratorSpec::KColoring { n, edges, k } => {
                if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= *n || v >= *n || u == v) {
                    return Err(GeneratorError::MalformedInput(format!("bad edge ({u}, {v})")));
                }
                from_k_coloring(&Graph::from_edges(*n, edges.iter().copied()), *k)
            }
            GeneratorSpec::SantaClaus { profits, k, tau } => from_santa_claus(profits, *k, *tau),
            GeneratorSpec::BinPacking { sizes, k, capacity } => from_bin_packing(sizes, *k, *capacity),
            GeneratorSpec::Knapsack { profits, weights, target, capacity } => {
                from_knapsack(profits, weights, *target, *capacity)
            }
            GeneratorSpec::MatchedPartition { values } => from_matched_partition(values),
            GeneratorSpec::Random(spec) => random_instance(spec),
        }
    }
}

fn malformed(e: impl std::fmt::Display) -> GeneratorError {
    GeneratorError::MalformedInput(e.to_string())
}

fn identical(k: usize, graph: Graph, utility: Vec<u64>, cost: Vec<u64>, p: u64, b: u64) -> Result<Instance, GeneratorError> {
    Instance::from_parts(k, graph, Valuations::Identical { utility, cost }, p, b).map_err(malformed)
}

fn even_half(values: &[u64]) -> Result<u64, GeneratorError> {
    let total = values
        .iter()
        .try_fold(0u64, |acc, &s| acc.checked_add(s))
        .ok_or_else(|| malformed("values overflow"))?;
    if total % 2 == 1 {
        return Err(GeneratorError::OddTotal(total));
    }
    Ok(total / 2)
}

/// Edgeless, `k = 2`, `p = S`, `c = 0`, `P = ΣS/2`, `B = 0`.
pub fn from_partition(values: &[u64]) -> Result<Instance, GeneratorError> {
    let half = even_half(values)?;
    identical(2, Graph::empty(values.len()), values.to_vec(), vec![0; values.len()], half, 0)
}

/// Edgeless, `k = m`, `p = S`, `c = 0`, `P = X`, `B = 0`.
pub fn from_three_partition(values: &[u64], bound: u64) -> Result<Instance, GeneratorError> {
    if values.is_empty() || !values.len().is_multiple_of(3) {
        return Err(malformed(format!("{} values is not a positive multiple of 3", values.len())));
    }
    let m = values.len() / 3;
    let total: u128 = values.iter().map(|&s| s as u128).sum();
    if total != m as u128 * bound as u128 {
        return Err(malformed(format!("values sum to {total}, expected {m} * {bound}")));
    }
    // X/4 < s < X/2
    if let Some(&s) = values.iter().find(|&&s| 4 * s as u128 <= bound as u128 || 2 * s as u128 >= bound as u128) {
        return Err(malformed(format!("size {s} outside ({bound}/4, {bound}/2)")));
    }
    identical(m, Graph::empty(values.len()), values.to_vec(), vec![0; values.len()], bound, 0)
}

/// `G = H`, `p = 1`, `c = 0`, `P = B = 0`.
pub fn from_k_coloring(h: &Graph, k: usize) -> Result<Instance, GeneratorError> {
    identical(k, h.clone(), vec![1; h.n()], vec![0; h.n()], 0, 0)
}

/// Edgeless, `c = 0`, `P = τ`, `B = 0`.
pub fn from_santa_claus(profits: &[u64], k: usize, tau: u64) -> Result<Instance, GeneratorError> {
    identical(k, Graph::empty(profits.len()), profits.to_vec(), vec![0; profits.len()], tau, 0)
}

/// Edgeless, `p = 0`, `c = sizes`, `P = 0`, `B = W`.
pub fn from_bin_packing(sizes: &[u64], k: usize, capacity: u64) -> Result<Instance, GeneratorError> {
    identical(k, Graph::empty(sizes.len()), vec![0; sizes.len()], sizes.to_vec(), 0, capacity)
}

/// Two agents with separate valuations over the items plus a dummy `d`:
/// agent 1 values items by profit and weight, agent 2 values every item at
/// `P'` and cost 0; the dummy costs agent 1 more than `W`.
pub fn from_knapsack(profits: &[u64], weights: &[u64], target: u64, capacity: u64) -> Result<Instance, GeneratorError> {
    if profits.len() != weights.len() {
        return Err(malformed(format!("{} profits but {} weights", profits.len(), weights.len())));
    }
    let n = profits.len();
    let over = capacity.checked_add(1).ok_or_else(|| malformed("capacity overflows"))?;
    let mut p1 = profits.to_vec();
    let mut c1 = weights.to_vec();
    p1.push(0);
    c1.push(over);
    let ids = (1..=n).map(|i| format!("v{i}")).chain(["d".to_string()]).collect();
    let valuations = Valuations::PerAgent {
        utility: vec![p1, vec![target; n + 1]],
        cost: vec![c1, vec![0; n + 1]],
    };
    Instance::from_parts_with_ids(ids, 2, Graph::empty(n + 1), valuations, target, capacity).map_err(malformed)
}

/// Pairs `u_i v_i` joined by an edge; `v_i` has cost `s_i` and profit 1,
/// `u_i` is worthless; `k = 2`, `P = 1`, `B = ΣS/2`. Items are ordered
/// `u_1, v_1, u_2, v_2, ...`.
pub fn from_matched_partition(values: &[u64]) -> Result<Instance, GeneratorError> {
    let half = even_half(values)?;
    let m = values.len();
    let graph = Graph::from_edges(2 * m, (0..m).map(|i| (2 * i, 2 * i + 1)));
    let mut utility = vec![0; 2 * m];
    let mut cost = vec![0; 2 * m];
    for (i, &s) in values.iter().enumerate() {
        utility[2 * i + 1] = 1;
        cost[2 * i + 1] = s;
    }
    let ids = (1..=m).flat_map(|i| [format!("u{i}"), format!("v{i}")]).collect();
    Instance::from_parts_with_ids(ids, 2, graph, Valuations::Identical { utility, cost }, 1, half).map_err(malformed)
}

/// Deterministic for a fixed spec (including its seed).
pub fn random_instance(spec: &RandomSpec) -> Result<Instance, GeneratorError> {
    let ranges = [("utility", spec.utility), ("cost", spec.cost), ("profit_floor", spec.profit_floor), ("budget", spec.budget)];
    if let Some((name, _)) = ranges.iter().find(|(_, (lo, hi))| lo > hi) {
        return Err(malformed(format!("empty {name} range")));
    }
    if !(0.0..=1.0).contains(&spec.edge_prob) {
        return Err(malformed(format!("edge_prob {} outside [0, 1]", spec.edge_prob)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let mut graph = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(spec.edge_prob) {
                graph.add_edge(u, v);
            }
        }
    }
    let mut draw = |(lo, hi): (u64, u64), len: usize| -> Vec<u64> { (0..len).map(|_| rng.gen_range(lo..=hi)).collect() };
    let valuations = if spec.per_agent {
        let utility = (0..spec.k).map(|_| draw(spec.utility, n)).collect();
        let cost = (0..spec.k).map(|_| draw(spec.cost, n)).collect();
        Valuations::PerAgent { utility, cost }
    } else {
        let utility = draw(spec.utility, n);
        let cost = draw(spec.cost, n);
        Valuations::Identical { utility, cost }
    };
    let p = draw(spec.profit_floor, 1)[0];
    let b = draw(spec.budget, 1)[0];
    Instance::from_parts(spec.k, graph, valuations, p, b).map_err(malformed)
}
