//! Wall-time series for one solver along one scaling axis.

use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use bcfea_core::generators::{random_instance, RandomSpec};
use bcfea_core::graph::Graph;
use bcfea_core::{Budget, Instance, SolveError, SolverId, Valuations};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::solve::{dispatch, SolveRequest};

/// Serialized under the names `from_str` accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axis {
    /// Number of items.
    #[serde(rename = "n")]
    N,
    /// Product `P * B` at 12 items, two agents.
    #[serde(rename = "pb")]
    ProfitBudget,
    /// Width of a random partial k-tree on 20 items.
    #[serde(rename = "tw")]
    Treewidth,
    /// Number of distinct (utility, cost) types on 16 items.
    #[serde(rename = "lambda")]
    Lambda,
    /// Number of connected components, two agents.
    #[serde(rename = "r")]
    Components,
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "n" => Ok(Axis::N),
            "pb" => Ok(Axis::ProfitBudget),
            "tw" => Ok(Axis::Treewidth),
            "lambda" => Ok(Axis::Lambda),
            "r" => Ok(Axis::Components),
            _ => Err(format!("unknown axis '{s}' (expected n, pb, tw, lambda, r)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub solver: SolverId,
    pub axis: Axis,
    pub values: Vec<u64>,
    pub k: usize,
    pub repeats: usize,
    pub seed: u64,
    pub time_limit: Option<Duration>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub solver: SolverId,
    pub axis: Axis,
    pub value: u64,
    pub seed: u64,
    pub n: usize,
    pub decision: String,
    /// `ok`, `timeout` or `error: ...`.
    pub status: String,
    pub millis: f64,
    pub table_entries: usize,
}

/// Random graph of treewidth at most `w`: a random `w`-tree with each edge
/// kept with probability `keep`.
pub fn random_partial_ktree(n: usize, w: usize, keep: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    let base = n.min(w + 1);
    for u in 0..base {
        for v in u + 1..base {
            edges.push((u, v));
        }
    }
    let mut cliques: Vec<Vec<usize>> = vec![(0..base).collect()];
    for v in base..n {
        let mut clique = cliques.choose(rng).expect("at least one clique").clone();
        if clique.len() > w {
            clique.remove(rng.gen_range(0..clique.len()));
        }
        for &u in &clique {
            edges.push((u, v));
        }
        clique.push(v);
        cliques.push(clique);
    }
    let kept = edges.into_iter().filter(|_| rng.gen_bool(keep));
    Graph::from_edges(n, kept)
}

fn isqrt(v: u64) -> u64 {
    (v as f64).sqrt() as u64
}

/// The benchmark instance for one cell.
pub fn bench_instance(axis: Axis, value: u64, k: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let identical = |g: Graph, utility: Vec<u64>, cost: Vec<u64>, p, b| {
        Instance::from_parts(k, g, Valuations::Identical { utility, cost }, p, b).expect("valid bench instance")
    };
    let share = |n: usize| 4 * n as u64 / k as u64;
    match axis {
        Axis::N => {
            let n = value as usize;
            let spec = RandomSpec {
                n,
                k,
                edge_prob: 0.3,
                utility: (0, 8),
                cost: (0, 8),
                profit_floor: (share(n) * 3 / 4, share(n) * 3 / 4),
                budget: (share(n), share(n)),
                per_agent: false,
                seed,
            };
            random_instance(&spec).expect("valid bench spec")
        }
        Axis::ProfitBudget => {
            let n = 12;
            let side = isqrt(value).max(1);
            let top = (4 * side / n as u64).max(1);
            let g = Graph::from_edges(n, (0..n - 1).filter(|_| rng.gen_bool(0.5)).map(|i| (i, i + 1)));
            let utility = (0..n).map(|_| rng.gen_range(0..=top)).collect();
            let cost = (0..n).map(|_| rng.gen_range(0..=top)).collect();
            identical(g, utility, cost, side, side)
        }
        Axis::Treewidth => {
            let n = 20;
            let g = random_partial_ktree(n, value as usize, 0.8, &mut rng);
            let utility = (0..n).map(|_| rng.gen_range(0..=8)).collect();
            let cost = (0..n).map(|_| rng.gen_range(0..=8)).collect();
            identical(g, utility, cost, share(n) * 3 / 4, share(n))
        }
        Axis::Lambda => {
            let n = 16;
            let types: Vec<(u64, u64)> = (0..value.max(1)).map(|t| (1 + t % 8, 1 + t / 8 % 8)).collect();
            let g = random_partial_ktree(n, 2, 0.7, &mut rng);
            let picks: Vec<(u64, u64)> = (0..n).map(|_| *types.choose(&mut rng).expect("nonempty")).collect();
            let total_u: u64 = picks.iter().map(|t| t.0).sum();
            let total_c: u64 = picks.iter().map(|t| t.1).sum();
            identical(
                g,
                picks.iter().map(|t| t.0).collect(),
                picks.iter().map(|t| t.1).collect(),
                total_u / k as u64 * 3 / 4,
                total_c / k as u64 + 2,
            )
        }
        Axis::Components => {
            let r = value.max(1) as usize;
            let g = Graph::from_edges(2 * r, (0..r).map(|i| (2 * i, 2 * i + 1)));
            let utility = (0..2 * r).map(|_| rng.gen_range(0..=8)).collect();
            let cost = (0..2 * r).map(|_| rng.gen_range(0..=8)).collect();
            identical(g, utility, cost, share(2 * r) * 3 / 4, share(2 * r))
        }
    }
}

/// Runs every cell; timeouts and solver errors are recorded, not raised.
pub fn run_bench(spec: &BenchSpec) -> Vec<BenchRow> {
    let req = SolveRequest::default();
    let mut rows = Vec::new();
    for &value in &spec.values {
        for rep in 0..spec.repeats.max(1) {
            let seed = spec.seed.wrapping_add(rep as u64);
            let inst = bench_instance(spec.axis, value, spec.k, seed);
            let mut budget = Budget::unlimited();
            if let Some(t) = spec.time_limit {
                budget = budget.with_time_limit(t);
            }
            let start = Instant::now();
            let result = dispatch(&inst, spec.solver, &req, None, &budget);
            let millis = start.elapsed().as_secs_f64() * 1e3;
            let (decision, status) = match result {
                Ok((out, _)) => ((if out.is_yes() { "yes" } else { "no" }).to_string(), "ok".to_string()),
                Err(SolveError::Budget(_)) => (String::new(), "timeout".to_string()),
                Err(e) => (String::new(), format!("error: {e}")),
            };
            rows.push(BenchRow {
                solver: spec.solver,
                axis: spec.axis,
                value,
                seed,
                n: inst.n(),
                decision,
                status,
                millis,
                table_entries: budget.peak_entries(),
            });
        }
    }
    rows
}

pub fn write_csv(rows: &[BenchRow], out: impl Write) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
