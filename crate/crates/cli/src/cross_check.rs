//! Runs every applicable exact solver on a corpus and compares decisions
//! with the brute-force oracle.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use bcfea_core::exact::{
    solve_bounded_bundles, solve_oracle, solve_subset_convolution, solve_two_agents_components,
    solve_two_agents_layered_dp,
};
use bcfea_core::generators::{self, RandomSpec};
use bcfea_core::graph::Graph;
use bcfea_core::treewidth::{heuristic_nice_decomposition, solve_chordal, solve_config_dp, solve_pc_dp};
use bcfea_core::{Budget, Instance, SolveError, SolveOutcome, Valuations};
use rayon::prelude::*;
use serde::Serialize;

pub type SolverFn = Arc<dyn Fn(&Instance) -> Result<SolveOutcome, SolveError> + Send + Sync>;

#[derive(Clone)]
pub struct CheckSolver {
    pub name: String,
    pub run: SolverFn,
}

impl CheckSolver {
    pub fn new(name: &str, run: impl Fn(&Instance) -> Result<SolveOutcome, SolveError> + Send + Sync + 'static) -> Self {
        CheckSolver { name: name.to_string(), run: Arc::new(run) }
    }
}

#[derive(Debug, Clone)]
pub struct NamedInstance {
    pub name: String,
    pub instance: Instance,
}

/// The exact solvers compared against the oracle. Solvers whose
/// preconditions fail (wrong `k`, per-agent values, non-chordal graph) are
/// skipped for that instance.
pub fn default_solvers() -> Vec<CheckSolver> {
    let unlimited = Budget::unlimited;
    vec![
        CheckSolver::new("two_components", move |i| solve_two_agents_components(i, &unlimited())),
        CheckSolver::new("two_layered", move |i| solve_two_agents_layered_dp(i, &unlimited())),
        CheckSolver::new("subset_conv", move |i| solve_subset_convolution(i, &unlimited())),
        CheckSolver::new("bounded_bundles", move |i| solve_bounded_bundles(i, i.n().max(1), &unlimited())),
        CheckSolver::new("pc_dp", move |i| solve_pc_dp(i, &heuristic_nice_decomposition(i.graph()), &unlimited())),
        CheckSolver::new("config_dp", move |i| {
            solve_config_dp(i, &heuristic_nice_decomposition(i.graph()), &unlimited())
        }),
        CheckSolver::new("chordal", move |i| solve_chordal(i, &unlimited())),
    ]
}

fn inapplicable(e: &SolveError) -> bool {
    matches!(e, SolveError::WrongK { .. } | SolveError::PerAgentUnsupported | SolveError::NotChordal)
}

/// Random instances in the cross-check regime: `n <= 10`, `k` in `{2, 3}`,
/// values at most 8, edge probability in `{0, 0.2, 0.5}`; every fourth one
/// has per-agent values.
pub fn random_corpus(count: usize, seed: u64) -> Vec<NamedInstance> {
    (0..count)
        .map(|i| {
            let s = seed.wrapping_add(i as u64);
            let n = 2 + (s % 9) as usize;
            let k = 2 + (s / 9 % 2) as usize;
            let edge_prob = [0.0, 0.2, 0.5][(s / 18 % 3) as usize];
            let share = 4 * n as u64 / k as u64;
            let spec = RandomSpec {
                n,
                k,
                edge_prob,
                utility: (0, 8),
                cost: (0, 8),
                profit_floor: (0, share.max(1)),
                budget: (0, share + 4),
                per_agent: i % 4 == 3,
                seed: s,
            };
            NamedInstance { name: format!("random-{s}"), instance: generators::random_instance(&spec).expect("valid spec") }
        })
        .collect()
}

/// Small instances from every reduction.
pub fn generator_fixtures() -> Vec<NamedInstance> {
    let mut out = Vec::new();
    let mut add = |name: &str, inst: Instance| out.push(NamedInstance { name: name.to_string(), instance: inst });
    add("partition-1-2-4-7", generators::from_partition(&[1, 2, 4, 7]).unwrap());
    add("partition-2-4-8", generators::from_partition(&[2, 4, 8]).unwrap());
    add("partition-1-1", generators::from_partition(&[1, 1]).unwrap());
    add("three-partition-m2", generators::from_three_partition(&[3, 3, 4, 3, 3, 4], 10).unwrap());
    add("three-partition-m1", generators::from_three_partition(&[3, 3, 4], 10).unwrap());
    add("coloring-c5-2", generators::from_k_coloring(&Graph::cycle(5), 2).unwrap());
    add("coloring-c5-3", generators::from_k_coloring(&Graph::cycle(5), 3).unwrap());
    add("coloring-edgeless-1", generators::from_k_coloring(&Graph::empty(3), 1).unwrap());
    add("santa-claus-yes", generators::from_santa_claus(&[1, 2, 3], 2, 3).unwrap());
    add("santa-claus-no", generators::from_santa_claus(&[1, 2, 3], 2, 7).unwrap());
    add("santa-claus-one", generators::from_santa_claus(&[1, 2, 3], 1, 6).unwrap());
    add("bin-packing-yes", generators::from_bin_packing(&[3, 3, 3, 3], 2, 6).unwrap());
    add("bin-packing-no", generators::from_bin_packing(&[7], 1, 6).unwrap());
    add("bin-packing-empty", generators::from_bin_packing(&[], 2, 0).unwrap());
    add("knapsack-yes", generators::from_knapsack(&[6], &[3], 5, 4).unwrap());
    add("knapsack-no", generators::from_knapsack(&[1, 2], &[0, 0], 4, 9).unwrap());
    add("knapsack-tight", generators::from_knapsack(&[3, 4], &[1, 2], 1, 0).unwrap());
    add("matched-1-2-4-7", generators::from_matched_partition(&[1, 2, 4, 7]).unwrap());
    add("matched-2-4-8", generators::from_matched_partition(&[2, 4, 8]).unwrap());
    add("matched-1-1", generators::from_matched_partition(&[1, 1]).unwrap());
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Disagreement {
    pub instance: String,
    pub solver: String,
    pub reference: String,
    pub expected: bool,
    pub found: bool,
    /// Where the minimised reproducer was written, if anywhere.
    pub reproducer: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CrossCheckSummary {
    pub instances: usize,
    pub comparisons: usize,
    pub disagreements: Vec<Disagreement>,
    /// `(instance, solver)` pairs whose Yes allocation failed verification.
    pub verification_failures: Vec<(String, String)>,
    /// `(instance, solver, error)` for unexpected solver errors.
    pub errors: Vec<(String, String, String)>,
}

impl CrossCheckSummary {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.verification_failures.is_empty() && self.errors.is_empty()
    }
}

enum Verdict {
    Skip,
    Decided(bool),
    Unverified,
    Error(String),
}

fn judge(solver: &CheckSolver, inst: &Instance) -> Verdict {
    match (solver.run)(inst) {
        Ok(out) if !out.is_consistent(inst) => Verdict::Unverified,
        Ok(out) => Verdict::Decided(out.is_yes()),
        Err(e) if inapplicable(&e) => Verdict::Skip,
        Err(e) => Verdict::Error(e.to_string()),
    }
}

/// Compares each solver with `reference` on every instance, in parallel
/// across instances. Disagreements are minimised and written to
/// `reproducer_dir` when given.
pub fn run_cross_check(
    corpus: &[NamedInstance],
    reference: &CheckSolver,
    solvers: &[CheckSolver],
    reproducer_dir: Option<&Path>,
) -> CrossCheckSummary {
    let per_instance: Vec<CrossCheckSummary> = corpus
        .par_iter()
        .map(|named| {
            let inst = &named.instance;
            let mut s = CrossCheckSummary { instances: 1, ..Default::default() };
            let expected = match judge(reference, inst) {
                Verdict::Decided(d) => d,
                Verdict::Unverified => {
                    s.verification_failures.push((named.name.clone(), reference.name.clone()));
                    return s;
                }
                Verdict::Skip => return s,
                Verdict::Error(e) => {
                    s.errors.push((named.name.clone(), reference.name.clone(), e));
                    return s;
                }
            };
            for solver in solvers {
                match judge(solver, inst) {
                    Verdict::Skip => {}
                    Verdict::Decided(found) => {
                        s.comparisons += 1;
                        if found != expected {
                            let reproducer = reproducer_dir.and_then(|dir| {
                                let small = minimize(inst, reference, solver);
                                let path = dir.join(format!("{}-{}.json", named.name, solver.name));
                                std::fs::write(&path, small.to_json()).ok().map(|_| path)
                            });
                            s.disagreements.push(Disagreement {
                                instance: named.name.clone(),
                                solver: solver.name.clone(),
                                reference: reference.name.clone(),
                                expected,
                                found,
                                reproducer,
                            });
                        }
                    }
                    Verdict::Unverified => s.verification_failures.push((named.name.clone(), solver.name.clone())),
                    Verdict::Error(e) => s.errors.push((named.name.clone(), solver.name.clone(), e)),
                }
            }
            s
        })
        .collect();
    let mut total = CrossCheckSummary::default();
    for s in per_instance {
        total.instances += s.instances;
        total.comparisons += s.comparisons;
        total.disagreements.extend(s.disagreements);
        total.verification_failures.extend(s.verification_failures);
        total.errors.extend(s.errors);
    }
    total
}

pub fn oracle_reference() -> CheckSolver {
    CheckSolver::new("oracle", solve_oracle)
}

/// The instance restricted to `keep` (item indices, increasing).
pub fn restrict(inst: &Instance, keep: &[usize]) -> Instance {
    let pos: std::collections::HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges = inst
        .graph()
        .edges()
        .iter()
        .filter_map(|&(u, v)| Some((*pos.get(&u)?, *pos.get(&v)?)));
    let graph = Graph::from_edges(keep.len(), edges);
    let pick = |row: &[u64]| keep.iter().map(|&v| row[v]).collect::<Vec<u64>>();
    let valuations = match inst.valuations() {
        Valuations::Identical { utility, cost } => Valuations::Identical { utility: pick(utility), cost: pick(cost) },
        Valuations::PerAgent { utility, cost } => Valuations::PerAgent {
            utility: utility.iter().map(|r| pick(r)).collect(),
            cost: cost.iter().map(|r| pick(r)).collect(),
        },
    };
    let ids = keep.iter().map(|&v| inst.items()[v].clone()).collect();
    Instance::from_parts_with_ids(ids, inst.k(), graph, valuations, inst.profit_floor(), inst.budget())
        .expect("restriction of a valid instance is valid")
}

fn disagree(inst: &Instance, a: &CheckSolver, b: &CheckSolver) -> bool {
    match (judge(a, inst), judge(b, inst)) {
        (Verdict::Decided(x), Verdict::Decided(y)) => x != y,
        _ => false,
    }
}

/// Greedily drops items while the two solvers keep disagreeing.
pub fn minimize(inst: &Instance, a: &CheckSolver, b: &CheckSolver) -> Instance {
    let mut current = inst.clone();
    let mut i = 0;
    while i < current.n() {
        let keep: Vec<usize> = (0..current.n()).filter(|&v| v != i).collect();
        let smaller = restrict(&current, &keep);
        if disagree(&smaller, a, b) {
            current = smaller;
        } else {
            i += 1;
        }
    }
    current
}
