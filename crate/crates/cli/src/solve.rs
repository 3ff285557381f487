use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use bcfea_core::exact::{
    solve_bounded_bundles, solve_bundle_size_two, solve_one_agent, solve_oracle_with, solve_subset_convolution,
    solve_two_agents_components, solve_two_agents_layered_dp, OracleOptions,
};
use bcfea_core::graph::{connected_components, parse_td, to_nice_decomposition, NiceTreeDecomposition};
use bcfea_core::model::{compute_stats, InstanceStats};
use bcfea_core::treewidth::{heuristic_nice_decomposition, solve_chordal, solve_config_dp, solve_fpt_as, solve_pc_dp};
use bcfea_core::{Budget, Decision, Instance, NoWitness, SolveError, SolveOutcome, SolverId};
use num_rational::Ratio;
use serde::Serialize;

use crate::select::{select_algorithm, Selection};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverChoice {
    Auto,
    Fixed(SolverId),
}

impl FromStr for SolverChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(SolverChoice::Auto);
        }
        s.parse::<SolverId>().map(SolverChoice::Fixed).map_err(|_| {
            let names: Vec<&str> = SolverId::ALL.iter().map(|id| id.name()).collect();
            format!("unknown solver '{s}' (expected auto, {})", names.join(", "))
        })
    }
}

#[derive(Debug, Clone)]
pub struct SolveRequest {
    pub solver: SolverChoice,
    pub decomposition: Option<PathBuf>,
    pub epsilon: Ratio<u64>,
    pub omega: Ratio<u64>,
    /// Bundle-size cap for `bounded_bundles`; defaults to `n`.
    pub bundle_size: Option<usize>,
    pub time_limit: Option<Duration>,
    pub memory_limit: Option<usize>,
}

impl Default for SolveRequest {
    fn default() -> Self {
        SolveRequest {
            solver: SolverChoice::Auto,
            decomposition: None,
            epsilon: Ratio::new(1, 4),
            omega: Ratio::new(1, 4),
            bundle_size: None,
            time_limit: None,
            memory_limit: None,
        }
    }
}

impl SolveRequest {
    pub fn budget(&self) -> Budget {
        let mut b = Budget::unlimited();
        if let Some(t) = self.time_limit {
            b = b.with_time_limit(t);
        }
        if let Some(m) = self.memory_limit {
            b = b.with_max_table_entries(m);
        }
        b
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportStats {
    pub alpha: Vec<u64>,
    pub gamma: Vec<u64>,
    pub lambda: usize,
    pub n: usize,
    pub components: usize,
    /// Width of the decomposition the solver ran on, if it used one.
    pub width: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    /// `"yes"` or `"no"`.
    pub decision: &'static str,
    /// Item ids per bundle, when the answer is yes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub allocation: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    pub guarantee: String,
    pub solver: SolverId,
    pub wall_time_ms: f64,
    /// Peak number of live DP table entries, for table-based solvers.
    pub table_entries: usize,
    pub stats: ReportStats,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub kind: &'static str,
    pub items: Vec<String>,
}

impl SolveReport {
    pub fn is_yes(&self) -> bool {
        self.decision == "yes"
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} by {} ({}) in {:.3} ms",
            self.decision.to_uppercase(),
            self.solver,
            self.guarantee,
            self.wall_time_ms
        );
        if let Some(bundles) = &self.allocation {
            for (i, b) in bundles.iter().enumerate() {
                s.push_str(&format!("\n  agent {}: {{{}}}", i + 1, b.join(", ")));
            }
        }
        if let Some(w) = &self.witness {
            s.push_str(&format!("\n  {}: {}", w.kind, w.items.join(", ")));
        }
        s
    }
}

pub fn load_instance(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Instance::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Parses `a/b`, an integer, or a decimal such as `0.25` exactly.
pub fn parse_ratio(s: &str) -> Result<Ratio<u64>, String> {
    let bad = || format!("'{s}' is not a non-negative rational (use 0.25 or 1/4)");
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if b == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(a, b));
    }
    let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let whole: u64 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad())? };
    let denom = 10u64.pow(frac.len() as u32);
    let frac_val: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let numer = whole.checked_mul(denom).and_then(|w| w.checked_add(frac_val)).ok_or_else(bad)?;
    Ok(Ratio::new(numer, denom))
}

fn load_decomposition(inst: &Instance, path: &Path) -> Result<NiceTreeDecomposition, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let td = parse_td(&text, inst.n()).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    to_nice_decomposition(&td).map_err(|r| CliError::Solve(SolveError::InvalidDecomposition(r)))
}

/// Runs one solver. Decomposition-based solvers use `ntd` or a heuristic
/// decomposition; the width used is returned alongside.
pub fn dispatch(
    inst: &Instance,
    solver: SolverId,
    req: &SolveRequest,
    ntd: Option<&NiceTreeDecomposition>,
    budget: &Budget,
) -> Result<(SolveOutcome, Option<usize>), SolveError> {
    use SolverId::*;
    let owned;
    let ntd = match (solver, ntd) {
        (PcDp | ConfigDp | FptAs, Some(d)) => Some(d),
        (PcDp | ConfigDp | FptAs, None) => {
            owned = heuristic_nice_decomposition(inst.graph());
            Some(&owned)
        }
        _ => None,
    };
    let width = ntd.map(NiceTreeDecomposition::width);
    let out = match solver {
        Oracle => solve_oracle_with(inst, &OracleOptions { budget: budget.clone(), ..Default::default() }),
        OneAgent => solve_one_agent(inst),
        TwoComponents => solve_two_agents_components(inst, budget),
        TwoLayered => solve_two_agents_layered_dp(inst, budget),
        SubsetConv => solve_subset_convolution(inst, budget),
        BoundedBundles => solve_bounded_bundles(inst, req.bundle_size.unwrap_or(inst.n().max(1)), budget),
        BundleTwo => solve_bundle_size_two(inst),
        PcDp => solve_pc_dp(inst, ntd.expect("set above"), budget),
        ConfigDp => solve_config_dp(inst, ntd.expect("set above"), budget),
        FptAs => solve_fpt_as(inst, ntd.expect("set above"), req.epsilon, req.omega, budget),
        Chordal => solve_chordal(inst, budget),
    }?;
    Ok((out, width))
}

fn witness_report(inst: &Instance, w: &NoWitness) -> WitnessReport {
    let (kind, items) = match w {
        NoWitness::OddCycle(v) => ("odd_cycle", v),
        NoWitness::Clique(v) => ("clique", v),
        NoWitness::Conflict(v) => ("conflict", v),
        NoWitness::TooManyItems(v) => ("too_many_items", v),
    };
    WitnessReport { kind, items: items.iter().map(|&i| inst.items()[i].clone()).collect() }
}

/// Solves `inst` as requested and re-verifies any Yes allocation.
pub fn run_solve(inst: &Instance, req: &SolveRequest) -> Result<SolveReport, CliError> {
    let ntd = match &req.decomposition {
        Some(path) => Some(load_decomposition(inst, path)?),
        None => None,
    };
    let solver = match req.solver {
        SolverChoice::Fixed(id) => id,
        SolverChoice::Auto => match select_algorithm(inst, ntd.as_ref()) {
            Selection::Solver(id) => id,
            Selection::NoTractableSolver => return Err(CliError::NoTractableSolver),
        },
    };
    let budget = req.budget();
    let start = Instant::now();
    let (outcome, width) = dispatch(inst, solver, req, ntd.as_ref(), &budget)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    if !outcome.is_consistent(inst) {
        return Err(CliError::Internal(format!("{solver} returned an allocation that fails verification")));
    }
    let InstanceStats { alpha, gamma, lambda, n } = compute_stats(inst);
    let stats = ReportStats { alpha, gamma, lambda, n, components: connected_components(inst.graph()).len(), width };
    let (decision, allocation, witness) = match &outcome.decision {
        Decision::Yes(a) => ("yes", Some(a.to_raw(inst).bundles), None),
        Decision::No(w) => ("no", None, w.as_ref().map(|w| witness_report(inst, w))),
    };
    Ok(SolveReport {
        decision,
        allocation,
        witness,
        guarantee: outcome.guarantee.to_string(),
        solver: outcome.solver,
        wall_time_ms,
        table_entries: budget.peak_entries(),
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios() {
        assert_eq!(parse_ratio("0.25").unwrap(), Ratio::new(1, 4));
        assert_eq!(parse_ratio("1/2").unwrap(), Ratio::new(1, 2));
        assert_eq!(parse_ratio("1").unwrap(), Ratio::from_integer(1));
        assert_eq!(parse_ratio(".5").unwrap(), Ratio::new(1, 2));
        assert!(parse_ratio("-1").is_err());
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("abc").is_err());
    }

    #[test]
    fn solver_names() {
        assert_eq!("auto".parse::<SolverChoice>().unwrap(), SolverChoice::Auto);
        assert_eq!("pc_dp".parse::<SolverChoice>().unwrap(), SolverChoice::Fixed(SolverId::PcDp));
        assert!("magic".parse::<SolverChoice>().is_err());
    }
}
