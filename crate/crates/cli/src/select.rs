use bcfea_core::exact::DEFAULT_MAX_ASSIGNMENTS;
use bcfea_core::graph::{connected_components, recognize_chordal, Chordality, NiceTreeDecomposition};
use bcfea_core::model::compute_stats;
use bcfea_core::treewidth::heuristic_nice_decomposition;
use bcfea_core::{Instance, SolverId};

/// Work estimates above this are considered out of reach.
const WORK_LIMIT: f64 = 2e8;
/// Largest number of components the `2^r` orientation search takes on.
const MAX_COMPONENTS: usize = 20;
/// The chordal solver is tried for at most this many agents.
const CHORDAL_MAX_K: usize = 4;
/// Decompositions wider than this are not handed to the approximation.
const FPT_AS_MAX_WIDTH: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    Solver(SolverId),
    NoTractableSolver,
}

/// Deterministic portfolio choice from the instance and an optional
/// decomposition (a heuristic one is computed otherwise).
pub fn select_algorithm(inst: &Instance, decomposition: Option<&NiceTreeDecomposition>) -> Selection {
    use SolverId::*;
    let (n, k) = (inst.n() as f64, inst.k());
    if k == 1 {
        return Selection::Solver(OneAgent);
    }
    if k == 2 && connected_components(inst.graph()).len() <= MAX_COMPONENTS {
        return Selection::Solver(TwoComponents);
    }
    if k == 2 && inst.is_identical() {
        return Selection::Solver(TwoLayered);
    }
    if k <= CHORDAL_MAX_K && matches!(recognize_chordal(inst.graph()), Chordality::Chordal(_)) {
        return Selection::Solver(Chordal);
    }
    // Ranked products: k rounds of (n+1) zeta transforms over 2^n sets.
    let subset_work = n.exp2() * (n + 1.0) * n * k as f64;
    if inst.is_identical() && inst.n() <= bcfea_core::exact::MAX_SUBSET_ITEMS && subset_work <= WORK_LIMIT {
        return Selection::Solver(SubsetConv);
    }
    let oracle_work = (k as f64).powf(n);
    if oracle_work <= DEFAULT_MAX_ASSIGNMENTS as f64 {
        return Selection::Solver(Oracle);
    }

    let owned;
    let ntd = match decomposition {
        Some(d) => d,
        None => {
            owned = heuristic_nice_decomposition(inst.graph());
            &owned
        }
    };
    let bag = (ntd.width() + 1) as f64;
    let colorings = (k as f64).powf(bag);
    let (p, b) = (inst.profit_floor() as f64, inst.budget() as f64);
    // Pruned PC-values: profits capped at P, costs at B.
    let pc_work = colorings * ((p + 1.0) * (b + 1.0)).powi(k as i32) * n;
    if pc_work <= WORK_LIMIT {
        return Selection::Solver(PcDp);
    }
    let lambda = compute_stats(inst).lambda as f64;
    let config_work = colorings * (n + 1.0).powf(lambda * k as f64) * n;
    if config_work <= WORK_LIMIT {
        return Selection::Solver(ConfigDp);
    }
    if ntd.width() <= FPT_AS_MAX_WIDTH {
        return Selection::Solver(FptAs);
    }
    Selection::NoTractableSolver
}
