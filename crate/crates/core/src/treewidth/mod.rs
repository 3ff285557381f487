//! Dynamic programs over nice tree decompositions.
//!
//! All three DPs share one table layout: for every node `t` and every proper
//! colouring of its bag, a set of values summarising colourings of the
//! subtree. Values charge an item when it is forgotten, so a stored value
//! covers exactly the items below `t` that are no longer in the bag and a
//! join adds its children's values without any correction. The bag's own
//! contribution is added back when tables are reported in the conventional
//! form (values of all of `V_t`).

mod chordal;
mod config_dp;
mod engine;
mod fpt_as;
mod pc_dp;

pub use chordal::solve_chordal;
pub use config_dp::{config_root_configurations, configuration, solve_config_dp};
pub use fpt_as::{
    cost_bucket, fpt_as_trajectory, profit_bucket, solve_fpt_as, solve_fpt_as_with, FptAsOptions, TrajectoryStep,
};
pub use pc_dp::{pc_dp_tables, solve_pc_dp, solve_pc_dp_with, PcDpOptions, PcTable, PcValue};

use crate::graph::{
    heuristic_tree_decomposition, to_nice_decomposition, validate_decomposition, DecompositionReport,
    EliminationHeuristic, Graph, NiceTreeDecomposition, TdViolation,
};
use crate::{Instance, SolveError};

/// Nice form of a min-fill elimination decomposition of `g`.
pub fn heuristic_nice_decomposition(g: &Graph) -> NiceTreeDecomposition {
    let td = heuristic_tree_decomposition(g, EliminationHeuristic::MinFill);
    to_nice_decomposition(&td).expect("elimination decompositions are trees")
}

/// The decomposition must be nice and valid for the instance's graph.
pub(crate) fn check_decomposition(inst: &Instance, ntd: &NiceTreeDecomposition) -> Result<(), SolveError> {
    if let Err(msg) = ntd.audit() {
        return Err(SolveError::InvalidDecomposition(DecompositionReport {
            violations: vec![TdViolation::NotNice(msg)],
        }));
    }
    let report = validate_decomposition(inst.graph(), &ntd.as_tree_decomposition());
    if report.is_valid() {
        Ok(())
    } else {
        Err(SolveError::InvalidDecomposition(report))
    }
}
