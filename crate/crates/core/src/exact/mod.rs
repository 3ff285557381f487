//! Exact solvers that need no tree decomposition.

mod bounded;
mod bundle_two;
mod layered;
mod one_agent;
mod oracle;
mod subset_conv;
mod two_agents;

pub use bounded::solve_bounded_bundles;
pub use bundle_two::{feasibility_graph, solve_bundle_size_two};
pub use layered::{build_layered_graph, fill_layered_table, solve_two_agents_layered_dp, LayeredGraph, LayeredTable, SideValue};
pub use one_agent::solve_one_agent;
pub use oracle::{solve_oracle, solve_oracle_with, OracleOptions, DEFAULT_MAX_ASSIGNMENTS};
pub use subset_conv::{
    build_feasible_indicator, partition_tables, solve_subset_convolution, solve_subset_convolution_with,
    FeasibleSubsetIndicator, ProductMethod, MAX_SUBSET_ITEMS,
};
pub use two_agents::solve_two_agents_components;

use crate::{Instance, SolveError};

pub(crate) fn require_k(inst: &Instance, k: usize) -> Result<(), SolveError> {
    if inst.k() == k {
        Ok(())
    } else {
        Err(SolveError::WrongK { expected: k, found: inst.k() })
    }
}

pub(crate) fn require_identical(inst: &Instance) -> Result<(), SolveError> {
    if inst.is_identical() {
        Ok(())
    } else {
        Err(SolveError::PerAgentUnsupported)
    }
}
