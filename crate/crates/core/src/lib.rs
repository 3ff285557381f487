//! Solvers for budgeted conflict-free egalitarian allocation (BCFEA).
//!
//! An instance consists of `n` items, a conflict graph on the items, `k`
//! agents with additive utility and cost functions, a profit floor `P` and a
//! budget `B`. The question is whether the items can be split into `k`
//! bundles such that every bundle is an independent set of the conflict
//! graph, and agent `i`'s bundle has utility at least `P` and cost at most
//! `B` under agent `i`'s valuation.
//!
//! The crate is organised by family:
//! - [`model`]: instances, allocations, verification and the JSON formats.
//! - [`graph`]: connectivity, bipartiteness, chordality, tree decompositions
//!   and general-graph matching.
//! - [`exact`]: solvers that need no decomposition (brute-force oracle,
//!   the two-agent algorithms, subset convolution, bounded bundles).
//! - [`treewidth`]: dynamic programs over nice tree decompositions and the
//!   bicriteria approximation scheme.
//! - [`generators`]: instances built from classical problems and seeded
//!   random instances.

pub mod budget;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod model;
pub mod outcome;
pub mod treewidth;

pub use budget::{Budget, BudgetExceeded};
pub use model::{Allocation, Instance, InstanceStats, ValuationMode, Valuations};
pub use outcome::{Decision, Guarantee, NoWitness, SolveError, SolveOutcome, SolverId};
