use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::budget::BudgetExceeded;
use crate::graph::DecompositionReport;
use crate::model::{verify_allocation, Allocation, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverId {
    Oracle,
    OneAgent,
    TwoComponents,
    TwoLayered,
    SubsetConv,
    BoundedBundles,
    BundleTwo,
    PcDp,
    ConfigDp,
    FptAs,
    Chordal,
}

impl SolverId {
    pub const ALL: [SolverId; 11] = [
        SolverId::Oracle,
        SolverId::OneAgent,
        SolverId::TwoComponents,
        SolverId::TwoLayered,
        SolverId::SubsetConv,
        SolverId::BoundedBundles,
        SolverId::BundleTwo,
        SolverId::PcDp,
        SolverId::ConfigDp,
        SolverId::FptAs,
        SolverId::Chordal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolverId::Oracle => "oracle",
            SolverId::OneAgent => "one_agent",
            SolverId::TwoComponents => "two_components",
            SolverId::TwoLayered => "two_layered",
            SolverId::SubsetConv => "subset_conv",
            SolverId::BoundedBundles => "bounded_bundles",
            SolverId::BundleTwo => "bundle_two",
            SolverId::PcDp => "pc_dp",
            SolverId::ConfigDp => "config_dp",
            SolverId::FptAs => "fpt_as",
            SolverId::Chordal => "chordal",
        }
    }
}

impl fmt::Display for SolverId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SolverId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| format!("unknown solver `{s}`"))
    }
}

/// Strength of the thresholds a Yes allocation meets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guarantee {
    Exact,
    /// Profit at least `P/(1+epsilon)`, cost at most `(1+omega)B`.
    Relaxed { epsilon: Ratio<u64>, omega: Ratio<u64> },
}

impl Serialize for Guarantee {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Guarantee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guarantee::Exact => f.write_str("exact"),
            Guarantee::Relaxed { epsilon, omega } => write!(f, "relaxed(epsilon={epsilon}, omega={omega})"),
        }
    }
}

/// Why a solver answered No, when it has a certificate to offer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "items")]
pub enum NoWitness {
    /// An odd cycle of the conflict graph (no 2-colouring exists).
    OddCycle(Vec<usize>),
    /// A clique with more than `k` vertices.
    Clique(Vec<usize>),
    /// Two adjacent items with `k = 1`.
    Conflict(Vec<usize>),
    /// More items than `k` bundles of the requested size can hold.
    TooManyItems(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes(Allocation),
    No(Option<NoWitness>),
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn allocation(&self) -> Option<&Allocation> {
        match self {
            Decision::Yes(a) => Some(a),
            Decision::No(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub decision: Decision,
    pub solver: SolverId,
    pub guarantee: Guarantee,
}

impl SolveOutcome {
    pub fn yes(solver: SolverId, alloc: Allocation) -> Self {
        SolveOutcome { decision: Decision::Yes(alloc), solver, guarantee: Guarantee::Exact }
    }

    pub fn no(solver: SolverId) -> Self {
        SolveOutcome { decision: Decision::No(None), solver, guarantee: Guarantee::Exact }
    }

    pub fn no_because(solver: SolverId, witness: NoWitness) -> Self {
        SolveOutcome { decision: Decision::No(Some(witness)), solver, guarantee: Guarantee::Exact }
    }

    pub fn is_yes(&self) -> bool {
        self.decision.is_yes()
    }

    /// Re-verifies a Yes allocation against `inst` under the outcome's
    /// guarantee. No outcomes are trivially consistent.
    pub fn is_consistent(&self, inst: &Instance) -> bool {
        match &self.decision {
            Decision::No(_) => true,
            Decision::Yes(alloc) => verify_allocation(inst, alloc)
                .map(|r| r.satisfies(inst, &self.guarantee))
                .unwrap_or(false),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("solver needs k = {expected}, instance has k = {found}")]
    WrongK { expected: usize, found: usize },
    #[error("solver supports identical valuations only")]
    PerAgentUnsupported,
    #[error("{n} items exceed the solver's limit of {max}")]
    TooManyItems { n: usize, max: usize },
    #[error("enumeration budget exceeded: {0}")]
    EnumerationBudget(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(DecompositionReport),
    #[error("conflict graph is not chordal")]
    NotChordal,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}
