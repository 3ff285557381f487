use serde::Serialize;
use thiserror::Error;

use super::io::RawAllocation;
use super::Instance;
use crate::outcome::Guarantee;

/// An ordered partition of the item indices into `k` bundles; bundle `i`
/// belongs to agent `i`. Bundles are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Allocation {
    bundles: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotAPartition {
    #[error("expected {expected} bundles, found {found}")]
    WrongBundleCount { expected: usize, found: usize },
    #[error("item `{0}` is not assigned to any bundle")]
    Missing(String),
    #[error("item `{0}` appears more than once")]
    Duplicated(String),
    #[error("unknown item `{0}`")]
    UnknownItem(String),
}

impl Allocation {
    pub fn new(mut bundles: Vec<Vec<usize>>) -> Self {
        for b in &mut bundles {
            b.sort_unstable();
        }
        Allocation { bundles }
    }

    /// `assignment[v]` is the agent receiving item `v`.
    pub fn from_assignment(k: usize, assignment: &[usize]) -> Self {
        let mut bundles = vec![Vec::new(); k];
        for (v, &a) in assignment.iter().enumerate() {
            bundles[a].push(v);
        }
        Allocation { bundles }
    }

    pub fn bundles(&self) -> &[Vec<usize>] {
        &self.bundles
    }

    pub fn k(&self) -> usize {
        self.bundles.len()
    }

    /// Inverse of [`Allocation::from_assignment`]; `None` if the bundles do
    /// not partition `0..n`.
    pub fn assignment(&self, n: usize) -> Option<Vec<usize>> {
        let mut out = vec![usize::MAX; n];
        for (a, bundle) in self.bundles.iter().enumerate() {
            for &v in bundle {
                if v >= n || out[v] != usize::MAX {
                    return None;
                }
                out[v] = a;
            }
        }
        out.iter().all(|&a| a != usize::MAX).then_some(out)
    }

    pub fn to_raw(&self, inst: &Instance) -> RawAllocation {
        RawAllocation {
            bundles: self
                .bundles
                .iter()
                .map(|b| b.iter().map(|&v| inst.items()[v].clone()).collect())
                .collect(),
        }
    }

    /// Resolves item ids against `inst`, checking the partition structure.
    pub fn from_raw(inst: &Instance, raw: &RawAllocation) -> Result<Self, NotAPartition> {
        let mut bundles = Vec::with_capacity(raw.bundles.len());
        for b in &raw.bundles {
            let mut out = Vec::with_capacity(b.len());
            for id in b {
                out.push(inst.item_index(id).ok_or_else(|| NotAPartition::UnknownItem(id.clone()))?);
            }
            bundles.push(out);
        }
        let alloc = Allocation::new(bundles);
        check_partition(inst, &alloc)?;
        Ok(alloc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleReport {
    pub independent: bool,
    pub cost_ok: bool,
    pub profit_ok: bool,
    pub profit: u64,
    pub cost: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub bundles: Vec<BundleReport>,
    pub feasible: bool,
}

impl FeasibilityReport {
    /// Whether the bundles meet the thresholds of `guarantee`: exact
    /// thresholds, or profit at least `P/(1+eps)` and cost at most
    /// `(1+omega)B` for a relaxed guarantee. Independence is always required.
    pub fn satisfies(&self, inst: &Instance, guarantee: &Guarantee) -> bool {
        match guarantee {
            Guarantee::Exact => self.feasible,
            Guarantee::Relaxed { epsilon, omega } => self.bundles.iter().all(|b| {
                b.independent
                    && meets_relaxed_profit(b.profit, inst.profit_floor(), *epsilon)
                    && meets_relaxed_cost(b.cost, inst.budget(), *omega)
            }),
        }
    }
}

/// `profit >= floor / (1 + eps)` in exact integer arithmetic.
pub(crate) fn meets_relaxed_profit(profit: u64, floor: u64, eps: num_rational::Ratio<u64>) -> bool {
    let (a, b) = (*eps.numer() as u128, *eps.denom() as u128);
    profit as u128 * (a + b) >= floor as u128 * b
}

/// `cost <= (1 + omega) * budget` in exact integer arithmetic.
pub(crate) fn meets_relaxed_cost(cost: u64, budget: u64, omega: num_rational::Ratio<u64>) -> bool {
    let (a, b) = (*omega.numer() as u128, *omega.denom() as u128);
    cost as u128 * b <= budget as u128 * (a + b)
}

fn check_partition(inst: &Instance, alloc: &Allocation) -> Result<(), NotAPartition> {
    if alloc.k() != inst.k() {
        return Err(NotAPartition::WrongBundleCount {
            expected: inst.k(),
            found: alloc.k(),
        });
    }
    let mut seen = vec![false; inst.n()];
    for &v in alloc.bundles.iter().flatten() {
        if v >= inst.n() {
            return Err(NotAPartition::UnknownItem(format!("#{v}")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(NotAPartition::Duplicated(inst.items()[v].clone()));
        }
    }
    match seen.iter().position(|&s| !s) {
        Some(v) => Err(NotAPartition::Missing(inst.items()[v].clone())),
        None => Ok(()),
    }
}

/// Recomputes independence, cost and profit of every bundle under its
/// agent's valuation.
pub fn verify_allocation(inst: &Instance, alloc: &Allocation) -> Result<FeasibilityReport, NotAPartition> {
    check_partition(inst, alloc)?;
    let bundles: Vec<BundleReport> = alloc
        .bundles
        .iter()
        .enumerate()
        .map(|(agent, bundle)| {
            let profit = inst.bundle_utility(agent, bundle);
            let cost = inst.bundle_cost(agent, bundle);
            BundleReport {
                independent: inst.graph().is_independent(bundle),
                cost_ok: cost <= inst.budget(),
                profit_ok: profit >= inst.profit_floor(),
                profit,
                cost,
            }
        })
        .collect();
    let feasible = bundles.iter().all(|b| b.independent && b.cost_ok && b.profit_ok);
    Ok(FeasibilityReport { bundles, feasible })
}
