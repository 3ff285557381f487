//! `O*(2^n)` solver for identical valuations.
//!
//! `f(S)` marks the feasible bundles (independent, cost `<= B`, utility
//! `>= P`). `g_1 = f` and `g_j(S)` holds iff `S` is the disjoint union of
//! `j` feasible bundles, i.e. `g_j` is the Boolean part of the disjoint-union
//! product `f * g_{j-1}`. The instance is a yes-instance iff `g_k(V)` holds.
//!
//! Two realisations of the product are provided: a direct scan over all
//! submasks (`O(3^n)`) and ranked zeta/Möbius transforms (`O(2^n n^2)`),
//! where disjointness of `T` and `S \ T` is enforced by requiring the ranks
//! to add up to `|S|`.

use super::require_identical;
use crate::budget::Budget;
use crate::model::Allocation;
use crate::{Instance, SolveError, SolveOutcome, SolverId};

/// Hard cap on the item count; tables have `2^n` entries.
pub const MAX_SUBSET_ITEMS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProductMethod {
    /// Scan every submask of every set.
    Direct,
    /// Ranked zeta transform, pointwise rank convolution, Möbius inversion.
    #[default]
    Ranked,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleSubsetIndicator {
    n: usize,
    table: Vec<bool>,
}

impl FeasibleSubsetIndicator {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `f(S)` for the bitmask `S` (bit `v` is item `v`).
    pub fn get(&self, set: usize) -> bool {
        self.table[set]
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.table
    }
}

fn check_size(inst: &Instance) -> Result<(), SolveError> {
    if inst.n() > MAX_SUBSET_ITEMS {
        return Err(SolveError::TooManyItems { n: inst.n(), max: MAX_SUBSET_ITEMS });
    }
    Ok(())
}

/// Fills `f` over all `2^n` subsets. Each set extends the set without its
/// lowest item, so independence, cost and utility are O(1) per entry.
pub fn build_feasible_indicator(inst: &Instance, budget: &Budget) -> Result<FeasibleSubsetIndicator, SolveError> {
    check_size(inst)?;
    require_identical(inst)?;
    let n = inst.n();
    let size = 1usize << n;
    budget.checkpoint(3 * size)?;
    let adj = inst.graph().adjacency_masks();
    let mut independent = vec![true; size];
    let mut utility = vec![0u64; size];
    let mut cost = vec![0u64; size];
    let mut table = vec![false; size];
    for set in 0..size {
        if set & 0xfffff == 0 {
            budget.check_time()?;
        }
        if set != 0 {
            let v = set.trailing_zeros() as usize;
            let rest = set & (set - 1);
            independent[set] = independent[rest] && adj[v] & rest as u64 == 0;
            utility[set] = utility[rest] + inst.utility(0, v);
            cost[set] = cost[rest] + inst.cost(0, v);
        }
        table[set] = independent[set] && cost[set] <= inst.budget() && utility[set] >= inst.profit_floor();
    }
    Ok(FeasibleSubsetIndicator { n, table })
}

fn direct_product(f: &[bool], g: &[bool], budget: &Budget) -> Result<Vec<bool>, SolveError> {
    let size = f.len();
    let mut out = vec![false; size];
    for set in 0..size {
        if set & 0xfff == 0 {
            budget.check_time()?;
        }
        // Iterate all submasks t of set, including 0 and set.
        let mut t = set;
        loop {
            if f[t] && g[set ^ t] {
                out[set] = true;
                break;
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & set;
        }
    }
    Ok(out)
}

/// Ranked zeta transform: `hat[r][S] = sum of a(T) over T ⊆ S, |T| = r`.
fn ranked_zeta(a: &[bool], n: usize) -> Vec<Vec<u64>> {
    let size = 1usize << n;
    let mut hat = vec![vec![0u64; size]; n + 1];
    for (set, &x) in a.iter().enumerate() {
        if x {
            hat[set.count_ones() as usize][set] = 1;
        }
    }
    for layer in hat.iter_mut() {
        for bit in 0..n {
            for set in 0..size {
                if set >> bit & 1 == 1 {
                    layer[set] = layer[set].wrapping_add(layer[set ^ (1 << bit)]);
                }
            }
        }
    }
    hat
}

fn ranked_product(f: &[bool], g: &[bool], n: usize, budget: &Budget) -> Result<Vec<bool>, SolveError> {
    let size = 1usize << n;
    budget.checkpoint(3 * (n + 1) * size)?;
    let fh = ranked_zeta(f, n);
    let gh = ranked_zeta(g, n);
    budget.check_time()?;
    let mut out = vec![false; size];
    // Only rank r = |S| of the convolved transform is needed at S, but the
    // Möbius inversion runs over a whole rank layer, so compute them all.
    // Counts are exact modulo 2^64 and true counts are below 2^n.
    for r in 0..=n {
        let mut h: Vec<u64> = (0..size)
            .map(|s| (0..=r).fold(0u64, |acc, i| acc.wrapping_add(fh[i][s].wrapping_mul(gh[r - i][s]))))
            .collect();
        for bit in 0..n {
            for set in 0..size {
                if set >> bit & 1 == 1 {
                    h[set] = h[set].wrapping_sub(h[set ^ (1 << bit)]);
                }
            }
        }
        for set in 0..size {
            if set.count_ones() as usize == r {
                out[set] = h[set] != 0;
            }
        }
        budget.check_time()?;
    }
    Ok(out)
}

fn product(f: &[bool], g: &[bool], n: usize, method: ProductMethod, budget: &Budget) -> Result<Vec<bool>, SolveError> {
    match method {
        ProductMethod::Direct => direct_product(f, g, budget),
        ProductMethod::Ranked => ranked_product(f, g, n, budget),
    }
}

/// `[g_1, ..., g_k]` over all subsets.
pub fn partition_tables(
    f: &FeasibleSubsetIndicator,
    k: usize,
    method: ProductMethod,
    budget: &Budget,
) -> Result<Vec<Vec<bool>>, SolveError> {
    let mut tables = vec![f.table.clone()];
    for _ in 1..k {
        let next = product(&f.table, tables.last().expect("nonempty"), f.n, method, budget)?;
        tables.push(next);
    }
    Ok(tables)
}

pub fn solve_subset_convolution(inst: &Instance, budget: &Budget) -> Result<SolveOutcome, SolveError> {
    solve_subset_convolution_with(inst, ProductMethod::default(), budget)
}

pub fn solve_subset_convolution_with(
    inst: &Instance,
    method: ProductMethod,
    budget: &Budget,
) -> Result<SolveOutcome, SolveError> {
    check_size(inst)?;
    require_identical(inst)?;
    let (n, k) = (inst.n(), inst.k());
    // More bundles than items forces an empty bundle.
    if k > n && inst.profit_floor() > 0 {
        return Ok(SolveOutcome::no(SolverId::SubsetConv));
    }
    let f = build_feasible_indicator(inst, budget)?;
    let full = (1usize << n) - 1;
    // g_1..g_{k-1} are needed for peeling; g_k only at the full set.
    let tables = partition_tables(&f, k - 1, method, budget)?;
    let prev = tables.last().expect("k >= 1");
    let top = if k == 1 { f.get(full) } else { first_split(&f, prev, full).is_some() };
    if !top {
        return Ok(SolveOutcome::no(SolverId::SubsetConv));
    }

    let mut bundles = Vec::with_capacity(k);
    let mut rest = full;
    for j in (2..=k).rev() {
        let t = first_split(&f, &tables[j - 2], rest).expect("g_j(rest) holds");
        bundles.push(bits(t));
        rest ^= t;
    }
    debug_assert!(f.get(rest));
    bundles.push(bits(rest));
    Ok(SolveOutcome::yes(SolverId::SubsetConv, Allocation::new(bundles)))
}

/// Largest submask `T` of `set` with `f(T)` and `g(set \ T)`.
fn first_split(f: &FeasibleSubsetIndicator, g: &[bool], set: usize) -> Option<usize> {
    let mut t = set;
    loop {
        if f.get(t) && g[set ^ t] {
            return Some(t);
        }
        if t == 0 {
            return None;
        }
        t = (t - 1) & set;
    }
}

fn bits(set: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|&v| set >> v & 1 == 1).collect()
}
