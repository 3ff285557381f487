//! Pseudo-polynomial algorithm for two agents.
//!
//! Each connected component `C_j` with bipartition `(X_j, Y_j)` becomes a
//! layer with two super-vertices `x_j`, `y_j` carrying the side totals. A
//! solution is a pair of vertex-disjoint paths through all layers (agent 0
//! "red", agent 1 "blue"); the red path picks one super-vertex per layer and
//! the blue path takes the other.
//!
//! `M[j, t1, k1, t2, k2, z]` holds iff the first `j` layers admit such paths
//! with red utility `>= t1`, red cost `<= k1`, blue utility `>= t2`, blue
//! cost `<= k2`, and the red path ends at `x_j` (`z = 1`) or `y_j` (`z = 2`).

use super::{require_identical, require_k};
use crate::budget::Budget;
use crate::exact::two_agents::component_sides;
use crate::model::Allocation;
use crate::{Instance, NoWitness, SolveError, SolveOutcome, SolverId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SideValue {
    pub utility: u64,
    pub cost: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredGraph {
    /// `(x_j, y_j)` totals per layer; isolated vertices have `y = (0, 0)`.
    pub layers: Vec<(SideValue, SideValue)>,
    /// Items behind each super-vertex.
    pub sides: Vec<(Vec<usize>, Vec<usize>)>,
}

pub fn build_layered_graph(inst: &Instance) -> Result<LayeredGraph, NoWitness> {
    let sides = component_sides(inst)?;
    let total = |set: &[usize]| SideValue {
        utility: inst.bundle_utility(0, set),
        cost: inst.bundle_cost(0, set),
    };
    let layers = sides.iter().map(|(x, y)| (total(x), total(y))).collect();
    Ok(LayeredGraph { layers, sides })
}

/// The full Boolean table, one bitset per `(layer, z)`.
#[derive(Debug, Clone)]
pub struct LayeredTable {
    profit_floor: usize,
    budget: usize,
    layers: usize,
    /// `bits[(j - 1) * 2 + (z - 1)]`
    bits: Vec<Vec<u64>>,
}

impl LayeredTable {
    pub fn layers(&self) -> usize {
        self.layers
    }

    fn cells_per_layer(profit_floor: usize, budget: usize) -> usize {
        (profit_floor + 1) * (budget + 1) * (profit_floor + 1) * (budget + 1)
    }

    #[inline]
    fn index(&self, t1: usize, k1: usize, t2: usize, k2: usize) -> usize {
        ((t1 * (self.budget + 1) + k1) * (self.profit_floor + 1) + t2) * (self.budget + 1) + k2
    }

    /// `M[j, t1, k1, t2, k2, z]` with `1 <= j <= r`, `z in {1, 2}`,
    /// `t <= P`, `k <= B`.
    pub fn get(&self, j: usize, t1: usize, k1: usize, t2: usize, k2: usize, z: usize) -> bool {
        assert!((1..=self.layers).contains(&j) && (1..=2).contains(&z));
        assert!(t1 <= self.profit_floor && t2 <= self.profit_floor && k1 <= self.budget && k2 <= self.budget);
        let i = self.index(t1, k1, t2, k2);
        self.bits[(j - 1) * 2 + (z - 1)][i / 64] >> (i % 64) & 1 == 1
    }

    fn set(bits: &mut [u64], i: usize) {
        bits[i / 64] |= 1 << (i % 64);
    }
}

fn as_index(v: u64) -> Result<usize, SolveError> {
    usize::try_from(v).map_err(|_| SolveError::Overflow("layered table dimension"))
}

/// Fills the table for `graph` with thresholds `P` and `B`. Profit indices
/// saturate at 0 when the demand is already met; a cost index dropping
/// below 0 makes the transition infeasible.
pub fn fill_layered_table(
    graph: &LayeredGraph,
    profit_floor: u64,
    budget: u64,
    limits: &Budget,
) -> Result<LayeredTable, SolveError> {
    let (pf, b) = (as_index(profit_floor)?, as_index(budget)?);
    let r = graph.layers.len();
    let cells = (pf + 1)
        .checked_mul(b + 1)
        .and_then(|x| x.checked_mul(pf + 1))
        .and_then(|x| x.checked_mul(b + 1))
        .ok_or(SolveError::Overflow("layered table size"))?;
    limits.checkpoint(cells.saturating_mul(2 * r) / 64)?;
    let words = cells.div_ceil(64);
    let mut table = LayeredTable {
        profit_floor: pf,
        budget: b,
        layers: r,
        bits: Vec::with_capacity(2 * r),
    };
    debug_assert_eq!(cells, LayeredTable::cells_per_layer(pf, b));

    let sat = |t: usize, p: u64| t.saturating_sub(usize::try_from(p).unwrap_or(usize::MAX));
    let sub = |k: usize, c: u64| usize::try_from(c).ok().and_then(|c| k.checked_sub(c));

    for j in 0..r {
        limits.check_time()?;
        let (x, y) = graph.layers[j];
        let mut out = [vec![0u64; words], vec![0u64; words]];
        let prev_any: Option<Vec<u64>> = (j > 0).then(|| {
            let a = &table.bits[(j - 1) * 2];
            let bb = &table.bits[(j - 1) * 2 + 1];
            a.iter().zip(bb).map(|(p, q)| p | q).collect()
        });
        // z = 1: red takes x_j; z = 2: red takes y_j.
        for (z, (red, blue)) in [(x, y), (y, x)].into_iter().enumerate() {
            for t1 in 0..=pf {
                for k1 in 0..=b {
                    for t2 in 0..=pf {
                        for k2 in 0..=b {
                            let hit = match &prev_any {
                                None => {
                                    t1 as u64 <= red.utility
                                        && k1 as u64 >= red.cost
                                        && t2 as u64 <= blue.utility
                                        && k2 as u64 >= blue.cost
                                }
                                Some(prev) => match (sub(k1, red.cost), sub(k2, blue.cost)) {
                                    (Some(pk1), Some(pk2)) => {
                                        let i = table.index(sat(t1, red.utility), pk1, sat(t2, blue.utility), pk2);
                                        prev[i / 64] >> (i % 64) & 1 == 1
                                    }
                                    _ => false,
                                },
                            };
                            if hit {
                                LayeredTable::set(&mut out[z], table.index(t1, k1, t2, k2));
                            }
                        }
                    }
                }
            }
        }
        let [o1, o2] = out;
        table.bits.push(o1);
        table.bits.push(o2);
    }
    Ok(table)
}

/// Layered-graph dynamic program for `k = 2` with identical valuations,
/// running in `O(r * P^2 * B^2)`.
pub fn solve_two_agents_layered_dp(inst: &Instance, limits: &Budget) -> Result<SolveOutcome, SolveError> {
    require_k(inst, 2)?;
    require_identical(inst)?;
    let graph = match build_layered_graph(inst) {
        Ok(g) => g,
        Err(w) => return Ok(SolveOutcome::no_because(SolverId::TwoLayered, w)),
    };
    let (pf, b) = (inst.profit_floor(), inst.budget());
    let r = graph.layers.len();
    if r == 0 {
        return Ok(if pf == 0 {
            SolveOutcome::yes(SolverId::TwoLayered, Allocation::new(vec![vec![], vec![]]))
        } else {
            SolveOutcome::no(SolverId::TwoLayered)
        });
    }
    let table = fill_layered_table(&graph, pf, b, limits)?;
    let (pf, b) = (pf as usize, b as usize);
    let Some(mut z) = (1..=2).find(|&z| table.get(r, pf, b, pf, b, z)) else {
        return Ok(SolveOutcome::no(SolverId::TwoLayered));
    };

    // Backtrack through predecessor cells.
    let mut bundles = vec![Vec::new(), Vec::new()];
    let (mut t1, mut k1, mut t2, mut k2) = (pf, b, pf, b);
    for j in (1..=r).rev() {
        let (x, y) = graph.layers[j - 1];
        let (xs, ys) = &graph.sides[j - 1];
        let (red, blue, red_items, blue_items) = if z == 1 { (x, y, xs, ys) } else { (y, x, ys, xs) };
        bundles[0].extend_from_slice(red_items);
        bundles[1].extend_from_slice(blue_items);
        if j == 1 {
            break;
        }
        t1 = t1.saturating_sub(red.utility as usize);
        t2 = t2.saturating_sub(blue.utility as usize);
        k1 -= red.cost as usize;
        k2 -= blue.cost as usize;
        z = (1..=2)
            .find(|&z| table.get(j - 1, t1, k1, t2, k2, z))
            .expect("a set cell has a set predecessor");
    }
    Ok(SolveOutcome::yes(SolverId::TwoLayered, Allocation::new(bundles)))
}
