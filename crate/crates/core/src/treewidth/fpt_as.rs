//! Bicriteria approximation on the PC-value DP.
//!
//! Profits are kept as lower bounds on the grid `⌈q^i⌉` and costs as upper
//! bounds on the grid `⌊w^i⌋`, with `q = (1+ε)^(1/N)` and `w = (1+ω)^(1/N)`.
//! True sums are integers, so a lower bound `q^i` may be raised to its
//! ceiling (and an upper bound lowered to its floor) without losing
//! validity; this keeps every grid point an integer and every comparison
//! exact. Each rounding loses at most one factor of `q` (resp. `w`).
//!
//! Rounding happens at forget and join nodes. Along any leaf-to-root path
//! there are at most `D` of them, and the error of a value is bounded by
//! `q^e` where `e` is the largest number of roundings below it on one path.
//! Taking `N = max(n, D)` therefore bounds the total loss by `1+ε` and
//! `1+ω`.

use num_bigint::BigUint;
use num_rational::Ratio;

use super::check_decomposition;
use super::engine::{backtrack, run, Charge};
use crate::budget::Budget;
use crate::graph::{NiceKind, NiceTreeDecomposition};
use crate::model::{meets_relaxed_cost, meets_relaxed_profit, Allocation};
use crate::{Decision, Guarantee, Instance, SolveError, SolveOutcome, SolverId};

/// Grid points of `(1 + r)^(i/steps)` rounded up (`ceil`) or down.
struct Grid {
    points: Vec<u64>,
}

impl Grid {
    /// Points are generated until one satisfies `stop`, or the value no
    /// longer fits in a `u64`.
    fn build(ratio: Ratio<u64>, steps: u32, ceil: bool, stop: impl Fn(u64) -> bool) -> Grid {
        let (a, b) = (BigUint::from(*ratio.numer()), BigUint::from(*ratio.denom()));
        let base = &a + &b;
        let (mut num, mut den) = (BigUint::from(1u8), BigUint::from(1u8));
        let mut points = Vec::new();
        loop {
            // floor((num/den)^(1/steps)) == floor(floor(num/den)^(1/steps))
            let mut x = (&num / &den).nth_root(steps);
            if ceil && x.pow(steps) * &den < num {
                x += 1u8;
            }
            let Ok(x) = u64::try_from(x) else { break };
            points.push(x);
            if stop(x) {
                break;
            }
            num *= &base;
            den *= &b;
        }
        Grid { points }
    }

    /// Stored form: 0 is the exact zero, `i + 1` is grid index `i`.
    fn value(&self, s: u32) -> u64 {
        if s == 0 {
            0
        } else {
            self.points[s as usize - 1]
        }
    }

    /// Largest index whose point is `<= x`; saturates at the last point.
    fn down(&self, x: u64) -> u32 {
        if x == 0 {
            return 0;
        }
        self.points.partition_point(|&g| g <= x) as u32
    }

    /// Smallest index whose point is `>= x`, if the grid reaches `x`.
    fn up(&self, x: u64) -> Option<u32> {
        if x == 0 {
            return Some(0);
        }
        let i = self.points.partition_point(|&h| h < x);
        (i < self.points.len()).then_some(i as u32 + 1)
    }
}

/// Grid index of the largest profit endpoint `⌈(1+ε)^(i/n)⌉ <= value`, or
/// `None` for the zero bucket.
pub fn profit_bucket(value: u64, epsilon: Ratio<u64>, n: u32) -> Option<usize> {
    let grid = Grid::build(epsilon, n, true, |g| g > value);
    (grid.down(value) as usize).checked_sub(1)
}

/// Grid index of the smallest cost endpoint `⌊(1+ω)^(i/n)⌋ >= value`, or
/// `None` for the zero bucket.
pub fn cost_bucket(value: u64, omega: Ratio<u64>, n: u32) -> Option<usize> {
    let grid = Grid::build(omega, n, false, |h| h >= value);
    (grid.up(value).expect("grid reaches value") as usize).checked_sub(1)
}

#[derive(Debug, Clone)]
pub struct FptAsOptions {
    pub epsilon: Ratio<u64>,
    pub omega: Ratio<u64>,
    /// Drop values whose cost bound exceeds `(1+ω)B`, saturate profits once
    /// they reach `P` and keep only undominated values per bag colouring.
    pub prune: bool,
    pub budget: Budget,
}

impl FptAsOptions {
    pub fn new(epsilon: Ratio<u64>, omega: Ratio<u64>) -> Self {
        FptAsOptions { epsilon, omega, prune: true, budget: Budget::unlimited() }
    }
}

/// Number of rounding nodes on the longest chain below and including each
/// node.
fn rounding_depths(ntd: &NiceTreeDecomposition) -> Vec<u32> {
    let mut depth = vec![0u32; ntd.num_nodes()];
    for t in 0..ntd.num_nodes() {
        let below = ntd.children(t).iter().map(|&c| depth[c]).max().unwrap_or(0);
        depth[t] = below + matches!(ntd.kind(t), NiceKind::Forget(_) | NiceKind::Join) as u32;
    }
    depth
}

struct Relaxed<'a> {
    inst: &'a Instance,
    prune: bool,
    profit: Grid,
    cost: Grid,
}

impl Relaxed<'_> {
    fn add(&self, (p, c): (u32, u32), dp: u64, dc: u64) -> Option<(u32, u32)> {
        Some((self.profit.down(self.profit.value(p) + dp), self.cost.up(self.cost.value(c) + dc)?))
    }
}

impl Charge for Relaxed<'_> {
    type Val = Vec<(u32, u32)>;

    fn zero(&self) -> Self::Val {
        vec![(0, 0); self.inst.k()]
    }

    fn forget(&self, val: &Self::Val, agent: usize, item: usize) -> Option<Self::Val> {
        let mut out = val.clone();
        out[agent] = self.add(out[agent], self.inst.utility(agent, item), self.inst.cost(agent, item))?;
        Some(out)
    }

    fn join(&self, a: &Self::Val, b: &Self::Val) -> Option<Self::Val> {
        a.iter()
            .zip(b)
            .map(|(&x, &(p, c))| self.add(x, self.profit.value(p), self.cost.value(c)))
            .collect()
    }

    fn dominates(&self, a: &Self::Val, b: &Self::Val) -> bool {
        a.iter().zip(b).all(|(&(p1, c1), &(p2, c2))| p1 >= p2 && c1 <= c2)
    }

    fn score(&self, v: &Self::Val) -> i128 {
        v.iter().map(|&(p, c)| p as i128 - c as i128).sum()
    }

    fn pareto(&self) -> bool {
        self.prune
    }
}

fn check_ratio(name: &str, r: Ratio<u64>) -> Result<(), SolveError> {
    if *r.numer() == 0 || *r.denom() == 0 {
        return Err(SolveError::InvalidParameters(format!("{name} must be positive")));
    }
    Ok(())
}

struct Prepared<'a> {
    relaxed: Relaxed<'a>,
    steps: u32,
    depths: Vec<u32>,
}

fn prepare<'a>(inst: &'a Instance, ntd: &NiceTreeDecomposition, opts: &FptAsOptions) -> Result<Prepared<'a>, SolveError> {
    check_ratio("epsilon", opts.epsilon)?;
    check_ratio("omega", opts.omega)?;
    check_decomposition(inst, ntd)?;
    let depths = rounding_depths(ntd);
    let steps = (inst.n() as u32).max(depths[ntd.root()]).max(1);
    let all: Vec<usize> = (0..inst.n()).collect();
    let alpha = (0..inst.k()).map(|a| inst.bundle_utility(a, &all)).max().unwrap_or(0);
    let gamma = (0..inst.k()).map(|a| inst.bundle_cost(a, &all)).max().unwrap_or(0);
    let (floor, cap, omega) = (inst.profit_floor(), inst.budget(), opts.omega);
    let profit = if opts.prune {
        Grid::build(opts.epsilon, steps, true, |g| g >= floor || g > alpha)
    } else {
        Grid::build(opts.epsilon, steps, true, |g| g > alpha)
    };
    let cost = if opts.prune {
        Grid::build(omega, steps, false, |h| h >= gamma || !meets_relaxed_cost(h, cap, omega))
    } else {
        Grid::build(omega, steps, false, |h| h >= gamma)
    };
    let mut cost = cost;
    if opts.prune && cost.points.last().is_some_and(|&h| !meets_relaxed_cost(h, cap, omega)) {
        // Bounds past the cap are discarded rather than stored.
        cost.points.pop();
    }
    Ok(Prepared { relaxed: Relaxed { inst, prune: opts.prune, profit, cost }, steps, depths })
}

pub fn solve_fpt_as(
    inst: &Instance,
    ntd: &NiceTreeDecomposition,
    epsilon: Ratio<u64>,
    omega: Ratio<u64>,
    budget: &Budget,
) -> Result<SolveOutcome, SolveError> {
    solve_fpt_as_with(inst, ntd, &FptAsOptions { budget: budget.clone(), ..FptAsOptions::new(epsilon, omega) })
}

pub fn solve_fpt_as_with(
    inst: &Instance,
    ntd: &NiceTreeDecomposition,
    opts: &FptAsOptions,
) -> Result<SolveOutcome, SolveError> {
    let prep = prepare(inst, ntd, opts)?;
    let r = &prep.relaxed;
    let tables = run(inst, ntd, r, &opts.budget)?;
    let accept = |val: &Vec<(u32, u32)>| {
        val.iter().all(|&(p, c)| {
            meets_relaxed_profit(r.profit.value(p), inst.profit_floor(), opts.epsilon)
                && meets_relaxed_cost(r.cost.value(c), inst.budget(), opts.omega)
        })
    };
    let guarantee = Guarantee::Relaxed { epsilon: opts.epsilon, omega: opts.omega };
    let decision = match tables[ntd.root()].iter().position(|e| accept(&e.val)) {
        Some(idx) => {
            let (assignment, _) = backtrack(ntd, &tables, inst.n(), idx);
            Decision::Yes(Allocation::from_assignment(inst.k(), &assignment))
        }
        None => Decision::No(None),
    };
    Ok(SolveOutcome { decision, solver: SolverId::FptAs, guarantee })
}

/// One node of a reconstructed DP trajectory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryStep {
    pub node: usize,
    /// Roundings on the longest chain below and including the node.
    pub roundings: u32,
    /// Grid denominator `N`.
    pub steps: u32,
    /// Stored `(profit lower bound, cost upper bound)` per agent.
    pub relaxed: Vec<(u64, u64)>,
    /// True `(profit, cost)` per agent over the items already forgotten.
    pub exact: Vec<(u64, u64)>,
}

impl TrajectoryStep {
    /// `P̂ <= P <= (1+ε)^(e/N) P̂` and `C <= Ĉ <= (1+ω)^(e/N) C` for every
    /// agent, checked with integer powers.
    pub fn within_bounds(&self, epsilon: Ratio<u64>, omega: Ratio<u64>) -> bool {
        let scaled = |small: u64, large: u64, r: Ratio<u64>| {
            // large^N * b^e <= (a+b)^e * small^N
            let (a, b) = (BigUint::from(*r.numer()), BigUint::from(*r.denom()));
            BigUint::from(large).pow(self.steps) * b.pow(self.roundings)
                <= (a + &b).pow(self.roundings) * BigUint::from(small).pow(self.steps)
        };
        self.relaxed.iter().zip(&self.exact).all(|(&(rp, rc), &(p, c))| {
            rp <= p && c <= rc && scaled(rp, p, epsilon) && scaled(c, rc, omega)
        })
    }
}

/// Runs the unpruned approximation DP and replays the trajectory of the
/// first accepting root value (or the first root value if none accepts).
/// Empty when no proper colouring exists.
pub fn fpt_as_trajectory(
    inst: &Instance,
    ntd: &NiceTreeDecomposition,
    epsilon: Ratio<u64>,
    omega: Ratio<u64>,
) -> Result<Vec<TrajectoryStep>, SolveError> {
    let opts = FptAsOptions { prune: false, ..FptAsOptions::new(epsilon, omega) };
    let prep = prepare(inst, ntd, &opts)?;
    let r = &prep.relaxed;
    let tables = run(inst, ntd, r, &opts.budget)?;
    let root = &tables[ntd.root()];
    let accept = |val: &Vec<(u32, u32)>| {
        val.iter().all(|&(p, c)| {
            meets_relaxed_profit(r.profit.value(p), inst.profit_floor(), epsilon)
                && meets_relaxed_cost(r.cost.value(c), inst.budget(), omega)
        })
    };
    if root.is_empty() {
        return Ok(Vec::new());
    }
    let idx = root.iter().position(|e| accept(&e.val)).unwrap_or(0);
    let (assignment, visited) = backtrack(ntd, &tables, inst.n(), idx);
    Ok(visited
        .into_iter()
        .map(|(t, e)| {
            let mut exact = vec![(0u64, 0u64); inst.k()];
            for v in forgotten_below(ntd, t) {
                let a = assignment[v];
                exact[a].0 += inst.utility(a, v);
                exact[a].1 += inst.cost(a, v);
            }
            TrajectoryStep {
                node: t,
                roundings: prep.depths[t],
                steps: prep.steps,
                relaxed: tables[t][e].val.iter().map(|&(p, c)| (r.profit.value(p), r.cost.value(c))).collect(),
                exact,
            }
        })
        .collect())
}

fn forgotten_below(ntd: &NiceTreeDecomposition, t: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = vec![t];
    while let Some(s) = stack.pop() {
        if let NiceKind::Forget(v) = ntd.kind(s) {
            out.push(v);
        }
        stack.extend_from_slice(ntd.children(s));
    }
    out
}
