use std::collections::{BTreeMap, BTreeSet};

use super::check_decomposition;
use super::engine::{backtrack, run, Charge};
use crate::budget::Budget;
use crate::graph::NiceTreeDecomposition;
use crate::model::Allocation;
use crate::{Instance, SolveError, SolveOutcome, SolverId};

/// `(profit, cost)` of every agent's set.
pub type PcValue = Vec<(u64, u64)>;

/// One node's table: bag colouring (agent per bag item) to PC-values.
pub type PcTable = BTreeMap<Vec<usize>, BTreeSet<PcValue>>;

#[derive(Debug, Clone)]
pub struct PcDpOptions {
    /// Drop values whose cost exceeds `B`, cap profits at `P` and keep only
    /// values not dominated by another value with the same bag colouring.
    pub prune: bool,
    pub budget: Budget,
}

impl Default for PcDpOptions {
    fn default() -> Self {
        PcDpOptions { prune: true, budget: Budget::unlimited() }
    }
}

struct Exact<'a> {
    inst: &'a Instance,
    prune: bool,
}

impl Exact<'_> {
    fn clamp(&self, (p, c): (u64, u64)) -> Option<(u64, u64)> {
        if !self.prune {
            return Some((p, c));
        }
        (c <= self.inst.budget()).then_some((p.min(self.inst.profit_floor()), c))
    }
}

impl Charge for Exact<'_> {
    type Val = PcValue;

    fn zero(&self) -> PcValue {
        vec![(0, 0); self.inst.k()]
    }

    fn forget(&self, val: &PcValue, agent: usize, item: usize) -> Option<PcValue> {
        let mut out = val.clone();
        let (p, c) = out[agent];
        out[agent] = self.clamp((p + self.inst.utility(agent, item), c + self.inst.cost(agent, item)))?;
        Some(out)
    }

    fn join(&self, a: &PcValue, b: &PcValue) -> Option<PcValue> {
        a.iter().zip(b).map(|(&(p1, c1), &(p2, c2))| self.clamp((p1 + p2, c1 + c2))).collect()
    }

    fn dominates(&self, a: &PcValue, b: &PcValue) -> bool {
        a.iter().zip(b).all(|(&(p1, c1), &(p2, c2))| p1 >= p2 && c1 <= c2)
    }

    fn score(&self, v: &PcValue) -> i128 {
        v.iter().map(|&(p, c)| p as i128 - c as i128).sum()
    }

    fn pareto(&self) -> bool {
        self.prune
    }
}

pub fn solve_pc_dp(inst: &Instance, ntd: &NiceTreeDecomposition, budget: &Budget) -> Result<SolveOutcome, SolveError> {
    solve_pc_dp_with(inst, ntd, &PcDpOptions { budget: budget.clone(), ..Default::default() })
}

pub fn solve_pc_dp_with(
    inst: &Instance,
    ntd: &NiceTreeDecomposition,
    opts: &PcDpOptions,
) -> Result<SolveOutcome, SolveError> {
    check_decomposition(inst, ntd)?;
    let charge = Exact { inst, prune: opts.prune };
    let tables = run(inst, ntd, &charge, &opts.budget)?;
    let accept = |v: &PcValue| v.iter().all(|&(p, c)| p >= inst.profit_floor() && c <= inst.budget());
    match tables[ntd.root()].iter().position(|e| accept(&e.val)) {
        Some(idx) => {
            let (assignment, _) = backtrack(ntd, &tables, inst.n(), idx);
            Ok(SolveOutcome::yes(SolverId::PcDp, Allocation::from_assignment(inst.k(), &assignment)))
        }
        None => Ok(SolveOutcome::no(SolverId::PcDp)),
    }
}

/// Unpruned tables in the conventional form: for node `t` and colouring
/// `f` of its bag, the PC-values of all proper colourings of `G[V_t]` that
/// agree with `f`.
pub fn pc_dp_tables(inst: &Instance, ntd: &NiceTreeDecomposition) -> Result<Vec<PcTable>, SolveError> {
    check_decomposition(inst, ntd)?;
    let tables = run(inst, ntd, &Exact { inst, prune: false }, &Budget::unlimited())?;
    Ok(tables
        .iter()
        .enumerate()
        .map(|(t, entries)| {
            let mut table = PcTable::new();
            for e in entries {
                let coloring: Vec<usize> = e.coloring.iter().map(|&a| a as usize).collect();
                let mut val = e.val.clone();
                for (&v, &a) in ntd.bag(t).iter().zip(&coloring) {
                    val[a].0 += inst.utility(a, v);
                    val[a].1 += inst.cost(a, v);
                }
                table.entry(coloring).or_default().insert(val);
            }
            table
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::solve_oracle;
    use crate::graph::{to_nice_decomposition, Graph, NiceKind, TreeDecomposition};
    use crate::treewidth::heuristic_nice_decomposition;
    use crate::Valuations;

    fn inst(g: Graph, k: usize, p: Vec<u64>, c: Vec<u64>, pf: u64, b: u64) -> Instance {
        Instance::from_parts(k, g, Valuations::Identical { utility: p, cost: c }, pf, b).unwrap()
    }

    #[test]
    fn path_abc() {
        let i = inst(Graph::path(3), 2, vec![1; 3], vec![0; 3], 1, 0);
        let ntd = heuristic_nice_decomposition(i.graph());
        let out = solve_pc_dp(&i, &ntd, &Budget::unlimited()).unwrap();
        let mut bundles = out.decision.allocation().unwrap().bundles().to_vec();
        bundles.sort();
        assert_eq!(bundles, vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn triangle_bag_with_two_agents() {
        let i = inst(Graph::complete(3), 2, vec![0; 3], vec![0; 3], 0, 0);
        let ntd = heuristic_nice_decomposition(i.graph());
        let tables = pc_dp_tables(&i, &ntd).unwrap();
        let full = (0..ntd.num_nodes()).find(|&t| ntd.bag(t).len() == 3).unwrap();
        assert!(tables[full].is_empty());
        assert!(!solve_pc_dp(&i, &ntd, &Budget::unlimited()).unwrap().is_yes());
    }

    /// All proper colourings of `G[items]` agreeing with `f` on `bag`.
    fn brute_table(i: &Instance, items: &[usize], bag: &[usize]) -> PcTable {
        let (k, m) = (i.k(), items.len());
        let mut table = PcTable::new();
        for code in 0..k.pow(m as u32) {
            let mut col = vec![0; i.n()];
            let mut c = code;
            for &v in items {
                col[v] = c % k;
                c /= k;
            }
            let proper = i.graph().edges().iter().all(|&(u, v)| {
                !(items.contains(&u) && items.contains(&v)) || col[u] != col[v]
            });
            if !proper {
                continue;
            }
            let mut val = vec![(0, 0); k];
            for &v in items {
                val[col[v]].0 += i.utility(col[v], v);
                val[col[v]].1 += i.cost(col[v], v);
            }
            table.entry(bag.iter().map(|&v| col[v]).collect()).or_default().insert(val);
        }
        table
    }

    fn subtree_items(ntd: &NiceTreeDecomposition, t: usize) -> Vec<usize> {
        let mut items: BTreeSet<usize> = ntd.bag(t).iter().copied().collect();
        let mut stack = ntd.children(t).to_vec();
        while let Some(s) = stack.pop() {
            items.extend(ntd.bag(s));
            stack.extend_from_slice(ntd.children(s));
        }
        items.into_iter().collect()
    }

    #[test]
    fn tables_match_brute_force() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]);
        let i = Instance::from_parts(
            3,
            g,
            Valuations::PerAgent {
                utility: vec![vec![1, 2, 0, 3, 1, 2], vec![2, 0, 1, 1, 3, 0], vec![0, 1, 1, 2, 2, 1]],
                cost: vec![vec![1, 0, 2, 1, 1, 0], vec![0, 1, 1, 2, 0, 1], vec![1, 1, 0, 0, 2, 2]],
            },
            2,
            3,
        )
        .unwrap();
        let ntd = heuristic_nice_decomposition(i.graph());
        let tables = pc_dp_tables(&i, &ntd).unwrap();
        for t in 0..ntd.num_nodes() {
            let expected = brute_table(&i, &subtree_items(&ntd, t), ntd.bag(t));
            assert_eq!(tables[t], expected, "node {t} ({:?})", ntd.kind(t));
        }
    }

    #[test]
    fn join_values_split_over_children() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![0]], vec![(0, 3), (1, 3), (2, 3)]);
        let ntd = to_nice_decomposition(&td).unwrap();
        let i = inst(g, 2, vec![1, 2, 3, 4], vec![4, 3, 2, 1], 0, 0);
        let tables = pc_dp_tables(&i, &ntd).unwrap();
        let mut joins = 0;
        for t in (0..ntd.num_nodes()).filter(|&t| ntd.kind(t) == NiceKind::Join) {
            joins += 1;
            let (l, r) = (ntd.children(t)[0], ntd.children(t)[1]);
            for (f, vals) in &tables[t] {
                let mut bag_val = vec![(0u64, 0u64); 2];
                for (&v, &a) in ntd.bag(t).iter().zip(f) {
                    bag_val[a].0 += i.utility(a, v);
                    bag_val[a].1 += i.cost(a, v);
                }
                for val in vals {
                    let found = tables[l][f].iter().any(|b1| {
                        tables[r][f].iter().any(|b2| {
                            (0..2).all(|a| {
                                bag_val[a].0 <= b1[a].0
                                    && bag_val[a].0 <= b2[a].0
                                    && bag_val[a].1 <= b1[a].1
                                    && bag_val[a].1 <= b2[a].1
                                    && val[a].0 == b1[a].0 + b2[a].0 - bag_val[a].0
                                    && val[a].1 == b1[a].1 + b2[a].1 - bag_val[a].1
                            })
                        })
                    });
                    assert!(found);
                }
            }
        }
        assert!(joins > 0);
    }

    #[test]
    fn pruning_keeps_decisions() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6)]);
        let ntd = heuristic_nice_decomposition(&g);
        for (pf, b) in [(0, 0), (2, 2), (3, 4), (4, 3), (5, 6), (7, 9)] {
            let i = inst(g.clone(), 2, vec![1, 2, 3, 1, 2, 1, 2], vec![2, 1, 1, 2, 1, 2, 1], pf, b);
            let pruned = solve_pc_dp(&i, &ntd, &Budget::unlimited()).unwrap();
            let full = solve_pc_dp_with(&i, &ntd, &PcDpOptions { prune: false, ..Default::default() }).unwrap();
            let oracle = solve_oracle(&i).unwrap();
            assert_eq!(pruned.is_yes(), oracle.is_yes(), "P={pf} B={b}");
            assert_eq!(full.is_yes(), oracle.is_yes(), "P={pf} B={b}");
            assert!(pruned.is_consistent(&i) && full.is_consistent(&i));
        }
    }

    #[test]
    fn rejects_foreign_decomposition() {
        let i = inst(Graph::path(3), 2, vec![1; 3], vec![0; 3], 0, 0);
        let ntd = heuristic_nice_decomposition(&Graph::empty(3));
        assert!(matches!(solve_pc_dp(&i, &ntd, &Budget::unlimited()), Err(SolveError::InvalidDecomposition(_))));
    }
}
