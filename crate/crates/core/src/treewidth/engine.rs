use std::collections::HashMap;
use std::hash::Hash;

use crate::budget::Budget;
use crate::graph::{NiceKind, NiceTreeDecomposition};
use crate::{Instance, SolveError};

/// How values are built up. Returning `None` discards the partial solution.
pub(crate) trait Charge {
    type Val: Clone + Eq + Hash;
    fn zero(&self) -> Self::Val;
    /// `item` leaves the bag with colour `agent`.
    fn forget(&self, val: &Self::Val, agent: usize, item: usize) -> Option<Self::Val>;
    fn join(&self, a: &Self::Val, b: &Self::Val) -> Option<Self::Val>;

    /// Whether `a` is at least as good as `b` in every completion. Only
    /// consulted when `pareto()` holds; must be a partial order that is
    /// consistent with `score` (`a` dominates `b`, `a != b` implies
    /// `score(a) > score(b)`).
    fn dominates(&self, _a: &Self::Val, _b: &Self::Val) -> bool {
        false
    }

    fn score(&self, _v: &Self::Val) -> i128 {
        0
    }

    fn pareto(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Pred {
    Leaf,
    Child(usize),
    Join(usize, usize),
}

#[derive(Debug, Clone)]
pub(crate) struct Entry<V> {
    /// Agent of each bag item, in bag order.
    pub coloring: Vec<u8>,
    pub val: V,
    pub pred: Pred,
}

pub(crate) type Tables<V> = Vec<Vec<Entry<V>>>;

struct Dedup<V: Hash + Eq> {
    entries: Vec<Entry<V>>,
    seen: HashMap<(Vec<u8>, V), ()>,
}

impl<V: Clone + Hash + Eq> Dedup<V> {
    fn new() -> Self {
        Dedup { entries: Vec::new(), seen: HashMap::new() }
    }

    fn push(&mut self, coloring: Vec<u8>, val: V, pred: Pred) {
        if self.seen.insert((coloring.clone(), val.clone()), ()).is_none() {
            self.entries.push(Entry { coloring, val, pred });
        }
    }
}

/// Bottom-up pass; the decomposition must already be checked.
pub(crate) fn run<C: Charge>(
    inst: &Instance,
    ntd: &NiceTreeDecomposition,
    charge: &C,
    budget: &Budget,
) -> Result<Tables<C::Val>, SolveError> {
    let k = inst.k();
    if k > u8::MAX as usize + 1 {
        return Err(SolveError::InvalidParameters(format!("k = {k} exceeds the colouring width")));
    }
    let mut tables: Tables<C::Val> = Vec::with_capacity(ntd.num_nodes());
    let mut stored = 0usize;
    for t in 0..ntd.num_nodes() {
        budget.check_time()?;
        let bag = ntd.bag(t);
        let mut out = Dedup::new();
        match ntd.kind(t) {
            NiceKind::Leaf => out.push(Vec::new(), charge.zero(), Pred::Leaf),
            NiceKind::Introduce(v) => {
                let child = ntd.children(t)[0];
                let pos = bag.binary_search(&v).expect("introduced item is in the bag");
                for (idx, e) in tables[child].iter().enumerate() {
                    for a in 0..k {
                        let clash = e.coloring.iter().enumerate().any(|(i, &col)| {
                            col as usize == a && inst.graph().has_edge(v, bag[if i < pos { i } else { i + 1 }])
                        });
                        if clash {
                            continue;
                        }
                        let mut coloring = e.coloring.clone();
                        coloring.insert(pos, a as u8);
                        out.push(coloring, e.val.clone(), Pred::Child(idx));
                    }
                }
            }
            NiceKind::Forget(v) => {
                let child = ntd.children(t)[0];
                let pos = ntd.bag(child).binary_search(&v).expect("forgotten item is in the child bag");
                for (idx, e) in tables[child].iter().enumerate() {
                    let a = e.coloring[pos] as usize;
                    if let Some(val) = charge.forget(&e.val, a, v) {
                        let mut coloring = e.coloring.clone();
                        coloring.remove(pos);
                        out.push(coloring, val, Pred::Child(idx));
                    }
                }
            }
            NiceKind::Join => {
                let (l, r) = (ntd.children(t)[0], ntd.children(t)[1]);
                let mut by_coloring: HashMap<&[u8], Vec<usize>> = HashMap::new();
                for (idx, e) in tables[r].iter().enumerate() {
                    by_coloring.entry(&e.coloring).or_default().push(idx);
                }
                for (li, le) in tables[l].iter().enumerate() {
                    let Some(rights) = by_coloring.get(le.coloring.as_slice()) else { continue };
                    for &ri in rights {
                        if let Some(val) = charge.join(&le.val, &tables[r][ri].val) {
                            out.push(le.coloring.clone(), val, Pred::Join(li, ri));
                        }
                    }
                }
            }
        }
        let entries = if charge.pareto() { keep_undominated(charge, out.entries) } else { out.entries };
        stored += entries.len();
        budget.checkpoint(stored)?;
        tables.push(entries);
    }
    Ok(tables)
}

/// Drops every entry dominated by another entry with the same colouring.
fn keep_undominated<C: Charge>(charge: &C, entries: Vec<Entry<C::Val>>) -> Vec<Entry<C::Val>> {
    let mut groups: HashMap<Vec<u8>, Vec<Entry<C::Val>>> = HashMap::new();
    let mut order = Vec::new();
    for e in entries {
        let group = groups.entry(e.coloring.clone()).or_insert_with(|| {
            order.push(e.coloring.clone());
            Vec::new()
        });
        group.push(e);
    }
    let mut out = Vec::new();
    for coloring in order {
        let mut group = groups.remove(&coloring).expect("group exists");
        // Stable sort keeps the construction order among equal scores.
        group.sort_by_key(|e| std::cmp::Reverse(charge.score(&e.val)));
        let start = out.len();
        for e in group {
            if !out[start..].iter().any(|k: &Entry<C::Val>| charge.dominates(&k.val, &e.val)) {
                out.push(e);
            }
        }
    }
    out
}

/// Follows predecessor pointers from `(root, entry)`, returning every item's
/// agent and the visited `(node, entry)` pairs.
pub(crate) fn backtrack<V>(
    ntd: &NiceTreeDecomposition,
    tables: &Tables<V>,
    n: usize,
    entry: usize,
) -> (Vec<usize>, Vec<(usize, usize)>) {
    let mut assignment = vec![usize::MAX; n];
    let mut visited = Vec::new();
    let mut stack = vec![(ntd.root(), entry)];
    while let Some((t, idx)) = stack.pop() {
        visited.push((t, idx));
        let e = &tables[t][idx];
        for (&v, &a) in ntd.bag(t).iter().zip(&e.coloring) {
            assignment[v] = a as usize;
        }
        match e.pred {
            Pred::Leaf => {}
            Pred::Child(c) => stack.push((ntd.children(t)[0], c)),
            Pred::Join(a, b) => {
                stack.push((ntd.children(t)[0], a));
                stack.push((ntd.children(t)[1], b));
            }
        }
    }
    debug_assert!(assignment.iter().all(|&a| a != usize::MAX));
    (assignment, visited)
}
