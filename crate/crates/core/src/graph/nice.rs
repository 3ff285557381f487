use std::collections::VecDeque;

use serde::Serialize;

use super::decomposition::{structural_violations, DecompositionReport, TreeDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "item")]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

/// Rooted nice tree decomposition. Nodes are numbered so that every child
/// precedes its parent; iterating `0..num_nodes()` is a bottom-up pass and
/// the root is the last node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    bags: Vec<Vec<usize>>,
    kinds: Vec<NiceKind>,
    children: Vec<Vec<usize>>,
}

impl NiceTreeDecomposition {
    pub fn num_nodes(&self) -> usize {
        self.bags.len()
    }

    pub fn root(&self) -> usize {
        self.bags.len() - 1
    }

    pub fn bag(&self, t: usize) -> &[usize] {
        &self.bags[t]
    }

    pub fn kind(&self, t: usize) -> NiceKind {
        self.kinds[t]
    }

    pub fn children(&self, t: usize) -> &[usize] {
        &self.children[t]
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn count(&self, pred: impl Fn(NiceKind) -> bool) -> usize {
        self.kinds.iter().filter(|&&k| pred(k)).count()
    }

    /// The underlying (unrooted) tree decomposition.
    pub fn as_tree_decomposition(&self) -> TreeDecomposition {
        let edges = self
            .children
            .iter()
            .enumerate()
            .flat_map(|(t, cs)| cs.iter().map(move |&c| (c, t)))
            .collect();
        TreeDecomposition::new(self.bags.clone(), edges)
    }

    /// Parent pointers; the root maps to `None`.
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.num_nodes()];
        for (t, cs) in self.children.iter().enumerate() {
            for &c in cs {
                parent[c] = Some(t);
            }
        }
        parent
    }

    /// Checks the node-kind contract: empty root and leaves, introduce and
    /// forget change the child bag by exactly the named vertex, joins have
    /// two children with equal bags, children precede parents.
    pub fn audit(&self) -> Result<(), String> {
        if self.bags.is_empty() {
            return Err("no nodes".into());
        }
        if !self.bags[self.root()].is_empty() {
            return Err("root bag is not empty".into());
        }
        for t in 0..self.num_nodes() {
            let bag = &self.bags[t];
            let cs = &self.children[t];
            if cs.iter().any(|&c| c >= t) {
                return Err(format!("node {t} has a child numbered after it"));
            }
            let ok = match self.kinds[t] {
                NiceKind::Leaf => cs.is_empty() && bag.is_empty(),
                NiceKind::Introduce(v) => {
                    cs.len() == 1 && {
                        let child = &self.bags[cs[0]];
                        bag.len() == child.len() + 1 && bag.binary_search(&v).is_ok() && child.binary_search(&v).is_err()
                            && child.iter().all(|x| bag.binary_search(x).is_ok())
                    }
                }
                NiceKind::Forget(v) => {
                    cs.len() == 1 && {
                        let child = &self.bags[cs[0]];
                        child.len() == bag.len() + 1 && child.binary_search(&v).is_ok() && bag.binary_search(&v).is_err()
                            && bag.iter().all(|x| child.binary_search(x).is_ok())
                    }
                }
                NiceKind::Join => cs.len() == 2 && self.bags[cs[0]] == *bag && self.bags[cs[1]] == *bag,
            };
            if !ok {
                return Err(format!("node {t} ({:?}) violates its kind", self.kinds[t]));
            }
        }
        let referenced: usize = self.children.iter().map(Vec::len).sum();
        if referenced != self.num_nodes() - 1 {
            return Err("nodes are not a single rooted tree".into());
        }
        Ok(())
    }
}

struct Builder {
    bags: Vec<Vec<usize>>,
    kinds: Vec<NiceKind>,
    children: Vec<Vec<usize>>,
}

impl Builder {
    fn push(&mut self, bag: Vec<usize>, kind: NiceKind, children: Vec<usize>) -> usize {
        self.bags.push(bag);
        self.kinds.push(kind);
        self.children.push(children);
        self.bags.len() - 1
    }

    /// Chain of forgets then introduces turning node `from` into a node with
    /// bag `target`.
    fn morph(&mut self, mut from: usize, target: &[usize]) -> usize {
        let current = self.bags[from].clone();
        for &v in current.iter().rev() {
            if target.binary_search(&v).is_err() {
                let mut bag = self.bags[from].clone();
                bag.retain(|&x| x != v);
                from = self.push(bag, NiceKind::Forget(v), vec![from]);
            }
        }
        for &v in target {
            if current.binary_search(&v).is_err() {
                let mut bag = self.bags[from].clone();
                let pos = bag.binary_search(&v).unwrap_err();
                bag.insert(pos, v);
                from = self.push(bag, NiceKind::Introduce(v), vec![from]);
            }
        }
        from
    }
}

/// Converts a tree decomposition into nice form of the same width.
///
/// The tree is rooted at its lowest-numbered node of degree at most one, so
/// a path-shaped decomposition yields a nice decomposition without joins.
/// Nodes with several children get a left-deep chain of binary joins.
pub fn to_nice_decomposition(td: &TreeDecomposition) -> Result<NiceTreeDecomposition, DecompositionReport> {
    let n = td.bags().iter().flatten().map(|&v| v + 1).max().unwrap_or(0);
    let violations = structural_violations(td, n);
    if !violations.is_empty() {
        return Err(DecompositionReport { violations });
    }
    let adj = td.adjacency();
    let nodes = td.num_nodes();
    let root = (0..nodes).find(|&t| adj[t].len() <= 1).unwrap_or(0);

    // BFS order from the root; reversed it is a valid post-order for
    // building bottom-up.
    let mut parent = vec![usize::MAX; nodes];
    let mut order = Vec::with_capacity(nodes);
    let mut queue = VecDeque::from([root]);
    parent[root] = root;
    while let Some(t) = queue.pop_front() {
        order.push(t);
        for &s in &adj[t] {
            if parent[s] == usize::MAX {
                parent[s] = t;
                queue.push_back(s);
            }
        }
    }

    let mut b = Builder {
        bags: Vec::new(),
        kinds: Vec::new(),
        children: Vec::new(),
    };
    let mut top = vec![usize::MAX; nodes];
    for &t in order.iter().rev() {
        let bag = &td.bags()[t];
        let mut branches: Vec<usize> = adj[t]
            .iter()
            .filter(|&&s| s != root && parent[s] == t)
            .map(|&c| b.morph(top[c], bag))
            .collect();
        if branches.is_empty() {
            let leaf = b.push(Vec::new(), NiceKind::Leaf, vec![]);
            branches.push(b.morph(leaf, bag));
        }
        let mut acc = branches[0];
        for &other in &branches[1..] {
            acc = b.push(bag.clone(), NiceKind::Join, vec![acc, other]);
        }
        top[t] = acc;
    }
    b.morph(top[root], &[]);
    Ok(NiceTreeDecomposition {
        bags: b.bags,
        kinds: b.kinds,
        children: b.children,
    })
}
