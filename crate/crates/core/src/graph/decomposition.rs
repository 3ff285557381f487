use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use super::Graph;

/// Tree of bags over vertex indices. Node `i` has bag `bags[i]`; `edges`
/// are the tree links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Bags are sorted and deduplicated; no validity check is made.
    pub fn new(mut bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition { bags, edges }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_nodes(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one (0 for a decomposition of only empty bags).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            if a < adj.len() && b < adj.len() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        adj
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TdViolation {
    NoBags,
    /// Tree edge naming a node that does not exist.
    BadTreeEdge(usize, usize),
    /// The bag graph is disconnected or has a cycle.
    NotATree,
    /// Bag `bag` mentions vertex `vertex >= n`.
    UnknownVertex { bag: usize, vertex: usize },
    VertexNotCovered(usize),
    EdgeNotCovered(usize, usize),
    /// The bags containing the vertex do not form a connected subtree.
    ConnectivityViolated(usize),
    /// A rooted decomposition whose nodes break the nice-form contract.
    NotNice(String),
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::NoBags => write!(f, "decomposition has no bags"),
            TdViolation::BadTreeEdge(a, b) => write!(f, "tree edge {a}-{b} names a missing node"),
            TdViolation::NotATree => write!(f, "bag graph is not a tree"),
            TdViolation::UnknownVertex { bag, vertex } => write!(f, "bag {bag} contains unknown vertex {vertex}"),
            TdViolation::VertexNotCovered(v) => write!(f, "vertex {v} is in no bag"),
            TdViolation::EdgeNotCovered(u, v) => write!(f, "edge {u}-{v} is in no bag"),
            TdViolation::ConnectivityViolated(v) => write!(f, "bags containing vertex {v} are disconnected"),
            TdViolation::NotNice(msg) => write!(f, "not a nice decomposition: {msg}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct DecompositionReport {
    pub violations: Vec<TdViolation>,
}

impl DecompositionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for DecompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Tree shape plus the running-intersection property, independent of any
/// graph. Vertices range over `0..n`.
pub(crate) fn structural_violations(td: &TreeDecomposition, n: usize) -> Vec<TdViolation> {
    let mut out = Vec::new();
    let nodes = td.num_nodes();
    if nodes == 0 {
        out.push(TdViolation::NoBags);
        return out;
    }
    let mut tree_ok = true;
    for &(a, b) in td.edges() {
        if a >= nodes || b >= nodes || a == b {
            out.push(TdViolation::BadTreeEdge(a, b));
            tree_ok = false;
        }
    }
    let adj = td.adjacency();
    if tree_ok {
        let mut seen = vec![false; nodes];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(t) = queue.pop_front() {
            for &s in &adj[t] {
                if !seen[s] {
                    seen[s] = true;
                    count += 1;
                    queue.push_back(s);
                }
            }
        }
        if count != nodes || td.edges().len() != nodes - 1 {
            out.push(TdViolation::NotATree);
            tree_ok = false;
        }
    }

    let mut holders = vec![Vec::new(); n];
    for (t, bag) in td.bags().iter().enumerate() {
        for &v in bag {
            if v >= n {
                out.push(TdViolation::UnknownVertex { bag: t, vertex: v });
            } else {
                holders[v].push(t);
            }
        }
    }
    if tree_ok {
        let mut mark = vec![usize::MAX; nodes];
        for (v, hs) in holders.iter().enumerate() {
            let Some(&first) = hs.first() else { continue };
            for &t in hs {
                mark[t] = v;
            }
            let mut reached = 1;
            let mut queue = VecDeque::from([first]);
            let mut seen = vec![false; nodes];
            seen[first] = true;
            while let Some(t) = queue.pop_front() {
                for &s in &adj[t] {
                    if !seen[s] && mark[s] == v {
                        seen[s] = true;
                        reached += 1;
                        queue.push_back(s);
                    }
                }
            }
            if reached != hs.len() {
                out.push(TdViolation::ConnectivityViolated(v));
            }
        }
    }
    out
}

/// Checks the three defining properties of a tree decomposition of `g`
/// (plus tree shape) and reports every violation.
pub fn validate_decomposition(g: &Graph, td: &TreeDecomposition) -> DecompositionReport {
    let mut violations = structural_violations(td, g.n());
    if violations.contains(&TdViolation::NoBags) {
        if g.n() == 0 {
            violations.clear();
        }
        return DecompositionReport { violations };
    }
    let mut covered = vec![false; g.n()];
    for &v in td.bags().iter().flatten() {
        if v < g.n() {
            covered[v] = true;
        }
    }
    for (v, &c) in covered.iter().enumerate() {
        if !c {
            violations.push(TdViolation::VertexNotCovered(v));
        }
    }
    for &(u, v) in g.edges() {
        if !td.bags().iter().any(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok()) {
            violations.push(TdViolation::EdgeNotCovered(u, v));
        }
    }
    DecompositionReport { violations }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EliminationHeuristic {
    #[default]
    MinFill,
    MinDegree,
}

/// Tree decomposition from a greedy elimination ordering. Ties are broken
/// by degree, then by vertex index.
pub fn heuristic_tree_decomposition(g: &Graph, heuristic: EliminationHeuristic) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::new(vec![vec![]], vec![]);
    }
    let mut adj: Vec<Vec<bool>> = vec![vec![false; n]; n];
    let mut nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    for &(u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut bags = Vec::with_capacity(n);

    let fill = |v: usize, nbrs: &[Vec<usize>], adj: &[Vec<bool>]| -> usize {
        let ns = &nbrs[v];
        let mut missing = 0;
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                if !adj[a][b] {
                    missing += 1;
                }
            }
        }
        missing
    };

    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| match heuristic {
                EliminationHeuristic::MinFill => (fill(v, &nbrs, &adj), nbrs[v].len(), v),
                EliminationHeuristic::MinDegree => (nbrs[v].len(), 0, v),
            })
            .expect("alive vertex remains");
        let ns = std::mem::take(&mut nbrs[v]);
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                if !adj[a][b] {
                    adj[a][b] = true;
                    adj[b][a] = true;
                    nbrs[a].push(b);
                    nbrs[b].push(a);
                }
            }
        }
        for &a in &ns {
            adj[a][v] = false;
            nbrs[a].retain(|&w| w != v);
        }
        alive[v] = false;
        let mut bag = ns;
        bag.push(v);
        order.push(v);
        bags.push(bag);
    }

    // Bag i belongs to order[i]; its parent is the bag of the neighbour
    // eliminated next.
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, bag) in bags.iter().enumerate() {
        match bag.iter().filter(|&&w| pos[w] > i).min_by_key(|&&w| pos[w]) {
            Some(&w) => edges.push((i, pos[w])),
            None => roots.push(i),
        }
    }
    for pair in roots.windows(2) {
        edges.push((pair[0], pair[1]));
    }
    contract_nested_bags(TreeDecomposition::new(bags, edges))
}

/// Contracts tree edges whose one endpoint's bag is a subset of the other's,
/// keeping the larger bag. Valid decompositions stay valid.
pub(crate) fn contract_nested_bags(td: TreeDecomposition) -> TreeDecomposition {
    let nodes = td.num_nodes();
    if nodes <= 1 {
        return td;
    }
    let TreeDecomposition { mut bags, edges } = td;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut alive = vec![true; nodes];
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..nodes {
            if !alive[a] {
                continue;
            }
            let found = adj[a].iter().copied().find(|&b| subset(&bags[a], &bags[b]));
            if let Some(b) = found {
                // Merge a into b.
                alive[a] = false;
                let moved = std::mem::take(&mut adj[a]);
                for &c in &moved {
                    adj[c].retain(|&x| x != a);
                    if c != b {
                        adj[c].push(b);
                        adj[b].push(c);
                    }
                }
                bags[a].clear();
                changed = true;
            }
        }
    }
    let mut remap = vec![usize::MAX; nodes];
    let mut new_bags = Vec::new();
    for t in 0..nodes {
        if alive[t] {
            remap[t] = new_bags.len();
            new_bags.push(std::mem::take(&mut bags[t]));
        }
    }
    let mut new_edges = Vec::new();
    for t in 0..nodes {
        if alive[t] {
            for &s in &adj[t] {
                if t < s {
                    new_edges.push((remap[t], remap[s]));
                }
            }
        }
    }
    TreeDecomposition::new(new_bags, new_edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heuristic_widths() {
        let td = heuristic_tree_decomposition(&Graph::empty(3), EliminationHeuristic::MinFill);
        assert_eq!(td.width(), 0);
        assert!(validate_decomposition(&Graph::empty(3), &td).is_valid());

        let c4 = Graph::cycle(4);
        let td = heuristic_tree_decomposition(&c4, EliminationHeuristic::MinFill);
        assert_eq!(td.width(), 2);
        assert!(validate_decomposition(&c4, &td).is_valid());

        let tree = Graph::from_edges(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)]);
        for h in [EliminationHeuristic::MinFill, EliminationHeuristic::MinDegree] {
            let td = heuristic_tree_decomposition(&tree, h);
            assert_eq!(td.width(), 1);
            assert!(validate_decomposition(&tree, &td).is_valid());
        }
    }

    #[test]
    fn c4_best_elimination_is_width_two() {
        // Independent oracle: width of every elimination order of C4.
        let g = Graph::cycle(4);
        let mut best = usize::MAX;
        let perms = permutations(4);
        for perm in perms {
            best = best.min(elimination_width(&g, &perm));
        }
        assert_eq!(best, 2);
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn elimination_width(g: &Graph, order: &[usize]) -> usize {
        let mut h = g.clone();
        let mut gone = vec![false; g.n()];
        let mut width = 0;
        for &v in order {
            let ns: Vec<usize> = h.neighbors(v).iter().copied().filter(|&w| !gone[w]).collect();
            width = width.max(ns.len());
            for (i, &a) in ns.iter().enumerate() {
                for &b in &ns[i + 1..] {
                    h.add_edge(a, b);
                }
            }
            gone[v] = true;
        }
        width
    }

    #[test]
    fn missing_edge_reported() {
        let g = Graph::path(3);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2]], vec![(0, 1)]);
        let report = validate_decomposition(&g, &td);
        assert_eq!(report.violations, vec![TdViolation::EdgeNotCovered(1, 2)]);
    }

    #[test]
    fn disconnected_occurrence_reported() {
        let g = Graph::empty(3);
        let td = TreeDecomposition::new(vec![vec![0], vec![1], vec![0, 2]], vec![(0, 1), (1, 2)]);
        let report = validate_decomposition(&g, &td);
        assert_eq!(report.violations, vec![TdViolation::ConnectivityViolated(0)]);
    }

    #[test]
    fn structural_problems_reported() {
        let g = Graph::empty(2);
        let td = TreeDecomposition::new(vec![vec![0], vec![1], vec![5]], vec![(0, 1)]);
        let report = validate_decomposition(&g, &td);
        assert!(report.violations.contains(&TdViolation::NotATree));
        assert!(report.violations.contains(&TdViolation::UnknownVertex { bag: 2, vertex: 5 }));
        let td = TreeDecomposition::new(vec![vec![0]], vec![]);
        assert_eq!(validate_decomposition(&g, &td).violations, vec![TdViolation::VertexNotCovered(1)]);
    }

    #[test]
    fn contraction_keeps_maximal_bags() {
        let td = TreeDecomposition::new(
            vec![vec![0], vec![0, 1], vec![1], vec![1, 2]],
            vec![(0, 1), (1, 2), (2, 3)],
        );
        let c = contract_nested_bags(td);
        let mut bags = c.bags().to_vec();
        bags.sort();
        assert_eq!(bags, vec![vec![0, 1], vec![1, 2]]);
        assert!(validate_decomposition(&Graph::path(3), &c).is_valid());
    }
}
