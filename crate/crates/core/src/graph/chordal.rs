use std::collections::VecDeque;

use thiserror::Error;

use super::decomposition::{contract_nested_bags, TreeDecomposition};
use super::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chordality {
    /// A perfect elimination ordering: every vertex's neighbours that come
    /// later in the ordering form a clique.
    Chordal(Vec<usize>),
    /// A chordless cycle of length at least 4, in cycle order.
    NotChordal(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph is not chordal")]
pub struct NotChordalInput;

/// Maximum cardinality search; ties go to the smallest vertex.
fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !visited[w] {
                weight[w] += 1;
            }
        }
    }
    order
}

/// Recognises chordal graphs by maximum cardinality search and checks the
/// resulting ordering; on failure a hole is extracted.
pub fn recognize_chordal(g: &Graph) -> Chordality {
    let order = mcs_order(g);
    let mut pos = vec![0usize; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for &v in &order {
        let earlier: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| pos[w] < pos[v]).collect();
        let Some(&parent) = earlier.iter().max_by_key(|&&w| pos[w]) else {
            continue;
        };
        if let Some(&u) = earlier.iter().find(|&&u| u != parent && !g.has_edge(u, parent)) {
            let hole = hole_through(g, v, Some((u, parent)))
                .or_else(|| (0..g.n()).find_map(|w| hole_through(g, w, None)))
                .expect("a failed elimination check implies a hole");
            return Chordality::NotChordal(hole);
        }
    }
    Chordality::Chordal(order.into_iter().rev().collect())
}

/// A hole through `v`: two non-adjacent neighbours `a`, `b` joined by a
/// shortest path whose inner vertices avoid the closed neighbourhood of `v`.
/// With `pair` set only that pair is tried.
fn hole_through(g: &Graph, v: usize, pair: Option<(usize, usize)>) -> Option<Vec<usize>> {
    let n = g.n();
    let mut blocked = vec![false; n];
    blocked[v] = true;
    for &w in g.neighbors(v) {
        blocked[w] = true;
    }
    let pairs: Vec<(usize, usize)> = match pair {
        Some(p) => vec![p],
        None => {
            let ns = g.neighbors(v);
            ns.iter()
                .enumerate()
                .flat_map(|(i, &a)| ns[i + 1..].iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| !g.has_edge(a, b))
                .collect()
        }
    };
    for (a, b) in pairs {
        // BFS from a to b through unblocked vertices.
        let mut prev = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for &w in g.neighbors(a) {
            if !blocked[w] && prev[w] == usize::MAX {
                prev[w] = a;
                queue.push_back(w);
            }
        }
        let mut end = None;
        while let Some(u) = queue.pop_front() {
            if g.has_edge(u, b) {
                end = Some(u);
                break;
            }
            for &w in g.neighbors(u) {
                if !blocked[w] && prev[w] == usize::MAX {
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if let Some(mut u) = end {
            let mut path = vec![b];
            while u != a {
                path.push(u);
                u = prev[u];
            }
            path.push(a);
            path.push(v);
            path.reverse();
            return Some(path);
        }
    }
    None
}

/// Clique tree of a chordal graph: a tree decomposition whose bags are
/// exactly the maximal cliques.
pub fn clique_tree(g: &Graph) -> Result<TreeDecomposition, NotChordalInput> {
    let peo = match recognize_chordal(g) {
        Chordality::Chordal(peo) => peo,
        Chordality::NotChordal(_) => return Err(NotChordalInput),
    };
    let n = g.n();
    if n == 0 {
        return Ok(TreeDecomposition::new(vec![vec![]], vec![]));
    }
    let mut pos = vec![0usize; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    // Bag i = peo[i] plus its later neighbours; its parent is the bag of
    // the earliest later neighbour.
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in peo.iter().enumerate() {
        let mut later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| pos[w] > i).collect();
        match later.iter().min_by_key(|&&w| pos[w]) {
            Some(&w) => edges.push((i, pos[w])),
            None => roots.push(i),
        }
        later.push(v);
        later.sort_unstable();
        bags.push(later);
    }
    for pair in roots.windows(2) {
        edges.push((pair[0], pair[1]));
    }
    Ok(contract_nested_bags(TreeDecomposition::new(bags, edges)))
}
