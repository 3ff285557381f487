use std::collections::VecDeque;

use super::Graph;

/// Connected components, each sorted, ordered by their smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// `x` holds the component's smallest vertex; an isolated vertex yields
    /// `x = [v]`, `y = []`.
    Bipartite { x: Vec<usize>, y: Vec<usize> },
    /// Vertices of an odd cycle, in cycle order.
    OddCycle(Vec<usize>),
}

/// Two-colours one connected component (given as its vertex list) by BFS.
pub fn bipartition(g: &Graph, component: &[usize]) -> Bipartition {
    let Some(&start) = component.iter().min() else {
        return Bipartition::Bipartite { x: vec![], y: vec![] };
    };
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    side[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if side[w] == u8::MAX {
                side[w] = 1 - side[u];
                parent[w] = u;
                depth[w] = depth[u] + 1;
                queue.push_back(w);
            } else if side[w] == side[u] {
                return Bipartition::OddCycle(tree_cycle(&parent, &depth, u, w));
            }
        }
    }
    let (mut x, mut y) = (Vec::new(), Vec::new());
    for &v in component {
        match side[v] {
            0 => x.push(v),
            1 => y.push(v),
            _ => panic!("vertex {v} is not connected to the component's smallest vertex"),
        }
    }
    x.sort_unstable();
    y.sort_unstable();
    Bipartition::Bipartite { x, y }
}

/// Cycle closed by the non-tree edge `u`-`w` in a BFS tree.
fn tree_cycle(parent: &[usize], depth: &[usize], mut u: usize, mut w: usize) -> Vec<usize> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    while depth[u] > depth[w] {
        left.push(u);
        u = parent[u];
    }
    while depth[w] > depth[u] {
        right.push(w);
        w = parent[w];
    }
    while u != w {
        left.push(u);
        right.push(w);
        u = parent[u];
        w = parent[w];
    }
    left.push(u);
    right.reverse();
    left.extend(right);
    left
}
