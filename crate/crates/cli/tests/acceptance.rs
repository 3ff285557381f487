//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Pass criterion numbers as arguments to run a
//! subset, e.g. `cargo test --test acceptance -- 2 5`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use bcfea_cli::bench::random_partial_ktree;
use bcfea_cli::cross_check::{default_solvers, generator_fixtures, oracle_reference, random_corpus, run_cross_check};
use bcfea_core::exact::{
    build_feasible_indicator, build_layered_graph, fill_layered_table, partition_tables, solve_bundle_size_two,
    solve_oracle, solve_oracle_with, solve_subset_convolution, OracleOptions, ProductMethod,
};
use bcfea_core::generators::{from_k_coloring, from_matched_partition, from_partition, random_instance, RandomSpec};
use bcfea_core::graph::{
    heuristic_tree_decomposition, to_nice_decomposition, validate_decomposition, EliminationHeuristic, Graph, NiceKind,
    NiceTreeDecomposition,
};
use bcfea_core::model::verify_allocation;
use bcfea_core::treewidth::{
    fpt_as_trajectory, heuristic_nice_decomposition, pc_dp_tables, solve_fpt_as, solve_pc_dp, solve_pc_dp_with,
    PcDpOptions, PcTable,
};
use bcfea_core::{Budget, Instance, Valuations};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn ident(g: Graph, k: usize, utility: Vec<u64>, cost: Vec<u64>, p: u64, b: u64) -> Instance {
    Instance::from_parts(k, g, Valuations::Identical { utility, cost }, p, b).unwrap()
}

fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Every proper colouring of `vertices` (in the order given) with `k`
/// colours, as assignments indexed like `vertices`.
fn proper_colorings(g: &Graph, vertices: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(vertices.len());
    fn rec(g: &Graph, vs: &[usize], k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == vs.len() {
            out.push(cur.clone());
            return;
        }
        for a in 0..k {
            if (0..i).all(|j| cur[j] != a || !g.has_edge(vs[i], vs[j])) {
                cur.push(a);
                rec(g, vs, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(g, vertices, k, &mut cur, &mut out);
    out
}

// 1 -------------------------------------------------------------------------

fn oracle_agreement() -> Verdict {
    let mut corpus = random_corpus(500, 0);
    corpus.extend(generator_fixtures());
    let s = run_cross_check(&corpus, &oracle_reference(), &default_solvers(), None);
    let detail = format!(
        "{} instances, {} comparisons, {} disagreements, {} unverified, {} errors",
        s.instances,
        s.comparisons,
        s.disagreements.len(),
        s.verification_failures.len(),
        s.errors.len()
    );
    verdict(s.passed() && s.comparisons > 0, detail)
}

// 2 -------------------------------------------------------------------------

/// `g_j(S)` by enumerating all assignments of `S` to `j` labelled parts.
fn brute_partition(inst: &Instance, set: usize, j: usize) -> bool {
    let items: Vec<usize> = (0..inst.n()).filter(|&v| set >> v & 1 == 1).collect();
    let total = j.pow(items.len() as u32);
    (0..total).any(|mut code| {
        let mut parts = vec![Vec::new(); j];
        for &v in &items {
            parts[code % j].push(v);
            code /= j;
        }
        parts.iter().all(|b| {
            inst.graph().is_independent(b)
                && inst.bundle_cost(0, b) <= inst.budget()
                && inst.bundle_utility(0, b) >= inst.profit_floor()
        })
    })
}

fn subset_convolution_scale() -> Verdict {
    let mut slowest = Duration::ZERO;
    let mut failures = Vec::new();
    let mut yes = 0;
    for seed in 0..3 {
        let inst = random_instance(&RandomSpec {
            n: 16,
            k: 4,
            edge_prob: 0.2,
            utility: (0, 8),
            cost: (0, 8),
            profit_floor: (12, 24),
            budget: (16, 24),
            per_agent: false,
            seed,
        })
        .unwrap();
        let start = Instant::now();
        let out = solve_subset_convolution(&inst, &Budget::unlimited()).unwrap();
        let took = start.elapsed();
        slowest = slowest.max(took);
        yes += out.is_yes() as usize;
        if took >= Duration::from_secs(10) || !out.is_consistent(&inst) {
            failures.push(format!("seed {seed}: {took:?}, consistent {}", out.is_consistent(&inst)));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut tables = 0;
    for n in 1..=12 {
        for _ in 0..3 {
            let g = gnp(n, 0.3, &mut rng);
            let u = (0..n).map(|_| rng.gen_range(0..=4)).collect();
            let c = (0..n).map(|_| rng.gen_range(0..=4)).collect();
            let inst = ident(g, 4, u, c, rng.gen_range(0..=4), rng.gen_range(0..=6));
            let f = build_feasible_indicator(&inst, &Budget::unlimited()).unwrap();
            let direct = partition_tables(&f, 4, ProductMethod::Direct, &Budget::unlimited()).unwrap();
            let ranked = partition_tables(&f, 4, ProductMethod::Ranked, &Budget::unlimited()).unwrap();
            tables += direct.len();
            if direct != ranked {
                failures.push(format!("n = {n}: direct and ranked tables differ"));
            }
            if n <= 6 {
                for (j, table) in direct.iter().enumerate() {
                    for set in 0..1usize << n {
                        if table[set] != brute_partition(&inst, set, j + 1) {
                            failures.push(format!("n = {n}: g_{}({set:b}) wrong", j + 1));
                        }
                    }
                }
            }
        }
    }
    verdict(
        failures.is_empty(),
        format!(
            "n=16 k=4: slowest {:.2}s, {yes}/3 yes; {tables} table pairs equal; {} failures {:?}",
            slowest.as_secs_f64(),
            failures.len(),
            failures.first()
        ),
    )
}

// 3 -------------------------------------------------------------------------

fn layered_semantics() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut cells, mut mismatches, mut instances) = (0usize, 0usize, 0usize);
    let mut structure = Vec::new();
    while instances < 150 {
        // r components, each a random tree on 1..=3 vertices (bipartite).
        let r = rng.gen_range(1..=6);
        let mut edges = Vec::new();
        let mut n = 0;
        for _ in 0..r {
            let size = rng.gen_range(1..=3);
            for v in 1..size {
                edges.push((n + rng.gen_range(0..v), n + v));
            }
            n += size;
        }
        let g = Graph::from_edges(n, edges);
        let u: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        let c: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        let (pf, b) = (rng.gen_range(0..=5u64), rng.gen_range(0..=5u64));
        let inst = ident(g.clone(), 2, u.clone(), c.clone(), pf, b);
        instances += 1;

        let lg = build_layered_graph(&inst).expect("forests are bipartite");
        // The layers must be the colour classes of the components.
        let mut covered = vec![0; n];
        for (j, (x, y)) in lg.sides.iter().enumerate() {
            let mut comp: Vec<usize> = x.iter().chain(y).copied().collect();
            comp.sort();
            for &v in &comp {
                covered[v] += 1;
            }
            let closed = comp.iter().all(|&v| g.neighbors(v).iter().all(|w| comp.binary_search(w).is_ok()));
            let sum = |s: &[usize], w: &[u64]| s.iter().map(|&v| w[v]).sum::<u64>();
            let (lx, ly) = lg.layers[j];
            if !(closed && g.is_independent(x) && g.is_independent(y))
                || (lx.utility, lx.cost, ly.utility, ly.cost) != (sum(x, &u), sum(x, &c), sum(y, &u), sum(y, &c))
            {
                structure.push(format!("instance {instances}: layer {j} is not a component bipartition"));
            }
        }
        if lg.layers.len() != r || covered.iter().any(|&k| k != 1) {
            structure.push(format!("instance {instances}: layers do not cover the components"));
        }

        let table = fill_layered_table(&lg, pf, b, &Budget::unlimited()).unwrap();
        for j in 1..=r {
            // Totals of every red/blue path through the first j layers;
            // bit i set means red takes y_i.
            let paths: Vec<(usize, [u64; 4])> = (0..1usize << j)
                .map(|mask| {
                    let mut t = [0u64; 4];
                    for i in 0..j {
                        let (x, y) = lg.layers[i];
                        let (red, blue) = if mask >> i & 1 == 1 { (y, x) } else { (x, y) };
                        t[0] += red.utility;
                        t[1] += red.cost;
                        t[2] += blue.utility;
                        t[3] += blue.cost;
                    }
                    (1 + (mask >> (j - 1) & 1), t)
                })
                .collect();
            for z in 1..=2 {
                for t1 in 0..=pf as usize {
                    for k1 in 0..=b as usize {
                        for t2 in 0..=pf as usize {
                            for k2 in 0..=b as usize {
                                let expected = paths.iter().any(|&(pz, t)| {
                                    pz == z
                                        && t[0] >= t1 as u64
                                        && t[1] <= k1 as u64
                                        && t[2] >= t2 as u64
                                        && t[3] <= k2 as u64
                                });
                                cells += 1;
                                if table.get(j, t1, k1, t2, k2, z) != expected {
                                    mismatches += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    verdict(
        mismatches == 0 && structure.is_empty(),
        format!("{instances} instances, {cells} cells, {mismatches} mismatches, {} layer errors", structure.len()),
    )
}

// 4 -------------------------------------------------------------------------

/// Vertices in the bags of the subtree rooted at `t`, sorted.
fn subtree_vertices(ntd: &NiceTreeDecomposition, t: usize) -> Vec<usize> {
    let mut set = BTreeSet::new();
    let mut stack = vec![t];
    while let Some(s) = stack.pop() {
        set.extend(ntd.bag(s).iter().copied());
        stack.extend_from_slice(ntd.children(s));
    }
    set.into_iter().collect()
}

fn brute_pc_table(inst: &Instance, ntd: &NiceTreeDecomposition, t: usize) -> PcTable {
    let vt = subtree_vertices(ntd, t);
    let mut table = PcTable::new();
    for col in proper_colorings(inst.graph(), &vt, inst.k()) {
        let mut val = vec![(0u64, 0u64); inst.k()];
        for (&v, &a) in vt.iter().zip(&col) {
            val[a].0 += inst.utility(a, v);
            val[a].1 += inst.cost(a, v);
        }
        let f: Vec<usize> = ntd.bag(t).iter().map(|v| col[vt.binary_search(v).unwrap()]).collect();
        table.entry(f).or_default().insert(val);
    }
    table
}

fn random_small(rng: &mut impl Rng, n: usize, k: usize, per_agent: bool) -> Instance {
    let g = gnp(n, rng.gen_range(0.0..0.6), rng);
    let rows = if per_agent { k } else { 1 };
    let mut draw = || (0..rows).map(|_| (0..n).map(|_| rng.gen_range(0..=6)).collect()).collect::<Vec<Vec<u64>>>();
    let (u, c) = (draw(), draw());
    let valuations = if per_agent {
        Valuations::PerAgent { utility: u, cost: c }
    } else {
        Valuations::Identical { utility: u[0].clone(), cost: c[0].clone() }
    };
    let share = 3 * n as u64 / k as u64;
    let (p, b) = (rng.gen_range(0..=share.max(1)), rng.gen_range(0..=share + 3));
    Instance::from_parts(k, g, valuations, p, b).unwrap()
}

fn pc_table_semantics() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut nodes, mut mismatches, mut decisions, mut disagreements) = (0, 0, 0, 0);
    for i in 0..120 {
        let n = rng.gen_range(1..=8);
        let k = rng.gen_range(2..=3);
        let inst = random_small(&mut rng, n, k, i % 3 == 0);
        let heuristic = if i % 2 == 0 { EliminationHeuristic::MinFill } else { EliminationHeuristic::MinDegree };
        let ntd = to_nice_decomposition(&heuristic_tree_decomposition(inst.graph(), heuristic)).unwrap();
        let tables = pc_dp_tables(&inst, &ntd).unwrap();
        for t in 0..ntd.num_nodes() {
            nodes += 1;
            if tables[t] != brute_pc_table(&inst, &ntd, t) {
                mismatches += 1;
            }
        }
        let pruned = solve_pc_dp_with(&inst, &ntd, &PcDpOptions { prune: true, budget: Budget::unlimited() }).unwrap();
        let full = solve_pc_dp_with(&inst, &ntd, &PcDpOptions { prune: false, budget: Budget::unlimited() }).unwrap();
        decisions += 1;
        if pruned.is_yes() != full.is_yes() || !pruned.is_consistent(&inst) || !full.is_consistent(&inst) {
            disagreements += 1;
        }
    }
    verdict(
        mismatches == 0 && disagreements == 0,
        format!("{nodes} nodes, {mismatches} table mismatches; {decisions} pruned/unpruned pairs, {disagreements} differ"),
    )
}

// 5 -------------------------------------------------------------------------

/// `n = 40`, `k = 3`, treewidth at most 2, values in `0..=5` so that
/// `alpha, gamma <= 200`. With `planted`, thresholds are read off a proper
/// 3-colouring so the answer is Yes.
fn desk_scale_instance(seed: u64, planted: bool, per_agent: bool) -> Instance {
    let (n, k) = (40, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_partial_ktree(n, 2, 0.8, &mut rng);
    let rows = if per_agent { k } else { 1 };
    let u: Vec<Vec<u64>> = (0..rows).map(|_| (0..n).map(|_| rng.gen_range(0..=5)).collect()).collect();
    let c: Vec<Vec<u64>> = (0..rows).map(|_| (0..n).map(|_| rng.gen_range(0..=5)).collect()).collect();
    let (p, b) = if planted {
        // Greedy in index order: each vertex has at most two earlier
        // neighbours, so three colours suffice.
        let mut colour = vec![0usize; n];
        for v in 0..n {
            let used: Vec<usize> = g.neighbors(v).iter().filter(|&&w| w < v).map(|&w| colour[w]).collect();
            let free: Vec<usize> = (0..k).filter(|a| !used.contains(a)).collect();
            colour[v] = free[rng.gen_range(0..free.len())];
        }
        let row = |a: usize| if per_agent { a } else { 0 };
        let profit = |a: usize| (0..n).filter(|&v| colour[v] == a).map(|v| u[row(a)][v]).sum::<u64>();
        let cost = |a: usize| (0..n).filter(|&v| colour[v] == a).map(|v| c[row(a)][v]).sum::<u64>();
        ((0..k).map(profit).min().unwrap(), (0..k).map(cost).max().unwrap())
    } else {
        let alpha: u64 = u[0].iter().sum();
        let gamma: u64 = c[0].iter().sum();
        (alpha / 4, gamma / 3 + 4)
    };
    let valuations = if per_agent {
        Valuations::PerAgent { utility: u, cost: c }
    } else {
        Valuations::Identical { utility: u[0].clone(), cost: c[0].clone() }
    };
    Instance::from_parts(k, g, valuations, p, b).unwrap()
}

fn pc_dp_desk_scale() -> Verdict {
    let limit = Duration::from_secs(300);
    let mut slowest = Duration::ZERO;
    let mut failures = Vec::new();
    let mut widths = BTreeSet::new();
    let cases = [(0, true, false), (1, true, true), (2, false, false), (3, false, true), (4, true, false)];
    for (seed, planted, per_agent) in cases {
        let inst = desk_scale_instance(seed, planted, per_agent);
        let ntd = heuristic_nice_decomposition(inst.graph());
        widths.insert(ntd.width());
        let start = Instant::now();
        let out = solve_pc_dp(&inst, &ntd, &Budget::unlimited().with_time_limit(limit));
        let took = start.elapsed();
        slowest = slowest.max(took);
        match out {
            Ok(out) if !out.is_consistent(&inst) => failures.push(format!("seed {seed}: unverified allocation")),
            Ok(out) if planted && !out.is_yes() => failures.push(format!("seed {seed}: planted instance answered No")),
            Ok(_) => {}
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    let pass = failures.is_empty() && slowest < limit && widths.iter().all(|&w| w <= 2);
    verdict(pass, format!("5 instances, widths {widths:?}, slowest {:.2}s; failures {failures:?}", slowest.as_secs_f64()))
}

// 6 -------------------------------------------------------------------------

/// `large <= (3/2)^(e/N) * small` up to floating-point slack.
fn within_factor(small: u64, large: u64, e: u32, n: u32) -> bool {
    if large == 0 {
        return true;
    }
    if small == 0 {
        return false;
    }
    let lhs = n as f64 * (large as f64).ln();
    let rhs = n as f64 * (small as f64).ln() + e as f64 * 1.5f64.ln();
    lhs <= rhs + 1e-9
}

fn fpt_as_guarantees() -> Verdict {
    let half = Ratio::new(1, 2);
    let mut corpus = random_corpus(500, 0);
    corpus.extend(generator_fixtures());
    let (mut completeness, mut bounds, mut steps_bad, mut steps, mut yes) = (0, 0, 0, 0, 0);
    for named in &corpus {
        let inst = &named.instance;
        let ntd = heuristic_nice_decomposition(inst.graph());
        let exact = solve_pc_dp(inst, &ntd, &Budget::unlimited()).unwrap();
        let approx = solve_fpt_as(inst, &ntd, half, half, &Budget::unlimited()).unwrap();
        if exact.is_yes() && !approx.is_yes() {
            completeness += 1;
        }
        if let Some(alloc) = approx.decision.allocation() {
            yes += 1;
            let report = verify_allocation(inst, alloc).unwrap();
            let ok = report.bundles.iter().all(|b| {
                b.independent && 3 * b.profit >= 2 * inst.profit_floor() && 2 * b.cost <= 3 * inst.budget()
            });
            if !ok {
                bounds += 1;
            }
        }
        for step in fpt_as_trajectory(inst, &ntd, half, half).unwrap() {
            steps += 1;
            let ok = step.relaxed.iter().zip(&step.exact).all(|(&(rp, rc), &(p, c))| {
                rp <= p
                    && c <= rc
                    && within_factor(rp, p, step.roundings, step.steps)
                    && within_factor(c, rc, step.roundings, step.steps)
            });
            if !ok {
                steps_bad += 1;
            }
        }
    }
    verdict(
        completeness + bounds + steps_bad == 0,
        format!(
            "{} instances ({yes} relaxed yes): {completeness} completeness, {bounds} bound, {steps_bad}/{steps} trajectory violations",
            corpus.len()
        ),
    )
}

// 7 -------------------------------------------------------------------------

/// Conflict graph whose complement is `h`.
fn complement(h: &Graph) -> Graph {
    let n = h.n();
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !h.has_edge(u, v)))
}

/// Compatibility graphs where augmenting paths run through odd cycles.
fn blossom_shapes() -> Vec<Graph> {
    vec![
        // Two triangles joined by one edge.
        Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]),
        // Five-cycle with a pendant vertex.
        Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)]),
        // Stem into a blossom into a second blossom.
        Graph::from_edges(
            10,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 2), (3, 5), (5, 6), (6, 7), (7, 8), (8, 6), (8, 9)],
        ),
        // Three triangles on a path; no perfect matching.
        Graph::from_edges(9, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (6, 7), (7, 8), (8, 6), (2, 3), (5, 6)]),
        // Petersen-like ring of pentagons, 12 vertices.
        Graph::from_edges(
            12,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 6), (6, 7), (7, 8), (8, 9), (9, 5), (4, 10), (10, 11), (11, 5)],
        ),
        // Nested odd cycles sharing a base.
        Graph::from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 5), (5, 6), (6, 2), (3, 7)]),
    ]
}

fn bundle_two_matching() -> Verdict {
    let mut cases: Vec<Instance> = Vec::new();
    for h in blossom_shapes() {
        let n = h.n();
        cases.push(ident(complement(&h), n / 2, vec![1; n], vec![1; n], 2, 2));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let k = rng.gen_range(1..=6);
        let n = 2 * k;
        let g = gnp(n, rng.gen_range(0.0..0.7), &mut rng);
        let u = (0..n).map(|_| rng.gen_range(0..=6)).collect();
        let c = (0..n).map(|_| rng.gen_range(0..=6)).collect();
        cases.push(ident(g, k, u, c, rng.gen_range(0..=8), rng.gen_range(2..=10)));
    }
    for _ in 0..100 {
        // Blossom shapes with random values.
        let shapes = blossom_shapes();
        let h = &shapes[rng.gen_range(0..shapes.len())];
        let n = h.n();
        let u = (0..n).map(|_| rng.gen_range(1..=4)).collect();
        let c = (0..n).map(|_| rng.gen_range(1..=4)).collect();
        if n.is_multiple_of(2) {
            cases.push(ident(complement(h), n / 2, u, c, rng.gen_range(2..=6), rng.gen_range(2..=6)));
        }
    }
    let opts = OracleOptions { exact_bundle_size: Some(2), ..Default::default() };
    let (mut disagreements, mut yes) = (0, 0);
    for inst in &cases {
        let fast = solve_bundle_size_two(inst).unwrap();
        let slow = solve_oracle_with(inst, &opts).unwrap();
        yes += fast.is_yes() as usize;
        let sized = fast.decision.allocation().is_none_or(|a| a.bundles().iter().all(|b| b.len() == 2));
        if fast.is_yes() != slow.is_yes() || !fast.is_consistent(inst) || !sized {
            disagreements += 1;
        }
    }
    verdict(disagreements == 0, format!("{} instances ({yes} yes), {disagreements} disagreements", cases.len()))
}

// 8 -------------------------------------------------------------------------

fn subset_sum(values: &[u64], target: u64) -> bool {
    (0..1usize << values.len())
        .any(|mask| values.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).sum::<u64>() == target)
}

fn multisets(len: usize, lo: u64, hi: u64, out: &mut Vec<Vec<u64>>, cur: &mut Vec<u64>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    let start = cur.last().copied().unwrap_or(lo);
    for v in start..=hi {
        cur.push(v);
        multisets(len, lo, hi, out, cur);
        cur.pop();
    }
}

fn chromatic_at_most(g: &Graph, k: usize) -> bool {
    let all: Vec<usize> = (0..g.n()).collect();
    !proper_colorings(g, &all, k).is_empty()
}

fn generator_faithfulness() -> Verdict {
    let mut sets = Vec::new();
    for len in 1..=6 {
        multisets(len, 1, 6, &mut sets, &mut Vec::new());
    }
    sets.retain(|s| s.iter().sum::<u64>() % 2 == 0);
    let (mut partition_bad, mut matched_bad) = (0, 0);
    for s in &sets {
        let expected = subset_sum(s, s.iter().sum::<u64>() / 2);
        if solve_oracle(&from_partition(s).unwrap()).unwrap().is_yes() != expected {
            partition_bad += 1;
        }
        if solve_oracle(&from_matched_partition(s).unwrap()).unwrap().is_yes() != expected {
            matched_bad += 1;
        }
    }
    let mut graphs = 0;
    let mut coloring_bad = 0;
    for n in 1..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0..1usize << pairs.len() {
            let g = Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e));
            graphs += 1;
            let ks: Vec<usize> = if n == 6 { vec![2, 3] } else { (1..=n).collect() };
            for k in ks {
                let decided = solve_oracle(&from_k_coloring(&g, k).unwrap()).unwrap().is_yes();
                if decided != chromatic_at_most(&g, k) {
                    coloring_bad += 1;
                }
            }
        }
    }
    verdict(
        partition_bad + matched_bad + coloring_bad == 0,
        format!(
            "{} multisets ({partition_bad} partition, {matched_bad} matched mismatches); {graphs} graphs, {coloring_bad} colouring mismatches",
            sets.len()
        ),
    )
}

// 9 -------------------------------------------------------------------------

fn decomposition_validity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failures = Vec::new();
    let mut max_width = 0;
    for i in 0..1000 {
        let n = rng.gen_range(0..=30);
        let g = if i % 3 == 0 {
            let w = rng.gen_range(1..=4);
            random_partial_ktree(n, w, rng.gen_range(0.5..=1.0), &mut rng)
        } else {
            gnp(n, rng.gen_range(0.0..0.5), &mut rng)
        };
        for heuristic in [EliminationHeuristic::MinFill, EliminationHeuristic::MinDegree] {
            let td = heuristic_tree_decomposition(&g, heuristic);
            if !validate_decomposition(&g, &td).is_valid() {
                failures.push(format!("graph {i}: {heuristic:?} decomposition invalid"));
                continue;
            }
            let nice = match to_nice_decomposition(&td) {
                Ok(nice) => nice,
                Err(e) => {
                    failures.push(format!("graph {i}: nice conversion failed: {e}"));
                    continue;
                }
            };
            max_width = max_width.max(td.width());
            let forgets: BTreeMap<usize, usize> = (0..nice.num_nodes())
                .filter_map(|t| match nice.kind(t) {
                    NiceKind::Forget(v) => Some(v),
                    _ => None,
                })
                .fold(BTreeMap::new(), |mut m, v| {
                    *m.entry(v).or_insert(0) += 1;
                    m
                });
            let each_once = n == 0 || (forgets.len() == n && forgets.values().all(|&c| c == 1));
            if nice.audit().is_err()
                || !validate_decomposition(&g, &nice.as_tree_decomposition()).is_valid()
                || nice.width() != td.width()
                || !each_once
            {
                failures.push(format!("graph {i}: {heuristic:?} nice form invalid or width changed"));
            }
        }
    }
    verdict(failures.is_empty(), format!("1000 graphs x 2 heuristics, max width {max_width}; failures {failures:?}"))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Verdict); 9] = [
        (1, "oracle agreement", oracle_agreement),
        (2, "subset convolution scale", subset_convolution_scale),
        (3, "layered DP cells", layered_semantics),
        (4, "PC table semantics", pc_table_semantics),
        (5, "PC-DP desk scale", pc_dp_desk_scale),
        (6, "FPT-AS guarantees", fpt_as_guarantees),
        (7, "bundle-size-two matching", bundle_two_matching),
        (8, "generator faithfulness", generator_faithfulness),
        (9, "decomposition validity", decomposition_validity),
    ];
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, name, run) in criteria {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let v = run();
        failed += !v.pass as usize;
        println!(
            "criterion {id} {name}: {} [{:.1}s] {}",
            if v.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            v.detail
        );
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
