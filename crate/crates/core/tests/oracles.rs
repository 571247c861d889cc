//! Width measures, reachability and powers against naive reimplementations.

use itertools::Itertools;
use lowrw::generators::{cycle, gnp, grid, path, random_degenerate};
use lowrw::orderings::{wcol_exact, wcol_of_order, wreach, wreach_all, LinearOrder};
use lowrw::width::{rank_width_exact, tree_depth_exact};
use lowrw::{BitSet, Graph};

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        Graph::new(n, &edges).unwrap()
    })
}

/// GF(2) rank as log2 of the number of distinct XOR combinations of rows.
fn span_rank(rows: &[u64]) -> usize {
    let mut span = std::collections::HashSet::new();
    for pick in 0u64..1 << rows.len() {
        let v = rows.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).fold(0, |a, (_, &r)| a ^ r);
        span.insert(v);
    }
    span.len().trailing_zeros() as usize
}

fn cutrank_oracle(g: &Graph, x: u64) -> usize {
    let n = g.n();
    let rows: Vec<u64> = (0..n)
        .filter(|&v| x >> v & 1 == 1)
        .map(|v| (0..n).filter(|&u| x >> u & 1 == 0 && g.has_edge(u, v)).fold(0, |a, u| a | 1 << u))
        .collect();
    span_rank(&rows)
}

#[test]
fn cutrank_against_span_enumeration() {
    for n in 1..=5 {
        for g in all_graphs(n) {
            for x in 0u64..1 << n {
                assert_eq!(g.cutrank(&BitSet::from_mask(n, x)), cutrank_oracle(&g, x));
            }
        }
    }
    for seed in 0..50 {
        let g = gnp(8, 0.5, seed);
        for x in 0u64..256 {
            assert_eq!(g.cutrank(&BitSet::from_mask(8, x)), cutrank_oracle(&g, x));
        }
    }
}

/// All unrooted binary trees with leaves `0..n`, built by inserting each new
/// leaf into every edge of every smaller tree. Yields edge lists over nodes
/// where node `i < n` is leaf `i`.
fn binary_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    assert!(n >= 2);
    let mut trees = vec![vec![(0, 1)]];
    let mut next_internal = vec![n];
    for leaf in 2..n {
        let mut grown = Vec::new();
        let mut grown_next = Vec::new();
        for (t, &fresh) in trees.iter().zip(&next_internal) {
            for i in 0..t.len() {
                let (a, b) = t[i];
                let mut e = t.clone();
                e.swap_remove(i);
                e.extend([(a, fresh), (fresh, b), (fresh, leaf)]);
                grown.push(e);
                grown_next.push(fresh + 1);
            }
        }
        trees = grown;
        next_internal = grown_next;
    }
    trees
}

fn tree_width(g: &Graph, edges: &[(usize, usize)]) -> usize {
    let n = g.n();
    let nodes = edges.iter().map(|&(a, b)| a.max(b)).max().unwrap() + 1;
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    edges
        .iter()
        .map(|&(a, b)| {
            // Leaves on a's side once the edge is cut.
            let mut side = 0u64;
            let mut stack = vec![a];
            let mut seen = vec![false; nodes];
            seen[a] = true;
            seen[b] = true;
            while let Some(t) = stack.pop() {
                if t < n {
                    side |= 1 << t;
                }
                for &u in &adj[t] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            cutrank_oracle(g, side)
        })
        .max()
        .unwrap()
}

fn rank_width_oracle(g: &Graph) -> usize {
    if g.n() < 2 {
        return 0;
    }
    binary_trees(g.n()).iter().map(|t| tree_width(g, t)).min().unwrap()
}

#[test]
fn tree_enumeration_counts() {
    // (2n - 5)!! unrooted binary trees.
    assert_eq!(binary_trees(4).len(), 3);
    assert_eq!(binary_trees(6).len(), 105);
}

#[test]
fn exact_rank_width_against_tree_enumeration() {
    for n in 2..=5 {
        for g in all_graphs(n).step_by(if n == 5 { 7 } else { 1 }) {
            let report = rank_width_exact(&g).unwrap();
            assert_eq!(report.value, rank_width_oracle(&g), "{g:?}");
            assert_eq!(report.decomposition.unwrap().width(&g).unwrap(), report.value);
        }
    }
    for seed in 0..40 {
        let n = 6 + (seed as usize % 2);
        let g = gnp(n, 0.3 + 0.1 * (seed % 4) as f64, seed);
        assert_eq!(rank_width_exact(&g).unwrap().value, rank_width_oracle(&g), "seed {seed}");
    }
}

fn td_naive(g: &Graph, s: &BitSet) -> usize {
    let comps = g.components_within(s);
    if comps.len() > 1 {
        return comps.iter().map(|c| td_naive(g, c)).max().unwrap();
    }
    if s.count() <= 1 {
        return s.count();
    }
    1 + s
        .iter()
        .map(|v| {
            let mut rest = s.clone();
            rest.remove(v);
            td_naive(g, &rest)
        })
        .min()
        .unwrap()
}

#[test]
fn tree_depth_against_naive_recursion() {
    assert_eq!(tree_depth_exact(&path(7)).unwrap(), 3);
    assert_eq!(tree_depth_exact(&path(8)).unwrap(), 4);
    assert_eq!(tree_depth_exact(&Graph::complete(5).unwrap()).unwrap(), 5);
    for seed in 0..30 {
        let g = gnp(7, 0.35, seed);
        assert_eq!(tree_depth_exact(&g).unwrap(), td_naive(&g, &g.vertex_set()), "seed {seed}");
    }
    let g = grid(2, 4);
    assert_eq!(tree_depth_exact(&g).unwrap(), td_naive(&g, &g.vertex_set()));
}

/// `u` is weakly `r`-reachable from `v` iff some simple `v`-`u` path of
/// length at most `r` has `u` as its order-minimum; found by enumerating
/// simple paths.
fn wreach_oracle(g: &Graph, order: &LinearOrder, r: usize, v: usize) -> BitSet {
    fn walk(g: &Graph, order: &LinearOrder, r: usize, path: &mut Vec<usize>, out: &mut BitSet) {
        let last = *path.last().unwrap();
        let min = *path.iter().min_by_key(|&&x| order.position(x)).unwrap();
        if min == last {
            out.insert(last);
        }
        if path.len() > r {
            return;
        }
        for u in g.neighbors(last).iter() {
            if !path.contains(&u) {
                path.push(u);
                walk(g, order, r, path, out);
                path.pop();
            }
        }
    }
    let mut out = BitSet::new(g.n());
    walk(g, order, r, &mut vec![v], &mut out);
    out
}

#[test]
fn wreach_against_path_enumeration() {
    for seed in 0..20 {
        let g = random_degenerate(12, 2, seed);
        let mut ids: Vec<usize> = (0..12).collect();
        ids.rotate_left(seed as usize % 12);
        ids.swap(0, (seed as usize * 5) % 12);
        let order = LinearOrder::new(ids).unwrap();
        for r in 1..=3 {
            let all = wreach_all(&g, &order, r);
            for v in 0..12 {
                let want = wreach_oracle(&g, &order, r, v);
                assert_eq!(wreach(&g, &order, r, v), want);
                assert_eq!(all[v], want);
            }
        }
    }
}

#[test]
fn wcol_exact_against_all_orders() {
    for (g, r) in [(cycle(6), 2), (path(6), 3), (grid(2, 3), 2), (random_degenerate(7, 2, 3), 2)] {
        let best = (0..g.n())
            .permutations(g.n())
            .map(|p| wcol_of_order(&g, &LinearOrder::new(p).unwrap(), r))
            .min()
            .unwrap();
        let (value, order) = wcol_exact(&g, r).unwrap();
        assert_eq!(value, best);
        assert_eq!(wcol_of_order(&g, &order, r), value);
    }
}

#[test]
fn power_against_floyd_warshall() {
    for seed in 0..10 {
        let g = gnp(15, 0.15, seed);
        let n = g.n();
        let inf = usize::MAX / 2;
        let mut d = vec![vec![inf; n]; n];
        for v in 0..n {
            d[v][v] = 0;
        }
        for (u, v) in g.edges() {
            d[u][v] = 1;
            d[v][u] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
                }
            }
        }
        for r in 1..=3 {
            let p = g.power(r).unwrap();
            for (i, j) in (0..n).tuple_combinations() {
                assert_eq!(p.has_edge(i, j), d[i][j] <= r);
            }
        }
    }
}

#[test]
fn gf2_rank_against_span_enumeration() {
    use lowrw::gf2::Gf2Matrix;
    use rand::{Rng, SeedableRng};
    let build = |rows: usize, cols: usize, bits: u64| {
        let mut m = Gf2Matrix::zeros(rows, cols);
        let masks: Vec<u64> = (0..rows).map(|i| bits >> (i * cols) & ((1 << cols) - 1)).collect();
        for (i, &row) in masks.iter().enumerate() {
            for j in 0..cols {
                m.set(i, j, row >> j & 1 == 1);
            }
        }
        (m, masks)
    };
    for rows in 1..=4 {
        for cols in 1..=4 {
            for bits in 0u64..1 << (rows * cols) {
                let (m, masks) = build(rows, cols, bits);
                assert_eq!(m.rank(), span_rank(&masks));
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    for _ in 0..500 {
        let (m, masks) = build(8, 8, rng.gen());
        assert_eq!(m.rank(), span_rank(&masks));
    }
}
