use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Coloring, ColoringError};
use crate::bitset::BitSet;
use crate::graph::Graph;
use crate::orderings::{wreach_all, wcol_of_order, LinearOrder};

/// One refinement step at a fixed radius: a coloring whose colors stand for
/// sets of colors of the previous level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementLevel {
    pub radius: usize,
    pub order: LinearOrder,
    /// `wcol_of_order(G, order, radius)`; each decode set has at most twice
    /// this many entries.
    pub wcol: usize,
    pub coloring: Coloring,
    /// `decode[q - 1]`: the sorted previous-level colors that color `q` stands for.
    pub decode: Vec<Vec<usize>>,
}

impl RefinementLevel {
    pub fn budget(&self) -> usize {
        2 * self.wcol
    }

    pub fn decode(&self, q: usize) -> &[usize] {
        &self.decode[q - 1]
    }
}

/// A base coloring and a chain of refinements at radii `2, 3, ..., r`.
/// With a single level this is a good refinement; with several, each level
/// refines the one before and the chain is an excellent refinement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementColoring {
    pub base: Coloring,
    pub levels: Vec<RefinementLevel>,
}

impl RefinementColoring {
    pub fn radius(&self) -> usize {
        self.levels.last().map_or(0, |l| l.radius)
    }

    pub fn refined(&self) -> &Coloring {
        &self.levels.last().expect("at least one level").coloring
    }

    pub fn orders(&self) -> Vec<&LinearOrder> {
        self.levels.iter().map(|l| &l.order).collect()
    }

    /// `prod 2 wcol` over the levels, saturating.
    pub fn d_product(&self) -> u64 {
        self.levels
            .iter()
            .fold(1u64, |acc, l| acc.saturating_mul(l.budget() as u64))
    }

    fn coloring_below(&self, level: usize) -> &Coloring {
        if level == 0 {
            &self.base
        } else {
            &self.levels[level - 1].coloring
        }
    }

    /// One expansion step at `level`: all vertices whose previous-level color
    /// is decoded from some level color present on `x`.
    pub fn expand_level(&self, level: usize, x: &BitSet) -> BitSet {
        let lvl = &self.levels[level];
        let below = self.coloring_below(level);
        let mut wanted = vec![false; below.palette_size() + 1];
        for q in lvl.coloring.colors_on(x) {
            for &b in lvl.decode(q) {
                wanted[b] = true;
            }
        }
        BitSet::from_indices(x.len(), (0..x.len()).filter(|&v| wanted[below.color(v)]))
    }

    /// The hitter `X'` for the top level, in terms of the previous level.
    pub fn expand_good(&self, x: &BitSet) -> BitSet {
        self.expand_level(self.levels.len() - 1, x)
    }

    /// The closure `X''` obtained by expanding level by level down to the base.
    pub fn expand_excellent(&self, x: &BitSet) -> BitSet {
        self.expansion_chain(x).pop().unwrap()
    }

    /// `[X, X', X'', ...]`: the set after each expansion, top level first.
    pub fn expansion_chain(&self, x: &BitSet) -> Vec<BitSet> {
        let mut chain = vec![x.clone()];
        for level in (0..self.levels.len()).rev() {
            let next = self.expand_level(level, chain.last().unwrap());
            chain.push(next);
        }
        chain
    }
}

/// Refines `c` at radius `r` along `order`.
///
/// Every vertex `v` collects the colors `c(u)` of `u` in `WReach_r[v]`, and,
/// for every such `u` not adjacent to `v`, the color of the L-largest vertex
/// on a shortest `u`-`v` path of length at most `r` whose internal vertices
/// all come after `v` (when one exists). Those color sets are interned in
/// order of first appearance by vertex id.
pub fn good_refinement(g: &Graph, c: &Coloring, r: usize, order: &LinearOrder) -> Result<RefinementColoring, ColoringError> {
    let level = refine_level(g, c, r, order)?;
    Ok(RefinementColoring {
        base: c.clone(),
        levels: vec![level],
    })
}

/// Refinements at radii `2..=r`, each applied to the previous one;
/// `orders[i]` is used at radius `i + 2`.
pub fn excellent_refinement(
    g: &Graph,
    c: &Coloring,
    r: usize,
    orders: &[LinearOrder],
) -> Result<RefinementColoring, ColoringError> {
    if r < 2 {
        return Err(ColoringError::RadiusTooSmall(r));
    }
    let mut levels: Vec<RefinementLevel> = Vec::with_capacity(r - 1);
    for radius in 2..=r {
        let order = orders.get(radius - 2).ok_or(ColoringError::MissingOrder(radius))?;
        let below = levels.last().map_or(c, |l| &l.coloring);
        let level = refine_level(g, below, radius, order)?;
        levels.push(level);
    }
    Ok(RefinementColoring {
        base: c.clone(),
        levels,
    })
}

fn refine_level(g: &Graph, c: &Coloring, r: usize, order: &LinearOrder) -> Result<RefinementLevel, ColoringError> {
    if r < 2 {
        return Err(ColoringError::RadiusTooSmall(r));
    }
    c.check_graph(g)?;
    if order.len() != g.n() {
        return Err(crate::orderings::OrderError::Length {
            expected: g.n(),
            found: order.len(),
        }
        .into());
    }
    let n = g.n();
    let wreach = wreach_all(g, order, r);
    let wcol = wreach.iter().map(BitSet::count).max().unwrap_or(0);
    debug_assert_eq!(wcol, wcol_of_order(g, order, r));

    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut decode = Vec::new();
    let mut colors = Vec::with_capacity(n);
    for v in 0..n {
        let mut set: Vec<usize> = wreach[v].iter().map(|u| c.color(u)).collect();
        let after_v = order.strictly_after(v);
        for u in wreach[v].iter() {
            if u == v || g.has_edge(u, v) {
                continue;
            }
            if let Some(z) = largest_on_late_path(g, order, &after_v, u, v, r) {
                set.push(c.color(z));
            }
        }
        set.sort_unstable();
        set.dedup();
        let next = ids.len() + 1;
        let id = *ids.entry(set.clone()).or_insert_with(|| {
            decode.push(set);
            next
        });
        colors.push(id);
    }
    let palette = decode.len();
    Ok(RefinementLevel {
        radius: r,
        order: order.clone(),
        wcol,
        coloring: Coloring::with_palette(colors, palette)?,
        decode,
    })
}

/// A shortest `u`-`v` path of length at most `r` with internal vertices in
/// `late`, found by BFS from `u`; each vertex steps back to its smallest-id
/// neighbor one layer closer to `u`. Returns the L-largest vertex on it.
fn largest_on_late_path(g: &Graph, order: &LinearOrder, late: &BitSet, u: usize, v: usize, r: usize) -> Option<usize> {
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    dist[u] = 0;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        if dist[x] >= r {
            continue;
        }
        for y in g.neighbors(x).iter() {
            if dist[y] != usize::MAX {
                continue;
            }
            if y == v {
                dist[y] = dist[x] + 1;
                queue.clear();
                break;
            }
            if late.contains(y) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    if dist[v] == usize::MAX {
        return None;
    }
    let mut best = v;
    let mut x = v;
    while x != u {
        let d = dist[x];
        x = g
            .neighbors(x)
            .iter()
            .find(|&y| dist[y] == d - 1 && (y == u || late.contains(y)))
            .expect("BFS parent exists");
        if order.less(best, x) {
            best = x;
        }
    }
    Some(best)
}

fn check_subset(x: &BitSet, x2: &BitSet) -> Result<(), ColoringError> {
    if x.len() != x2.len() || !x.is_subset(x2) {
        return Err(ColoringError::NotSubset);
    }
    Ok(())
}

/// Whether `x2` holds an internal vertex of some shortest path for every
/// pair of `x` at distance `2..=r`.
pub fn is_hitter(g: &Graph, x: &BitSet, x2: &BitSet, r: usize) -> Result<bool, ColoringError> {
    check_subset(x, x2)?;
    let members = x.to_vec();
    let dist: HashMap<usize, Vec<Option<usize>>> = members.iter().map(|&u| (u, g.bfs_distances(u))).collect();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            let Some(d) = dist[&u][v] else { continue };
            if d <= 1 || d > r {
                continue;
            }
            let hit = x2
                .iter()
                .filter(|&z| z != u && z != v)
                .any(|z| matches!((dist[&u][z], dist[&v][z]), (Some(a), Some(b)) if a + b == d));
            if !hit {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `G[x2]` preserves every distance `<= r` between vertices of `x`.
pub fn is_closure(g: &Graph, x: &BitSet, x2: &BitSet, r: usize) -> Result<bool, ColoringError> {
    check_subset(x, x2)?;
    let members = x.to_vec();
    for (i, &u) in members.iter().enumerate() {
        let outer = g.bfs_distances(u);
        let inner = g.bfs_distances_within(u, x2);
        for &v in &members[i + 1..] {
            if let Some(d) = outer[v] {
                if d <= r && inner[v] != Some(d) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Serialize, Deserialize)]
struct LevelJson {
    radius: usize,
    wcol: usize,
    order: LinearOrder,
    palette_size: usize,
    colors: Vec<usize>,
    decode: BTreeMap<usize, Vec<usize>>,
}

/// JSON form: the refined coloring's `palette_size`/`colors` at top level
/// (so it reads as a plain coloring), the top-level `decode`, one order per
/// radius, the base coloring and every level.
#[derive(Serialize, Deserialize)]
struct RefinementJson {
    palette_size: usize,
    colors: Vec<usize>,
    radius: usize,
    decode: BTreeMap<usize, Vec<usize>>,
    orders: Vec<LinearOrder>,
    base: Coloring,
    levels: Vec<LevelJson>,
}

fn decode_map(decode: &[Vec<usize>]) -> BTreeMap<usize, Vec<usize>> {
    decode.iter().enumerate().map(|(i, s)| (i + 1, s.clone())).collect()
}

impl Serialize for RefinementColoring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let top = self.refined();
        RefinementJson {
            palette_size: top.palette_size(),
            colors: top.colors().to_vec(),
            radius: self.radius(),
            decode: decode_map(&self.levels.last().unwrap().decode),
            orders: self.levels.iter().map(|l| l.order.clone()).collect(),
            base: self.base.clone(),
            levels: self
                .levels
                .iter()
                .map(|l| LevelJson {
                    radius: l.radius,
                    wcol: l.wcol,
                    order: l.order.clone(),
                    palette_size: l.coloring.palette_size(),
                    colors: l.coloring.colors().to_vec(),
                    decode: decode_map(&l.decode),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RefinementColoring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = RefinementJson::deserialize(d)?;
        let mut levels = Vec::new();
        for l in raw.levels {
            let palette = l.palette_size;
            let decode: Vec<Vec<usize>> = (1..=palette)
                .map(|q| l.decode.get(&q).cloned().ok_or_else(|| D::Error::custom(format!("no decode entry for {q}"))))
                .collect::<Result<_, _>>()?;
            levels.push(RefinementLevel {
                radius: l.radius,
                order: l.order,
                wcol: l.wcol,
                coloring: Coloring::with_palette(l.colors, palette).map_err(D::Error::custom)?,
                decode,
            });
        }
        if levels.is_empty() {
            return Err(D::Error::custom("refinement has no levels"));
        }
        Ok(RefinementColoring { base: raw.base, levels })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
    }

    fn set(n: usize, xs: &[usize]) -> BitSet {
        BitSet::from_indices(n, xs.iter().copied())
    }

    #[test]
    fn edgeless_refines_to_singletons() {
        let g = Graph::empty(4).unwrap();
        let c = Coloring::new(vec![1, 2, 1, 3]).unwrap();
        let r = good_refinement(&g, &c, 2, &LinearOrder::identity(4)).unwrap();
        let top = &r.levels[0];
        assert_eq!(top.coloring.palette_size(), 3);
        for v in 0..4 {
            assert_eq!(top.decode(top.coloring.color(v)), &[c.color(v)]);
        }
    }

    #[test]
    fn p3_step_three() {
        let g = path(3);
        let order = LinearOrder::new(vec![1, 0, 2]).unwrap();
        let c = Coloring::new(vec![1, 2, 3]).unwrap();
        let r = good_refinement(&g, &c, 2, &order).unwrap();
        let lvl = &r.levels[0];
        // 2 reaches 1 only; 0 reaches 1; no late path exists for (1, v).
        assert_eq!(lvl.decode(lvl.coloring.color(2)), &[2, 3]);
        assert_eq!(lvl.decode(lvl.coloring.color(0)), &[1, 2]);
        let x = set(3, &[0, 2]);
        let x2 = r.expand_good(&x);
        assert!(x2.contains(1));
        assert!(is_hitter(&g, &x, &x2, 2).unwrap());
    }

    #[test]
    fn late_path_adds_middle_color() {
        // 0 - 2 - 1 with order 0 < 1 < 2: the path through 2 is late.
        let g = Graph::new(3, &[(0, 2), (1, 2)]).unwrap();
        let c = Coloring::new(vec![1, 2, 3]).unwrap();
        let r = good_refinement(&g, &c, 2, &LinearOrder::identity(3)).unwrap();
        let lvl = &r.levels[0];
        assert_eq!(lvl.decode(lvl.coloring.color(1)), &[1, 2, 3]);
    }

    #[test]
    fn hitter_examples() {
        let g = path(3);
        assert!(!is_hitter(&g, &set(3, &[0, 2]), &set(3, &[0, 2]), 2).unwrap());
        assert!(is_hitter(&g, &set(3, &[0, 2]), &set(3, &[0, 1, 2]), 2).unwrap());
        let c6 = Graph::new(6, &(0..6).map(|i| (i, (i + 1) % 6)).collect::<Vec<_>>()).unwrap();
        let x = set(6, &[0, 3]);
        assert!(is_hitter(&c6, &x, &set(6, &[0, 1, 3]), 3).unwrap());
        assert!(is_hitter(&c6, &x, &set(6, &[0, 2, 3]), 3).unwrap());
        assert!(!is_hitter(&c6, &x, &x, 3).unwrap());
        assert_eq!(is_hitter(&g, &set(3, &[0, 2]), &set(3, &[0]), 2), Err(ColoringError::NotSubset));
    }

    #[test]
    fn closure_examples() {
        let g = path(3);
        assert!(!is_closure(&g, &set(3, &[0, 2]), &set(3, &[0, 2]), 2).unwrap());
        assert!(is_closure(&g, &set(3, &[0, 2]), &g.vertex_set(), 5).unwrap());
    }

    #[test]
    fn excellent_r2_matches_good() {
        let g = path(5);
        let c = Coloring::constant(5);
        let l = LinearOrder::new(vec![2, 0, 4, 1, 3]).unwrap();
        let good = good_refinement(&g, &c, 2, &l).unwrap();
        let exc = excellent_refinement(&g, &c, 2, &[l]).unwrap();
        assert_eq!(good, exc);
        assert_eq!(excellent_refinement(&g, &c, 3, &[]).unwrap_err(), ColoringError::MissingOrder(2));
    }

    #[test]
    fn json_round_trip() {
        let g = path(6);
        let c = Coloring::new(vec![1, 2, 1, 2, 1, 2]).unwrap();
        let orders = vec![LinearOrder::identity(6), LinearOrder::new(vec![5, 4, 3, 2, 1, 0]).unwrap()];
        let r = excellent_refinement(&g, &c, 3, &orders).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: RefinementColoring = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        let plain: Coloring = serde_json::from_str(&text).unwrap();
        assert_eq!(&plain, r.refined());
    }
}
