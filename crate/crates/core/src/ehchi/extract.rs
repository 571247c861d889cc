//! Large cographs inside graphs of bounded rank-width.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::cotree::is_cograph;
use super::EhError;
use crate::bitset::BitSet;
use crate::graph::Graph;
use crate::width::{balanced_partition, RankDecomposition};

/// `1 / (log2 3 + p)`: a width-`p` graph on `n` vertices holds a cograph on
/// `n^kappa(p)` vertices.
pub fn kappa(p: usize) -> f64 {
    1.0 / (3f64.log2() + p as f64)
}

/// `size >= n^exponent`, compared on logarithms with a little slack.
pub(crate) fn meets_power(size: usize, n: usize, exponent: f64) -> bool {
    size as f64 > 0.0 && (size as f64).ln() >= exponent * (n as f64).ln() - 1e-9
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Complete,
    Anticomplete,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformBlocks {
    pub a: BitSet,
    pub b: BitSet,
    pub relation: Relation,
}

/// `A' ⊆ A` of vertices with the same neighbors in `B` (the largest such
/// class; at most `2^p` exist when the cut has rank `p`), and `B' ⊆ B` the
/// larger of their common neighbors and common non-neighbors.
pub fn uniform_blocks(g: &Graph, a: &BitSet, b: &BitSet, p: usize) -> Result<UniformBlocks, EhError> {
    let mut classes: HashMap<BitSet, Vec<usize>> = HashMap::new();
    let mut first_seen = Vec::new();
    for v in a.iter() {
        let pattern = g.neighbors(v).intersection(b);
        let entry = classes.entry(pattern.clone()).or_default();
        if entry.is_empty() {
            first_seen.push(pattern);
        }
        entry.push(v);
    }
    if p < usize::BITS as usize && classes.len() > 1usize << p {
        let rank = crate::gf2::Gf2Matrix::from_bitsets(b.len(), first_seen.clone())?.rank();
        return Err(EhError::RankPrecondition {
            patterns: classes.len(),
            rank,
            p,
        });
    }
    let pattern = first_seen
        .iter()
        .rev()
        .max_by_key(|pat| classes[*pat].len())
        .ok_or(EhError::EmptySide)?;
    let a_block = BitSet::from_indices(a.len(), classes[pattern].iter().copied());
    let non = b.difference(pattern);
    let (b_block, relation) = if pattern.count() >= non.count() {
        (pattern.clone(), Relation::Complete)
    } else {
        (non, Relation::Anticomplete)
    };
    Ok(UniformBlocks {
        a: a_block,
        b: b_block,
        relation,
    })
}

/// A vertex set inducing a cograph with at least `n^kappa(p)` vertices.
/// Splits along a balanced edge of `d`, keeps uniform blocks on both sides,
/// and recurses into each with the restricted decomposition; graphs on at
/// most two vertices are kept whole.
pub fn cograph_extract(g: &Graph, d: Option<&RankDecomposition>, p: usize) -> Result<BitSet, EhError> {
    let n = g.n();
    if let Some(d) = d {
        let w = d.width(g)?;
        if w > p {
            return Err(EhError::WidthExceeded { width: w, p });
        }
    } else if n > 1 {
        return Err(EhError::MissingDecomposition);
    }
    let set = extract_rec(g, d, p)?;
    let (sub, _) = g.induced_subgraph(&set)?;
    if is_cograph(&sub).is_none() {
        return Err(EhError::BoundViolated("extracted set does not induce a cograph".into()));
    }
    if !meets_power(set.count(), n, kappa(p)) {
        return Err(EhError::BoundViolated(format!(
            "extracted {} vertices, below {n}^{:.4}",
            set.count(),
            kappa(p)
        )));
    }
    Ok(set)
}

fn extract_rec(g: &Graph, d: Option<&RankDecomposition>, p: usize) -> Result<BitSet, EhError> {
    let n = g.n();
    if n <= 2 {
        return Ok(g.vertex_set());
    }
    let d = d.ok_or(EhError::MissingDecomposition)?;
    let (x, y) = balanced_partition(g, &g.vertex_set(), d)?;
    let blocks = uniform_blocks(g, &x, &y, p)?;
    let mut out = BitSet::new(n);
    for side in [&blocks.a, &blocks.b] {
        let (sub, map) = g.induced_subgraph(side)?;
        let sub_d = d.restrict(n, side)?;
        for v in extract_rec(&sub, sub_d.as_ref(), p)?.iter() {
            out.insert(map[v]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::path;
    use crate::width::rank_width_exact;

    #[test]
    fn kappa_one() {
        assert!((kappa(1) - 0.386_852_807).abs() < 1e-6);
        assert!(meets_power(3, 8, kappa(1)));
        assert!(!meets_power(2, 8, kappa(1)));
    }

    #[test]
    fn complete_cut() {
        let g = Graph::complete(4).unwrap();
        let a = BitSet::from_indices(4, [0, 1]);
        let b = BitSet::from_indices(4, [2, 3]);
        let blocks = uniform_blocks(&g, &a, &b, 1).unwrap();
        assert_eq!(blocks.relation, Relation::Complete);
        assert_eq!((blocks.a, blocks.b), (a, b));
    }

    #[test]
    fn too_many_patterns() {
        // Matching cut of rank 3.
        let g = Graph::new(6, &[(0, 3), (1, 4), (2, 5)]).unwrap();
        let a = BitSet::from_indices(6, [0, 1, 2]);
        let err = uniform_blocks(&g, &a, &a.complement(), 1).unwrap_err();
        assert!(matches!(err, EhError::RankPrecondition { rank: 3, .. }));
    }

    #[test]
    fn paths() {
        for n in [8, 16] {
            let g = path(n);
            let d = crate::width::rank_width_upper(&g, crate::width::OrderStrategy::Identity);
            assert_eq!(d.value, 1);
            let set = cograph_extract(&g, d.decomposition.as_ref(), 1).unwrap();
            assert!(meets_power(set.count(), n, kappa(1)));
        }
        let g = Graph::complete(8).unwrap();
        let d = rank_width_exact(&g).unwrap();
        assert!(cograph_extract(&g, d.decomposition.as_ref(), 1).unwrap().count() >= 3);
        assert!(matches!(
            cograph_extract(&crate::generators::cycle(5), rank_width_exact(&crate::generators::cycle(5)).unwrap().decomposition.as_ref(), 1),
            Err(EhError::WidthExceeded { width: 2, p: 1 })
        ));
    }
}
