//! Colorings, refinements, tree-depth colorings and the low rank-width
//! coloring pipeline for graph powers.

mod pipeline;
mod provider;
mod refinement;
mod verify;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::graph::{Graph, GraphError};
use crate::orderings::OrderError;
use crate::width::WidthError;

pub use pipeline::{low_rankwidth_coloring_of_power, PipelineOptions, PipelineReport};
pub use provider::{treedepth_coloring, treedepth_coloring_with, TdStrategy, TdColoringOptions};
pub use refinement::{
    excellent_refinement, good_refinement, is_closure, is_hitter, RefinementColoring, RefinementLevel,
};
pub use verify::{
    power_equality_holds, verify_low_rw_coloring, verify_low_rw_coloring_with, verify_td_coloring,
    verify_td_coloring_capped, Budget, ColoringProfile, TdReport, VerifyOptions,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring has {found} entries, graph has {expected} vertices")]
    Length { expected: usize, found: usize },
    #[error("vertex {vertex} has color {color}, outside 1..={palette}")]
    OutOfRange { vertex: usize, color: usize, palette: usize },
    #[error("radius {0} is below 2; refinements need r >= 2")]
    RadiusTooSmall(usize),
    #[error("no order supplied for radius {0}")]
    MissingOrder(usize),
    #[error("X is not a subset of X'")]
    NotSubset,
    #[error("p must be at least 1")]
    ZeroClasses,
    #[error("union of colors {colors:?} has a component of {size} vertices, over the tree-depth cap {cap}")]
    TdInfeasible { colors: Vec<usize>, size: usize, cap: usize },
    #[error("at least {count} class unions to check, over the limit of {limit}; use fewer classes or a smaller graph")]
    TooManySubsets { count: u128, limit: usize },
    #[error("{0}")]
    Provider(String),
    #[error(transparent)]
    Width(#[from] WidthError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// A vertex coloring with colors `1..=palette_size`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawColoring")]
pub struct Coloring {
    palette_size: usize,
    colors: Vec<usize>,
}

#[derive(Deserialize)]
struct RawColoring {
    palette_size: usize,
    colors: Vec<usize>,
}

impl TryFrom<RawColoring> for Coloring {
    type Error = ColoringError;
    fn try_from(raw: RawColoring) -> Result<Self, Self::Error> {
        Coloring::with_palette(raw.colors, raw.palette_size)
    }
}

impl Coloring {
    /// Palette is the largest color used.
    pub fn new(colors: Vec<usize>) -> Result<Self, ColoringError> {
        let palette = colors.iter().copied().max().unwrap_or(1).max(1);
        Self::with_palette(colors, palette)
    }

    pub fn with_palette(colors: Vec<usize>, palette_size: usize) -> Result<Self, ColoringError> {
        for (vertex, &color) in colors.iter().enumerate() {
            if color == 0 || color > palette_size {
                return Err(ColoringError::OutOfRange {
                    vertex,
                    color,
                    palette: palette_size,
                });
            }
        }
        Ok(Coloring {
            palette_size: palette_size.max(1),
            colors,
        })
    }

    /// Every vertex gets its own color.
    pub fn identity(n: usize) -> Self {
        Coloring {
            palette_size: n.max(1),
            colors: (1..=n).collect(),
        }
    }

    pub fn constant(n: usize) -> Self {
        Coloring {
            palette_size: 1,
            colors: vec![1; n],
        }
    }

    pub fn check_graph(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.colors.len() != g.n() {
            return Err(ColoringError::Length {
                expected: g.n(),
                found: self.colors.len(),
            });
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Colors that occur, ascending.
    pub fn used_colors(&self) -> Vec<usize> {
        let mut seen = vec![false; self.palette_size + 1];
        for &c in &self.colors {
            seen[c] = true;
        }
        (1..=self.palette_size).filter(|&c| seen[c]).collect()
    }

    pub fn class(&self, color: usize) -> BitSet {
        self.union_of(&[color])
    }

    pub fn union_of(&self, colors: &[usize]) -> BitSet {
        let mut wanted = vec![false; self.palette_size + 1];
        for &c in colors {
            if c <= self.palette_size {
                wanted[c] = true;
            }
        }
        BitSet::from_indices(self.len(), (0..self.len()).filter(|&v| wanted[self.colors[v]]))
    }

    /// Distinct colors on `x`, ascending.
    pub fn colors_on(&self, x: &BitSet) -> Vec<usize> {
        let mut out: Vec<usize> = x.iter().map(|v| self.colors[v]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// No edge of `g` joins two vertices of the same color.
    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }
}

/// Most class unions a verifier will enumerate.
pub const SUBSET_LIMIT: usize = 1 << 20;

/// Number of subsets of size `1..=max` of a `k`-set, saturating.
pub fn subset_count(k: usize, max: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for i in 1..=max.min(k) {
        binom = binom.saturating_mul((k + 1 - i) as u128) / i as u128;
        total = total.saturating_add(binom);
    }
    total
}

/// [`subsets_up_to`], refusing when there are more than [`SUBSET_LIMIT`].
pub(crate) fn bounded_subsets(items: &[usize], max: usize) -> Result<Vec<Vec<usize>>, ColoringError> {
    let count = subset_count(items.len(), max);
    if count > SUBSET_LIMIT as u128 {
        return Err(ColoringError::TooManySubsets {
            count,
            limit: SUBSET_LIMIT,
        });
    }
    Ok(subsets_up_to(items, max))
}

/// All subsets of `items` of size `1..=max`, in lexicographic order of
/// positions.
pub fn subsets_up_to(items: &[usize], max: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], start: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in start..items.len() {
            cur.push(items[i]);
            out.push(cur.clone());
            if cur.len() < max {
                rec(items, i + 1, max, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if max > 0 {
        rec(items, 0, max, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape_and_validation() {
        let c = Coloring::new(vec![1, 2, 1]).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"palette_size":2,"colors":[1,2,1]}"#);
        assert!(serde_json::from_str::<Coloring>(r#"{"palette_size":1,"colors":[1,2]}"#).is_err());
        assert!(Coloring::new(vec![0, 1]).is_err());
    }

    #[test]
    fn classes() {
        let c = Coloring::new(vec![2, 1, 2, 3]).unwrap();
        assert_eq!(c.class(2).to_vec(), vec![0, 2]);
        assert_eq!(c.union_of(&[1, 3]).to_vec(), vec![1, 3]);
        assert_eq!(c.used_colors(), vec![1, 2, 3]);
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subset_count(3, 2), 6);
        assert_eq!(subset_count(5, 5), 31);
        assert_eq!(subset_count(5, 9), 31);
        assert_eq!(subset_count(0, 3), 0);
        assert_eq!(subset_count(40, 3) as usize, subsets_up_to(&(0..40).collect::<Vec<_>>(), 3).len());
        assert!(bounded_subsets(&(0..64).collect::<Vec<_>>(), 24).is_err());
    }

    #[test]
    fn subset_enumeration() {
        let s = subsets_up_to(&[1, 2, 3], 2);
        assert_eq!(s, vec![vec![1], vec![1, 2], vec![1, 3], vec![2], vec![2, 3], vec![3]]);
        assert_eq!(subsets_up_to(&[1, 2, 3, 4], 4).len(), 15);
    }
}
