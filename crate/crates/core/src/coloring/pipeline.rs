use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::provider::{treedepth_coloring_with, TdColoringOptions};
use super::refinement::{excellent_refinement, RefinementColoring};
use super::verify::{power_equality_holds, verify_low_rw_coloring_with, Budget, ColoringProfile, VerifyOptions};
use super::{subsets_up_to, ColoringError};
use crate::bitset::BitSet;
use crate::graph::Graph;
use crate::orderings::{wcol_heuristic, LinearOrder};

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub td: TdColoringOptions,
    pub verify: VerifyOptions,
    /// Random vertex sets checked for power equality on top of all class
    /// unions.
    pub random_samples: usize,
    pub seed: u64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            td: TdColoringOptions::default(),
            verify: VerifyOptions::default(),
            random_samples: 200,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub coloring: RefinementColoring,
    pub profile: ColoringProfile,
    /// `wcol_of_order` of the order used at radius `2, 3, ..., r`.
    pub wcols: Vec<usize>,
    pub d_r: u64,
    /// Classes allowed in the tree-depth coloring: `d_r * p`.
    pub td_classes: usize,
    pub power_checks: usize,
    /// Checked sets (as vertex lists) where `G^r[X] != G[X'']^r[X]` or `X''`
    /// had too many base colors.
    pub power_violations: Vec<Vec<usize>>,
    pub seed: u64,
}

impl PipelineReport {
    pub fn verified(&self) -> bool {
        self.profile.verified && self.power_violations.is_empty()
    }
}

/// Colors `G` so that the coloring is a low rank-width coloring of `G^r`:
/// orders per radius give `d_r = prod 2 wcol`, a `(d_r p)`-tree-depth
/// coloring is refined up to radius `r`, and every union of at most `p`
/// refined classes is measured in `G^r` against `2(r+1)^(d_r i + 1) - 2`.
/// Each checked set `X` is also expanded to `X''` to confirm
/// `G^r[X] = G[X'']^r[X]`.
pub fn low_rankwidth_coloring_of_power(
    g: &Graph,
    r: usize,
    p: usize,
    opts: &PipelineOptions,
) -> Result<PipelineReport, ColoringError> {
    if r < 2 {
        return Err(ColoringError::RadiusTooSmall(r));
    }
    if p == 0 {
        return Err(ColoringError::ZeroClasses);
    }
    let (wcols, orders): (Vec<usize>, Vec<LinearOrder>) = (2..=r).map(|l| wcol_heuristic(g, l)).unzip();
    let d_r = wcols.iter().fold(1u64, |acc, &w| acc.saturating_mul(2 * w as u64));
    let td_classes = usize::try_from(d_r.saturating_mul(p as u64)).unwrap_or(usize::MAX);
    let base = treedepth_coloring_with(g, td_classes, &opts.td)?;
    let coloring = excellent_refinement(g, &base, r, &orders)?;
    debug_assert_eq!(coloring.d_product(), d_r);

    let power = g.power(r)?;
    let refined = coloring.refined();
    let mut profile = verify_low_rw_coloring_with(&power, refined, p, &Budget::TreeDepthPower { r: r as u64, d: d_r }, &opts.verify)?;
    profile.d_r = Some(d_r);

    let mut sets: Vec<BitSet> = subsets_up_to(&refined.used_colors(), p)
        .iter()
        .map(|cs| refined.union_of(cs))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let n = g.n();
    let mut ids: Vec<usize> = (0..n).collect();
    for _ in 0..opts.random_samples {
        let k = rng.gen_range(1..=n);
        ids.shuffle(&mut rng);
        sets.push(BitSet::from_indices(n, ids[..k].iter().copied()));
    }
    let power_violations: Vec<Vec<usize>> = sets
        .par_iter()
        .filter(|x| {
            let x2 = coloring.expand_excellent(x);
            let q = refined.colors_on(x).len() as u64;
            let base_colors = coloring.base.colors_on(&x2).len() as u64;
            !x.is_subset(&x2) || !power_equality_holds(g, r, x, &x2) || base_colors > d_r.saturating_mul(q)
        })
        .map(BitSet::to_vec)
        .collect();

    Ok(PipelineReport {
        profile,
        wcols,
        d_r,
        td_classes,
        power_checks: sets.len(),
        power_violations,
        seed: opts.seed,
        coloring,
    })
}
