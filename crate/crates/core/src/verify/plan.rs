//! Seeded sampling plans and exhaustive subspace enumeration.

use std::collections::HashSet;
use std::fmt;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::PointSet;
use crate::polar::Geometry;

/// Exhaustive enumeration is chosen automatically up to this many points.
pub const AUTO_EXHAUSTIVE_POINTS: usize = 15;
/// Hard limit for exhaustive enumeration (`2^20` subsets).
pub const MAX_EXHAUSTIVE_POINTS: usize = 20;
/// Draws per requested distinct sample before a run gives up.
pub const DRAWS_PER_SAMPLE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Random,
    Exhaustive,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Random => "random",
            Mode::Exhaustive => "exhaustive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplePlan {
    pub seed: u64,
    pub samples: usize,
    pub min_seed: usize,
    pub max_seed: usize,
    pub mode: Mode,
}

impl SamplePlan {
    /// Random plan with seed-set sizes in `[2, 2n+2]`.
    pub fn random(seed: u64, samples: usize, rank: usize) -> SamplePlan {
        SamplePlan { seed, samples, min_seed: 2, max_seed: 2 * rank + 2, mode: Mode::Random }
    }

    pub fn exhaustive(rank: usize) -> SamplePlan {
        SamplePlan { mode: Mode::Exhaustive, ..SamplePlan::random(0, 0, rank) }
    }

    /// Exhaustive for at most 15 points, or when `samples` is 0 and the space has at most 20 points.
    pub fn auto(num_points: usize, rank: usize, seed: u64, samples: usize) -> SamplePlan {
        let exhaustive = num_points <= AUTO_EXHAUSTIVE_POINTS || (samples == 0 && num_points <= MAX_EXHAUSTIVE_POINTS);
        let mode = if exhaustive { Mode::Exhaustive } else { Mode::Random };
        SamplePlan { mode, ..SamplePlan::random(seed, samples, rank) }
    }

    /// Independent generator for sample `index`.
    pub fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }

    pub fn draw_cap(&self) -> usize {
        self.samples.saturating_mul(DRAWS_PER_SAMPLE).max(self.samples)
    }

    /// Distinct random points, with a size drawn uniformly from the plan's bounds.
    pub fn seed_set<R: Rng>(&self, num_points: usize, rng: &mut R) -> Vec<usize> {
        let hi = self.max_seed.min(num_points);
        let lo = self.min_seed.min(hi);
        let size = rng.random_range(lo..=hi);
        let mut pts = index::sample(rng, num_points, size).into_vec();
        pts.sort_unstable();
        pts
    }
}

/// Every subspace, via closures of all `2^N` subsets. Returns the distinct
/// subspaces ordered by size, then by members.
pub fn all_subspaces(geometry: &Geometry) -> Vec<PointSet> {
    let n = geometry.num_points();
    assert!(n <= MAX_EXHAUSTIVE_POINTS, "exhaustive enumeration limited to {MAX_EXHAUSTIVE_POINTS} points");
    let mut cl: Vec<PointSet> = Vec::with_capacity(1 << n);
    cl.push(geometry.empty_set());
    let mut seen = HashSet::new();
    seen.insert(cl[0].clone());
    for mask in 1usize..1 << n {
        let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let s = geometry.closure_extend(&cl[mask ^ (1 << top)], &[top]);
        seen.insert(s.clone());
        cl.push(s);
    }
    let mut out: Vec<PointSet> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.to_vec().cmp(&b.to_vec())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substreams_are_independent_of_order() {
        let plan = SamplePlan::random(7, 10, 2);
        let a: Vec<Vec<usize>> = (0..5).map(|i| plan.seed_set(40, &mut plan.rng(i))).collect();
        let b: Vec<Vec<usize>> = (0..5).rev().map(|i| plan.seed_set(40, &mut plan.rng(i))).collect();
        let mut b = b;
        b.reverse();
        assert_eq!(a, b);
        assert!(a.iter().all(|s| (2..=6).contains(&s.len())));
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn auto_mode() {
        assert_eq!(SamplePlan::auto(15, 2, 0, 500).mode, Mode::Exhaustive);
        assert_eq!(SamplePlan::auto(16, 2, 0, 500).mode, Mode::Random);
        assert_eq!(SamplePlan::auto(16, 2, 0, 0).mode, Mode::Exhaustive);
        assert_eq!(SamplePlan::auto(40, 2, 0, 0).mode, Mode::Random);
    }

    #[test]
    fn grid_subspaces() {
        let mut lines = Vec::new();
        for r in 0..3 {
            lines.push((0..3).map(|c| 3 * r + c).collect());
            lines.push((0..3).map(|c| 3 * c + r).collect());
        }
        let g = Geometry::new(9, lines).unwrap();
        let subs = all_subspaces(&g);
        // oracle: line-scan test over every subset
        let brute = (0u64..1 << 9).filter(|&m| g.is_subspace(&PointSet::from_mask(9, m))).count();
        assert_eq!(subs.len(), brute);
        assert!(subs[0].is_empty() && subs.last().unwrap().is_full());
    }
}
