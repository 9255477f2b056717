//! Nested random vertex samples sized so that level `l` hits, with high
//! probability, every shortest path of about `l/2` edges. Nesting comes for
//! free by drawing one seeded permutation and taking prefixes.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracles::bfs_apsp;

pub const DEFAULT_HITTING_CONSTANT: f64 = 4.0;
pub const DEFAULT_MAX_RETRIES: usize = 16;

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum LevelRatio {
    /// Levels at powers of 3/2 (staged exact and approximate algorithms).
    ThreeHalves,
    /// Levels at powers of 2 (counting algorithms).
    Two,
}

impl LevelRatio {
    pub fn level_value(self, index: usize) -> f64 {
        match self {
            LevelRatio::ThreeHalves => 1.5f64.powi(index as i32),
            LevelRatio::Two => 2f64.powi(index as i32),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HittingConfig {
    pub constant: f64,
    pub ratio: LevelRatio,
    /// Extra factor in the sample size; `log2 n` by default, `log2 (n*U)`
    /// for the capped counting pipeline.
    pub log_weight: Option<f64>,
    pub max_retries: usize,
}

impl Default for HittingConfig {
    fn default() -> HittingConfig {
        HittingConfig {
            constant: DEFAULT_HITTING_CONSTANT,
            ratio: LevelRatio::ThreeHalves,
            log_weight: None,
            max_retries: DEFAULT_MAX_RETRIES,
        }
    }
}

/// One nested family: `level(0)` is always the full vertex set, level sizes
/// shrink as `c * (n / l) * log`, and a level at least `2n` is empty.
#[derive(Clone, Debug)]
pub struct HittingFamily {
    n: usize,
    perm: Vec<usize>,
    sizes: Vec<usize>,
    ratio: LevelRatio,
    pub seed: u64,
}

impl HittingFamily {
    pub fn sample(n: usize, config: &HittingConfig, seed: u64) -> HittingFamily {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let log_weight = config
            .log_weight
            .unwrap_or_else(|| (n.max(2) as f64).log2());
        let mut sizes = Vec::new();
        let mut index = 0;
        loop {
            let level = config.ratio.level_value(index);
            let size = if index == 0 {
                n
            } else if level >= 2.0 * n as f64 {
                0
            } else {
                ((config.constant * (n as f64) * log_weight / level).ceil() as usize).min(n)
            };
            sizes.push(size);
            if size == 0 {
                break;
            }
            index += 1;
        }
        HittingFamily {
            n,
            perm,
            sizes,
            ratio: config.ratio,
            seed,
        }
    }

    pub fn num_levels(&self) -> usize {
        self.sizes.len()
    }

    pub fn level_value(&self, index: usize) -> f64 {
        self.ratio.level_value(index)
    }

    /// Vertices of the sample at `index`; prefixes of one permutation, so
    /// higher levels are always subsets of lower ones.
    pub fn level(&self, index: usize) -> &[usize] {
        let size = if index < self.sizes.len() {
            self.sizes[index]
        } else {
            0
        };
        &self.perm[..size]
    }

    /// Vertices in `level(lo)` but not in `level(hi)` for `lo <= hi`.
    pub fn level_difference(&self, lo: usize, hi: usize) -> &[usize] {
        let lo_size = self.sizes.get(lo).copied().unwrap_or(0);
        let hi_size = self.sizes.get(hi).copied().unwrap_or(0);
        &self.perm[hi_size..lo_size]
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Strong check for unweighted graphs: no shortest path of exactly
/// `floor(level/2)` edges may avoid the sample entirely. Violations are found
/// by comparing hop distances in the graph induced on the unsampled vertices
/// against hop distances in the full graph.
pub fn verify_unweighted(g: &Graph, family: &HittingFamily) -> bool {
    verify_unweighted_margin(g, family, 0)
}

/// Like `verify_unweighted` with the window shortened by `margin` edges, for
/// consumers that need a hit among a path's interior vertices.
pub fn verify_unweighted_margin(g: &Graph, family: &HittingFamily, margin: u64) -> bool {
    let full = bfs_apsp(g);
    let n = g.n();
    for index in 1..family.num_levels() {
        let target = ((family.level_value(index) / 2.0).floor() as u64).saturating_sub(margin);
        if target == 0 {
            continue;
        }
        let mut keep = vec![true; n];
        for &v in family.level(index) {
            keep[v] = false;
        }
        let kept: Vec<usize> = (0..n).filter(|&v| keep[v]).collect();
        if kept.is_empty() {
            continue;
        }
        let mut sub = Graph::new(kept.len(), g.is_directed());
        let mut back = vec![usize::MAX; n];
        for (i, &v) in kept.iter().enumerate() {
            back[v] = i;
        }
        for e in g.edges() {
            if keep[e.u] && keep[e.v] {
                sub.add_edge(back[e.u], back[e.v], 1).expect("valid edge");
            }
        }
        let avoided = bfs_apsp(&sub);
        for (i, &u) in kept.iter().enumerate() {
            for (j, &v) in kept.iter().enumerate() {
                if avoided.get(i, j).value() == Some(target)
                    && full.get(u, v).value() == Some(target)
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Samples families until `verify_unweighted` passes; surfaces a sampling
/// failure instead of hiding a bad family.
pub fn sample_verified(g: &Graph, config: &HittingConfig, seed: u64) -> Result<HittingFamily> {
    sample_verified_margin(g, config, seed, 0)
}

pub fn sample_verified_margin(
    g: &Graph,
    config: &HittingConfig,
    seed: u64,
    margin: u64,
) -> Result<HittingFamily> {
    for retry in 0..config.max_retries.max(1) {
        let family = HittingFamily::sample(g.n(), config, seed.wrapping_add(retry as u64));
        if verify_unweighted_margin(g, &family, margin) {
            return Ok(family);
        }
    }
    Err(Error::SamplingFailure {
        retries: config.max_retries,
        msg: "no sampled family hit every critical shortest path".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_level_is_everything_and_top_is_empty() {
        let config = HittingConfig::default();
        let family = HittingFamily::sample(100, &config, 1);
        assert_eq!(family.level(0).len(), 100);
        assert_eq!(family.level(family.num_levels() - 1).len(), 0);
    }

    #[test]
    fn nesting_and_size_bounds() {
        let n = 100;
        let config = HittingConfig::default();
        for seed in 0..5 {
            let family = HittingFamily::sample(n, &config, seed);
            for idx in 1..family.num_levels() {
                let level = family.level(idx);
                let prev: std::collections::HashSet<usize> =
                    family.level(idx - 1).iter().copied().collect();
                assert!(level.iter().all(|v| prev.contains(v)), "nesting broken");
                let bound =
                    config.constant * (n as f64) * (n as f64).log2() / family.level_value(idx);
                assert!(level.len() as f64 <= bound.ceil().min(n as f64));
            }
        }
    }

    #[test]
    fn example_size_bound_at_level_ten() {
        // n = 100, c = 4: a level of value 10 has at most 4 * 10 * log2(100)
        // vertices (the bound exceeds n, so the whole set is permitted).
        let config = HittingConfig::default();
        let family = HittingFamily::sample(100, &config, 3);
        let idx = (0..family.num_levels())
            .find(|&i| family.level_value(i) >= 10.0)
            .unwrap();
        let cap = (4.0 * 10.0 * (100f64).log2()).ceil() as usize;
        assert!(family.level(idx).len() <= cap.max(100));
    }

    #[test]
    fn verified_sampling_on_a_path() {
        let mut g = Graph::new(40, false);
        for v in 1..40 {
            g.add_edge(v - 1, v, 1).unwrap();
        }
        let family = sample_verified(&g, &HittingConfig::default(), 7).unwrap();
        assert!(verify_unweighted(&g, &family));
    }

    #[test]
    fn sampling_failure_surfaces_after_retries() {
        let mut g = Graph::new(30, false);
        for v in 1..30 {
            g.add_edge(v - 1, v, 1).unwrap();
        }
        let config = HittingConfig {
            constant: 0.05,
            max_retries: 4,
            ..HittingConfig::default()
        };
        match sample_verified(&g, &config, 1) {
            Err(Error::SamplingFailure { retries, .. }) => assert_eq!(retries, 4),
            other => panic!("expected sampling failure, got {other:?}"),
        }
    }

    #[test]
    fn verifier_rejects_undersized_samples() {
        // A tiny constant leaves one or two vertices at the middle levels of
        // a long path, which cannot hit every critical window.
        let mut g = Graph::new(30, false);
        for v in 1..30 {
            g.add_edge(v - 1, v, 1).unwrap();
        }
        let config = HittingConfig {
            constant: 0.05,
            ..HittingConfig::default()
        };
        let family = HittingFamily::sample(30, &config, 1);
        assert!(!verify_unweighted(&g, &family));
    }
}
