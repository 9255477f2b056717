use apsp_core::dist::Dist;
use apsp_core::engines::{funny_product, PairMatrix};
use apsp_core::graph::Graph;
use apsp_core::hitting::{sample_verified_margin, HittingConfig, HittingFamily, LevelRatio};
use apsp_core::matrix::Matrix;
use apsp_core::oracles::bfs_apsp;

use crate::error::{Error, Result};

use super::{CountData, CountMatrix};

/// Shortest-path counts capped at `cap` for directed unweighted graphs.
///
/// Avoidance tables C_a hold, per pair, the number of shortest paths whose
/// intermediate vertices miss the level-a sample, saturated at the cap. Band
/// by band (doubling distance levels), pairs are recombined by chains of
/// paired (distance, count) products over the fresh sample vertices
/// S = R_band minus R_a: a chain of j products collects exactly the paths
/// with j+1 intermediate sample hits. The family is property-checked so
/// every band path has an interior hit, and the chain length is asserted
/// against the configured logarithmic budget, resampling on violation.
pub fn count_capped_directed(g: &Graph, cap: u64, seed: u64) -> Result<CountMatrix> {
    if !g.is_unweighted() {
        return Err(Error::invalid(
            "count_capped_directed needs an unweighted graph",
        ));
    }
    if cap < 2 {
        return Err(Error::invalid("cap must be at least 2"));
    }
    let n = g.n();
    let dist = bfs_apsp(g);
    let config = HittingConfig {
        constant: 4.0,
        ratio: LevelRatio::Two,
        log_weight: Some(((n as f64) * (cap as f64)).log2().max(1.0)),
        ..HittingConfig::default()
    };
    let chain_budget = (3.0 * ((n as f64) * (cap as f64)).log2()).ceil() as usize;

    'resample: for retry in 0..config.max_retries {
        let family = sample_verified_margin(g, &config, seed.wrapping_add(retry as u64), 1)?;
        match run_once(g, &dist, cap, &family, chain_budget) {
            Ok(mut tables) => {
                let counts = tables.pop().expect("at least the empty top level");
                return Ok(CountMatrix {
                    dist,
                    data: CountData::Capped(cap, counts),
                });
            }
            Err(Error::VerificationFailure { .. }) => continue 'resample,
            Err(e) => return Err(e),
        }
    }
    Err(Error::VerificationFailure {
        retries: config.max_retries,
    })
}

fn run_once(
    g: &Graph,
    dist: &Matrix<Dist>,
    cap: u64,
    family: &HittingFamily,
    chain_budget: usize,
) -> Result<Vec<Matrix<u64>>> {
    let n = g.n();
    let max_d = dist.max_finite().unwrap_or(0);
    let levels = family.num_levels();
    let all: Vec<usize> = (0..n).collect();

    // tables[a]: counts avoiding the level-a sample internally, saturated.
    let mut base = Matrix::new(n, n, 0u64)?;
    for u in 0..n {
        base.set(u, u, 1);
    }
    for e in g.edges() {
        if *dist.get(e.u, e.v) == Dist::finite(1) {
            let c = (*base.get(e.u, e.v) + 1).min(cap);
            base.set(e.u, e.v, c);
        }
    }
    let mut tables: Vec<Matrix<u64>> = vec![base; levels];

    let mut band_idx = 1usize;
    while family.level_value(band_idx) / 2.0 < max_d as f64 && band_idx < levels {
        let ell = family.level_value(band_idx) as u64;
        let half = ell / 2;
        let band_cells: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| {
                dist.get(u, v)
                    .value()
                    .map(|d| d > half && d <= ell)
                    .unwrap_or(false)
            })
            .collect();
        if band_cells.is_empty() {
            band_idx += 1;
            continue;
        }
        // Segment pair matrix: distances and counts avoiding R_band
        // internally, masked to at most half the band level. The diagonal is
        // excluded: consecutive hits on a simple path are distinct, so no
        // segment has length zero.
        let seg_dist = Matrix::from_fn(n, n, |u, v| match dist.get(u, v).value() {
            Some(d) if u != v && d <= half => *dist.get(u, v),
            _ => Dist::INF,
        });
        let seg_count = Matrix::from_fn(n, n, |u, v| {
            if seg_dist.get(u, v).is_finite() {
                *tables[band_idx].get(u, v)
            } else {
                0
            }
        });
        let segments = PairMatrix {
            dist: seg_dist,
            count: seg_count,
        };

        // A path of length ell has fewer than ell interior vertices, so ell
        // always bounds the chain; the logarithmic budget only bites once
        // the samples are genuinely subsampled.
        let band_budget = chain_budget.max(ell as usize);
        for avoid_idx in band_idx + 1..levels {
            let fresh: Vec<usize> = family.level_difference(band_idx, avoid_idx).to_vec();
            let mut acc = Matrix::new(n, n, 0u64)?;
            if !fresh.is_empty() {
                let head = segments.submatrix(&all, &fresh);
                let middle = segments.submatrix(&fresh, &fresh);
                let tail = segments.submatrix(&fresh, &all);
                let mut chain = head;
                let mut hops = 0usize;
                loop {
                    let closed = funny_product(&chain, &tail, cap)?;
                    for &(u, v) in &band_cells {
                        if closed.dist.get(u, v) == dist.get(u, v) {
                            let c = (*acc.get(u, v)).saturating_add(*closed.count.get(u, v));
                            acc.set(u, v, c.min(cap));
                        }
                    }
                    hops += 1;
                    if hops > band_budget {
                        // The sample intersects some retained path more often
                        // than any sound decomposition allows; redraw it.
                        return Err(Error::VerificationFailure { retries: 0 });
                    }
                    let mut next = funny_product(&chain, &middle, cap)?;
                    // Prefixes longer than the band level cannot finish a
                    // band pair.
                    prune_pairs(&mut next, ell);
                    if next.dist.data().iter().all(|d| d.is_inf()) {
                        break;
                    }
                    chain = next;
                }
            }
            for &(u, v) in &band_cells {
                tables[avoid_idx].set(u, v, *acc.get(u, v));
            }
        }
        band_idx += 1;
    }

    Ok(tables)
}

fn prune_pairs(p: &mut PairMatrix, bound: u64) {
    let limit = Dist::finite(bound);
    for i in 0..p.dist.rows() {
        for j in 0..p.dist.cols() {
            if *p.dist.get(i, j) > limit {
                p.dist.set(i, j, Dist::INF);
                p.count.set(i, j, 0);
            }
        }
    }
}
