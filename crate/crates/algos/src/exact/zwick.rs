use apsp_core::bounds::CostModel;
use apsp_core::dist::{Dist, SignedDist};
use apsp_core::engines::{minplus, ProductEngine, NO_WITNESS};
use apsp_core::graph::Graph;
use apsp_core::hitting::{HittingConfig, HittingFamily, LevelRatio};
use apsp_core::matrix::Matrix;
use apsp_core::oracles::johnson_potentials;

use crate::error::{Error, Result};
use crate::fixpoint::is_signed_apsp_fixed_point;

/// Sentinel in successor matrices for "no path".
pub const NO_SUCCESSOR: u32 = u32::MAX;

/// Hitting constant used by the staged solvers; larger than the sampler
/// default so a verification retry is rare.
const STAGE_CONSTANT: f64 = 9.0;

pub struct ZwickOutput {
    pub dist: Matrix<SignedDist>,
    /// successors[u][v] is the vertex after u on a shortest u->v path.
    pub successors: Matrix<u32>,
    pub retries: usize,
}

/// Staged APSP for directed graphs with integer weights in [-c0, c0] and no
/// negative cycle. Stage s improves all pairs whose shortest paths use up to
/// (3/2)^s edges through a min-plus product against a level-s vertex sample;
/// once the level passes `crossover_L` a brute per-sample pass finishes the
/// long paths. The output is certified as a relaxation fixed point and the
/// sample is redrawn in the unlikely event the certificate fails.
pub fn zwick_apsp(
    g: &Graph,
    cost: &CostModel,
    engine: &ProductEngine,
    seed: u64,
) -> Result<Matrix<SignedDist>> {
    Ok(zwick_apsp_full(g, cost, engine, seed)?.dist)
}

pub fn zwick_apsp_full(
    g: &Graph,
    cost: &CostModel,
    engine: &ProductEngine,
    seed: u64,
) -> Result<ZwickOutput> {
    let g = g.to_directed();
    let n = g.n();
    let h = johnson_potentials(&g)?;

    // Reweighted non-negative adjacency.
    let mut w = Matrix::new(n, n, Dist::INF)?;
    let mut suc_init = Matrix::new(n, n, NO_SUCCESSOR)?;
    for i in 0..n {
        w.set(i, i, Dist::ZERO);
        suc_init.set(i, i, i as u32);
    }
    let mut wmax = 1u64;
    for e in g.edges() {
        let rw = (e.w1 + h[e.u] - h[e.v]) as u64;
        wmax = wmax.max(rw);
        if Dist::finite(rw) < *w.get(e.u, e.v) {
            w.set(e.u, e.v, Dist::finite(rw));
            suc_init.set(e.u, e.v, e.v as u32);
        }
    }

    let crossover = cost.crossover_for(n);
    let config = HittingConfig {
        constant: STAGE_CONSTANT,
        ratio: LevelRatio::ThreeHalves,
        ..HittingConfig::default()
    };

    for retry in 0..config.max_retries {
        let family = HittingFamily::sample(n, &config, seed.wrapping_add(retry as u64));
        let (dist, successors) = run_once(&g, &w, &suc_init, wmax, crossover, engine, &family)?;
        // De-reweight into original units and certify.
        let orig = Matrix::from_fn(n, n, |u, v| match dist.get(u, v).value() {
            Some(x) => SignedDist::finite(x as i64 - h[u] + h[v]),
            None => SignedDist::INF,
        });
        if is_signed_apsp_fixed_point(&g, &orig) {
            return Ok(ZwickOutput {
                dist: orig,
                successors,
                retries: retry,
            });
        }
    }
    Err(Error::VerificationFailure {
        retries: config.max_retries,
    })
}

fn run_once(
    g: &Graph,
    w: &Matrix<Dist>,
    suc_init: &Matrix<u32>,
    wmax: u64,
    crossover: u64,
    engine: &ProductEngine,
    family: &HittingFamily,
) -> Result<(Matrix<Dist>, Matrix<u32>)> {
    let n = g.n();
    let all: Vec<usize> = (0..n).collect();
    let mut d = w.clone();
    let mut suc = suc_init.clone();

    let mut stage = 1usize;
    loop {
        let level = family.level_value(stage);
        let sample = family.level(stage);
        if sample.is_empty() {
            break;
        }
        let cap = Dist::finite(wmax * level.ceil() as u64);
        let capped = |x: &Dist| if *x <= cap { *x } else { Dist::INF };
        let a = d.submatrix(&all, sample).map(capped);
        let b = d.submatrix(sample, &all).map(capped);
        let (c, wit) = minplus(&a, &b, engine)?;
        for u in 0..n {
            for v in 0..n {
                let cand = *c.get(u, v);
                if cand < *d.get(u, v) {
                    let k = *wit.get(u, v);
                    debug_assert_ne!(k, NO_WITNESS);
                    let r = sample[k as usize];
                    let step = *suc.get(u, r);
                    d.set(u, v, cand);
                    suc.set(u, v, step);
                }
            }
        }
        if level >= crossover as f64 {
            // Brute per-sample pass over the same level finishes long paths.
            brute_pass(g, w, &mut d, &mut suc, sample);
            break;
        }
        stage += 1;
    }
    Ok((d, suc))
}

/// Dijkstra to and from every sampled vertex on the reweighted graph, then a
/// global min over sample bridges.
fn brute_pass(
    g: &Graph,
    w: &Matrix<Dist>,
    d: &mut Matrix<Dist>,
    suc: &mut Matrix<u32>,
    sample: &[usize],
) {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    let n = g.n();
    for &x in sample {
        // Forward: exact row d[x][*], with first hops.
        let mut dist = vec![Dist::INF; n];
        let mut hop = vec![NO_SUCCESSOR; n];
        let mut heap = BinaryHeap::new();
        dist[x] = Dist::ZERO;
        hop[x] = x as u32;
        heap.push(Reverse((0u64, x)));
        while let Some(Reverse((du, u))) = heap.pop() {
            if Dist::finite(du) > dist[u] {
                continue;
            }
            for v in 0..n {
                if let Some(wv) = w.get(u, v).value() {
                    if u == v {
                        continue;
                    }
                    let cand = Dist::finite(du + wv);
                    if cand < dist[v] {
                        dist[v] = cand;
                        hop[v] = if u == x { v as u32 } else { hop[u] };
                        heap.push(Reverse((cand.raw(), v)));
                    }
                }
            }
        }
        for v in 0..n {
            if dist[v] < *d.get(x, v) {
                d.set(x, v, dist[v]);
                suc.set(x, v, hop[v]);
            }
        }
        // Backward: exact column d[*][x]; the relaxing predecessor in the
        // reverse search is the forward first hop.
        let mut rdist = vec![Dist::INF; n];
        let mut rhop = vec![NO_SUCCESSOR; n];
        let mut heap = BinaryHeap::new();
        rdist[x] = Dist::ZERO;
        rhop[x] = x as u32;
        heap.push(Reverse((0u64, x)));
        while let Some(Reverse((du, u))) = heap.pop() {
            if Dist::finite(du) > rdist[u] {
                continue;
            }
            for v in 0..n {
                if v == u {
                    continue;
                }
                if let Some(wv) = w.get(v, u).value() {
                    let cand = Dist::finite(du + wv);
                    if cand < rdist[v] {
                        rdist[v] = cand;
                        rhop[v] = u as u32;
                        heap.push(Reverse((cand.raw(), v)));
                    }
                }
            }
        }
        for v in 0..n {
            if rdist[v] < *d.get(v, x) {
                d.set(v, x, rdist[v]);
                suc.set(v, x, rhop[v]);
            }
        }
    }
    for &x in sample {
        for u in 0..n {
            let dux = *d.get(u, x);
            if dux.is_inf() {
                continue;
            }
            for v in 0..n {
                let cand = dux + *d.get(x, v);
                if cand < *d.get(u, v) {
                    let step = *suc.get(u, x);
                    d.set(u, v, cand);
                    suc.set(u, v, step);
                }
            }
        }
    }
}

/// Reads a path out of a successor matrix; `None` when unreachable.
pub fn successor_path(suc: &Matrix<u32>, from: usize, to: usize) -> Option<Vec<usize>> {
    if *suc.get(from, to) == NO_SUCCESSOR {
        return None;
    }
    let mut path = vec![from];
    let mut cur = from;
    let cap = suc.rows() * suc.rows() + 2;
    while cur != to {
        let nxt = *suc.get(cur, to);
        if nxt == NO_SUCCESSOR || path.len() > cap {
            return None;
        }
        cur = nxt as usize;
        path.push(cur);
    }
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use apsp_core::oracles::{bellman_ford_apsp, floyd_warshall, signed_matrix};

    fn cost_with(crossover: u64) -> CostModel {
        CostModel {
            crossover_l: Some(crossover),
            ..CostModel::default()
        }
    }

    #[test]
    fn directed_path_with_tiny_crossover() {
        let mut g = Graph::new(10, true);
        for v in 1..10 {
            g.add_edge(v - 1, v, 1).unwrap();
        }
        let d = zwick_apsp(&g, &cost_with(4), &ProductEngine::brute(), 1).unwrap();
        for u in 0..10 {
            for v in 0..10 {
                if v >= u {
                    assert_eq!(*d.get(u, v), SignedDist::finite((v - u) as i64));
                } else {
                    assert!(d.get(u, v).is_inf());
                }
            }
        }
    }

    #[test]
    fn positive_weights_match_floyd_warshall() {
        for seed in 0..4 {
            let g = apsp_core::gen::random_digraph(96, 300, 1, 3, seed);
            let want = floyd_warshall(&g).unwrap();
            let d = zwick_apsp(&g, &CostModel::default(), &ProductEngine::blocked(), 7).unwrap();
            assert_eq!(d, want);
        }
    }

    #[test]
    fn negative_weights_match_bellman_ford() {
        for seed in 10..13 {
            let g = apsp_core::gen::random_digraph_no_negcycle(96, 280, 3, 2, seed);
            let want = bellman_ford_apsp(&g).unwrap();
            let d = zwick_apsp(&g, &CostModel::default(), &ProductEngine::brute(), 11).unwrap();
            assert_eq!(d, want);
        }
    }

    #[test]
    fn negative_cycle_reported() {
        let g = Graph::parse_text("graph directed 3 3\n0 1 1\n1 2 -3\n2 0 1\n").unwrap();
        let err = zwick_apsp(&g, &CostModel::default(), &ProductEngine::brute(), 1).unwrap_err();
        assert!(matches!(
            err,
            Error::Core(apsp_core::Error::NegativeCycle(_))
        ));
    }

    #[test]
    fn engine_and_seed_invariance() {
        let g = apsp_core::gen::random_digraph(48, 140, 0, 2, 77);
        let reference = zwick_apsp(&g, &CostModel::default(), &ProductEngine::brute(), 1).unwrap();
        for engine in [
            ProductEngine::blocked(),
            ProductEngine::scaled(),
            ProductEngine::auto(),
        ] {
            for seed in [2u64, 99, 12345] {
                let d = zwick_apsp(&g, &CostModel::default(), &engine, seed).unwrap();
                assert_eq!(d, reference);
            }
        }
    }

    #[test]
    fn successors_trace_real_shortest_paths() {
        let g = apsp_core::gen::random_digraph(40, 120, 1, 4, 17);
        let out = zwick_apsp_full(&g, &cost_with(3), &ProductEngine::brute(), 2).unwrap();
        let want = signed_matrix(&apsp_core::oracles::dijkstra_apsp(&g).unwrap());
        assert_eq!(out.dist, want);
        for u in 0..g.n() {
            for v in 0..g.n() {
                match successor_path(&out.successors, u, v) {
                    Some(path) => {
                        assert_eq!(path[0], u);
                        assert_eq!(*path.last().unwrap(), v);
                        let mut total = 0i64;
                        for win in path.windows(2) {
                            let w = g
                                .edges()
                                .iter()
                                .filter(|e| e.u == win[0] && e.v == win[1])
                                .map(|e| e.w1)
                                .min()
                                .expect("successor step is an edge");
                            total += w;
                        }
                        assert_eq!(SignedDist::finite(total), *out.dist.get(u, v));
                    }
                    None => assert!(out.dist.get(u, v).is_inf() || u == v),
                }
            }
        }
    }
}
