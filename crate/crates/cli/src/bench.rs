use std::time::Instant;

use anyhow::bail;
use serde::Serialize;

use apsp_algos::exact::seidel_apsp;
use apsp_core::bounds::CostModel;
use apsp_core::engines::{minplus, ProductEngine};
use apsp_core::gen;

/// Benchmark report: per-size medians plus the fitted log-log slope, the
/// empirical stand-in for asymptotic claims.
#[derive(Serialize)]
pub struct BenchReport {
    pub suite: String,
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub medians_ms: Vec<f64>,
    pub slope: f64,
    pub cost_model: CostModelReport,
}

#[derive(Serialize)]
pub struct CostModelReport {
    pub reported_exponent: f64,
    pub omega: f64,
    pub rho: f64,
}

pub fn run_suite(
    suite: &str,
    sizes: &[usize],
    reps: usize,
    seed: u64,
) -> anyhow::Result<BenchReport> {
    let mut medians = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let mut samples = Vec::with_capacity(reps);
        // One warmup per size, then timed repetitions.
        for rep in 0..=reps {
            let elapsed = run_once(suite, n, seed.wrapping_add(rep as u64))?;
            if rep > 0 {
                samples.push(elapsed);
            }
        }
        samples.sort_by(f64::total_cmp);
        medians.push(samples[samples.len() / 2]);
    }
    let slope = loglog_slope(sizes, &medians);
    let base = CostModel::default();
    Ok(BenchReport {
        suite: suite.to_string(),
        sizes: sizes.to_vec(),
        reps,
        medians_ms: medians,
        slope,
        cost_model: CostModelReport {
            reported_exponent: slope,
            omega: base.omega,
            rho: base.rho,
        },
    })
}

fn run_once(suite: &str, n: usize, seed: u64) -> anyhow::Result<f64> {
    Ok(match suite {
        "minplus-brute" | "minplus-blocked" | "minplus-scaled" => {
            let a = gen::random_dist_matrix(n, n, 30, 0.05, seed);
            let b = gen::random_dist_matrix(n, n, 30, 0.05, seed.wrapping_add(1));
            let engine = match suite {
                "minplus-brute" => ProductEngine::brute(),
                "minplus-blocked" => ProductEngine::blocked(),
                _ => ProductEngine::scaled(),
            };
            let t0 = Instant::now();
            let (c, _) = minplus(&a, &b, &engine)?;
            let elapsed = t0.elapsed().as_secs_f64() * 1e3;
            std::hint::black_box(c);
            elapsed
        }
        "seidel" => {
            let g = connected_undirected(n, seed);
            let t0 = Instant::now();
            let d = seidel_apsp(&g)?;
            let elapsed = t0.elapsed().as_secs_f64() * 1e3;
            std::hint::black_box(d);
            elapsed
        }
        "brute-apsp" => {
            // Repeated min-plus squaring of the adjacency matrix to the
            // closure, the matrix-side brute baseline for APSP.
            let g = connected_undirected(n, seed);
            let mut d = apsp_core::Matrix::minplus_identity(n)?;
            for e in g.edges() {
                d.set(e.u, e.v, apsp_core::Dist::finite(1));
                d.set(e.v, e.u, apsp_core::Dist::finite(1));
            }
            let t0 = Instant::now();
            let engine = ProductEngine::brute();
            let mut span = 1usize;
            while span < n {
                let (next, _) = minplus(&d, &d, &engine)?;
                d = next;
                span *= 2;
            }
            let elapsed = t0.elapsed().as_secs_f64() * 1e3;
            std::hint::black_box(d);
            elapsed
        }
        "count-exact" => {
            let g = gen::random_digraph(n, 8 * n, 1, 1, seed);
            let t0 = Instant::now();
            let c = apsp_algos::counting::count_exact(&g)?;
            let elapsed = t0.elapsed().as_secs_f64() * 1e3;
            std::hint::black_box(c.dist);
            elapsed
        }
        other => bail!("unknown bench suite `{other}`"),
    })
}

fn connected_undirected(n: usize, seed: u64) -> apsp_core::Graph {
    let mut g = gen::random_undirected(n, 3 * n, 1, 1, seed);
    // Chain the vertices so one component spans the instance.
    for v in 1..n {
        g.add_edge(v - 1, v, 1).ok();
    }
    g
}

/// Least-squares slope of log(time) against log(size).
pub fn loglog_slope(sizes: &[usize], medians_ms: &[f64]) -> f64 {
    let xs: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = medians_ms.iter().map(|&t| t.max(1e-9).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}
