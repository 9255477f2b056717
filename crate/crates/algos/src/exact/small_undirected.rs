use apsp_core::dist::Dist;
use apsp_core::engines::{minplus, minplus_shifted, ProductEngine};
use apsp_core::graph::Graph;
use apsp_core::hitting::{HittingConfig, HittingFamily, LevelRatio};
use apsp_core::matrix::Matrix;

use crate::error::{Error, Result};
use crate::fixpoint::is_exact_apsp;

const STAGE_CONSTANT: f64 = 9.0;

/// Exact APSP for undirected graphs with weights in [0, c0], in two phases
/// over geometric hop levels. Phase 1 ascends: the level-l sample rows are
/// extended from level 2l/3 by one min-plus product, keeping entries up to
/// c0*l. Phase 2 descends: complete rows for the level-2l/3 sample come from
/// the complete level-l rows through the shifted-modular product, whose band
/// precondition is the triangle inequality of true undirected distances.
pub fn undirected_small_weight_apsp(
    g: &Graph,
    engine: &ProductEngine,
    seed: u64,
) -> Result<Matrix<Dist>> {
    if g.is_directed() {
        return Err(Error::invalid(
            "undirected_small_weight_apsp needs an undirected graph",
        ));
    }
    if g.min_weight() < 0 {
        return Err(Error::validation("weights must be non-negative"));
    }
    // Zero-weight edges are contracted away so the exactness certificate's
    // support induction is well-founded.
    let (h, comp_of) = contract_zero_edges(g);
    let hn = h.n();
    let solved = if h.m() == 0 {
        let mut d = Matrix::new(hn, hn, Dist::INF)?;
        for i in 0..hn {
            d.set(i, i, Dist::ZERO);
        }
        d
    } else {
        solve_positive(&h, engine, seed)?
    };
    Ok(Matrix::from_fn(g.n(), g.n(), |u, v| {
        *solved.get(comp_of[u], comp_of[v])
    }))
}

/// Collapses connected components of zero-weight edges into single vertices;
/// cross-component parallel edges keep the smallest weight.
fn contract_zero_edges(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.n();
    let mut comp_of = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if comp_of[s] != usize::MAX {
            continue;
        }
        comp_of[s] = count;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &(v, e) in g.neighbors(u) {
                if g.edge(e).w1 == 0 && comp_of[v] == usize::MAX {
                    comp_of[v] = count;
                    stack.push(v);
                }
            }
        }
        count += 1;
    }
    let mut best = std::collections::HashMap::new();
    for e in g.edges() {
        let (a, b) = (comp_of[e.u], comp_of[e.v]);
        if a != b {
            let key = (a.min(b), a.max(b));
            let w = best.entry(key).or_insert(e.w1);
            *w = (*w).min(e.w1);
        }
    }
    let mut h = Graph::new(count, false);
    for ((a, b), w) in best {
        h.add_edge(a, b, w).expect("contracted edge");
    }
    (h, comp_of)
}

fn solve_positive(g: &Graph, engine: &ProductEngine, seed: u64) -> Result<Matrix<Dist>> {
    let n = g.n();
    let c0 = g.max_weight().max(1) as u64;
    let config = HittingConfig {
        constant: STAGE_CONSTANT,
        ratio: LevelRatio::ThreeHalves,
        ..HittingConfig::default()
    };
    for retry in 0..config.max_retries {
        let family = HittingFamily::sample(n, &config, seed.wrapping_add(retry as u64));
        let d = run_once(g, c0, engine, &family)?;
        if is_exact_apsp(g, &d) {
            return Ok(d);
        }
    }
    Err(Error::VerificationFailure {
        retries: config.max_retries,
    })
}

fn adjacency(g: &Graph) -> Result<Matrix<Dist>> {
    let n = g.n();
    let mut w = Matrix::new(n, n, Dist::INF)?;
    for i in 0..n {
        w.set(i, i, Dist::ZERO);
    }
    for e in g.edges() {
        let cand = Dist::finite(e.w1 as u64);
        if cand < *w.get(e.u, e.v) {
            w.set(e.u, e.v, cand);
            w.set(e.v, e.u, cand);
        }
    }
    Ok(w)
}

fn run_once(
    g: &Graph,
    c0: u64,
    engine: &ProductEngine,
    family: &HittingFamily,
) -> Result<Matrix<Dist>> {
    let n = g.n();
    let all: Vec<usize> = (0..n).collect();
    let adj = adjacency(g)?;

    // Top of the ladder: the first level at least n covers every hop count.
    let top = (0..family.num_levels())
        .find(|&s| family.level_value(s) >= n as f64)
        .unwrap_or(family.num_levels() - 1);

    // Phase 1, ascending: rows[s] holds distances from the level-s sample
    // (in sample order) to every vertex, correct wherever some shortest path
    // uses at most level(s) edges. Samples are prefixes of one permutation,
    // so a deeper sample is a row prefix of the matrix one level down.
    let cap_at = |m: Matrix<Dist>, cap: u64| -> Matrix<Dist> {
        m.map(|&x| if x <= Dist::finite(cap) { x } else { Dist::INF })
    };
    let base_ids = family.level(0).to_vec();
    let mut rows: Vec<Matrix<Dist>> = vec![cap_at(adj.submatrix(&base_ids, &all), c0)];
    for s in 1..=top {
        let sample = family.level(s);
        let prev_sample = family.level(s - 1);
        let cap = c0 * family.level_value(s).ceil() as u64;
        let sample_rows: Vec<usize> = (0..sample.len()).collect();
        let prev = &rows[s - 1];
        let mut lifted = prev.submatrix(&sample_rows, &all);
        let a = cap_at(prev.submatrix(&sample_rows, prev_sample), cap);
        let (c, _) = minplus(&a, prev, engine)?;
        lifted.entrywise_min(&c);
        rows.push(cap_at(lifted, cap));
    }

    // Phase 2, descending: full holds true distances from the current
    // sample to everything.
    let mut full = rows[top].clone();
    for s in (0..top).rev() {
        let sample = family.level(s);
        let above_len = family.level(s + 1).len();
        let cap = c0 * family.level_value(s + 1).ceil() as u64;
        // First factor: distances from the level-s sample to the level-(s+1)
        // sample, read out of the complete rows above by symmetry.
        let a = full
            .submatrix(&(0..above_len).collect::<Vec<_>>(), sample)
            .transpose();
        let a = cap_at(a, cap);
        let shifted = minplus_shifted(&a, &full, cap, false)?;
        let mut next = rows[s].clone();
        next.entrywise_min(&shifted);
        full = next;
    }

    // Back from sample order to vertex order.
    let mut out = Matrix::new(n, n, Dist::INF)?;
    for (i, &u) in family.level(0).iter().enumerate() {
        for v in 0..n {
            out.set(u, v, *full.get(i, v));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::seidel::seidel_apsp;
    use apsp_core::oracles::dijkstra_apsp;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn unweighted_agrees_with_seidel() {
        let mut rng = StdRng::seed_from_u64(2);
        let mut g = Graph::new(40, false);
        for v in 1..40 {
            g.add_edge(v - 1, v, 1).unwrap();
        }
        for _ in 0..50 {
            let u = rng.random_range(0..40);
            let v = rng.random_range(0..40);
            if u != v {
                g.add_edge(u, v, 1).ok();
            }
        }
        let got = undirected_small_weight_apsp(&g, &ProductEngine::brute(), 4).unwrap();
        assert_eq!(got, seidel_apsp(&g).unwrap());
    }

    #[test]
    fn weighted_star() {
        let mut g = Graph::new(4, false);
        g.add_edge(0, 1, 3).unwrap();
        g.add_edge(0, 2, 1).unwrap();
        g.add_edge(0, 3, 2).unwrap();
        let d = undirected_small_weight_apsp(&g, &ProductEngine::brute(), 1).unwrap();
        assert_eq!(*d.get(1, 2), Dist::finite(4));
        assert_eq!(*d.get(1, 3), Dist::finite(5));
        assert_eq!(*d.get(2, 3), Dist::finite(3));
    }

    #[test]
    fn random_weighted_graphs_match_dijkstra() {
        let mut rng = StdRng::seed_from_u64(31);
        for round in 0..4 {
            let n = 96;
            let mut g = Graph::new(n, false);
            for _ in 0..3 * n {
                let u = rng.random_range(0..n);
                let v = rng.random_range(0..n);
                if u != v {
                    g.add_edge(u, v, rng.random_range(1..=5)).ok();
                }
            }
            let got = undirected_small_weight_apsp(&g, &ProductEngine::blocked(), round).unwrap();
            let want = dijkstra_apsp(&g).unwrap();
            assert_eq!(got, want, "round {round}");
        }
    }

    #[test]
    fn zero_weights_are_contracted() {
        let mut g = Graph::new(5, false);
        g.add_edge(0, 1, 0).unwrap();
        g.add_edge(1, 2, 2).unwrap();
        g.add_edge(2, 3, 0).unwrap();
        g.add_edge(3, 4, 1).unwrap();
        let d = undirected_small_weight_apsp(&g, &ProductEngine::brute(), 1).unwrap();
        assert_eq!(*d.get(0, 1), Dist::ZERO);
        assert_eq!(*d.get(0, 4), Dist::finite(3));
        assert_eq!(*d.get(1, 3), Dist::finite(2));
    }

    #[test]
    fn directed_input_rejected() {
        let g = Graph::parse_text("graph directed 2 1\n0 1 1\n").unwrap();
        assert!(undirected_small_weight_apsp(&g, &ProductEngine::brute(), 1).is_err());
    }
}
