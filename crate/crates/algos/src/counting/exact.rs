use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use apsp_core::dist::Dist;
use apsp_core::graph::Graph;
use apsp_core::matrix::Matrix;
use apsp_core::oracles::bfs_apsp;

use crate::error::{Error, Result};

use super::{CountData, CountMatrix};

/// Exact big-integer shortest-path counts for an unweighted graph, directed
/// or undirected.
///
/// Per source, ascending geometric distance levels: the counts out to 2l/3
/// are extended to l by picking a thin middle band V_m of the source's BFS
/// layers and recombining counts through it, so every full product is a
/// band-restricted sum. The whole recursion performs O(n^2 / l) big-integer
/// operations per source and level.
pub fn count_exact(g: &Graph) -> Result<CountMatrix> {
    if !g.is_unweighted() {
        return Err(Error::invalid("count_exact needs an unweighted graph"));
    }
    let n = g.n();
    let dist = bfs_apsp(g);
    let max_d = dist.max_finite().unwrap_or(0);

    let mut counts = Matrix::new(n, n, BigUint::ZERO)?;
    for u in 0..n {
        counts.set(u, u, BigUint::one());
    }
    for e in g.edges() {
        if *dist.get(e.u, e.v) == Dist::finite(1) {
            let c = counts.get(e.u, e.v) + BigUint::one();
            counts.set(e.u, e.v, c);
        }
        if !g.is_directed() && *dist.get(e.v, e.u) == Dist::finite(1) {
            let c = counts.get(e.v, e.u) + BigUint::one();
            counts.set(e.v, e.u, c);
        }
    }

    let mut done = 1u64;
    let mut level = 1.0f64;
    while done < max_d {
        level = (level * 1.5).max(level + 1.0);
        let ell = (level.floor() as u64).min(max_d);
        let updates: Vec<Vec<(usize, BigUint)>> = (0..n)
            .into_par_iter()
            .map(|s| extend_source(g, &dist, &counts, s, done, ell))
            .collect();
        for (s, row) in updates.into_iter().enumerate() {
            for (v, c) in row {
                counts.set(s, v, c);
            }
        }
        done = ell;
    }

    Ok(CountMatrix {
        dist,
        data: CountData::Exact(counts),
    })
}

/// New counts for pairs (s, v) with done < D[s,v] <= ell. Band membership
/// and the recombination only read counts at distances at most `done`.
fn extend_source(
    g: &Graph,
    dist: &Matrix<Dist>,
    counts: &Matrix<BigUint>,
    s: usize,
    done: u64,
    ell: u64,
) -> Vec<(usize, BigUint)> {
    let n = g.n();
    let mut layers: Vec<Vec<usize>> = vec![Vec::new(); (ell + 1) as usize];
    let mut any_target = false;
    for v in 0..n {
        if let Some(d) = dist.get(s, v).value() {
            if d <= ell {
                layers[d as usize].push(v);
                any_target |= d > done;
            }
        }
    }
    if !any_target {
        return Vec::new();
    }
    // Middle band: prefer the thinnest layer inside [0.4l, 0.6l], falling
    // back to whatever slot keeps both halves inside the finished range.
    let lo = (2 * ell).div_ceil(5).max(ell.saturating_sub(done)).max(1);
    let hi = (3 * ell / 5).min(done);
    let (lo, hi) = if lo <= hi {
        (lo, hi)
    } else {
        (ell.saturating_sub(done).max(1), done.min(ell - 1))
    };
    debug_assert!(lo <= hi, "no band between done={done} and ell={ell}");
    let m = (lo..=hi)
        .min_by_key(|&cand| layers[cand as usize].len())
        .expect("nonempty band range");

    let mut out = Vec::new();
    for i in (done.max(m) + 1)..=ell {
        for &v in &layers[i as usize] {
            let mut total = BigUint::ZERO;
            for &u in &layers[m as usize] {
                if dist.get(u, v).value() == Some(i - m) {
                    total += counts.get(s, u) * counts.get(u, v);
                }
            }
            out.push((v, total));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::testutil::random_connected_undirected;
    use apsp_core::gen::{bigcount_layered, random_digraph};
    use apsp_core::oracles::oracle_count;

    #[test]
    fn four_cycle_has_two_routes() {
        let g = Graph::parse_text("graph undirected 4 4\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n").unwrap();
        let out = count_exact(&g).unwrap();
        let CountData::Exact(c) = &out.data else {
            panic!()
        };
        assert_eq!(*c.get(0, 2), BigUint::from(2u32));
        assert_eq!(*c.get(1, 3), BigUint::from(2u32));
        assert_eq!(*c.get(0, 1), BigUint::one());
    }

    #[test]
    fn layered_family_counts_double_per_layer() {
        let layers = 20;
        let n = 2 * (layers + 1);
        let mut g = Graph::new(n, true);
        for l in 0..layers {
            for a in 0..2 {
                for b in 0..2 {
                    g.add_edge(2 * l + a, 2 * (l + 1) + b, 1).unwrap();
                }
            }
        }
        let out = count_exact(&g).unwrap();
        let CountData::Exact(c) = &out.data else {
            panic!()
        };
        assert_eq!(*c.get(0, 2 * layers), BigUint::one() << (layers - 1));
    }

    #[test]
    fn random_graphs_match_the_dp_oracle() {
        for seed in 0..4 {
            let g = random_digraph(128, 500, 1, 1, seed);
            let out = count_exact(&g).unwrap();
            let (dist, want) = oracle_count(&g).unwrap();
            assert_eq!(out.dist, dist);
            let CountData::Exact(c) = &out.data else {
                panic!()
            };
            assert_eq!(c, &want, "seed {seed}");
        }
        let g = random_connected_undirected(96, 120, 9);
        let out = count_exact(&g).unwrap();
        let (_, want) = oracle_count(&g).unwrap();
        let CountData::Exact(c) = &out.data else {
            panic!()
        };
        assert_eq!(c, &want);
    }

    #[test]
    fn bigcount_family_is_exact_at_width() {
        let g = bigcount_layered(120);
        let out = count_exact(&g).unwrap();
        let (_, want) = oracle_count(&g).unwrap();
        let CountData::Exact(c) = &out.data else {
            panic!()
        };
        assert_eq!(c, &want);
        let bits = c.get(0, g.n() - 1).bits();
        assert!(bits >= 120 / 6, "only {bits} bits");
    }

    #[test]
    fn disconnected_pair_counts_zero() {
        let g = Graph::parse_text("graph undirected 3 1\n0 1 1\n").unwrap();
        let out = count_exact(&g).unwrap();
        let CountData::Exact(c) = &out.data else {
            panic!()
        };
        assert_eq!(*c.get(0, 2), BigUint::ZERO);
        assert!(out.dist.get(0, 2).is_inf());
    }
}
