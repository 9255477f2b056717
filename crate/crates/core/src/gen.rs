//! Deterministic random-instance generators shared by the command-line
//! driver and the test suites. Every generator is a pure function of its
//! arguments and seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dist::Dist;
use crate::graph::{Color, Graph};
use crate::matrix::Matrix;

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_digraph(n: usize, m: usize, wlo: i64, whi: i64, seed: u64) -> Graph {
    let mut rng = rng_for(seed);
    let mut g = Graph::new(n, true);
    let mut added = 0;
    while added < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            g.add_edge(u, v, rng.random_range(wlo..=whi)).unwrap();
            added += 1;
        }
    }
    g
}

pub fn random_undirected(n: usize, m: usize, wlo: i64, whi: i64, seed: u64) -> Graph {
    let mut rng = rng_for(seed);
    let mut g = Graph::new(n, false);
    let mut added = 0;
    while added < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            g.add_edge(u, v, rng.random_range(wlo..=whi)).unwrap();
            added += 1;
        }
    }
    g
}

/// Digraph with negative weights but no negative cycle: non-negative base
/// weights shifted by vertex potentials, so cycle sums keep their base value.
pub fn random_digraph_no_negcycle(
    n: usize,
    m: usize,
    base_hi: i64,
    pot_hi: i64,
    seed: u64,
) -> Graph {
    let mut rng = rng_for(seed);
    let pot: Vec<i64> = (0..n).map(|_| rng.random_range(0..=pot_hi)).collect();
    let mut g = Graph::new(n, true);
    let mut added = 0;
    while added < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            let w = rng.random_range(0..=base_hi) - pot[u] + pot[v];
            g.add_edge(u, v, w).unwrap();
            added += 1;
        }
    }
    g
}

/// Unweighted undirected graph with every edge colored red or blue.
pub fn random_colored(n: usize, m: usize, red_prob: f64, seed: u64) -> Graph {
    let mut rng = rng_for(seed);
    let mut g = Graph::new(n, false);
    let mut added = 0;
    while added < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            let color = if rng.random::<f64>() < red_prob {
                Color::Red
            } else {
                Color::Blue
            };
            g.add_colored_edge(u, v, 1, color).unwrap();
            added += 1;
        }
    }
    g
}

/// Graph with primary weights in [w1lo, w1hi] and secondary weights in
/// [w2lo, w2hi].
#[allow(clippy::too_many_arguments)]
pub fn random_dual(
    n: usize,
    m: usize,
    directed: bool,
    w1lo: i64,
    w1hi: i64,
    w2lo: i64,
    w2hi: i64,
    seed: u64,
) -> Graph {
    let mut rng = rng_for(seed);
    let mut g = Graph::new(n, directed);
    let mut added = 0;
    while added < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            g.add_dual_edge(
                u,
                v,
                rng.random_range(w1lo..=w1hi),
                rng.random_range(w2lo..=w2hi),
            )
            .unwrap();
            added += 1;
        }
    }
    g
}

/// Layered digraph whose end-to-end shortest-path counts have on the order
/// of n/3 bits: about n/3 leading layers of width two joined by complete
/// bipartite steps, then two trailing layers of width about n/6.
pub fn bigcount_layered(n: usize) -> Graph {
    let narrow = (n / 3).max(1);
    let wide = (n / 6).max(1);
    let total = 2 * narrow + 2 * wide;
    let mut g = Graph::new(total, true);
    let layer_start = |i: usize| -> (usize, usize) {
        if i < narrow {
            (2 * i, 2)
        } else {
            (2 * narrow + (i - narrow) * wide, wide)
        }
    };
    for i in 0..narrow + 1 {
        let (a_start, a_len) = layer_start(i);
        let (b_start, b_len) = layer_start(i + 1);
        for a in 0..a_len {
            for b in 0..b_len {
                g.add_edge(a_start + a, b_start + b, 1).unwrap();
            }
        }
    }
    g
}

/// Random rectangular min-plus instance with entries in [1, max_entry].
pub fn random_minplus(
    n1: usize,
    n2: usize,
    n3: usize,
    max_entry: u64,
    seed: u64,
) -> (Matrix<Dist>, Matrix<Dist>) {
    let mut rng = rng_for(seed);
    let a = Matrix::from_fn(n1, n2, |_, _| Dist::finite(rng.random_range(1..=max_entry)));
    let b = Matrix::from_fn(n2, n3, |_, _| Dist::finite(rng.random_range(1..=max_entry)));
    (a, b)
}

/// Random distance matrix with an infinity share, for engine tests.
pub fn random_dist_matrix(
    rows: usize,
    cols: usize,
    max: u64,
    inf_prob: f64,
    seed: u64,
) -> Matrix<Dist> {
    let mut rng = rng_for(seed);
    Matrix::from_fn(rows, cols, |_, _| {
        if rng.random::<f64>() < inf_prob {
            Dist::INF
        } else {
            Dist::finite(rng.random_range(0..=max))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn generators_are_deterministic() {
        let a = random_digraph(20, 50, 0, 5, 9);
        let b = random_digraph(20, 50, 0, 5, 9);
        assert_eq!(a.to_text(), b.to_text());
        let (x1, y1) = random_minplus(4, 3, 4, 6, 2);
        let (x2, y2) = random_minplus(4, 3, 4, 6, 2);
        assert_eq!(x1, x2);
        assert_eq!(y1, y2);
    }

    #[test]
    fn bigcount_family_has_long_counts() {
        let g = bigcount_layered(60);
        let (_, counts) = crate::oracles::oracle_count(&g).unwrap();
        let last = g.n() - 1;
        let bits = counts.get(0, last).bits();
        assert!(
            bits >= 10,
            "end-to-end count has {bits} bits: {}",
            counts.get(0, last)
        );
        assert!(*counts.get(0, last) >= BigUint::from(1u32) << (60 / 6));
    }

    #[test]
    fn no_negcycle_generator_is_safe() {
        for seed in 0..10 {
            let g = random_digraph_no_negcycle(40, 150, 2, 3, seed);
            assert!(crate::oracles::johnson_potentials(&g).is_ok());
        }
    }
}
