use apsp_core::graph::Graph;
use apsp_core::matrix::Matrix;

use crate::error::{Error, Result};
use crate::exact::seidel_apsp;

use super::{matmul_capped, matmul_mod, CountData, CountMatrix};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SeidelCountMode {
    Mod(u64),
    Capped(u64),
}

/// Distances and shortest-path counts (modulo U or capped at U) for an
/// undirected unweighted graph through the squaring recursion.
///
/// Distances come from the boolean squaring solver; the distance in the
/// 2^level-th power graph is just the ceiling-divided original distance, so
/// the counting pass is a plain ladder. Going up, the multiplicity adjacency
/// of each squared graph is `A + A^2` over the count ring; coming down,
/// even pairs inherit their count and odd pairs take one masked product of
/// predecessor counts (isolated by their mod-3 distance class) against the
/// current multiplicities.
pub fn count_undirected_seidel(g: &Graph, mode: SeidelCountMode) -> Result<CountMatrix> {
    if g.is_directed() {
        return Err(Error::invalid(
            "count_undirected_seidel needs an undirected graph",
        ));
    }
    if !g.is_unweighted() {
        return Err(Error::invalid(
            "count_undirected_seidel needs an unweighted graph",
        ));
    }
    let ring = match mode {
        SeidelCountMode::Mod(u) | SeidelCountMode::Capped(u) => {
            if u < 2 {
                return Err(Error::invalid("count modulus/cap must be at least 2"));
            }
            u
        }
    };
    let _ = ring;
    let n = g.n();
    let dist = seidel_apsp(g)?;
    let max_d = dist.max_finite().unwrap_or(0);

    let reduce = |v: u64| match mode {
        SeidelCountMode::Mod(u) => v % u,
        SeidelCountMode::Capped(u) => v.min(u),
    };
    let ring_matmul = |a: &Matrix<u64>, b: &Matrix<u64>| match mode {
        SeidelCountMode::Mod(u) => matmul_mod(a, b, u),
        SeidelCountMode::Capped(u) => matmul_capped(a, b, u),
    };

    // Multiplicity ladder: mults[level] is the count-ring adjacency of the
    // 2^level-th power graph, zero diagonal.
    let mut adj = Matrix::new(n, n, 0u64)?;
    for e in g.edges() {
        let c = reduce(*adj.get(e.u, e.v) + 1);
        adj.set(e.u, e.v, c);
        adj.set(e.v, e.u, c);
    }
    let mut mults = vec![adj];
    while 1u64 << (mults.len() - 1) < max_d.max(1) {
        let prev = mults.last().unwrap();
        let mut sq = ring_matmul(prev, prev);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    sq.set(i, j, 0);
                } else {
                    let c = reduce(*sq.get(i, j) + *prev.get(i, j));
                    sq.set(i, j, c);
                }
            }
        }
        mults.push(sq);
    }

    // Distance in the 2^level power graph.
    let level_dist = |u: usize, v: usize, level: usize| -> Option<u64> {
        dist.get(u, v).value().map(|d| d.div_ceil(1 << level))
    };

    // Top level: diameter at most one, counts are the multiplicities.
    let top = mults.len() - 1;
    let mut counts = mults[top].clone();
    for i in 0..n {
        counts.set(i, i, reduce(1));
    }

    for level in (0..top).rev() {
        let mut masked = [
            Matrix::new(n, n, 0u64)?,
            Matrix::new(n, n, 0u64)?,
            Matrix::new(n, n, 0u64)?,
        ];
        for u in 0..n {
            for x in 0..n {
                if let Some(d) = level_dist(u, x, level) {
                    masked[(d % 3) as usize].set(u, x, *counts.get(u, x));
                }
            }
        }
        let odd_products: Vec<Matrix<u64>> = masked
            .iter()
            .map(|m| ring_matmul(m, &mults[level]))
            .collect();
        let mut next = Matrix::new(n, n, 0u64)?;
        for u in 0..n {
            for v in 0..n {
                let Some(d) = level_dist(u, v, level) else {
                    continue;
                };
                let value = if u == v {
                    reduce(1)
                } else if d % 2 == 0 {
                    *counts.get(u, v)
                } else {
                    let j = ((d + 2) % 3) as usize;
                    *odd_products[j].get(u, v)
                };
                next.set(u, v, value);
            }
        }
        counts = next;
    }

    let data = match mode {
        SeidelCountMode::Mod(u) => CountData::Mod(u, counts),
        SeidelCountMode::Capped(u) => CountData::Capped(u, counts),
    };
    Ok(CountMatrix { dist, data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::testutil::random_connected_undirected;
    use apsp_core::oracles::oracle_count;
    use num_bigint::BigUint;

    fn table(out: &CountMatrix) -> &Matrix<u64> {
        match &out.data {
            CountData::Capped(_, m) | CountData::Mod(_, m) => m,
            _ => panic!("wrong mode"),
        }
    }

    #[test]
    fn four_cycle_mod_two() {
        let g = Graph::parse_text("graph undirected 4 4\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n").unwrap();
        let out = count_undirected_seidel(&g, SeidelCountMode::Mod(2)).unwrap();
        let c = table(&out);
        assert_eq!(*c.get(0, 2), 0, "two paths, even");
        assert_eq!(*c.get(0, 1), 1);
        let capped = count_undirected_seidel(&g, SeidelCountMode::Capped(2)).unwrap();
        assert_eq!(*table(&capped).get(0, 2), 2);
    }

    #[test]
    fn tree_counts_stay_one() {
        let mut g = Graph::new(10, false);
        for v in 1..10 {
            g.add_edge((v - 1) / 2, v, 1).unwrap();
        }
        for mode in [SeidelCountMode::Mod(5), SeidelCountMode::Capped(7)] {
            let out = count_undirected_seidel(&g, mode).unwrap();
            let c = table(&out);
            for u in 0..10 {
                for v in 0..10 {
                    assert_eq!(*c.get(u, v), 1, "{mode:?} ({u},{v})");
                }
            }
        }
    }

    #[test]
    fn random_graphs_match_oracle_reductions() {
        for seed in 0..4 {
            let g = random_connected_undirected(128, 220, seed);
            let (_, exact) = oracle_count(&g).unwrap();
            for u in [2u64, 97, 1_000_003] {
                let out = count_undirected_seidel(&g, SeidelCountMode::Mod(u)).unwrap();
                let c = table(&out);
                for a in 0..g.n() {
                    for b in 0..g.n() {
                        let want = exact.get(a, b) % BigUint::from(u);
                        assert_eq!(BigUint::from(*c.get(a, b)), want, "mod {u} ({a},{b})");
                    }
                }
                let out = count_undirected_seidel(&g, SeidelCountMode::Capped(u)).unwrap();
                let c = table(&out);
                let capped = BigUint::from(u);
                for a in 0..g.n() {
                    for b in 0..g.n() {
                        let want = exact.get(a, b).min(&capped);
                        assert_eq!(BigUint::from(*c.get(a, b)), *want, "cap {u} ({a},{b})");
                    }
                }
            }
        }
    }

    #[test]
    fn counts_are_symmetric() {
        let g = random_connected_undirected(64, 90, 5);
        let out = count_undirected_seidel(&g, SeidelCountMode::Mod(97)).unwrap();
        let c = table(&out);
        for u in 0..g.n() {
            for v in 0..g.n() {
                assert_eq!(c.get(u, v), c.get(v, u));
            }
        }
    }
}
