//! Shortest-path counting in four value domains: exact big integers, counts
//! capped at U, counts modulo U, and floating (1+1/U)-approximations, plus
//! betweenness centrality on top of them.

mod approx_counts;
mod betweenness;
mod capped_directed;
mod exact;
mod mod_directed;
mod seidel_counts;

pub use approx_counts::count_approx;
pub use betweenness::{betweenness, betweenness_all_exact, BCValue, BetweennessMode};
pub use capped_directed::count_capped_directed;
pub use exact::count_exact;
pub use mod_directed::count_mod_directed;
pub use seidel_counts::{count_undirected_seidel, SeidelCountMode};

use apsp_core::dist::Dist;
use apsp_core::engines::ApproxCount;
use apsp_core::matrix::Matrix;
use num_bigint::BigUint;

/// Count matrix with its companion distance matrix. Counts are zero exactly
/// where the distance is infinite (except in the modular domain, where a
/// count can legitimately reduce to zero), and the diagonal counts one empty
/// path.
pub struct CountMatrix {
    pub dist: Matrix<Dist>,
    pub data: CountData,
}

pub enum CountData {
    Exact(Matrix<BigUint>),
    Capped(u64, Matrix<u64>),
    Mod(u64, Matrix<u64>),
    Approx(u64, Matrix<ApproxCount>),
}

impl CountMatrix {
    pub fn mode_name(&self) -> &'static str {
        match self.data {
            CountData::Exact(_) => "exact",
            CountData::Capped(..) => "capped",
            CountData::Mod(..) => "mod",
            CountData::Approx(..) => "approx",
        }
    }

    /// Count as a display token, for serialization.
    pub fn count_token(&self, i: usize, j: usize) -> String {
        match &self.data {
            CountData::Exact(m) => m.get(i, j).to_string(),
            CountData::Capped(_, m) | CountData::Mod(_, m) => m.get(i, j).to_string(),
            CountData::Approx(_, m) => format!("{:.6e}", m.get(i, j).to_f64_lossy()),
        }
    }
}

/// Chunked matrix product over Z_U: partial sums stay below 2^64 and are
/// reduced per block.
pub(crate) fn matmul_mod(a: &Matrix<u64>, b: &Matrix<u64>, modulus: u64) -> Matrix<u64> {
    assert_eq!(a.cols(), b.rows());
    assert!(modulus >= 2);
    let bt = b.transpose();
    let sq = (modulus - 1).saturating_mul(modulus - 1);
    let block = (u64::MAX / sq.max(1)).max(1) as usize;
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        let arow = a.row(i);
        let brow = bt.row(j);
        let mut total = 0u64;
        for chunk in (0..a.cols()).collect::<Vec<_>>().chunks(block) {
            let mut acc = 0u64;
            for &k in chunk {
                acc += arow[k] * brow[k];
            }
            total = (total + acc % modulus) % modulus;
        }
        total
    })
}

/// Saturating matrix product capped at `cap` per entry.
pub(crate) fn matmul_capped(a: &Matrix<u64>, b: &Matrix<u64>, cap: u64) -> Matrix<u64> {
    assert_eq!(a.cols(), b.rows());
    let bt = b.transpose();
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        let arow = a.row(i);
        let brow = bt.row(j);
        let mut acc = 0u64;
        for k in 0..a.cols() {
            acc = acc.saturating_add(arow[k].saturating_mul(brow[k]));
            if acc >= cap {
                return cap;
            }
        }
        acc.min(cap)
    })
}

#[cfg(test)]
pub(crate) mod testutil {
    use apsp_core::graph::Graph;

    /// Random connected-ish undirected unweighted graph.
    pub fn random_connected_undirected(n: usize, extra: usize, seed: u64) -> Graph {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut g = Graph::new(n, false);
        for v in 1..n {
            let u = rng.random_range(0..v);
            g.add_edge(u, v, 1).unwrap();
        }
        let mut added = 0;
        while added < extra {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v {
                g.add_edge(u, v, 1).ok();
                added += 1;
            }
        }
        g
    }
}
