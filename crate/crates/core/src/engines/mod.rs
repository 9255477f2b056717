//! Min-plus and counting matrix products.
//!
//! All engines compute the same product `C[i,j] = min_k (A[i,k] + B[k,j])`;
//! they differ in how the inner loop is organized. Every engine also returns
//! a witness matrix: whenever `C[i,j]` is finite, `A[i,W[i,j]] + B[W[i,j],j]
//! = C[i,j]`.

mod approx;
mod brute;
mod pairs;
mod scaled;
mod shifted;
mod sparse;

pub use approx::{approx_count_product, approx_matmul, ApproxCount};
pub use pairs::{funny_product, witness_count_product, PairMatrix};
pub use scaled::{minplus_scaled, scaled_digits};
pub use shifted::{minplus_shifted, verify_shifted_precondition};
pub use sparse::minplus_sparse_range;

use crate::bounds::EntryBounds;
use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Column index attaining the minimum for a product cell, or `NO_WITNESS`
/// when the cell is infinite.
pub const NO_WITNESS: u32 = u32::MAX;

pub type WitnessMatrix = Matrix<u32>;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EngineKind {
    Brute,
    Blocked,
    Scaled,
    Auto,
}

/// Selects and parameterizes a product kernel.
#[derive(Copy, Clone, Debug)]
pub struct ProductEngine {
    pub kind: EngineKind,
    /// Tile edge for the blocked kernel.
    pub block_size: usize,
    /// Group size for the rank-grouped sparse product.
    pub group_size: usize,
}

impl ProductEngine {
    pub fn brute() -> ProductEngine {
        ProductEngine {
            kind: EngineKind::Brute,
            block_size: 64,
            group_size: 8,
        }
    }

    pub fn blocked() -> ProductEngine {
        ProductEngine {
            kind: EngineKind::Blocked,
            ..ProductEngine::brute()
        }
    }

    pub fn scaled() -> ProductEngine {
        ProductEngine {
            kind: EngineKind::Scaled,
            ..ProductEngine::brute()
        }
    }

    pub fn auto() -> ProductEngine {
        ProductEngine {
            kind: EngineKind::Auto,
            ..ProductEngine::brute()
        }
    }

    pub fn parse(name: &str) -> Result<ProductEngine> {
        match name {
            "brute" => Ok(ProductEngine::brute()),
            "blocked" => Ok(ProductEngine::blocked()),
            "scaled" => Ok(ProductEngine::scaled()),
            "auto" => Ok(ProductEngine::auto()),
            other => Err(Error::invalid(format!("unknown engine `{other}`"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.block_size == 0 || self.group_size == 0 {
            return Err(Error::invalid("block_size and group_size must be >= 1"));
        }
        Ok(())
    }
}

pub(crate) fn check_product_dims<T, U>(a: &Matrix<T>, b: &Matrix<U>) -> Result<()> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch {
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    Ok(())
}

/// Min-plus product dispatching on the engine. `Auto` routes through the
/// scaled encoding when the measured entry bound makes the digit product
/// cheaper than the cubic kernel, otherwise through the blocked kernel.
pub fn minplus(
    a: &Matrix<Dist>,
    b: &Matrix<Dist>,
    engine: &ProductEngine,
) -> Result<(Matrix<Dist>, WitnessMatrix)> {
    engine.validate()?;
    check_product_dims(a, b)?;
    match engine.kind {
        EngineKind::Brute => Ok(brute::minplus_brute(a, b)),
        EngineKind::Blocked => Ok(brute::minplus_blocked(a, b, engine.block_size)),
        EngineKind::Scaled => {
            let bounds = EntryBounds::measure(a, b);
            scaled::minplus_scaled_with_witness(a, b, &bounds)
        }
        EngineKind::Auto => {
            let bounds = EntryBounds::measure(a, b);
            if scaled::scaled_is_cheaper(a, b, &bounds) {
                scaled::minplus_scaled_with_witness(a, b, &bounds)
            } else {
                Ok(brute::minplus_blocked(a, b, engine.block_size))
            }
        }
    }
}

/// Checks the witness invariant for a computed product.
pub fn verify_witness(
    a: &Matrix<Dist>,
    b: &Matrix<Dist>,
    c: &Matrix<Dist>,
    w: &WitnessMatrix,
) -> bool {
    for i in 0..c.rows() {
        for j in 0..c.cols() {
            let cv = *c.get(i, j);
            if cv.is_finite() {
                let k = *w.get(i, j);
                if k == NO_WITNESS {
                    return false;
                }
                let k = k as usize;
                if *a.get(i, k) + *b.get(k, j) != cv {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::dist_matrix;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn naive(a: &Matrix<Dist>, b: &Matrix<Dist>) -> Matrix<Dist> {
        Matrix::from_fn(a.rows(), b.cols(), |i, j| {
            let mut best = Dist::INF;
            for k in 0..a.cols() {
                best = best.min(*a.get(i, k) + *b.get(k, j));
            }
            best
        })
    }

    pub(crate) fn random_dist_matrix(
        rng: &mut StdRng,
        rows: usize,
        cols: usize,
        max: u64,
        inf_prob: f64,
    ) -> Matrix<Dist> {
        Matrix::from_fn(rows, cols, |_, _| {
            if rng.random::<f64>() < inf_prob {
                Dist::INF
            } else {
                Dist::finite(rng.random_range(0..=max))
            }
        })
    }

    #[test]
    fn hand_example() {
        let a = dist_matrix(&[&[0, 1], &[2, 3]]);
        let b = dist_matrix(&[&[1, 0], &[0, 1]]);
        let want = dist_matrix(&[&[1, 0], &[3, 2]]);
        for engine in [
            ProductEngine::brute(),
            ProductEngine::blocked(),
            ProductEngine::scaled(),
        ] {
            let (c, w) = minplus(&a, &b, &engine).unwrap();
            assert_eq!(c, want, "engine {:?}", engine.kind);
            assert!(verify_witness(&a, &b, &c, &w));
        }
    }

    #[test]
    fn identity_is_neutral() {
        let mut rng = StdRng::seed_from_u64(7);
        let a = random_dist_matrix(&mut rng, 9, 9, 30, 0.2);
        let id = Matrix::minplus_identity(9).unwrap();
        let (c, _) = minplus(&a, &id, &ProductEngine::brute()).unwrap();
        assert_eq!(c, a);
        let (c, _) = minplus(&id, &a, &ProductEngine::blocked()).unwrap();
        assert_eq!(c, a);
    }

    #[test]
    fn engines_agree_with_oracle() {
        let mut rng = StdRng::seed_from_u64(99);
        for round in 0..40 {
            let (r, m, c) = (
                rng.random_range(1..=20),
                rng.random_range(1..=15),
                rng.random_range(1..=20),
            );
            let a = random_dist_matrix(&mut rng, r, m, 50, 0.25);
            let b = random_dist_matrix(&mut rng, m, c, 50, 0.25);
            let want = naive(&a, &b);
            for engine in [
                ProductEngine::brute(),
                ProductEngine::blocked(),
                ProductEngine::scaled(),
                ProductEngine::auto(),
            ] {
                let (got, w) = minplus(&a, &b, &engine).unwrap();
                assert_eq!(got, want, "round {round} engine {:?}", engine.kind);
                assert!(verify_witness(&a, &b, &got, &w));
            }
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = dist_matrix(&[&[0, 1]]);
        let b = dist_matrix(&[&[0, 1]]);
        assert!(minplus(&a, &b, &ProductEngine::brute()).is_err());
    }

    #[test]
    fn associativity_on_square_instances() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..10 {
            let a = random_dist_matrix(&mut rng, 16, 16, 40, 0.2);
            let b = random_dist_matrix(&mut rng, 16, 16, 40, 0.2);
            let c = random_dist_matrix(&mut rng, 16, 16, 40, 0.2);
            let e = ProductEngine::brute();
            let (ab, _) = minplus(&a, &b, &e).unwrap();
            let (ab_c, _) = minplus(&ab, &c, &e).unwrap();
            let (bc, _) = minplus(&b, &c, &e).unwrap();
            let (a_bc, _) = minplus(&a, &bc, &e).unwrap();
            assert_eq!(ab_c, a_bc);
        }
    }
}
