use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

use super::check_product_dims;

/// Aligned (distance, count) matrices. Counts are zero exactly where the
/// distance is infinite, and saturate at the product cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMatrix {
    pub dist: Matrix<Dist>,
    pub count: Matrix<u64>,
}

impl PairMatrix {
    pub fn new(dist: Matrix<Dist>, count: Matrix<u64>) -> Result<PairMatrix> {
        if !dist.same_shape(&count) {
            return Err(Error::invalid("distance and count shapes differ"));
        }
        let pm = PairMatrix { dist, count };
        pm.validate(u64::MAX)?;
        Ok(pm)
    }

    pub fn validate(&self, cap: u64) -> Result<()> {
        for (i, j, d) in self.dist.iter() {
            let c = *self.count.get(i, j);
            if d.is_inf() != (c == 0) {
                return Err(Error::validation(format!(
                    "count/distance mismatch at ({i}, {j}): dist {d}, count {c}"
                )));
            }
            if c > cap {
                return Err(Error::validation(format!(
                    "count {c} at ({i}, {j}) exceeds cap {cap}"
                )));
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.dist.rows()
    }

    pub fn cols(&self) -> usize {
        self.dist.cols()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PairMatrix {
        PairMatrix {
            dist: self.dist.submatrix(rows, cols),
            count: self.count.submatrix(rows, cols),
        }
    }
}

/// Paired (min, +) / (+, *) product: the distance part is the min-plus
/// product, the count part sums `A'[i,k] * B'[k,j]` over the minimizing `k`,
/// saturating at `cap`.
///
/// Conceptually each pair `(d, c)` is the monomial `c * M^d` for a base `M`
/// larger than any per-exponent coefficient; multiplying the encoded matrices
/// accumulates coefficients per exponent with no carries, and each output
/// cell reads its lowest nonzero digit. The digit accumulator below is that
/// encoding with the digit index kept explicit.
pub fn funny_product(a: &PairMatrix, b: &PairMatrix, cap: u64) -> Result<PairMatrix> {
    check_product_dims(&a.dist, &b.dist)?;
    let (n1, n2, n3) = (a.rows(), a.cols(), b.cols());
    let max_a = a.dist.max_finite().unwrap_or(0);
    let max_b = b.dist.max_finite().unwrap_or(0);
    let digits = (max_a + max_b + 2) as usize;
    if digits > (1 << 24) {
        return Err(Error::invalid(
            "distance entries too large for digit accumulator",
        ));
    }
    let mut scratch = vec![0u64; digits];
    let bt_dist = b.dist.transpose();
    let bt_count = b.count.transpose();
    let mut dist = Matrix::new(n1, n3, Dist::INF)?;
    let mut count = Matrix::new(n1, n3, 0u64)?;
    for i in 0..n1 {
        let ad = a.dist.row(i);
        let ac = a.count.row(i);
        for j in 0..n3 {
            let bd = bt_dist.row(j);
            let bc = bt_count.row(j);
            let mut lowest = usize::MAX;
            for k in 0..n2 {
                if let (Some(x), Some(y)) = (ad[k].value(), bd[k].value()) {
                    let s = (x + y) as usize;
                    let term = ac[k].saturating_mul(bc[k]);
                    scratch[s] = scratch[s].saturating_add(term).min(cap);
                    if s < lowest {
                        lowest = s;
                    }
                }
            }
            if lowest != usize::MAX {
                dist.set(i, j, Dist::finite(lowest as u64));
                count.set(i, j, scratch[lowest]);
            }
            for k in 0..n2 {
                if let (Some(x), Some(y)) = (ad[k].value(), bd[k].value()) {
                    scratch[(x + y) as usize] = 0;
                }
            }
        }
    }
    Ok(PairMatrix { dist, count })
}

/// Number of minimizing indices per output cell of the min-plus product,
/// exact and uncapped.
pub fn witness_count_product(
    a: &Matrix<Dist>,
    b: &Matrix<Dist>,
) -> Result<(Matrix<Dist>, Matrix<u64>)> {
    check_product_dims(a, b)?;
    let (n1, n2, n3) = (a.rows(), a.cols(), b.cols());
    let bt = b.transpose();
    let mut dist = Matrix::new(n1, n3, Dist::INF)?;
    let mut count = Matrix::new(n1, n3, 0u64)?;
    for i in 0..n1 {
        let arow = a.row(i);
        for j in 0..n3 {
            let bcol = bt.row(j);
            let mut best = Dist::INF;
            for k in 0..n2 {
                best = best.min(arow[k] + bcol[k]);
            }
            if best.is_finite() {
                let c = (0..n2).filter(|&k| arow[k] + bcol[k] == best).count() as u64;
                dist.set(i, j, best);
                count.set(i, j, c);
            }
        }
    }
    Ok((dist, count))
}
