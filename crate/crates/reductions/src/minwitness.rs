use apsp_core::dist::Dist;
use apsp_core::matrix::Matrix;

use crate::{Error, MinPlusInstance, Result};

/// Min-witness-equality encoding: columns of the left matrix (rows of the
/// right) are indexed by (value, inner index) with the value as the primary
/// sort key; `A'[i, (v,k)] = A[i,k]` and `B'[(v,k), j] = v - B[k,j]`, so the
/// smallest matching column index has `v = A[i,k] + B[k,j]` minimal. Both
/// matrices are padded square with sentinels that never match.
pub struct MinWitnessEncoding {
    pub a: Matrix<i64>,
    pub b: Matrix<i64>,
    pub inner: usize,
    pub values: usize,
    pub rows: usize,
    pub cols: usize,
}

const PAD_A: i64 = i64::MIN / 2;
const PAD_B: i64 = i64::MAX / 2;

pub fn encode_minplus_as_minwitness_eq(inst: &MinPlusInstance) -> Result<MinWitnessEncoding> {
    let (n1, n2, n3) = inst.dims();
    let values = (2 * inst.bound + 1) as usize;
    let mid = values * n2;
    let side = mid.max(n1).max(n3);
    let a = Matrix::from_fn(side, side, |i, c| {
        if i >= n1 || c >= mid {
            return PAD_A;
        }
        let k = c % n2;
        inst.a.get(i, k).expect_finite("validated entry") as i64
    });
    let b = Matrix::from_fn(side, side, |c, j| {
        if j >= n3 || c >= mid {
            return PAD_B;
        }
        let (v, k) = (c / n2, c % n2);
        v as i64 - inst.b.get(k, j).expect_finite("validated entry") as i64
    });
    Ok(MinWitnessEncoding {
        a,
        b,
        inner: n2,
        values,
        rows: n1,
        cols: n3,
    })
}

impl MinWitnessEncoding {
    /// Reads the product out of a min-witness-index matrix (entries are the
    /// smallest matching column index, or the none sentinel).
    pub fn decode(&self, witness: &Matrix<Option<usize>>) -> Result<Matrix<Dist>> {
        if witness.rows() < self.rows || witness.cols() < self.cols {
            return Err(Error::Decode("witness matrix too small".into()));
        }
        Ok(Matrix::from_fn(
            self.rows,
            self.cols,
            |i, j| match witness.get(i, j) {
                Some(c) => Dist::finite((c / self.inner) as u64),
                None => Dist::INF,
            },
        ))
    }
}

/// Reference solver: smallest index k with A[i,k] = B[k,j], by direct scan.
pub fn brute_minwitness_eq(a: &Matrix<i64>, b: &Matrix<i64>) -> Result<Matrix<Option<usize>>> {
    if a.rows() != a.cols() || b.rows() != b.cols() || a.cols() != b.rows() {
        return Err(Error::Validation(
            "min-witness equality expects square matrices of one size".into(),
        ));
    }
    let n = a.rows();
    let bt = b.transpose();
    Ok(Matrix::from_fn(n, n, |i, j| {
        let arow = a.row(i);
        let bcol = bt.row(j);
        (0..n).find(|&k| arow[k] == bcol[k])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use apsp_core::gen::random_minplus;
    use apsp_core::matrix::dist_matrix;

    #[test]
    fn witness_examples() {
        let a = Matrix::from_rows(vec![vec![5i64, 7], vec![1, 1]]).unwrap();
        let b = Matrix::from_rows(vec![vec![7i64, 2], vec![7, 3]]).unwrap();
        let w = brute_minwitness_eq(&a, &b).unwrap();
        assert_eq!(*w.get(0, 0), Some(1));
        assert_eq!(*w.get(1, 1), None);
    }

    #[test]
    fn double_computation_agrees() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let a = Matrix::from_fn(32, 32, |_, _| rng.random_range(0..6i64));
        let b = Matrix::from_fn(32, 32, |_, _| rng.random_range(0..6i64));
        let w = brute_minwitness_eq(&a, &b).unwrap();
        for i in 0..32 {
            for j in 0..32 {
                let mut rescan = None;
                for k in (0..32).rev() {
                    if a.get(i, k) == b.get(k, j) {
                        rescan = Some(k);
                    }
                }
                assert_eq!(*w.get(i, j), rescan);
            }
        }
    }

    #[test]
    fn single_cell_encoding() {
        let inst = MinPlusInstance::new(dist_matrix(&[&[1]]), dist_matrix(&[&[2]]), 2).unwrap();
        let enc = encode_minplus_as_minwitness_eq(&inst).unwrap();
        let w = brute_minwitness_eq(&enc.a, &enc.b).unwrap();
        let decoded = enc.decode(&w).unwrap();
        assert_eq!(*decoded.get(0, 0), Dist::finite(3));
    }

    #[test]
    fn random_round_trips() {
        for seed in 0..30 {
            let (a, b) = random_minplus(6, 3, 6, 5, seed);
            let inst = MinPlusInstance::new(a, b, 5).unwrap();
            let enc = encode_minplus_as_minwitness_eq(&inst).unwrap();
            let w = brute_minwitness_eq(&enc.a, &enc.b).unwrap();
            let decoded = enc.decode(&w).unwrap();
            assert_eq!(decoded, inst.brute_product(), "seed {seed}");
        }
    }
}
