use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

use super::{brute, check_product_dims};

/// Min-plus product for a small-entry left matrix against a right matrix
/// whose entries may be large but satisfy, for every i, j, k, k',
///
/// ```text
/// B[k,j] <= A[i,k] + A[i,k'] + B[k',j]
/// ```
///
/// Six products of `A` against `(B + t*l) mod 6l` cover every output cell:
/// the condition pins all relevant entries of a column within a `2l` band, so
/// one of the six shifts places the band away from the wrap point and the
/// true minimum survives with a per-cell constant offset.
///
/// With `check` set the precondition is verified up front (cubic time) and a
/// violation is reported instead of silently mis-multiplying.
pub fn minplus_shifted(
    a: &Matrix<Dist>,
    b: &Matrix<Dist>,
    ell: u64,
    check: bool,
) -> Result<Matrix<Dist>> {
    check_product_dims(a, b)?;
    for (i, j, d) in a.iter() {
        if let Some(v) = d.value() {
            if v > ell {
                return Err(Error::BoundViolation {
                    row: i,
                    col: j,
                    value: v,
                    bound: ell,
                });
            }
        }
    }
    if check {
        verify_shifted_precondition(a, b)?;
    }
    let ell = ell.max(1);
    let modulus = 6 * ell;

    let shifted_products: Vec<Matrix<Dist>> = (0..6u64)
        .map(|t| {
            let bt = b.map(|d| match d.value() {
                Some(v) => Dist::finite((v + t * ell) % modulus),
                None => Dist::INF,
            });
            brute::minplus_blocked(a, &bt, 64).0
        })
        .collect();

    let first_finite: Vec<Option<usize>> = (0..a.rows())
        .map(|i| (0..a.cols()).find(|&k| a.get(i, k).is_finite()))
        .collect();

    let mut c = Matrix::new(a.rows(), b.cols(), Dist::INF)?;
    for i in 0..a.rows() {
        let Some(k0) = first_finite[i] else { continue };
        for j in 0..b.cols() {
            // If B[k0, j] is infinite the precondition forces every other
            // A-supported entry of the column to be infinite as well.
            let Some(bv) = b.get(k0, j).value() else {
                continue;
            };
            let t = (0..6u64)
                .find(|&t| {
                    let r = (bv + t * ell) % modulus;
                    (2 * ell..3 * ell).contains(&r)
                })
                .expect("six shifts partition the residue circle");
            let shifted = (bv + t * ell) % modulus;
            if let Some(p) = shifted_products[t as usize].get(i, j).value() {
                let v = p as i128 + bv as i128 - shifted as i128;
                debug_assert!(v >= 0);
                c.set(i, j, Dist::finite(v as u64));
            }
        }
    }
    Ok(c)
}

/// Full check of the band condition above; errors name the first offending
/// quadruple.
pub fn verify_shifted_precondition(a: &Matrix<Dist>, b: &Matrix<Dist>) -> Result<()> {
    for i in 0..a.rows() {
        let ks: Vec<usize> = (0..a.cols()).filter(|&k| a.get(i, k).is_finite()).collect();
        if ks.is_empty() {
            continue;
        }
        for j in 0..b.cols() {
            // max_k (B[k,j] - A[i,k]) <= min_k' (A[i,k'] + B[k',j])
            let mut hi = i128::MIN;
            let mut hi_k = 0;
            let mut lo = i128::MAX;
            let mut lo_k = 0;
            for &k in &ks {
                let av = a.get(i, k).raw() as i128;
                let bv = if b.get(k, j).is_inf() {
                    i128::MAX / 4
                } else {
                    b.get(k, j).raw() as i128
                };
                if bv - av > hi {
                    hi = bv - av;
                    hi_k = k;
                }
                if av + bv < lo {
                    lo = av + bv;
                    lo_k = k;
                }
            }
            if hi > lo {
                return Err(Error::PreconditionViolation(format!(
                    "band condition fails at i={i}, j={j}, k={hi_k}, k'={lo_k}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn naive(a: &Matrix<Dist>, b: &Matrix<Dist>) -> Matrix<Dist> {
        Matrix::from_fn(a.rows(), b.cols(), |i, j| {
            (0..a.cols()).fold(Dist::INF, |acc, k| acc.min(*a.get(i, k) + *b.get(k, j)))
        })
    }

    /// Distance matrix of a random connected undirected graph; submatrices of
    /// it satisfy the band condition through the triangle inequality.
    fn random_distance_matrix(rng: &mut StdRng, n: usize, wmax: u64) -> Matrix<Dist> {
        let mut d = Matrix::new(n, n, Dist::INF).unwrap();
        for i in 0..n {
            d.set(i, i, Dist::ZERO);
        }
        let set_edge = |d: &mut Matrix<Dist>, u: usize, v: usize, w: u64| {
            let w = Dist::finite(w);
            if w < *d.get(u, v) {
                d.set(u, v, w);
                d.set(v, u, w);
            }
        };
        for v in 1..n {
            let u = rng.random_range(0..v);
            set_edge(&mut d, u, v, rng.random_range(1..=wmax));
        }
        for _ in 0..2 * n {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v {
                set_edge(&mut d, u, v, rng.random_range(1..=wmax));
            }
        }
        // Floyd-Warshall closure.
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = *d.get(i, k) + *d.get(k, j);
                    if via < *d.get(i, j) {
                        d.set(i, j, via);
                    }
                }
            }
        }
        d
    }

    #[test]
    fn distance_submatrices_match_brute() {
        let mut rng = StdRng::seed_from_u64(17);
        for n in [8, 20, 48] {
            let d = random_distance_matrix(&mut rng, n, 4);
            let rows: Vec<usize> = (0..n).filter(|_| rng.random::<f64>() < 0.5).collect();
            let mids: Vec<usize> = (0..n).filter(|_| rng.random::<f64>() < 0.4).collect();
            let all: Vec<usize> = (0..n).collect();
            if rows.is_empty() || mids.is_empty() {
                continue;
            }
            let a = d.submatrix(&rows, &mids);
            let b = d.submatrix(&mids, &all);
            let ell = a.max_finite().unwrap_or(0);
            let got = minplus_shifted(&a, &b, ell, true).unwrap();
            assert_eq!(got, naive(&a, &b), "n={n}");
        }
    }

    #[test]
    fn single_finite_column_degenerates_to_direct_sum() {
        let mut rng = StdRng::seed_from_u64(5);
        let n = 12;
        let a = Matrix::from_fn(n, n, |_, k| {
            if k == 3 {
                Dist::finite(rng.random_range(0..5))
            } else {
                Dist::INF
            }
        });
        let b = Matrix::from_fn(n, n, |_, _| Dist::finite(rng.random_range(0..50)));
        let got = minplus_shifted(&a, &b, 5, false).unwrap();
        assert_eq!(got, naive(&a, &b));
    }

    #[test]
    fn loose_bound_reduces_to_six_scaled_products() {
        let mut rng = StdRng::seed_from_u64(31);
        let d = random_distance_matrix(&mut rng, 24, 3);
        let ell = d.max_finite().unwrap();
        let got = minplus_shifted(&d, &d, ell, true).unwrap();
        assert_eq!(got, naive(&d, &d));
    }

    #[test]
    fn violation_detected_in_check_mode() {
        let a = crate::matrix::dist_matrix(&[&[0, 0]]);
        let b = crate::matrix::dist_matrix(&[&[0], &[1000]]);
        let err = minplus_shifted(&a, &b, 1, true).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolation(_)));
    }
}
