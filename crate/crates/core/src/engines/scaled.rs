use std::sync::OnceLock;
use std::time::Instant;

use crate::bounds::EntryBounds;
use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

use super::{check_product_dims, WitnessMatrix, NO_WITNESS};

/// Largest digit-vector length the scaled encoding will allocate.
const MAX_DIGITS: usize = 1 << 22;

/// Min-plus product through the scaled-entry encoding: entry `e` becomes the
/// base-(n2+1) monomial `(n2+1)^e`, the encoded matrices are multiplied over
/// the integers, and each output cell is read off as the position of its
/// lowest nonzero digit. Digits never carry because at most `n2` terms share
/// an exponent.
pub fn minplus_scaled(
    a: &Matrix<Dist>,
    b: &Matrix<Dist>,
    bounds: &EntryBounds,
) -> Result<Matrix<Dist>> {
    check_product_dims(a, b)?;
    validate_entries(a, bounds.a.max_finite)?;
    validate_entries(b, bounds.b.max_finite)?;
    scaled_product(a, b, bounds)
}

pub(crate) fn minplus_scaled_with_witness(
    a: &Matrix<Dist>,
    b: &Matrix<Dist>,
    bounds: &EntryBounds,
) -> Result<(Matrix<Dist>, WitnessMatrix)> {
    let c = minplus_scaled(a, b, bounds)?;
    let w = recover_witnesses(a, b, bounds, &c)?;
    Ok((c, w))
}

fn validate_entries(m: &Matrix<Dist>, bound: u64) -> Result<()> {
    for (i, j, d) in m.iter() {
        if let Some(v) = d.value() {
            if v > bound {
                return Err(Error::BoundViolation {
                    row: i,
                    col: j,
                    value: v,
                    bound,
                });
            }
        }
    }
    Ok(())
}

fn digit_width(n2: usize) -> u32 {
    // Smallest w with 2^w > n2, so per-digit counts cannot carry.
    (usize::BITS - n2.leading_zeros()).max(1)
}

fn scaled_product(
    a: &Matrix<Dist>,
    b: &Matrix<Dist>,
    bounds: &EntryBounds,
) -> Result<Matrix<Dist>> {
    let n2 = a.cols();
    let digits = (bounds.a.max_finite + bounds.b.max_finite + 1) as usize;
    if digits > MAX_DIGITS {
        return Err(Error::invalid(format!(
            "scaled encoding needs {digits} digits; entry bounds too large for this engine"
        )));
    }
    let w = digit_width(n2);
    if digits as u64 * w as u64 <= 64 {
        Ok(packed_product(a, b, w))
    } else {
        Ok(limb_product(a, b, digits))
    }
}

/// Fast path: the whole digit vector fits one machine word, so the encoded
/// product is a plain u64 multiply-accumulate.
fn packed_product(a: &Matrix<Dist>, b: &Matrix<Dist>, w: u32) -> Matrix<Dist> {
    let (n1, n2, n3) = (a.rows(), a.cols(), b.cols());
    let enc = |d: Dist| -> u64 {
        match d.value() {
            Some(v) => 1u64 << (v as u32 * w),
            None => 0,
        }
    };
    let ea: Vec<u64> = a.data().iter().map(|&d| enc(d)).collect();
    let bt = b.transpose();
    let eb: Vec<u64> = bt.data().iter().map(|&d| enc(d)).collect();
    Matrix::from_fn(n1, n3, |i, j| {
        let arow = &ea[i * n2..(i + 1) * n2];
        let brow = &eb[j * n2..(j + 1) * n2];
        let mut acc = 0u64;
        for k in 0..n2 {
            acc = acc.wrapping_add(arow[k].wrapping_mul(brow[k]));
        }
        if acc == 0 {
            Dist::INF
        } else {
            Dist::finite((acc.trailing_zeros() / w) as u64)
        }
    })
}

/// General path: one u32 limb per base-(n2+1) digit, accumulated per cell.
fn limb_product(a: &Matrix<Dist>, b: &Matrix<Dist>, digits: usize) -> Matrix<Dist> {
    let (n1, n2, n3) = (a.rows(), a.cols(), b.cols());
    let none = u32::MAX;
    let exp = |d: &Dist| d.value().map(|v| v as u32).unwrap_or(none);
    let ea: Vec<u32> = a.data().iter().map(exp).collect();
    let bt = b.transpose();
    let eb: Vec<u32> = bt.data().iter().map(exp).collect();
    let mut scratch = vec![0u32; digits];
    Matrix::from_fn(n1, n3, |i, j| {
        let arow = &ea[i * n2..(i + 1) * n2];
        let brow = &eb[j * n2..(j + 1) * n2];
        let mut lowest = usize::MAX;
        for k in 0..n2 {
            let (x, y) = (arow[k], brow[k]);
            if x != none && y != none {
                let s = (x + y) as usize;
                scratch[s] += 1;
                if s < lowest {
                    lowest = s;
                }
            }
        }
        let out = if lowest == usize::MAX {
            Dist::INF
        } else {
            debug_assert!(scratch[lowest] as usize <= n2);
            Dist::finite(lowest as u64)
        };
        for k in 0..n2 {
            let (x, y) = (arow[k], brow[k]);
            if x != none && y != none {
                scratch[(x + y) as usize] = 0;
            }
        }
        out
    })
}

/// Full digit vectors of the encoded product, one per output cell. The digit
/// at exponent `s` counts the indices `k` with `A[i,k] + B[k,j] = s`.
pub fn scaled_digits(
    a: &Matrix<Dist>,
    b: &Matrix<Dist>,
    bounds: &EntryBounds,
) -> Result<Matrix<Vec<u32>>> {
    check_product_dims(a, b)?;
    validate_entries(a, bounds.a.max_finite)?;
    validate_entries(b, bounds.b.max_finite)?;
    let digits = (bounds.a.max_finite + bounds.b.max_finite + 1) as usize;
    if digits > MAX_DIGITS {
        return Err(Error::invalid("entry bounds too large"));
    }
    let n2 = a.cols();
    Ok(Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        let mut vec = vec![0u32; digits];
        for k in 0..n2 {
            if let (Some(x), Some(y)) = (a.get(i, k).value(), b.get(k, j).value()) {
                vec[(x + y) as usize] += 1;
            }
        }
        vec
    }))
}

/// Witness recovery by O(log n2) repeated products over bit-masked column
/// subsets. Ties across subsets can combine into a non-witness, so every
/// candidate is verified and repaired by a linear scan when needed.
fn recover_witnesses(
    a: &Matrix<Dist>,
    b: &Matrix<Dist>,
    bounds: &EntryBounds,
    c: &Matrix<Dist>,
) -> Result<WitnessMatrix> {
    let (n1, n2, n3) = (a.rows(), a.cols(), b.cols());
    let bits = (usize::BITS - (n2 - 1).leading_zeros()).max(1) as usize;
    let mut cand = Matrix::new(n1, n3, 0u32).expect("positive dims");
    for bit in 0..bits {
        let cols: Vec<usize> = (0..n2).filter(|k| k >> bit & 1 == 1).collect();
        if cols.is_empty() {
            continue;
        }
        let asub = a.submatrix(&(0..n1).collect::<Vec<_>>(), &cols);
        let bsub = b.submatrix(&cols, &(0..n3).collect::<Vec<_>>());
        let csub = scaled_product(&asub, &bsub, bounds)?;
        for i in 0..n1 {
            for j in 0..n3 {
                if csub.get(i, j) == c.get(i, j) && c.get(i, j).is_finite() {
                    let v = *cand.get(i, j);
                    cand.set(i, j, v | (1 << bit));
                }
            }
        }
    }
    let mut w = Matrix::new(n1, n3, NO_WITNESS).expect("positive dims");
    for i in 0..n1 {
        for j in 0..n3 {
            let cv = *c.get(i, j);
            if cv.is_inf() {
                continue;
            }
            let k = *cand.get(i, j) as usize;
            if k < n2 && *a.get(i, k) + *b.get(k, j) == cv {
                w.set(i, j, k as u32);
            } else {
                let k = (0..n2)
                    .find(|&k| *a.get(i, k) + *b.get(k, j) == cv)
                    .expect("finite product cell has a witness");
                w.set(i, j, k as u32);
            }
        }
    }
    Ok(w)
}

/// Measured cost ratio of the packed scaled kernel to the blocked kernel,
/// taken once per process on a fixed micro-instance.
fn calibration_ratio() -> f64 {
    static RATIO: OnceLock<f64> = OnceLock::new();
    *RATIO.get_or_init(|| {
        let n = 48;
        let a = Matrix::from_fn(n, n, |i, j| Dist::finite(((i * 7 + j * 3) % 8) as u64));
        let b = Matrix::from_fn(n, n, |i, j| Dist::finite(((i * 5 + j * 11) % 8) as u64));
        let t0 = Instant::now();
        let _ = packed_product(&a, &b, digit_width(n));
        let scaled = t0.elapsed().as_nanos().max(1) as f64;
        let t1 = Instant::now();
        let _ = super::brute::minplus_blocked(&a, &b, 64);
        let blocked = t1.elapsed().as_nanos().max(1) as f64;
        scaled / blocked
    })
}

/// Auto-engine policy: take the scaled path only when the packed single-word
/// layout applies and the calibrated kernel ratio favors it.
pub(crate) fn scaled_is_cheaper(a: &Matrix<Dist>, _b: &Matrix<Dist>, bounds: &EntryBounds) -> bool {
    let digits = bounds.a.max_finite + bounds.b.max_finite + 1;
    let w = digit_width(a.cols()) as u64;
    digits * w <= 64 && calibration_ratio() < 1.0
}
