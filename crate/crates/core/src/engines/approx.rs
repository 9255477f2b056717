use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul};

use num_bigint::BigUint;

use crate::bitmat::BitMatrix;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Non-negative count stored as mantissa and binary exponent, so products of
/// counts with hundreds of bits stay O(1) words. The mantissa is normalized
/// to [1, 2); zero is (0, 0).
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ApproxCount {
    mantissa: f64,
    exp: i64,
}

impl ApproxCount {
    pub const ZERO: ApproxCount = ApproxCount {
        mantissa: 0.0,
        exp: 0,
    };

    pub const ONE: ApproxCount = ApproxCount {
        mantissa: 1.0,
        exp: 0,
    };

    fn normalized(mut mantissa: f64, mut exp: i64) -> ApproxCount {
        if mantissa == 0.0 {
            return ApproxCount::ZERO;
        }
        while mantissa >= 2.0 {
            mantissa /= 2.0;
            exp += 1;
        }
        while mantissa < 1.0 {
            mantissa *= 2.0;
            exp -= 1;
        }
        ApproxCount { mantissa, exp }
    }

    pub fn from_u64(v: u64) -> ApproxCount {
        ApproxCount::normalized(v as f64, 0)
    }

    pub fn from_biguint(v: &BigUint) -> ApproxCount {
        let bits = v.bits();
        if bits == 0 {
            return ApproxCount::ZERO;
        }
        if bits <= 53 {
            let digits = v.to_u64_digits();
            return ApproxCount::from_u64(digits[0]);
        }
        let shift = bits - 53;
        let top: BigUint = v >> shift;
        let top = top.to_u64_digits()[0];
        ApproxCount::normalized(top as f64, shift as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    /// Binary exponent; zero for the zero value.
    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// self / other as f64; other must be nonzero.
    pub fn ratio(self, other: ApproxCount) -> f64 {
        assert!(!other.is_zero());
        if self.is_zero() {
            return 0.0;
        }
        (self.mantissa / other.mantissa) * ((self.exp - other.exp) as f64).exp2()
    }

    pub fn to_f64_lossy(self) -> f64 {
        self.mantissa * (self.exp as f64).exp2()
    }
}

impl Mul for ApproxCount {
    type Output = ApproxCount;

    fn mul(self, other: ApproxCount) -> ApproxCount {
        if self.is_zero() || other.is_zero() {
            return ApproxCount::ZERO;
        }
        ApproxCount::normalized(self.mantissa * other.mantissa, self.exp + other.exp)
    }
}

impl Add for ApproxCount {
    type Output = ApproxCount;

    fn add(self, other: ApproxCount) -> ApproxCount {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp >= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        let shift = hi.exp - lo.exp;
        if shift > 64 {
            return hi;
        }
        let m = hi.mantissa + lo.mantissa / (shift as f64).exp2();
        ApproxCount::normalized(m, hi.exp)
    }
}

impl PartialOrd for ApproxCount {
    fn partial_cmp(&self, other: &ApproxCount) -> Option<Ordering> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => Some(
                self.exp
                    .cmp(&other.exp)
                    .then(self.mantissa.partial_cmp(&other.mantissa)?),
            ),
        }
    }
}

/// Dense sum-product of count matrices.
pub fn approx_matmul(a: &Matrix<ApproxCount>, b: &Matrix<ApproxCount>) -> Matrix<ApproxCount> {
    assert_eq!(a.cols(), b.rows());
    let bt = b.transpose();
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        let arow = a.row(i);
        let brow = bt.row(j);
        let mut acc = ApproxCount::ZERO;
        for k in 0..a.cols() {
            acc = acc + arow[k] * brow[k];
        }
        acc
    })
}

/// Approximate sum-product for requested output positions. Entries are counts
/// (zero or at least one) with `A` entries below `2^ell1`. Columns of `B` are
/// rank-grouped by `t`; per cell, terms supported by the first reachable
/// group are summed through a windowed product, trailing `< t` elements are
/// scanned, and terms below `x / (2^ell1 * n2 * u)` are dropped, which costs
/// at most a `1/u` relative error.
pub fn approx_count_product(
    a: &Matrix<ApproxCount>,
    b: &Matrix<ApproxCount>,
    ell1: u32,
    u: u64,
    wanted: &[(usize, usize)],
    t: usize,
) -> Result<HashMap<(usize, usize), ApproxCount>> {
    if t == 0 {
        return Err(Error::invalid("group size t must be >= 1"));
    }
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch {
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    for (i, j, v) in a.iter() {
        if !v.is_zero() && v.exponent() >= ell1 as i64 {
            return Err(Error::BoundViolation {
                row: i,
                col: j,
                value: v.exponent() as u64,
                bound: ell1 as u64,
            });
        }
    }
    let mut out = HashMap::with_capacity(wanted.len());
    if wanted.is_empty() {
        return Ok(out);
    }
    let (n1, n2, n3) = (a.rows(), a.cols(), b.cols());

    struct Group {
        col: usize,
        members: Vec<usize>,
        /// Smallest member value.
        min: ApproxCount,
    }
    let mut groups: Vec<Group> = Vec::new();
    let mut col_groups: Vec<Vec<usize>> = vec![Vec::new(); n3];
    let mut col_leftover: Vec<Vec<usize>> = vec![Vec::new(); n3];
    for j in 0..n3 {
        let mut entries: Vec<usize> = (0..n2).filter(|&k| !b.get(k, j).is_zero()).collect();
        // Descending by value, ties by row index.
        entries.sort_by(|&x, &y| {
            b.get(y, j)
                .partial_cmp(b.get(x, j))
                .unwrap_or(Ordering::Equal)
                .then(x.cmp(&y))
        });
        let full = entries.len() / t * t;
        for chunk in entries[..full].chunks_exact(t) {
            col_groups[j].push(groups.len());
            groups.push(Group {
                col: j,
                members: chunk.to_vec(),
                min: *b.get(*chunk.last().unwrap(), j),
            });
        }
        col_leftover[j] = entries[full..].to_vec();
    }

    let (reach, tail) = if groups.is_empty() {
        (None, None)
    } else {
        let mut afin = BitMatrix::new(n1, n2);
        for (i, k, v) in a.iter() {
            if !v.is_zero() {
                afin.set(i, k);
            }
        }
        let mut gmem = BitMatrix::new(n2, groups.len());
        let mut group_of: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n3];
        for (g, group) in groups.iter().enumerate() {
            for &k in &group.members {
                gmem.set(k, g);
                group_of[group.col].push((k, g));
            }
        }
        let reach = afin.mul(&gmem);
        // Tail matrix: for group g, every grouped entry of its column with
        // group index >= g and value above the drop threshold.
        let drop_div = ApproxCount::normalized((n2 as f64) * (u as f64), ell1 as i64);
        let w = Matrix::from_fn(n2, groups.len(), |k, g| {
            let group = &groups[g];
            let v = *b.get(k, group.col);
            if v.is_zero() {
                return ApproxCount::ZERO;
            }
            let kg = group_of[group.col]
                .iter()
                .find(|&&(kk, _)| kk == k)
                .map(|&(_, gg)| gg);
            match kg {
                Some(kg) if kg >= g => {
                    let threshold_ok = v.ratio(group.min) * drop_div.to_f64_lossy() >= 1.0;
                    if threshold_ok {
                        v
                    } else {
                        ApproxCount::ZERO
                    }
                }
                _ => ApproxCount::ZERO,
            }
        });
        (Some(reach), Some(approx_matmul(a, &w)))
    };

    for &(i, j) in wanted {
        let mut acc = ApproxCount::ZERO;
        if let (Some(reach), Some(tail)) = (&reach, &tail) {
            if let Some(&g) = col_groups[j].iter().find(|&&g| reach.get(i, g)) {
                acc = *tail.get(i, g);
            }
        }
        for &k in &col_leftover[j] {
            acc = acc + *a.get(i, k) * *b.get(k, j);
        }
        out.insert((i, j), acc);
    }
    Ok(out)
}
