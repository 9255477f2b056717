use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use apsp_core::graph::Graph;

use crate::error::{Error, Result};

use super::{count_approx, count_exact, CountData};

/// Betweenness of one vertex: over ordered pairs (s, t), both distinct from
/// v, the fraction of shortest s-t paths that pass through v. Unreachable
/// pairs contribute nothing.
pub enum BCValue {
    Exact(BigRational),
    Approx(f64),
}

impl BCValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            BCValue::Exact(r) => rational_to_f64(r),
            BCValue::Approx(x) => *x,
        }
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    let numer = apsp_core::engines::ApproxCount::from_biguint(r.numer().magnitude());
    let denom = apsp_core::engines::ApproxCount::from_biguint(r.denom().magnitude());
    if denom.is_zero() {
        return f64::NAN;
    }
    if numer.is_zero() {
        return 0.0;
    }
    numer.ratio(denom)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BetweennessMode {
    Exact,
    Approx(u64),
}

pub fn betweenness(g: &Graph, v: usize, mode: BetweennessMode) -> Result<BCValue> {
    if v >= g.n() {
        return Err(Error::invalid(format!("vertex {v} out of range")));
    }
    match mode {
        BetweennessMode::Exact => {
            let out = count_exact(g)?;
            let CountData::Exact(counts) = &out.data else {
                return Err(Error::Internal("exact mode produced non-exact data".into()));
            };
            let n = g.n();
            let mut total = BigRational::zero();
            for s in 0..n {
                if s == v {
                    continue;
                }
                for t in 0..n {
                    if t == v || t == s {
                        continue;
                    }
                    let c_st = counts.get(s, t);
                    if c_st.is_zero() {
                        continue;
                    }
                    if *out.dist.get(s, v) + *out.dist.get(v, t) == *out.dist.get(s, t) {
                        let through: BigUint = counts.get(s, v) * counts.get(v, t);
                        total += BigRational::new(through.into(), c_st.clone().into());
                    }
                }
            }
            Ok(BCValue::Exact(total))
        }
        BetweennessMode::Approx(u) => {
            if g.is_directed() {
                return Err(Error::invalid(
                    "approximate betweenness is supported for undirected graphs",
                ));
            }
            let scaled = u.saturating_mul(4 * g.n() as u64);
            let out = count_approx(g, scaled)?;
            let CountData::Approx(_, counts) = &out.data else {
                return Err(Error::Internal(
                    "approx mode produced non-approx data".into(),
                ));
            };
            let n = g.n();
            let mut total = 0.0f64;
            for s in 0..n {
                if s == v {
                    continue;
                }
                for t in 0..n {
                    if t == v || t == s {
                        continue;
                    }
                    let c_st = counts.get(s, t);
                    if c_st.is_zero() {
                        continue;
                    }
                    if *out.dist.get(s, v) + *out.dist.get(v, t) == *out.dist.get(s, t) {
                        let through = *counts.get(s, v) * *counts.get(v, t);
                        total += through.ratio(*c_st);
                    }
                }
            }
            Ok(BCValue::Approx(total))
        }
    }
}

/// Exact betweenness of every vertex at once, reusing one counting pass.
pub fn betweenness_all_exact(g: &Graph) -> Result<Vec<BigRational>> {
    let out = count_exact(g)?;
    let CountData::Exact(counts) = &out.data else {
        return Err(Error::Internal("exact mode produced non-exact data".into()));
    };
    let n = g.n();
    let dist = &out.dist;
    let mut totals = vec![BigRational::zero(); n];
    for s in 0..n {
        for t in 0..n {
            if t == s || counts.get(s, t).is_zero() {
                continue;
            }
            let d_st = *dist.get(s, t);
            let denom: num_bigint::BigInt = counts.get(s, t).clone().into();
            for (v, total) in totals.iter_mut().enumerate() {
                if v == s || v == t {
                    continue;
                }
                if *dist.get(s, v) + *dist.get(v, t) == d_st {
                    let through: BigUint = counts.get(s, v) * counts.get(v, t);
                    if !through.is_zero() {
                        *total += BigRational::new(through.into(), denom.clone());
                    }
                }
            }
        }
    }
    Ok(totals)
}
