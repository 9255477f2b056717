use std::fmt;
use std::ops::Add;

use crate::dist::Dist;

/// Pair of a primary and a secondary distance, ordered lexicographically.
/// An infinite primary forces an infinite secondary.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LexDist {
    pub d1: Dist,
    pub d2: Dist,
}

impl LexDist {
    pub const INF: LexDist = LexDist {
        d1: Dist::INF,
        d2: Dist::INF,
    };

    pub const ZERO: LexDist = LexDist {
        d1: Dist::ZERO,
        d2: Dist::ZERO,
    };

    pub fn new(d1: Dist, d2: Dist) -> LexDist {
        if d1.is_inf() {
            LexDist::INF
        } else {
            LexDist { d1, d2 }
        }
    }

    pub fn finite(d1: u64, d2: u64) -> LexDist {
        LexDist {
            d1: Dist::finite(d1),
            d2: Dist::finite(d2),
        }
    }

    pub fn is_finite(self) -> bool {
        self.d1.is_finite()
    }

    #[inline]
    pub fn min(self, other: LexDist) -> LexDist {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Scalar `d1 * base + d2`; the caller must pick `base` above every
    /// achievable `d2`. Returns `None` if the encoding would overflow.
    pub fn encode(self, base: u64) -> Option<Dist> {
        match (self.d1.value(), self.d2.value()) {
            (Some(d1), Some(d2)) => {
                debug_assert!(d2 < base);
                d1.checked_mul(base)
                    .and_then(|x| x.checked_add(d2))
                    .filter(|&x| x < u64::MAX)
                    .map(Dist::finite)
            }
            _ => Some(Dist::INF),
        }
    }

    pub fn decode(scalar: Dist, base: u64) -> LexDist {
        match scalar.value() {
            Some(v) => LexDist::finite(v / base, v % base),
            None => LexDist::INF,
        }
    }
}

impl Add for LexDist {
    type Output = LexDist;

    #[inline]
    fn add(self, other: LexDist) -> LexDist {
        let d1 = self.d1 + other.d1;
        if d1.is_inf() {
            LexDist::INF
        } else {
            LexDist {
                d1,
                d2: self.d2 + other.d2,
            }
        }
    }
}

impl fmt::Debug for LexDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d1, self.d2)
    }
}

impl fmt::Display for LexDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
