use std::fmt;
use std::ops::Add;

/// A non-negative integer distance extended with an infinity sentinel.
///
/// Infinity is the maximum representable `u64`; it is never produced by
/// legitimate sums because addition saturates, so `INF + x = INF` and
/// `min(x, INF) = x` hold without branching in inner loops.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Dist(u64);

impl Dist {
    pub const INF: Dist = Dist(u64::MAX);
    pub const ZERO: Dist = Dist(0);

    #[inline]
    pub const fn finite(v: u64) -> Dist {
        debug_assert!(v < u64::MAX);
        Dist(v)
    }

    #[inline]
    pub const fn is_finite(self) -> bool {
        self.0 != u64::MAX
    }

    #[inline]
    pub const fn is_inf(self) -> bool {
        self.0 == u64::MAX
    }

    /// Finite value, or `None` for infinity.
    #[inline]
    pub const fn value(self) -> Option<u64> {
        if self.is_inf() {
            None
        } else {
            Some(self.0)
        }
    }

    /// Raw representation; infinity maps to `u64::MAX`.
    #[inline]
    pub const fn raw(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn min(self, other: Dist) -> Dist {
        Dist(self.0.min(other.0))
    }

    /// Value as i64 for signed arithmetic (potentials); panics on infinity.
    #[inline]
    pub fn expect_finite(self, ctx: &str) -> u64 {
        match self.value() {
            Some(v) => v,
            None => panic!("unexpected infinite distance in {ctx}"),
        }
    }
}

impl Add for Dist {
    type Output = Dist;

    #[inline]
    fn add(self, rhs: Dist) -> Dist {
        Dist(self.0.saturating_add(rhs.0))
    }
}

impl From<u64> for Dist {
    fn from(v: u64) -> Dist {
        Dist::finite(v)
    }
}

impl fmt::Debug for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            write!(f, "INF")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A possibly-negative integer distance with an infinity sentinel, used for
/// distance matrices of graphs that carry negative weights. Product kernels
/// never see this type; they run on reweighted non-negative values.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedDist(i64);

impl SignedDist {
    pub const INF: SignedDist = SignedDist(i64::MAX);
    pub const ZERO: SignedDist = SignedDist(0);

    #[inline]
    pub const fn finite(v: i64) -> SignedDist {
        debug_assert!(v < i64::MAX);
        SignedDist(v)
    }

    #[inline]
    pub const fn is_inf(self) -> bool {
        self.0 == i64::MAX
    }

    #[inline]
    pub const fn is_finite(self) -> bool {
        self.0 != i64::MAX
    }

    #[inline]
    pub const fn value(self) -> Option<i64> {
        if self.is_inf() {
            None
        } else {
            Some(self.0)
        }
    }

    #[inline]
    pub fn min(self, other: SignedDist) -> SignedDist {
        SignedDist(self.0.min(other.0))
    }

    pub fn from_dist(d: Dist) -> SignedDist {
        match d.value() {
            Some(v) => SignedDist(v as i64),
            None => SignedDist::INF,
        }
    }

    /// Non-negative view; errors if any value is negative.
    pub fn to_dist(self) -> Option<Dist> {
        match self.value() {
            Some(v) if v >= 0 => Some(Dist::finite(v as u64)),
            Some(_) => None,
            None => Some(Dist::INF),
        }
    }
}

impl Add for SignedDist {
    type Output = SignedDist;

    #[inline]
    fn add(self, rhs: SignedDist) -> SignedDist {
        if self.is_inf() || rhs.is_inf() {
            SignedDist::INF
        } else {
            SignedDist(self.0 + rhs.0)
        }
    }
}

impl fmt::Debug for SignedDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            write!(f, "INF")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for SignedDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs_addition() {
        for v in [0u64, 1, 7, 1 << 40, u64::MAX - 1] {
            assert_eq!(Dist::finite(v) + Dist::INF, Dist::INF);
            assert_eq!(Dist::INF + Dist::finite(v), Dist::INF);
            assert_eq!(Dist::finite(v).min(Dist::INF), Dist::finite(v));
            assert_eq!(Dist::INF.min(Dist::finite(v)), Dist::finite(v));
        }
        assert_eq!(Dist::INF + Dist::INF, Dist::INF);
    }

    #[test]
    fn finite_addition() {
        assert_eq!(Dist::finite(2) + Dist::finite(3), Dist::finite(5));
        assert_eq!((Dist::finite(2) + Dist::finite(3)).value(), Some(5));
    }

    #[test]
    fn saturation_guards_overflow() {
        let near = Dist::finite(u64::MAX - 1);
        assert_eq!(near + near, Dist::INF);
    }
}
