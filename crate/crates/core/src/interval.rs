use std::fmt;
use std::ops::Add;

use crate::scalar::Real;

/// Closed enclosure `[lo, hi]` of a nonnegative quantity.
///
/// Widths account for truncation of infinite sums, not for rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> Interval<T> {
    pub fn new(lo: T, hi: T) -> Self {
        debug_assert!(lo <= hi, "interval bounds out of order: [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn point(x: T) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn zero() -> Self {
        Self::point(T::zero())
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    pub fn mid(&self) -> T {
        self.lo + (self.hi - self.lo) / (T::one() + T::one())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: T) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// True when the two enclosures share a point, allowing `slack` of rounding.
    pub fn overlaps(&self, other: &Self, slack: T) -> bool {
        self.lo <= other.hi + slack && other.lo <= self.hi + slack
    }

    /// Enclosure of `self - other` for a difference known to be nonnegative.
    pub fn complement(&self, other: &Self) -> Self {
        let lo = (self.lo - other.hi).max(T::zero());
        let hi = (self.hi - other.lo).max(lo);
        Self { lo, hi }
    }

    pub fn scale(&self, factor: T) -> Self {
        debug_assert!(factor >= T::zero());
        Self {
            lo: self.lo * factor,
            hi: self.hi * factor,
        }
    }

    /// Interval hull.
    pub fn hull(&self, other: &Self) -> Self {
        Self {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Enclosure of `max(x, y)` for `x ∈ self`, `y ∈ other`.
    pub fn max(&self, other: &Self) -> Self {
        Self {
            lo: self.lo.max(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

impl<T: Real> Add for Interval<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }
}

impl<T: Real> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_is_clamped_at_zero() {
        let a = Interval::new(1.0, 2.0);
        let b = Interval::new(1.5, 3.0);
        let c = a.complement(&b);
        assert_eq!(c.lo, 0.0);
        assert_eq!(c.hi, 0.5);
    }

    #[test]
    fn overlap_uses_slack() {
        let a = Interval::point(1.0);
        let b = Interval::point(1.0 + 1e-13);
        assert!(!a.overlaps(&b, 0.0));
        assert!(a.overlaps(&b, 1e-12));
    }
}
