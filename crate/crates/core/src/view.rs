//! Index transforms of a sequence: tails `a_{(i+1..)}`, delays (prepended zeros)
//! and masked heads. View indices start at 1; `orig(t) = t + offset`.

use crate::envelope::EnvelopeSpec;
use crate::error::Result;
use crate::scalar::{from_index, Real};
use crate::sequence::{SequenceKind, SequenceSpec};
use crate::weight::WeightSpec;

#[derive(Debug, Clone, Copy)]
pub(crate) struct View<'a, T> {
    seq: &'a SequenceSpec<T>,
    offset: i64,
    /// Original indices `≤ mask` read as zero.
    mask: u64,
}

impl<'a, T: Real> View<'a, T> {
    pub fn new(seq: &'a SequenceSpec<T>) -> Self {
        Self { seq, offset: 0, mask: 0 }
    }

    /// `a_{(i+1..)}`.
    pub fn tail(self, i: u64) -> Self {
        Self {
            offset: self.offset + i as i64,
            ..self
        }
    }

    /// The sequence with its first `k` entries zeroed.
    pub fn masked(self, k: u64) -> Self {
        let last = k as i64 + self.offset;
        Self {
            mask: self.mask.max(last.max(0) as u64),
            ..self
        }
    }

    fn orig(&self, t: u64) -> i64 {
        t as i64 + self.offset
    }

    /// First view index whose original index is live (positive and unmasked).
    pub fn first_live(&self) -> u64 {
        let j = (self.mask as i64 + 1).max(1);
        (j - self.offset).max(1) as u64
    }

    pub fn value(&self, t: u64) -> Result<T> {
        let j = self.orig(t);
        if j < 1 || j as u64 <= self.mask {
            return Ok(T::zero());
        }
        self.seq.term(j as u64)
    }

    /// Last view index that can be nonzero, when the support is finite.
    pub fn support_end(&self) -> Option<u64> {
        let len = match self.seq.kind() {
            SequenceKind::Finite { entries } => entries.len() as u64,
            SequenceKind::Power { c, .. } | SequenceKind::Geometric { c, .. } if *c == T::zero() => 0,
            SequenceKind::Geometric { r, .. } if *r == T::zero() => 0,
            _ => return None,
        };
        if len <= self.mask {
            return Some(0);
        }
        Some((len as i64 - self.offset).max(0) as u64)
    }

    /// Last view index up to which all values are exactly known (tables only).
    pub fn known_upto(&self) -> Option<u64> {
        match self.seq.kind() {
            SequenceKind::Tabled { entries, .. } => {
                let k = (entries.len() as u64).max(self.mask) as i64;
                Some((k - self.offset).max(0) as u64)
            }
            _ => None,
        }
    }

    /// Nonzero values appear with nonincreasing modulus in index order.
    pub fn is_monotone(&self) -> bool {
        match self.seq.kind() {
            SequenceKind::Power { s, .. } => *s >= T::zero(),
            SequenceKind::Geometric { .. } => true,
            _ => self.support_end() == Some(0),
        }
    }

    fn first_orig_beyond(&self, h: u64) -> u64 {
        (self.orig(h) + 1).max(self.mask as i64 + 1).max(1) as u64
    }

    /// Upper bound on `sup_{t > h} |value(t)|`; exact except past a table's cutoff.
    pub fn env_beyond(&self, h: u64) -> T {
        let j0 = self.first_orig_beyond(h);
        match self.seq.kind() {
            SequenceKind::Finite { entries } => max_abs(entries, j0, entries.len() as u64),
            SequenceKind::Power { c, s } => {
                if *c == T::zero() {
                    T::zero()
                } else if *s > T::zero() {
                    c.abs() * from_index::<T>(j0).powf(-*s)
                } else if *s == T::zero() {
                    c.abs()
                } else {
                    T::infinity()
                }
            }
            SequenceKind::Geometric { c, r } => c.abs() * r.abs().powf(from_index(j0)),
            SequenceKind::Tabled { entries, envelope, .. } => {
                let k = entries.len() as u64;
                max_abs(entries, j0, k).max(envelope.at(j0.max(k + 1)))
            }
        }
    }

    /// Lower bound on `sup_{t > h} |value(t)|`.
    pub fn sup_beyond_lower(&self, h: u64) -> T {
        match self.seq.kind() {
            SequenceKind::Tabled { entries, .. } => {
                max_abs(entries, self.first_orig_beyond(h), entries.len() as u64)
            }
            _ => self.env_beyond(h),
        }
    }

    /// `lim sup |a_i|`.
    pub fn env_limit(&self) -> T {
        match self.seq.kind() {
            SequenceKind::Power { c, s } if *c != T::zero() && *s <= T::zero() => {
                if *s == T::zero() {
                    c.abs()
                } else {
                    T::infinity()
                }
            }
            _ => T::zero(),
        }
    }

    /// Enclosure of `Σ_{k≥1} |value(h+k)|^p · w_{r+k}` with `r = r_upper` for the upper
    /// bound (any `r` not exceeding the true ranks) and `r = r_lower` for the lower
    /// bound (the placement realizing it). Requires `h` at or beyond the masked head
    /// and, for tables, at the cutoff.
    pub fn tail_bounds(&self, h: u64, p: T, w: &WeightSpec<T>, r_upper: u64, r_lower: u64) -> (T, T) {
        if self.support_end().is_some_and(|end| h >= end) {
            return (T::zero(), T::zero());
        }
        let j = self.orig(h);
        debug_assert!(j >= self.mask as i64 && j >= 0, "horizon inside the masked head");
        let j = j as u64;
        let exact = |env: EnvelopeSpec<T>| (env.tail_lower(p, w, j, r_lower), env.tail_upper(p, w, j, r_upper));
        match self.seq.kind() {
            SequenceKind::Power { c, s } => exact(EnvelopeSpec::power_tail(c.abs(), *s).expect("validated power tail")),
            SequenceKind::Geometric { c, r } => {
                exact(EnvelopeSpec::geometric_tail(c.abs(), r.abs()).expect("validated geometric tail"))
            }
            SequenceKind::Tabled { entries, envelope, .. } => {
                debug_assert!(j >= entries.len() as u64);
                (T::zero(), envelope.tail_upper(p, w, j, r_upper))
            }
            SequenceKind::Finite { .. } => unreachable!("finite support handled above"),
        }
    }
}

fn max_abs<T: Real>(entries: &[T], from: u64, to: u64) -> T {
    if from > to {
        return T::zero();
    }
    entries[from as usize - 1..to as usize]
        .iter()
        .fold(T::zero(), |m, x| m.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transforms_compose() {
        let a = SequenceSpec::finite(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let v = View::new(&a).tail(1).masked(1);
        let got: Vec<f64> = (1..=4).map(|t| v.value(t).unwrap()).collect();
        assert_eq!(got, vec![0.0, 3.0, 4.0, 0.0]);
        assert_eq!(v.support_end(), Some(3));
        assert_eq!(v.env_beyond(1), 4.0);
        assert_eq!(v.env_beyond(3), 0.0);
        assert_eq!(v.first_live(), 2);
    }

    #[test]
    fn analytic_envelope_beyond() {
        let a = SequenceSpec::power(-2.0, 1.0).unwrap();
        let v = View::new(&a).tail(3);
        assert_eq!(v.value(1).unwrap(), -0.5);
        assert_eq!(v.env_beyond(1), 0.4);
        let flat = SequenceSpec::power(1.0, 0.0).unwrap();
        assert_eq!(View::new(&flat).env_limit(), 1.0);
    }
}
