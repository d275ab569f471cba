//! Nonincreasing majorants of `|a_i|` with closed-form tail sums.
//!
//! Every tail bound has the shape `Σ_{k≥1} env(J+k)^p · w_{R+k}`: the envelope is
//! read from original index `J+1` on while the paired weights start at rank `R+1`.
//! Power tails are summed with the integral test sharpened by convexity
//! (midpoint rule above, trapezoid rule below), geometric tails in closed form.

use crate::error::{Error, Result};
use crate::scalar::{from_index, lit, Real};
use crate::weight::WeightSpec;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnvelopeKind<T> {
    /// `env(i) = c · i^(-s)`.
    PowerTail { c: T, s: T },
    /// `env(i) = c · r^i`.
    GeometricTail { c: T, r: T },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeSpec<T> {
    kind: EnvelopeKind<T>,
}

impl<T: Real> EnvelopeSpec<T> {
    pub fn power_tail(c: T, s: T) -> Result<Self> {
        if !(c.is_finite() && c >= T::zero()) {
            return Err(Error::InvalidEnvelope {
                field: "c",
                reason: format!("must be finite and nonnegative, got {c}"),
            });
        }
        if !(s.is_finite() && s > T::zero()) {
            return Err(Error::InvalidEnvelope {
                field: "s",
                reason: format!("must be finite and positive, got {s}"),
            });
        }
        Ok(Self {
            kind: EnvelopeKind::PowerTail { c, s },
        })
    }

    pub fn geometric_tail(c: T, r: T) -> Result<Self> {
        if !(c.is_finite() && c >= T::zero()) {
            return Err(Error::InvalidEnvelope {
                field: "c",
                reason: format!("must be finite and nonnegative, got {c}"),
            });
        }
        if !(r > T::zero() && r < T::one()) {
            return Err(Error::InvalidEnvelope {
                field: "r",
                reason: format!("must lie in (0, 1), got {r}"),
            });
        }
        Ok(Self {
            kind: EnvelopeKind::GeometricTail { c, r },
        })
    }

    pub fn kind(&self) -> &EnvelopeKind<T> {
        &self.kind
    }

    pub fn at(&self, i: u64) -> T {
        let x = from_index::<T>(i);
        match self.kind {
            EnvelopeKind::PowerTail { c, s } => c * x.powf(-s),
            EnvelopeKind::GeometricTail { c, r } => c * r.powf(x),
        }
    }

    fn is_zero(&self) -> bool {
        match self.kind {
            EnvelopeKind::PowerTail { c, .. } | EnvelopeKind::GeometricTail { c, .. } => c == T::zero(),
        }
    }

    /// Whether `Σ env(i)^p · w_i` converges.
    pub fn tail_converges(&self, p: T, w: &WeightSpec<T>) -> bool {
        match self.kind {
            EnvelopeKind::PowerTail { c, s } => c == T::zero() || s * p + w.tail_beta() > T::one(),
            EnvelopeKind::GeometricTail { .. } => true,
        }
    }

    /// Upper bound on `Σ_{k≥1} env(J+k)^p · w_{R+k}`; `+∞` when the series diverges.
    pub fn tail_upper(&self, p: T, w: &WeightSpec<T>, j: u64, r: u64) -> T {
        if self.is_zero() {
            return T::zero();
        }
        match self.kind {
            EnvelopeKind::PowerTail { c, s } => {
                let beta = w.tail_beta();
                let q = s * p + beta;
                if q <= T::one() {
                    return T::infinity();
                }
                let (_, ratio_sup) = w.ratio_bounds(r + 1);
                // (R+k)^-β ≤ ((J+1)/(R+1))^β (J+k)^-β when R ≤ J, else ≤ (J+k)^-β
                let shift = (from_index::<T>(j + 1) / from_index::<T>(r + 1))
                    .powf(beta)
                    .max(T::one());
                // convex f: f(i) ≤ ∫_{i-1/2}^{i+1/2} f
                let start = from_index::<T>(j) + lit(0.5);
                let sum = start.powf(T::one() - q) / (q - T::one());
                c.powf(p) * ratio_sup * shift * sum
            }
            EnvelopeKind::GeometricTail { c, r: ratio } => {
                let rho = ratio.powf(p);
                c.powf(p) * w.at(r + 1) * rho.powf(from_index::<T>(j + 1)) / (T::one() - rho)
            }
        }
    }

    /// Lower bound on `Σ_{k≥1} env(J+k)^p · w_{R+k}`.
    pub fn tail_lower(&self, p: T, w: &WeightSpec<T>, j: u64, r: u64) -> T {
        if self.is_zero() {
            return T::zero();
        }
        match self.kind {
            EnvelopeKind::PowerTail { c, s } => {
                let beta = w.tail_beta();
                let q = s * p + beta;
                if q <= T::one() {
                    return T::infinity();
                }
                let (ratio_inf, _) = w.ratio_bounds(r + 1);
                let shift = (from_index::<T>(j + 1) / from_index::<T>(r + 1))
                    .powf(beta)
                    .min(T::one());
                // convex f: ∫_i^{i+1} f ≤ (f(i) + f(i+1))/2
                let first = from_index::<T>(j + 1);
                let sum = first.powf(T::one() - q) / (q - T::one()) + first.powf(-q) / lit(2.0);
                c.powf(p) * ratio_inf * shift * sum
            }
            EnvelopeKind::GeometricTail { c, r: ratio } => {
                c.powf(p) * ratio.powf(p * from_index::<T>(j + 1)) * w.at(r + 1)
            }
        }
    }
}
