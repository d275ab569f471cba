//! Weight sequences `w₁ = 1 ≥ w₂ ≥ … → 0` with divergent sum.

use crate::error::{Error, Result};
use crate::scalar::{from_index, lit, Real};
use crate::sum::compensated_sum;

/// Below this many terms partial sums are accumulated directly; beyond it the
/// power tail is summed with an Euler–Maclaurin expansion whose remainder is
/// below `1e-18` relative for every admissible exponent.
const DIRECT_SUM_LIMIT: u64 = 4096;

#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind<T> {
    /// `w_i = i^(-beta)`, `0 < beta ≤ 1`.
    PowerDecay { beta: T },
    /// Explicit `w_1..w_k`, then `w_i = i^(-tail_beta)` for `i > k`.
    ExplicitPrefix { values: Vec<T>, tail_beta: T },
}

/// A validated weight sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpec<T> {
    kind: WeightKind<T>,
}

fn check_beta<T: Real>(field: &'static str, beta: T) -> Result<()> {
    if !(beta.is_finite() && beta > T::zero() && beta <= T::one()) {
        return Err(Error::InvalidWeight {
            field,
            reason: format!("must lie in (0, 1] so that the weights vanish with divergent sum, got {beta}"),
        });
    }
    Ok(())
}

impl<T: Real> WeightSpec<T> {
    pub fn power_decay(beta: T) -> Result<Self> {
        check_beta("beta", beta)?;
        Ok(Self {
            kind: WeightKind::PowerDecay { beta },
        })
    }

    /// `w_i = 1/i`.
    pub fn harmonic() -> Self {
        Self {
            kind: WeightKind::PowerDecay { beta: T::one() },
        }
    }

    /// `w_i = 1/√i`.
    pub fn inv_sqrt() -> Self {
        Self {
            kind: WeightKind::PowerDecay { beta: lit(0.5) },
        }
    }

    pub fn explicit_prefix(values: Vec<T>, tail_beta: T) -> Result<Self> {
        check_beta("tail_beta", tail_beta)?;
        if let Some(&first) = values.first() {
            if first != T::one() {
                return Err(Error::InvalidWeight {
                    field: "values",
                    reason: format!("first weight must be exactly 1, got {first}"),
                });
            }
        }
        for (k, &v) in values.iter().enumerate() {
            if !(v.is_finite() && v > T::zero()) {
                return Err(Error::InvalidWeight {
                    field: "values",
                    reason: format!("entry {} must be finite and positive, got {v}", k + 1),
                });
            }
            if k > 0 && v > values[k - 1] {
                return Err(Error::InvalidWeight {
                    field: "values",
                    reason: format!("weights must be nonincreasing, but w_{} < w_{}", k, k + 1),
                });
            }
        }
        if let Some(&last) = values.last() {
            let next = from_index::<T>(values.len() as u64 + 1).powf(-tail_beta);
            if next > last {
                return Err(Error::InvalidWeight {
                    field: "tail_beta",
                    reason: format!(
                        "tail weight w_{} = {next} exceeds the last explicit weight {last}",
                        values.len() + 1
                    ),
                });
            }
        }
        Ok(Self {
            kind: WeightKind::ExplicitPrefix { values, tail_beta },
        })
    }

    pub fn kind(&self) -> &WeightKind<T> {
        &self.kind
    }

    /// Exponent of the power-law tail.
    pub fn tail_beta(&self) -> T {
        match &self.kind {
            WeightKind::PowerDecay { beta } => *beta,
            WeightKind::ExplicitPrefix { tail_beta, .. } => *tail_beta,
        }
    }

    fn explicit(&self) -> &[T] {
        match &self.kind {
            WeightKind::PowerDecay { .. } => &[],
            WeightKind::ExplicitPrefix { values, .. } => values,
        }
    }

    /// `w_i` for `i ≥ 1`.
    pub fn at(&self, i: u64) -> T {
        assert!(i >= 1, "weights are indexed from 1");
        let explicit = self.explicit();
        if (i as usize) <= explicit.len() {
            explicit[i as usize - 1]
        } else {
            from_index::<T>(i).powf(-self.tail_beta())
        }
    }

    /// `Σ_{i=1}^{n} w_i`.
    ///
    /// Exact up to compensated rounding for `n ≤ max(4096, prefix length)`; beyond
    /// that the power tail adds an Euler–Maclaurin sum with truncation below `1e-18`.
    pub fn prefix_sum(&self, n: u64) -> T {
        let base = (self.explicit().len() as u64).max(DIRECT_SUM_LIMIT);
        if n <= base {
            return compensated_sum((1..=n).map(|i| self.at(i)));
        }
        let head = compensated_sum((1..=base).map(|i| self.at(i)));
        head + power_sum_between(self.tail_beta(), base, n)
    }

    /// Bounds `(inf, sup)` of `w_j · j^β` over `j ≥ from`, where `β` is the tail exponent.
    pub(crate) fn ratio_bounds(&self, from: u64) -> (T, T) {
        let beta = self.tail_beta();
        let explicit = self.explicit();
        let (mut lo, mut hi) = (T::one(), T::one());
        for j in from.max(1)..=explicit.len() as u64 {
            let r = explicit[j as usize - 1] * from_index::<T>(j).powf(beta);
            lo = lo.min(r);
            hi = hi.max(r);
        }
        (lo, hi)
    }
}

/// `Σ_{i=a+1}^{b} i^(-β)` for `a ≥ 1` via Euler–Maclaurin through the `f'''` term.
fn power_sum_between<T: Real>(beta: T, a: u64, b: u64) -> T {
    debug_assert!(a >= 1 && b >= a);
    let fa = from_index::<T>(a);
    let fb = from_index::<T>(b);
    let log_ratio = ((fb - fa) / fa).ln_1p();
    let one = T::one();
    let integral = if beta == one {
        log_ratio
    } else {
        let e = one - beta;
        fa.powf(e) * (e * log_ratio).exp_m1() / e
    };
    let f = |x: T| x.powf(-beta);
    let d1 = |x: T| -beta * x.powf(-beta - one);
    let two = lit::<T>(2.0);
    let d3 = |x: T| -beta * (beta + one) * (beta + two) * x.powf(-beta - lit(3.0));
    integral + (f(fb) - f(fa)) / two + (d1(fb) - d1(fa)) / lit(12.0) - (d3(fb) - d3(fa)) / lit(720.0)
}

/// `w_i`.
pub fn weight_at<T: Real>(w: &WeightSpec<T>, i: u64) -> T {
    w.at(i)
}

/// `Σ_{i=1}^{n} w_i`; zero for `n = 0`.
pub fn weight_prefix_sum<T: Real>(w: &WeightSpec<T>, n: u64) -> T {
    w.prefix_sum(n)
}
