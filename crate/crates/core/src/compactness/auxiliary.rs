//! Uniform counting and vanishing bounds for norm-bounded families.

use super::{sup_beyond, sup_limit, FamilySpec};
use crate::error::{check_exponent, check_positive, Error, Result};
use crate::scalar::{lit, Real};
use crate::weight::WeightSpec;

/// Indices are searched up to `2^62`.
const INDEX_CAP: u64 = 1 << 62;
const BISECTION_STEPS: usize = 200;

/// Largest `n` with `d^p · Σ_{i≤n} w_i ≤ bound`; saturates at `2^62`.
///
/// A sequence with `‖a‖^p ≤ bound` has at most this many entries with `|a_i| ≥ d`.
pub fn lambda_of<T: Real>(bound: T, d: T, p: T, w: &WeightSpec<T>) -> Result<u64> {
    check_exponent(p)?;
    check_positive("d", d)?;
    if !(bound.is_finite() && bound >= T::zero()) {
        return Err(Error::InvalidArgument {
            name: "bound",
            reason: format!("must be a finite nonnegative real, got {bound}"),
        });
    }
    let scale = d.powf(p);
    let fits = |n: u64| scale * w.prefix_sum(n) <= bound;
    if !fits(1) {
        return Ok(0);
    }
    let mut good: u64 = 1;
    let mut bad = loop {
        let next = good.saturating_mul(2).min(INDEX_CAP);
        if next == good {
            return Ok(good);
        }
        if !fits(next) {
            break next;
        }
        good = next;
    };
    while good + 1 < bad {
        let mid = good + (bad - good) / 2;
        if fits(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Ok(good)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gamma {
    Finite(u64),
    /// Some member keeps a term of modulus at least `d` arbitrarily far out.
    Infinite,
}

/// Least `N ≥ 1` such that `|a_n| < d` for every `n ≥ N` and every member.
///
/// Tables contribute their envelope, so the index is an upper bound there.
/// `HorizonExhausted` when the index exceeds `2^62`.
pub fn gamma_of<T: Real>(family: &FamilySpec<T>, d: T) -> Result<Gamma> {
    check_positive("d", d)?;
    if sup_limit(family) >= d {
        return Ok(Gamma::Infinite);
    }
    let below = |h: u64| sup_beyond(family, h) < d;
    if below(0) {
        return Ok(Gamma::Finite(1));
    }
    let mut above = 0;
    let mut h = 1;
    while !below(h) {
        if h >= INDEX_CAP {
            return Err(Error::HorizonExhausted {
                budget: INDEX_CAP as usize,
            });
        }
        above = h;
        h = (2 * h).min(INDEX_CAP);
    }
    while above + 1 < h {
        let mid = above + (h - above) / 2;
        if below(mid) {
            h = mid;
        } else {
            above = mid;
        }
    }
    Ok(Gamma::Finite(h + 1))
}

/// `sup {x > 0 : γ(x) > n}`, a nonincreasing majorant of `|a_n|` over the family,
/// located by bisection on `x`; the upper end of the final bracket is returned.
///
/// `NotUniform` when the members do not vanish uniformly.
pub fn gamma_inverse_at<T: Real>(family: &FamilySpec<T>, n: u64) -> Result<T> {
    if n == 0 {
        return Err(Error::InvalidArgument {
            name: "n",
            reason: "indices start at 1".into(),
        });
    }
    if sup_limit(family) > T::zero() {
        return Err(Error::NotUniform);
    }
    let top = sup_beyond(family, 0);
    if top == T::zero() {
        return Ok(T::zero());
    }
    let exceeds = |x: T| -> Result<bool> {
        Ok(match gamma_of(family, x)? {
            Gamma::Finite(k) => k > n,
            Gamma::Infinite => true,
        })
    };
    let (mut lo, mut hi) = (T::zero(), top * lit(2.0));
    for _ in 0..BISECTION_STEPS {
        let mid = lo + (hi - lo) / lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if exceeds(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::SequenceSpec;

    #[test]
    fn lambda_examples() {
        let h = WeightSpec::harmonic();
        assert_eq!(lambda_of(1.0, 0.5, 1.0, &h).unwrap(), 3);
        assert_eq!(lambda_of(0.0, 0.5, 1.0, &h).unwrap(), 0);
        assert_eq!(lambda_of(1.0, 1.0, 1.0, &h).unwrap(), 1);
        assert_eq!(lambda_of(1.0, 1.0, 2.0, &WeightSpec::inv_sqrt()).unwrap(), 1);
        // H_n ≤ 20 holds up to n = 272400599
        assert_eq!(lambda_of(20.0, 1.0, 1.0, &h).unwrap(), 272_400_599);
    }

    #[test]
    fn gamma_examples() {
        let dom = FamilySpec::dominated(SequenceSpec::power(1.0, 1.0).unwrap(), vec![]).unwrap();
        assert_eq!(gamma_of(&dom, 0.25).unwrap(), Gamma::Finite(5));
        let shift = FamilySpec::shift(SequenceSpec::unit(1)).unwrap();
        assert_eq!(gamma_of(&shift, 0.5).unwrap(), Gamma::Infinite);
        let pair = FamilySpec::explicit(vec![SequenceSpec::finite(vec![1.0, 2.0]).unwrap()]).unwrap();
        assert_eq!(gamma_of(&pair, 0.1).unwrap(), Gamma::Finite(3));
        assert_eq!(gamma_of(&pair, 5.0).unwrap(), Gamma::Finite(1));
    }

    #[test]
    fn gamma_inverse_examples() {
        let dom = FamilySpec::dominated(SequenceSpec::power(1.0, 1.0).unwrap(), vec![]).unwrap();
        let x = gamma_inverse_at(&dom, 4).unwrap();
        assert!(x >= 0.25 && x - 0.25 < 1e-14, "{x}");
        let zero = FamilySpec::explicit(vec![SequenceSpec::<f64>::zero()]).unwrap();
        assert_eq!(gamma_inverse_at(&zero, 3).unwrap(), 0.0);
        let shift = FamilySpec::shift(SequenceSpec::<f64>::unit(1)).unwrap();
        assert_eq!(gamma_inverse_at(&shift, 1), Err(Error::NotUniform));
        // the majorant is nonincreasing: |a₂| = 2 is felt at n = 1
        let pair = FamilySpec::explicit(vec![SequenceSpec::finite(vec![1.0, 2.0]).unwrap()]).unwrap();
        let x = gamma_inverse_at(&pair, 1).unwrap();
        assert!(x >= 2.0 && x - 2.0 < 1e-14);
    }
}
