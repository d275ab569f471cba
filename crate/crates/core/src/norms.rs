//! `p`-norms, Lorentz norms (as `p`-th powers), seminorms and membership.
//!
//! The Lorentz norm is the supremum of `Σ |a_{σ_i}|^p w_i` over injective `σ`;
//! it is attained by the stable nonincreasing rearrangement. Every quantity here
//! is reported as a `p`-th power.
//!
//! For an infinite sequence the sum is enclosed at a horizon `H`:
//!
//! * the `H` leading indices, sorted, give `S_H(a)` exactly;
//! * placing the tail `a_{H+1}, a_{H+2}, …` right after them is one admissible
//!   placement, so `S_H(a)` plus its value is a lower bound;
//! * the `k`-th largest tail modulus is at most `env(H+k)` and sits behind the `m`
//!   leading values that exceed `env(H+1)`, so pairing `env(H+k)` with `w_{m+k}`
//!   bounds the remainder from above.

use crate::error::{check_exponent, check_positive, Error, Result};
use crate::interval::Interval;
use crate::rearrange::{horizons, sorted_moduli};
use crate::scalar::{lit, to_f64, Real};
use crate::sequence::{SequenceKind, SequenceSpec};
use crate::sum::compensated_sum;
use crate::view::View;
use crate::weight::WeightSpec;

/// Tolerance used when classification reports a norm enclosure.
const CLASSIFY_TOL: f64 = 1e-9;

/// `‖a‖_p = (Σ |a_i|^p)^(1/p)` of a finitely supported sequence.
pub fn p_norm<T: Real>(entries: &[T], p: T) -> Result<T> {
    check_exponent(p)?;
    let sum = compensated_sum(entries.iter().map(|x| x.abs().powf(p)));
    Ok(sum.powf(T::one() / p))
}

/// `Σ_k v_k^p · w_{offset+k}` over moduli already in rank order.
pub(crate) fn weighted_sum<T: Real>(moduli: impl IntoIterator<Item = T>, p: T, w: &WeightSpec<T>, offset: u64) -> T {
    compensated_sum(
        moduli
            .into_iter()
            .enumerate()
            .map(|(k, v)| v.powf(p) * w.at(offset + k as u64 + 1)),
    )
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Enclosure<T> {
    pub interval: Interval<T>,
    pub reached: bool,
}

/// Encloses the Lorentz norm (`p`-th power) of a view paired with the weights
/// `w_{offset+1}, w_{offset+2}, …`, doubling the horizon until the width is at most
/// `tol` or the budget is spent.
pub(crate) fn enclose<T: Real>(
    view: &View<'_, T>,
    p: T,
    w: &WeightSpec<T>,
    offset: u64,
    tol: T,
    budget: usize,
) -> Result<Enclosure<T>> {
    let mut best: Option<Enclosure<T>> = None;
    for h in horizons(view, 0, budget) {
        let sorted = sorted_moduli(view, h)?;
        let head = weighted_sum(sorted.iter().map(|&(_, v)| v), p, w, offset);
        let beyond = view.env_beyond(h);
        let leading = sorted.iter().take_while(|&&(_, v)| v > beyond).count() as u64;
        let (tail_lo, tail_hi) = view.tail_bounds(h, p, w, offset + leading, offset + sorted.len() as u64);
        let lo = head + tail_lo;
        let hi = (head + tail_hi).max(lo);
        let enclosure = Enclosure {
            interval: Interval::new(lo, hi),
            reached: hi - lo <= tol,
        };
        if enclosure.reached {
            return Ok(enclosure);
        }
        best = Some(enclosure);
    }
    Ok(best.expect("at least one horizon"))
}

pub(crate) fn budget_error<T: Real>(e: &Enclosure<T>, budget: usize) -> Error {
    Error::BudgetExhausted {
        budget,
        best: (to_f64(e.interval.lo), to_f64(e.interval.hi)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Membership {
    Member,
    NotMember(String),
    Undecided(String),
}

/// Closed-form membership test for the built-in families.
pub(crate) fn membership<T: Real>(a: &SequenceSpec<T>, p: T, w: &WeightSpec<T>) -> Membership {
    match a.kind() {
        SequenceKind::Finite { .. } | SequenceKind::Geometric { .. } => Membership::Member,
        SequenceKind::Power { c, .. } if *c == T::zero() => Membership::Member,
        SequenceKind::Power { s, .. } if *s <= T::zero() => Membership::NotMember(format!(
            "|a_i| = |c|·i^({}) does not tend to 0, so infinitely many terms stay above a positive level \
             and pairing them with a divergent weight series diverges",
            -*s
        )),
        SequenceKind::Power { s, .. } => {
            let beta = w.tail_beta();
            let exponent = *s * p + beta;
            if exponent > T::one() {
                Membership::Member
            } else {
                Membership::NotMember(format!(
                    "rearranged terms |c|^p·i^(-s·p)·w_i decay like i^(-{exponent}) with s·p + beta = {exponent} <= 1; \
                     the p-series diverges"
                ))
            }
        }
        SequenceKind::Tabled { envelope, .. } => {
            if envelope.tail_converges(p, w) {
                Membership::Member
            } else {
                Membership::Undecided("the envelope's tail series diverges; the table alone cannot decide".into())
            }
        }
    }
}

pub(crate) fn require_member<T: Real>(a: &SequenceSpec<T>, p: T, w: &WeightSpec<T>) -> Result<()> {
    match membership(a, p, w) {
        Membership::Member => Ok(()),
        Membership::NotMember(reason) => Err(Error::NotSummable { reason }),
        Membership::Undecided(reason) => Err(Error::Inconclusive { reason }),
    }
}

/// `‖a‖_{p,w}^p` as an enclosure of width at most `tol`.
///
/// Finite supports give a point. `NotSummable` for non-members, `BudgetExhausted`
/// (carrying the best enclosure) when `tol` cannot be met within `budget` terms.
pub fn lorentz_norm_pth<T: Real>(
    a: &SequenceSpec<T>,
    p: T,
    w: &WeightSpec<T>,
    tol: T,
    budget: usize,
) -> Result<Interval<T>> {
    check_exponent(p)?;
    check_positive("tol", tol)?;
    require_member(a, p, w)?;
    let e = enclose(&View::new(a), p, w, 0, tol, budget)?;
    if e.reached {
        Ok(e.interval)
    } else {
        Err(budget_error(&e, budget))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MembershipVerdict<T> {
    Member { norm_pth: Interval<T> },
    /// Backed by an analytic divergence argument.
    NotMember { reason: String },
    Inconclusive { partial_sum: T, horizon: u64 },
}

impl<T> MembershipVerdict<T> {
    pub fn is_member(&self) -> bool {
        matches!(self, Self::Member { .. })
    }
}

/// Decides whether `a ∈ L_{p,w}`.
///
/// Members carry the tightest norm enclosure reached within `budget`.
pub fn classify_membership<T: Real>(
    a: &SequenceSpec<T>,
    p: T,
    w: &WeightSpec<T>,
    budget: usize,
) -> Result<MembershipVerdict<T>> {
    check_exponent(p)?;
    Ok(match membership(a, p, w) {
        Membership::Member => {
            let e = enclose(&View::new(a), p, w, 0, lit(CLASSIFY_TOL), budget)?;
            MembershipVerdict::Member { norm_pth: e.interval }
        }
        Membership::NotMember(reason) => MembershipVerdict::NotMember { reason },
        Membership::Undecided(_) => {
            let view = View::new(a);
            let horizon = view.known_upto().unwrap_or(0);
            let sorted = sorted_moduli(&view, horizon)?;
            MembershipVerdict::Inconclusive {
                partial_sum: weighted_sum(sorted.into_iter().map(|(_, v)| v), p, w, 0),
                horizon,
            }
        }
    })
}

/// `S_i(a) = ‖r_i(a)‖_{p,w}^p` where `r_i` keeps `a_1..a_i` and zeroes the rest.
pub fn seminorm_pth<T: Real>(a: &SequenceSpec<T>, p: T, w: &WeightSpec<T>, i: u64) -> Result<T> {
    check_exponent(p)?;
    seminorm_of_view(&View::new(a), p, w, i)
}

pub(crate) fn seminorm_of_view<T: Real>(view: &View<'_, T>, p: T, w: &WeightSpec<T>, i: u64) -> Result<T> {
    let sorted = sorted_moduli(view, i)?;
    Ok(weighted_sum(sorted.into_iter().map(|(_, v)| v), p, w, 0))
}
