//! Least uniform indices for the seminorm gap `‖a‖^p − S_N(a)` and for the
//! index-ordered tail `H̃_N(a)`.

use super::{FamilySpec, MemberId};
use crate::decompose::{finite_head_complement, head_sum};
use crate::error::{check_exponent, check_positive, Error, Result};
use crate::interval::Interval;
use crate::norms::{enclose, require_member, seminorm_of_view};
use crate::rearrange::ranks_of_head;
use crate::scalar::{lit, to_f64, Real};
use crate::sequence::{SequenceKind, SequenceSpec};
use crate::view::View;
use crate::weight::WeightSpec;

/// Enclosures are refined to this fraction of `ε`.
const TOL_FRACTION: f64 = 1e-6;

/// A member whose gap stays at or above `ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness<T> {
    pub index: u64,
    pub member: MemberId,
    pub gap: Interval<T>,
    /// The same gap recurs at every index: for shifts the member delayed by `n`
    /// realizes it at index `n`, for scaled bases the member `c_{n+1} e_{n+1}`.
    pub every_index: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EquinormOutcome<T> {
    /// Least `N` with `sup_a (‖a‖^p − S_N(a)) < ε`, and that supremum.
    Index { index: u64, gap: Interval<T> },
    NotEquinormed(Witness<T>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailOutcome<T> {
    /// Least `N` with `sup_a H̃_N(a) < ε`, and that supremum.
    Index { index: u64, tail: Interval<T> },
    NotSatisfied(Witness<T>),
}

#[derive(Clone, Copy)]
enum Quantity {
    SeminormGap,
    HeadComplement,
}

struct Evaluator<'a, T> {
    family: &'a FamilySpec<T>,
    p: T,
    w: &'a WeightSpec<T>,
    tol: T,
    budget: usize,
    norms: Vec<Interval<T>>,
}

impl<'a, T: Real> Evaluator<'a, T> {
    fn new(family: &'a FamilySpec<T>, p: T, w: &'a WeightSpec<T>, eps: T, budget: usize) -> Result<Self> {
        check_exponent(p)?;
        check_positive("eps", eps)?;
        let tol = eps * lit(TOL_FRACTION);
        let mut norms = Vec::new();
        match family {
            FamilySpec::Explicit { members } => {
                for a in members {
                    require_member(a, p, w)?;
                    norms.push(enclose(&View::new(a), p, w, 0, tol, budget)?.interval);
                }
            }
            FamilySpec::Shift { base } => norms.push(enclose(&View::new(base), p, w, 0, tol, budget)?.interval),
            FamilySpec::Dominated { envelope, .. } => require_member(envelope, p, w)?,
            FamilySpec::ScaledBasis { .. } => {}
        }
        Ok(Self {
            family,
            p,
            w,
            tol,
            budget,
            norms,
        })
    }

    fn enclosure(&self, view: &View<'_, T>) -> Result<Interval<T>> {
        Ok(enclose(view, self.p, self.w, 0, self.tol, self.budget)?.interval)
    }

    /// A member whose quantity is at least `eps` at every index.
    fn persistent(&self, eps: T) -> Option<Witness<T>> {
        let (member, gap) = match self.family {
            FamilySpec::Shift { .. } => (MemberId::Shifted(1), self.norms[0]),
            FamilySpec::ScaledBasis { coeffs } => {
                // only constant coefficients have a positive limit and finite bound
                let limit = View::new(coeffs).env_limit().powf(self.p);
                (MemberId::Basis(2), Interval::point(limit))
            }
            _ => return None,
        };
        (gap.lo >= eps).then_some(Witness {
            index: 1,
            member,
            gap,
            every_index: true,
        })
    }

    fn eval(&self, quantity: Quantity, n: u64) -> Result<Interval<T>> {
        match self.family {
            FamilySpec::Explicit { members } => {
                let mut sup = Interval::zero();
                for (a, norm) in members.iter().zip(&self.norms) {
                    let q = match quantity {
                        Quantity::SeminormGap => self.member_gap(a, *norm, n)?,
                        Quantity::HeadComplement => self.member_head_complement(a, *norm, n)?,
                    };
                    sup = sup.max(&q);
                }
                Ok(sup)
            }
            FamilySpec::Shift { .. } => Ok(self.norms[0]),
            FamilySpec::ScaledBasis { coeffs } => {
                let view = View::new(coeffs);
                Ok(Interval::new(
                    view.sup_beyond_lower(n).powf(self.p),
                    view.env_beyond(n).powf(self.p),
                ))
            }
            // both suprema are T_N(g), realized by g with its first N entries zeroed;
            // they are computed along independent paths
            FamilySpec::Dominated { envelope, .. } => match quantity {
                Quantity::SeminormGap => self.enclosure(&View::new(envelope).tail(n)),
                Quantity::HeadComplement => self.enclosure(&View::new(envelope).masked(n)),
            },
        }
    }

    fn member_gap(&self, a: &SequenceSpec<T>, norm: Interval<T>, n: u64) -> Result<Interval<T>> {
        let view = View::new(a);
        if let SequenceKind::Tabled { entries, .. } = a.kind() {
            let known = entries.len() as u64;
            if n > known {
                // S_N ≥ S_K, and the gap never exceeds T_N(a)
                let head = seminorm_of_view(&view, self.p, self.w, known)?;
                let tail = self.enclosure(&view.tail(n))?;
                return Ok(Interval::new(T::zero(), (norm.hi - head).min(tail.hi).max(T::zero())));
            }
        }
        let seminorm = seminorm_of_view(&view, self.p, self.w, n)?;
        Ok(norm.complement(&Interval::point(seminorm)))
    }

    fn member_head_complement(&self, a: &SequenceSpec<T>, norm: Interval<T>, n: u64) -> Result<Interval<T>> {
        let view = View::new(a);
        if let Some(entries) = a.entries() {
            let len = entries.len() as u64;
            return Ok(Interval::point(finite_head_complement(&view, self.p, self.w, n, len, self.budget)?));
        }
        match ranks_of_head(&view, n, self.budget) {
            Ok(ranks) => {
                let head = head_sum(&view, self.p, self.w, &ranks)?;
                Ok(norm.complement(&Interval::point(head)))
            }
            // H̃_N(a) is at most the norm of a with its head zeroed
            Err(Error::UnknownTerm { .. } | Error::HorizonExhausted { .. }) => {
                Ok(Interval::new(T::zero(), self.enclosure(&view.masked(n))?.hi))
            }
            Err(e) => Err(e),
        }
    }

    /// Least `N ≥ 1` whose certified upper bound drops below `eps`.
    fn least_index(&self, quantity: Quantity, eps: T) -> Result<(u64, Interval<T>)> {
        let limit = self.budget.max(1) as u64;
        let mut failed = 0;
        let mut n = 1;
        let mut found = loop {
            let q = self.eval(quantity, n)?;
            if q.hi < eps {
                break q;
            }
            if n >= limit {
                return Err(Error::BudgetExhausted {
                    budget: self.budget,
                    best: (to_f64(q.lo), to_f64(q.hi)),
                });
            }
            failed = n;
            n = (2 * n).min(limit);
        };
        while failed + 1 < n {
            let mid = failed + (n - failed) / 2;
            let q = self.eval(quantity, mid)?;
            if q.hi < eps {
                n = mid;
                found = q;
            } else {
                failed = mid;
            }
        }
        Ok((n, found))
    }
}

/// Least `N ≥ 1` with `sup_{a∈A} (‖a‖^p − S_N(a)) < ε`.
///
/// Shift and scaled-basis families are decided in closed form; a dominated family
/// uses `‖a‖^p − S_N(a) ≤ T_N(a) ≤ T_N(g)`, which is attained. `BudgetExhausted`
/// when no index up to `budget` can be certified.
pub fn min_equinorm_index<T: Real>(
    family: &FamilySpec<T>,
    p: T,
    w: &WeightSpec<T>,
    eps: T,
    budget: usize,
) -> Result<EquinormOutcome<T>> {
    let eval = Evaluator::new(family, p, w, eps, budget)?;
    if let Some(witness) = eval.persistent(eps) {
        return Ok(EquinormOutcome::NotEquinormed(witness));
    }
    let (index, gap) = eval.least_index(Quantity::SeminormGap, eps)?;
    Ok(EquinormOutcome::Index { index, gap })
}

/// Least `N ≥ 1` with `sup_{a∈A} H̃_N(a) < ε`, where
/// `H̃_N(a) = Σ_{j>N} |a_j|^p · w_{σ⁻¹(j)}`.
pub fn tail_criterion_index<T: Real>(
    family: &FamilySpec<T>,
    p: T,
    w: &WeightSpec<T>,
    eps: T,
    budget: usize,
) -> Result<TailOutcome<T>> {
    let eval = Evaluator::new(family, p, w, eps, budget)?;
    if let Some(witness) = eval.persistent(eps) {
        return Ok(TailOutcome::NotSatisfied(witness));
    }
    let (index, tail) = eval.least_index(Quantity::HeadComplement, eps)?;
    Ok(TailOutcome::Index { index, tail })
}
