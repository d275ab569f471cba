//! Families of sequences and their precompactness in `L_{p,w}`.
//!
//! A family is precompact exactly when it is bounded and equinormed, that is when
//! one index `N` makes every seminorm `S_N(a)` come within `ε` of `‖a‖^p`. Infinite
//! families are representable only through structured variants whose suprema are
//! available in closed form.

mod auxiliary;
mod certify;
mod difference;
mod equinorm;

pub use auxiliary::{gamma_inverse_at, gamma_of, lambda_of, Gamma};
pub use certify::{certify, Certificate, Counterexample, Method, Verdict};
pub use difference::difference_family;
pub use equinorm::{min_equinorm_index, tail_criterion_index, EquinormOutcome, TailOutcome, Witness};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::norms::{enclose, require_member};
use crate::scalar::Real;
use crate::sequence::{SequenceKind, SequenceSpec};
use crate::view::View;
use crate::weight::WeightSpec;

/// Indices checked when validating analytic samples of a dominated family.
const SAMPLE_CHECK_DENSE: u64 = 1024;
const SAMPLE_CHECK_SPARSE_LOG2: u32 = 48;

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec<T> {
    /// The listed members.
    Explicit { members: Vec<SequenceSpec<T>> },
    /// `base` delayed by `n` zeros, for every `n ≥ 0`.
    Shift { base: SequenceSpec<T> },
    /// `c_n · e_n` for every `n ≥ 1`.
    ScaledBasis { coeffs: SequenceSpec<T> },
    /// Every `a` with `|a_i| ≤ |g_i|`; `samples` are named members.
    Dominated {
        envelope: SequenceSpec<T>,
        samples: Vec<SequenceSpec<T>>,
    },
}

/// Names one member of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MemberId {
    /// Position in an explicit list, from 0.
    Listed(usize),
    /// The shift base delayed by this many zeros.
    Shifted(u64),
    /// `c_n · e_n`.
    Basis(u64),
    /// The dominating sequence itself.
    Envelope,
    /// The dominating sequence with its first `n` entries zeroed.
    EnvelopeTail(u64),
    /// Position in the sample list, from 0.
    Sample(usize),
}

impl std::fmt::Display for MemberId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Listed(k) => write!(f, "member #{k}"),
            Self::Shifted(n) => write!(f, "base shifted by {n}"),
            Self::Basis(n) => write!(f, "c_{n}·e_{n}"),
            Self::Envelope => write!(f, "envelope"),
            Self::EnvelopeTail(n) => write!(f, "envelope with first {n} entries zeroed"),
            Self::Sample(k) => write!(f, "sample #{k}"),
        }
    }
}

impl<T: Real> FamilySpec<T> {
    pub fn explicit(members: Vec<SequenceSpec<T>>) -> Result<Self> {
        Ok(Self::Explicit { members })
    }

    pub fn shift(base: SequenceSpec<T>) -> Result<Self> {
        if !base.is_finite_support() {
            return Err(Error::InvalidFamily {
                field: "base",
                reason: "the shifted base must have finite support".into(),
            });
        }
        Ok(Self::Shift { base })
    }

    pub fn scaled_basis(coeffs: SequenceSpec<T>) -> Result<Self> {
        Ok(Self::ScaledBasis { coeffs })
    }

    /// Checks every sample against the envelope: on the whole support for finite
    /// samples, on a dense head and a sparse geometric grid otherwise.
    pub fn dominated(envelope: SequenceSpec<T>, samples: Vec<SequenceSpec<T>>) -> Result<Self> {
        if matches!(envelope.kind(), SequenceKind::Tabled { .. }) {
            return Err(Error::InvalidFamily {
                field: "envelope",
                reason: "a dominating sequence must be known at every index".into(),
            });
        }
        for (k, s) in samples.iter().enumerate() {
            let indices: Vec<u64> = match s.entries() {
                Some(entries) => (1..=entries.len() as u64).collect(),
                None => (1..=SAMPLE_CHECK_DENSE)
                    .chain((11..=SAMPLE_CHECK_SPARSE_LOG2).map(|e| 1u64 << e))
                    .collect(),
            };
            for i in indices {
                let x = s.abs_upper(i);
                let g = envelope.term(i)?.abs();
                if x > g {
                    return Err(Error::InvalidFamily {
                        field: "samples",
                        reason: format!("sample {k} has |a_{i}| = {x} above the envelope value {g}"),
                    });
                }
            }
        }
        Ok(Self::Dominated { envelope, samples })
    }

    /// Materializes a member with finite or analytic description.
    pub fn member(&self, id: MemberId) -> Result<SequenceSpec<T>> {
        let missing = || Error::InvalidArgument {
            name: "member",
            reason: format!("{id} does not name a member of this family"),
        };
        match (self, id) {
            (Self::Explicit { members }, MemberId::Listed(k)) => members.get(k).cloned().ok_or_else(missing),
            (Self::Shift { base }, MemberId::Shifted(n)) => {
                let mut entries = vec![T::zero(); n as usize];
                entries.extend_from_slice(base.entries().expect("validated finite base"));
                SequenceSpec::finite(entries)
            }
            (Self::ScaledBasis { coeffs }, MemberId::Basis(n)) if n >= 1 => {
                let mut entries = vec![T::zero(); n as usize];
                entries[n as usize - 1] = coeffs.term(n)?;
                SequenceSpec::finite(entries)
            }
            (Self::Dominated { envelope, .. }, MemberId::Envelope) => Ok(envelope.clone()),
            (Self::Dominated { envelope, .. }, MemberId::EnvelopeTail(n)) => match envelope.entries() {
                Some(entries) => {
                    let mut entries = entries.to_vec();
                    entries.iter_mut().take(n as usize).for_each(|x| *x = T::zero());
                    SequenceSpec::finite(entries)
                }
                None => Err(Error::UnsupportedVariant("zeroing the head of an analytic sequence")),
            },
            (Self::Dominated { samples, .. }, MemberId::Sample(k)) => samples.get(k).cloned().ok_or_else(missing),
            _ => Err(missing()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyBound<T> {
    /// Encloses `sup_{a∈A} ‖a‖^p`.
    Bounded(Interval<T>),
    Unbounded { reason: String },
}

/// `sup_{a∈A} ‖a‖_{p,w}^p`.
///
/// `NotSummable` when a listed member, or the dominating sequence, lies outside
/// `L_{p,w}`.
pub fn family_bound<T: Real>(
    family: &FamilySpec<T>,
    p: T,
    w: &WeightSpec<T>,
    tol: T,
    budget: usize,
) -> Result<FamilyBound<T>> {
    crate::error::check_exponent(p)?;
    crate::error::check_positive("tol", tol)?;
    let norm = |a: &SequenceSpec<T>| -> Result<Interval<T>> {
        require_member(a, p, w)?;
        Ok(enclose(&View::new(a), p, w, 0, tol, budget)?.interval)
    };
    Ok(match family {
        FamilySpec::Explicit { members } => {
            let mut sup = Interval::zero();
            for a in members {
                sup = sup.max(&norm(a)?);
            }
            FamilyBound::Bounded(sup)
        }
        // a delay keeps the multiset of values and hence the norm
        FamilySpec::Shift { base } => FamilyBound::Bounded(norm(base)?),
        FamilySpec::ScaledBasis { coeffs } => {
            let view = View::new(coeffs);
            let hi = view.env_beyond(0);
            if hi.is_infinite() {
                FamilyBound::Unbounded {
                    reason: "coefficients grow without bound, and so does |c_n|^p·w_1".into(),
                }
            } else {
                // ‖c_n e_n‖^p = |c_n|^p · w₁ with w₁ = 1
                FamilyBound::Bounded(Interval::new(view.sup_beyond_lower(0).powf(p), hi.powf(p)))
            }
        }
        // |a| ≤ |g| pointwise orders the rearrangements the same way
        FamilySpec::Dominated { envelope, .. } => FamilyBound::Bounded(norm(envelope)?),
    })
}

/// Upper bound on `sup_{a∈A} sup_{n>h} |a_n|`.
pub(crate) fn sup_beyond<T: Real>(family: &FamilySpec<T>, h: u64) -> T {
    match family {
        FamilySpec::Explicit { members } => members
            .iter()
            .map(|a| View::new(a).env_beyond(h))
            .fold(T::zero(), T::max),
        FamilySpec::Shift { base } => View::new(base).env_beyond(0),
        FamilySpec::ScaledBasis { coeffs } => View::new(coeffs).env_beyond(h),
        FamilySpec::Dominated { envelope, .. } => View::new(envelope).env_beyond(h),
    }
}

/// `lim_{h→∞} sup_{a∈A} sup_{n>h} |a_n|`.
pub(crate) fn sup_limit<T: Real>(family: &FamilySpec<T>) -> T {
    match family {
        FamilySpec::Explicit { members } => members
            .iter()
            .map(|a| View::new(a).env_limit())
            .fold(T::zero(), T::max),
        FamilySpec::Shift { base } => View::new(base).env_beyond(0),
        FamilySpec::ScaledBasis { coeffs } => View::new(coeffs).env_limit(),
        FamilySpec::Dominated { envelope, .. } => View::new(envelope).env_limit(),
    }
}
