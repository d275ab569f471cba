//! Real sequences `a = (a₁, a₂, …)` in analyzable form.

use crate::envelope::EnvelopeSpec;
use crate::error::{Error, Result};
use crate::scalar::{from_index, Real};

#[derive(Debug, Clone, PartialEq)]
pub enum SequenceKind<T> {
    /// Explicit finite support; zero beyond it.
    Finite { entries: Vec<T> },
    /// `a_i = c · i^(-s)`. A nonpositive `s` describes a sequence that does not vanish.
    Power { c: T, s: T },
    /// `a_i = c · r^i` with `|r| < 1`.
    Geometric { c: T, r: T },
    /// Exact values up to the cutoff `entries.len()`, only `|a_i| ≤ envelope(i)` beyond.
    /// Entries past `exact_prefix` are also dominated by the envelope.
    Tabled {
        entries: Vec<T>,
        envelope: EnvelopeSpec<T>,
        exact_prefix: usize,
    },
}

/// A validated sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceSpec<T> {
    kind: SequenceKind<T>,
}

fn check_entries<T: Real>(entries: &[T]) -> Result<()> {
    if let Some((k, x)) = entries.iter().enumerate().find(|(_, x)| !x.is_finite()) {
        return Err(Error::InvalidSequence {
            field: "entries",
            reason: format!("entry {} is not a finite real: {x}", k + 1),
        });
    }
    Ok(())
}

impl<T: Real> SequenceSpec<T> {
    pub fn finite(entries: Vec<T>) -> Result<Self> {
        check_entries(&entries)?;
        Ok(Self {
            kind: SequenceKind::Finite { entries },
        })
    }

    pub fn zero() -> Self {
        Self {
            kind: SequenceKind::Finite { entries: Vec::new() },
        }
    }

    /// Unit vector `e_n`.
    pub fn unit(n: usize) -> Self {
        assert!(n >= 1);
        let mut entries = vec![T::zero(); n];
        entries[n - 1] = T::one();
        Self {
            kind: SequenceKind::Finite { entries },
        }
    }

    pub fn power(c: T, s: T) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::InvalidSequence {
                field: "c",
                reason: format!("must be finite, got {c}"),
            });
        }
        if !s.is_finite() {
            return Err(Error::InvalidSequence {
                field: "s",
                reason: format!("must be finite, got {s}"),
            });
        }
        Ok(Self {
            kind: SequenceKind::Power { c, s },
        })
    }

    pub fn geometric(c: T, r: T) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::InvalidSequence {
                field: "c",
                reason: format!("must be finite, got {c}"),
            });
        }
        if r.is_nan() || r.abs() >= T::one() {
            return Err(Error::InvalidSequence {
                field: "r",
                reason: format!("must satisfy |r| < 1, got {r}"),
            });
        }
        Ok(Self {
            kind: SequenceKind::Geometric { c, r },
        })
    }

    /// Table whose entries are all exact; the envelope only covers terms past the cutoff.
    pub fn tabled(entries: Vec<T>, envelope: EnvelopeSpec<T>) -> Result<Self> {
        let cutoff = entries.len();
        Self::tabled_with_prefix(entries, envelope, cutoff)
    }

    /// Table whose entries beyond `exact_prefix` must lie under the envelope.
    pub fn tabled_with_prefix(entries: Vec<T>, envelope: EnvelopeSpec<T>, exact_prefix: usize) -> Result<Self> {
        check_entries(&entries)?;
        if exact_prefix > entries.len() {
            return Err(Error::InvalidSequence {
                field: "exact_prefix",
                reason: format!("{exact_prefix} exceeds the table length {}", entries.len()),
            });
        }
        for (k, x) in entries.iter().enumerate().skip(exact_prefix) {
            let i = k as u64 + 1;
            if x.abs() > envelope.at(i) {
                return Err(Error::InvalidSequence {
                    field: "envelope",
                    reason: format!("|a_{i}| = {} exceeds the envelope value {}", x.abs(), envelope.at(i)),
                });
            }
        }
        Ok(Self {
            kind: SequenceKind::Tabled {
                entries,
                envelope,
                exact_prefix,
            },
        })
    }

    pub fn kind(&self) -> &SequenceKind<T> {
        &self.kind
    }

    pub fn is_finite_support(&self) -> bool {
        matches!(self.kind, SequenceKind::Finite { .. })
    }

    /// Entries of a `Finite` sequence.
    pub fn entries(&self) -> Option<&[T]> {
        match &self.kind {
            SequenceKind::Finite { entries } => Some(entries),
            _ => None,
        }
    }

    /// `a_i` for `i ≥ 1`.
    pub fn term(&self, i: u64) -> Result<T> {
        assert!(i >= 1, "sequences are indexed from 1");
        let x = from_index::<T>(i);
        match &self.kind {
            SequenceKind::Finite { entries } => Ok(entries.get(i as usize - 1).copied().unwrap_or_else(T::zero)),
            SequenceKind::Power { c, s } => Ok(*c * x.powf(-*s)),
            SequenceKind::Geometric { c, r } => {
                let power = match i32::try_from(i) {
                    Ok(k) => r.powi(k),
                    Err(_) if *r < T::zero() && i % 2 == 1 => -r.abs().powf(x),
                    Err(_) => r.abs().powf(x),
                };
                Ok(*c * power)
            }
            SequenceKind::Tabled { entries, .. } => entries
                .get(i as usize - 1)
                .copied()
                .ok_or(Error::UnknownTerm { index: i }),
        }
    }

    /// Upper bound on `|a_i|`: the exact value where known, the envelope otherwise.
    pub fn abs_upper(&self, i: u64) -> T {
        match (&self.kind, self.term(i)) {
            (_, Ok(x)) => x.abs(),
            (SequenceKind::Tabled { envelope, .. }, Err(_)) => envelope.at(i),
            _ => unreachable!("only tables have unknown terms"),
        }
    }

    /// `c · a`.
    pub fn scaled(&self, factor: T) -> Result<Self> {
        match &self.kind {
            SequenceKind::Finite { entries } => Self::finite(entries.iter().map(|&x| x * factor).collect()),
            SequenceKind::Power { c, s } => Self::power(*c * factor, *s),
            SequenceKind::Geometric { c, r } => Self::geometric(*c * factor, *r),
            SequenceKind::Tabled {
                entries,
                envelope,
                exact_prefix,
            } => {
                let envelope = match *envelope.kind() {
                    crate::envelope::EnvelopeKind::PowerTail { c, s } => {
                        EnvelopeSpec::power_tail(c * factor.abs(), s)?
                    }
                    crate::envelope::EnvelopeKind::GeometricTail { c, r } => {
                        EnvelopeSpec::geometric_tail(c * factor.abs(), r)?
                    }
                };
                Self::tabled_with_prefix(entries.iter().map(|&x| x * factor).collect(), envelope, *exact_prefix)
            }
        }
    }
}

/// `a_i`; `UnknownTerm` where only the envelope bounds the value.
pub fn term_at<T: Real>(a: &SequenceSpec<T>, i: u64) -> Result<T> {
    a.term(i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms() {
        let a = SequenceSpec::finite(vec![1.0, 2.0]).unwrap();
        assert_eq!(term_at(&a, 3).unwrap(), 0.0);
        let h = SequenceSpec::power(1.0, 1.0).unwrap();
        assert_eq!(term_at(&h, 7).unwrap(), 1.0 / 7.0);
        let g = SequenceSpec::geometric(3.0, -0.5).unwrap();
        assert_eq!(term_at(&g, 2).unwrap(), 0.75);
    }

    #[test]
    fn table_beyond_cutoff_is_unknown() {
        let env = EnvelopeSpec::power_tail(1.0, 2.0).unwrap();
        let entries: Vec<f64> = (1..=10).map(|i| 1.0 / (i * i) as f64).collect();
        let t = SequenceSpec::tabled(entries, env).unwrap();
        assert_eq!(term_at(&t, 11), Err(Error::UnknownTerm { index: 11 }));
        assert_eq!(t.abs_upper(11), 1.0 / 121.0);
    }

    #[test]
    fn table_envelope_must_dominate_past_exact_prefix() {
        let env = EnvelopeSpec::power_tail(1.0, 1.0).unwrap();
        let err = SequenceSpec::tabled_with_prefix(vec![5.0, 1.0], env, 0).unwrap_err();
        assert!(matches!(err, Error::InvalidSequence { field: "envelope", .. }));
        assert!(SequenceSpec::tabled_with_prefix(vec![5.0, 0.4], env, 1).is_ok());
    }

    #[test]
    fn rejects_nonfinite_entries() {
        let err = SequenceSpec::finite(vec![1.0, f64::NAN]).unwrap_err();
        assert!(matches!(err, Error::InvalidSequence { field: "entries", .. }));
        assert!(SequenceSpec::geometric(1.0, 1.0).is_err());
    }

    #[test]
    fn envelope_soundness_for_analytic_families() {
        let env = EnvelopeSpec::geometric_tail(2.0, 0.9).unwrap();
        let entries: Vec<f64> = (1..=50).map(|i| 1.5 * 0.9f64.powi(i)).collect();
        let families = [
            SequenceSpec::power(-2.0, 0.7).unwrap(),
            SequenceSpec::geometric(1.5, -0.9).unwrap(),
            SequenceSpec::tabled(entries, env).unwrap(),
        ];
        for a in &families {
            for i in (51..).step_by(7).take(1000) {
                let bound = a.abs_upper(i);
                if let Ok(x) = a.term(i) {
                    assert!(x.abs() <= bound);
                }
                if i > 51 {
                    assert!(bound <= a.abs_upper(i - 1));
                }
            }
        }
    }
}
