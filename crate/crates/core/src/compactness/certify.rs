use super::{family_bound, min_equinorm_index, tail_criterion_index, EquinormOutcome, FamilyBound, FamilySpec};
use super::{TailOutcome, Witness};
use crate::error::{check_exponent, check_positive, Error, Result};
use crate::interval::Interval;
use crate::scalar::Real;
use crate::weight::WeightSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Precompact,
    NotPrecompact,
    /// The budget ran out before either claim could be certified.
    Inconclusive,
}

/// Which criterion the verdict rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    SeminormGap,
    TailCriterion,
    Both,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Counterexample<T> {
    Unbounded { reason: String },
    /// Some member lies outside `L_{p,w}`.
    NotMember { reason: String },
    NotEquinormed { eps: T, witness: Witness<T> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate<T> {
    pub verdict: Verdict,
    /// Encloses `sup_{a∈A} ‖a‖^p` when the family is bounded.
    pub bound: Option<Interval<T>>,
    /// `(ε, N(ε))` for the seminorm gap, in ladder order.
    pub equinorm_table: Vec<(T, u64)>,
    /// `(ε, N(ε))` for the index-ordered tails `H̃_N`, in ladder order.
    pub tail_table: Vec<(T, u64)>,
    pub counterexample: Option<Counterexample<T>>,
    pub method: Method,
    /// Both criteria reached the same verdict.
    pub cross_check_agreement: bool,
    /// Reasons behind any inconclusive step.
    pub diagnostics: Vec<String>,
}

impl<T> Certificate<T> {
    fn settled(verdict: Verdict, bound: Option<Interval<T>>, counterexample: Option<Counterexample<T>>) -> Self {
        Self {
            verdict,
            bound,
            equinorm_table: Vec::new(),
            tail_table: Vec::new(),
            counterexample,
            method: Method::Both,
            cross_check_agreement: true,
            diagnostics: Vec::new(),
        }
    }
}

struct Run<T> {
    table: Vec<(T, u64)>,
    failure: Option<(T, Witness<T>)>,
    inconclusive: bool,
}

impl<T> Run<T> {
    fn verdict(&self) -> Verdict {
        if self.failure.is_some() {
            Verdict::NotPrecompact
        } else if self.inconclusive {
            Verdict::Inconclusive
        } else {
            Verdict::Precompact
        }
    }
}

/// Decides precompactness as boundedness plus equinormedness over the `ε` ladder,
/// and cross-checks with the uniform vanishing of `H̃_N`.
///
/// Every mathematical outcome is a verdict; errors are reserved for invalid
/// arguments.
pub fn certify<T: Real>(
    family: &FamilySpec<T>,
    p: T,
    w: &WeightSpec<T>,
    eps_ladder: &[T],
    tol: T,
    budget: usize,
) -> Result<Certificate<T>> {
    check_exponent(p)?;
    check_positive("tol", tol)?;
    if eps_ladder.is_empty() {
        return Err(Error::InvalidArgument {
            name: "eps",
            reason: "the ladder needs at least one value".into(),
        });
    }
    for &eps in eps_ladder {
        check_positive("eps", eps)?;
    }

    let bound = match family_bound(family, p, w, tol, budget) {
        Ok(FamilyBound::Bounded(m)) => m,
        Ok(FamilyBound::Unbounded { reason }) => {
            return Ok(Certificate::settled(
                Verdict::NotPrecompact,
                None,
                Some(Counterexample::Unbounded { reason }),
            ))
        }
        Err(Error::NotSummable { reason }) => {
            return Ok(Certificate::settled(
                Verdict::NotPrecompact,
                None,
                Some(Counterexample::NotMember { reason }),
            ))
        }
        Err(e) => {
            let mut c = Certificate::settled(Verdict::Inconclusive, None, None);
            c.diagnostics.push(format!("bound: {e}"));
            return Ok(c);
        }
    };

    let mut diagnostics = Vec::new();
    let mut gap = Run {
        table: Vec::new(),
        failure: None,
        inconclusive: false,
    };
    let mut tail = Run {
        table: Vec::new(),
        failure: None,
        inconclusive: false,
    };
    for &eps in eps_ladder {
        match min_equinorm_index(family, p, w, eps, budget) {
            Ok(EquinormOutcome::Index { index, .. }) => gap.table.push((eps, index)),
            Ok(EquinormOutcome::NotEquinormed(witness)) => {
                gap.failure.get_or_insert((eps, witness));
            }
            Err(e) => {
                gap.inconclusive = true;
                diagnostics.push(format!("seminorm gap at eps = {eps}: {e}"));
            }
        }
        match tail_criterion_index(family, p, w, eps, budget) {
            Ok(TailOutcome::Index { index, .. }) => tail.table.push((eps, index)),
            Ok(TailOutcome::NotSatisfied(witness)) => {
                tail.failure.get_or_insert((eps, witness));
            }
            Err(e) => {
                tail.inconclusive = true;
                diagnostics.push(format!("tail criterion at eps = {eps}: {e}"));
            }
        }
    }

    let (by_gap, by_tail) = (gap.verdict(), tail.verdict());
    let (verdict, method) = match (by_gap, by_tail) {
        (Verdict::Inconclusive, Verdict::Inconclusive) => (Verdict::Inconclusive, Method::Both),
        (Verdict::Inconclusive, v) => (v, Method::TailCriterion),
        (v, u) if v == u => (v, Method::Both),
        (v, _) => (v, Method::SeminormGap),
    };
    let counterexample = gap
        .failure
        .or(tail.failure)
        .map(|(eps, witness)| Counterexample::NotEquinormed { eps, witness });
    Ok(Certificate {
        verdict,
        bound: Some(bound),
        equinorm_table: gap.table,
        tail_table: tail.table,
        counterexample,
        method,
        cross_check_agreement: by_gap == by_tail,
        diagnostics,
    })
}
