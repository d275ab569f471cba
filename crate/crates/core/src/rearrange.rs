//! Nonincreasing rearrangement `σ` with smallest-index tie-breaking.
//!
//! Infinite sequences are ranked inside a finite horizon `H`, which is doubled
//! until everything beyond `H` is certified to lie strictly below the ranks
//! being asked for.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sequence::SequenceSpec;
use crate::view::View;

const INITIAL_HORIZON: u64 = 16;

/// Nonzero `(index, |a_index|)` for indices `≤ h`, stably sorted by decreasing modulus.
pub(crate) fn sorted_moduli<T: Real>(view: &View<'_, T>, h: u64) -> Result<Vec<(u64, T)>> {
    let h = view.support_end().map_or(h, |end| h.min(end));
    let mut out = Vec::new();
    for t in view.first_live().min(h + 1)..=h {
        let x = view.value(t)?.abs();
        if x > T::zero() {
            out.push((t, x));
        }
    }
    if !view.is_monotone() {
        // stable: equal moduli keep increasing index order
        out.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal));
    }
    Ok(out)
}

/// Horizons to try, in order: a single fixed one for finite supports and
/// tables, doubling up to `budget` otherwise.
pub(crate) fn horizons<T: Real>(view: &View<'_, T>, at_least: u64, budget: usize) -> Vec<u64> {
    if let Some(end) = view.support_end() {
        return vec![end.max(at_least)];
    }
    if let Some(known) = view.known_upto() {
        return vec![known];
    }
    let budget = budget as u64;
    let mut h = INITIAL_HORIZON.max(at_least).max(view.first_live().saturating_sub(1));
    let mut out = vec![h];
    while h < budget {
        h = (2 * h).min(budget);
        out.push(h);
    }
    out
}

/// First `n` ranks of a sequence: the indices `σ₁…σ_n` and the moduli `|a_{σ_k}|`.
/// Ranks past the last nonzero entry carry index `None` and value 0.
#[derive(Debug, Clone, PartialEq)]
pub struct RearrangedPrefix<T> {
    pub indices: Vec<Option<u64>>,
    pub values: Vec<T>,
}

pub(crate) fn prefix_of_view<T: Real>(view: &View<'_, T>, n: usize, budget: usize) -> Result<RearrangedPrefix<T>> {
    for h in horizons(view, n as u64, budget) {
        let sorted = sorted_moduli(view, h)?;
        let beyond = view.env_beyond(h);
        let certified = if sorted.len() >= n {
            n == 0 || sorted[n - 1].1 > beyond
        } else {
            beyond == T::zero()
        };
        if certified {
            let mut indices: Vec<Option<u64>> = sorted.iter().take(n).map(|&(t, _)| Some(t)).collect();
            let mut values: Vec<T> = sorted.iter().take(n).map(|&(_, x)| x).collect();
            indices.resize(n, None);
            values.resize(n, T::zero());
            return Ok(RearrangedPrefix { indices, values });
        }
    }
    Err(Error::HorizonExhausted { budget })
}

/// The first `n` ranks of the stable nonincreasing rearrangement of `a`.
///
/// For infinite sequences the horizon is doubled until the envelope beyond it drops
/// strictly below the `n`-th value found; `HorizonExhausted` if that never happens
/// within `budget` terms (which is the case for sequences with infinitely many
/// terms at or above a positive level).
pub fn rearrangement_prefix<T: Real>(a: &SequenceSpec<T>, n: usize, budget: usize) -> Result<RearrangedPrefix<T>> {
    prefix_of_view(&View::new(a), n, budget)
}

pub(crate) fn rank_in_view<T: Real>(view: &View<'_, T>, t: u64, budget: usize) -> Result<Option<u64>> {
    let v = view.value(t)?.abs();
    if v == T::zero() {
        return Ok(None);
    }
    for h in horizons(view, t, budget) {
        if view.env_beyond(h) >= v {
            continue;
        }
        let mut rank = 1;
        for u in view.first_live()..=h {
            let x = view.value(u)?.abs();
            if x > v || (x == v && u < t) {
                rank += 1;
            }
        }
        return Ok(Some(rank));
    }
    Err(Error::HorizonExhausted { budget })
}

/// `σ⁻¹(j)`: the rank of index `j`, or `None` when `a_j = 0` (such indices are
/// outside the range of `σ` and pair with weight 0).
pub fn sigma_inverse_at<T: Real>(a: &SequenceSpec<T>, j: u64, budget: usize) -> Result<Option<u64>> {
    rank_in_view(&View::new(a), j, budget)
}

/// Ranks of view indices `1..=i`.
pub(crate) fn ranks_of_head<T: Real>(view: &View<'_, T>, i: u64, budget: usize) -> Result<Vec<Option<u64>>> {
    let mut smallest = T::infinity();
    for t in 1..=i {
        let x = view.value(t)?.abs();
        if x > T::zero() {
            smallest = smallest.min(x);
        }
    }
    if smallest.is_infinite() {
        return Ok(vec![None; i as usize]);
    }
    for h in horizons(view, i, budget) {
        if view.env_beyond(h) >= smallest {
            continue;
        }
        let mut ranks = vec![None; i as usize];
        for (k, (t, _)) in sorted_moduli(view, h)?.into_iter().enumerate() {
            if t <= i {
                ranks[t as usize - 1] = Some(k as u64 + 1);
            }
        }
        return Ok(ranks);
    }
    Err(Error::HorizonExhausted { budget })
}

/// The optimal injective map `σ` of a sequence, materialized up to a prefix.
#[derive(Debug, Clone)]
pub struct Rearrangement<'a, T> {
    seq: &'a SequenceSpec<T>,
    prefix: RearrangedPrefix<T>,
    budget: usize,
}

impl<'a, T: Real> Rearrangement<'a, T> {
    pub fn new(seq: &'a SequenceSpec<T>, n: usize, budget: usize) -> Result<Self> {
        Ok(Self {
            seq,
            prefix: rearrangement_prefix(seq, n, budget)?,
            budget,
        })
    }

    pub fn sequence(&self) -> &SequenceSpec<T> {
        self.seq
    }

    pub fn len(&self) -> usize {
        self.prefix.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.indices.is_empty()
    }

    /// `σ_k` for `1 ≤ k ≤ len`.
    pub fn sigma(&self, k: usize) -> Option<u64> {
        self.prefix.indices.get(k.checked_sub(1)?).copied().flatten()
    }

    /// `|a_{σ_k}|`.
    pub fn value(&self, k: usize) -> T {
        self.prefix.values[k - 1]
    }

    /// `σ⁻¹(j)`, answered from the materialized prefix when possible.
    pub fn inverse(&self, j: u64) -> Result<Option<u64>> {
        if let Some(k) = self.prefix.indices.iter().position(|&t| t == Some(j)) {
            return Ok(Some(k as u64 + 1));
        }
        sigma_inverse_at(self.seq, j, self.budget)
    }

    pub fn prefix(&self) -> &RearrangedPrefix<T> {
        &self.prefix
    }
}
