//! Head/tail splits of the norm sum at an index `i`.

use crate::error::{check_exponent, check_positive, Result};
use crate::interval::Interval;
use crate::norms::{budget_error, enclose, require_member, seminorm_of_view, weighted_sum};
use crate::rearrange::{prefix_of_view, ranks_of_head, sorted_moduli};
use crate::scalar::Real;
use crate::sequence::SequenceSpec;
use crate::view::View;
use crate::weight::WeightSpec;

/// The eight quantities of the split at `i`, all as `p`-th powers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecompositionRecord<T> {
    pub i: u64,
    /// `S_i`: norm of `a₁..a_i` with the rest zeroed. Exact.
    pub seminorm: Interval<T>,
    /// `S̃_i`: norm of the tail `a_{i+1}, a_{i+2}, …` against `w_{i+1}, w_{i+2}, …`.
    pub shifted_tail: Interval<T>,
    /// `H_i = Σ_{j≤i} |a_j|^p · w_{σ⁻¹(j)}`. Exact.
    pub head: Interval<T>,
    /// `H̃_i`: the rest of the norm sum, by original index.
    pub head_complement: Interval<T>,
    /// `W_i = Σ_{k≤i} |a_{σ_k}|^p · w_k`. Exact.
    pub weight_head: Interval<T>,
    /// `W̃_i`: the rest of the norm sum, by rank.
    pub weight_complement: Interval<T>,
    /// `T_i`: norm of the tail against the full weight sequence.
    pub tail_norm: Interval<T>,
    pub norm_pth: Interval<T>,
}

/// Splits `‖a‖_{p,w}^p` at `i`; `i = 0` puts everything in the tail.
///
/// Infinite quantities are enclosed to width `tol`. For finite supports the
/// complements are summed directly; otherwise they are the certified differences
/// `‖a‖^p − H_i` and `‖a‖^p − W_i`.
pub fn decompose<T: Real>(
    a: &SequenceSpec<T>,
    p: T,
    w: &WeightSpec<T>,
    i: u64,
    tol: T,
    budget: usize,
) -> Result<DecompositionRecord<T>> {
    check_exponent(p)?;
    check_positive("tol", tol)?;
    require_member(a, p, w)?;
    let view = View::new(a);
    let norm_pth = {
        let e = enclose(&view, p, w, 0, tol, budget)?;
        if !e.reached {
            return Err(budget_error(&e, budget));
        }
        e.interval
    };
    let seminorm = Interval::point(seminorm_of_view(&view, p, w, i)?);
    let tail = view.tail(i);
    let shifted_tail = enclosed(&tail, p, w, i, tol, budget)?;
    let tail_norm = enclosed(&tail, p, w, 0, tol, budget)?;

    let ranks = ranks_of_head(&view, i, budget)?;
    let head = Interval::point(head_sum(&view, p, w, &ranks)?);
    let prefix = prefix_of_view(&view, i as usize, budget)?;
    let weight_head = Interval::point(weighted_sum(prefix.values.iter().copied(), p, w, 0));

    let (head_complement, weight_complement) = match a.entries() {
        Some(entries) => {
            let len = entries.len() as u64;
            let h_rest = finite_head_complement(&view, p, w, i, len, budget)?;
            let sorted = sorted_moduli(&view, len)?;
            let w_rest = weighted_sum(sorted.iter().skip(i as usize).map(|&(_, v)| v), p, w, i);
            (Interval::point(h_rest), Interval::point(w_rest))
        }
        None => (norm_pth.complement(&head), norm_pth.complement(&weight_head)),
    };

    Ok(DecompositionRecord {
        i,
        seminorm,
        shifted_tail,
        head,
        head_complement,
        weight_head,
        weight_complement,
        tail_norm,
        norm_pth,
    })
}

fn enclosed<T: Real>(
    view: &View<'_, T>,
    p: T,
    w: &WeightSpec<T>,
    offset: u64,
    tol: T,
    budget: usize,
) -> Result<Interval<T>> {
    let e = enclose(view, p, w, offset, tol, budget)?;
    if e.reached {
        Ok(e.interval)
    } else {
        Err(budget_error(&e, budget))
    }
}

/// `H̃_i` summed directly over a support ending at `len`.
pub(crate) fn finite_head_complement<T: Real>(
    view: &View<'_, T>,
    p: T,
    w: &WeightSpec<T>,
    i: u64,
    len: u64,
    budget: usize,
) -> Result<T> {
    let all = ranks_of_head(view, len, budget)?;
    let rest = all.get(i as usize..).unwrap_or(&[]);
    head_sum(&view.tail(i), p, w, rest)
}

/// `Σ_t |value(t)|^p · w_{rank(t)}` over view indices `1..=ranks.len()`, weight 0 for unranked.
pub(crate) fn head_sum<T: Real>(view: &View<'_, T>, p: T, w: &WeightSpec<T>, ranks: &[Option<u64>]) -> Result<T> {
    let mut terms = Vec::with_capacity(ranks.len());
    for (k, rank) in ranks.iter().enumerate() {
        if let Some(r) = rank {
            terms.push(view.value(k as u64 + 1)?.abs().powf(p) * w.at(*r));
        }
    }
    Ok(crate::sum::compensated_sum(terms))
}
