use super::FamilySpec;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sequence::SequenceSpec;

/// `A − A = {a − b : a, b ∈ A}` for an explicit family of finite members.
///
/// Differences are listed in pair order `(a₁−a₁, a₁−a₂, …)`, keeping the first
/// occurrence of each sequence; trailing zeros do not distinguish sequences.
pub fn difference_family<T: Real>(family: &FamilySpec<T>) -> Result<FamilySpec<T>> {
    let FamilySpec::Explicit { members } = family else {
        return Err(Error::UnsupportedVariant("differences of a family that is not an explicit list"));
    };
    let rows: Vec<&[T]> = members
        .iter()
        .map(|a| {
            a.entries()
                .ok_or(Error::UnsupportedVariant("differences of members without finite support"))
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<Vec<T>> = Vec::new();
    for a in &rows {
        for b in &rows {
            let len = a.len().max(b.len());
            let at = |v: &[T], k: usize| v.get(k).copied().unwrap_or_else(T::zero);
            let diff: Vec<T> = (0..len).map(|k| at(a, k) - at(b, k)).collect();
            if !out.iter().any(|seen| same_sequence(seen, &diff)) {
                out.push(diff);
            }
        }
    }
    FamilySpec::explicit(out.into_iter().map(SequenceSpec::finite).collect::<Result<_>>()?)
}

fn same_sequence<T: Real>(x: &[T], y: &[T]) -> bool {
    let trim = |v: &[T]| v.len() - v.iter().rev().take_while(|t| **t == T::zero()).count();
    let (nx, ny) = (trim(x), trim(y));
    nx == ny && x[..nx] == y[..ny]
}
