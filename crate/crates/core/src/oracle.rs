//! Exhaustive reference computations for small finite supports.
//!
//! Nothing here relies on the rearrangement: norms are maxima over every injective
//! placement of the support into `k + slack` weight positions, seminorms over every
//! permutation of the kept entries.

use crate::compactness::FamilySpec;
use crate::error::{check_exponent, Error, Result};
use crate::scalar::Real;
use crate::sequence::SequenceSpec;
use crate::weight::WeightSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlacementSearchConfig {
    /// Weight positions searched beyond the support size.
    pub slack: usize,
    /// Largest support (or permutation length) searched.
    pub max_support: usize,
}

impl Default for PlacementSearchConfig {
    fn default() -> Self {
        Self {
            slack: 2,
            max_support: 8,
        }
    }
}

fn finite_entries<T: Real>(a: &SequenceSpec<T>) -> Result<&[T]> {
    a.entries()
        .ok_or(Error::UnsupportedVariant("brute-force search over a sequence without finite support"))
}

/// Maximum of `Σ |a_{ψ_i}|^p · w_i` over injective placements `ψ` of the support
/// into positions `1..=k+slack`.
pub fn brute_force_norm_pth<T: Real>(
    a: &SequenceSpec<T>,
    p: T,
    w: &WeightSpec<T>,
    cfg: PlacementSearchConfig,
) -> Result<T> {
    check_exponent(p)?;
    let powers: Vec<T> = finite_entries(a)?
        .iter()
        .filter(|x| **x != T::zero())
        .map(|x| x.abs().powf(p))
        .collect();
    if powers.len() > cfg.max_support {
        return Err(Error::SupportTooLarge {
            support: powers.len(),
            max: cfg.max_support,
        });
    }
    let weights: Vec<T> = (1..=(powers.len() + cfg.slack) as u64).map(|i| w.at(i)).collect();
    let mut used = vec![false; weights.len()];
    Ok(place(&powers, &weights, &mut used, T::zero()))
}

fn place<T: Real>(powers: &[T], weights: &[T], used: &mut [bool], acc: T) -> T {
    let Some((&first, rest)) = powers.split_first() else {
        return acc;
    };
    let mut best = T::neg_infinity();
    for slot in 0..weights.len() {
        if used[slot] {
            continue;
        }
        used[slot] = true;
        best = best.max(place(rest, weights, used, acc + first * weights[slot]));
        used[slot] = false;
    }
    best
}

/// Maximum over all `i!` orderings of `|a₁|..|a_i|` paired with `w₁..w_i`.
pub fn brute_force_seminorm_pth<T: Real>(
    a: &SequenceSpec<T>,
    p: T,
    w: &WeightSpec<T>,
    i: usize,
    cfg: PlacementSearchConfig,
) -> Result<T> {
    check_exponent(p)?;
    if i > cfg.max_support {
        return Err(Error::SupportTooLarge {
            support: i,
            max: cfg.max_support,
        });
    }
    let entries = finite_entries(a)?;
    let powers: Vec<T> = (0..i)
        .map(|k| entries.get(k).copied().unwrap_or_else(T::zero).abs().powf(p))
        .collect();
    let weights: Vec<T> = (1..=i as u64).map(|k| w.at(k)).collect();
    let mut used = vec![false; i];
    Ok(place(&powers, &weights, &mut used, T::zero()))
}

/// `max_a (‖a‖^p − S_n(a))` over an explicit family of finite members.
///
/// `S_n` is searched as the brute-force norm of `r_n(a)`, so `n` may exceed the
/// permutation cap as long as the kept support does not.
pub fn brute_force_equinorm_gap<T: Real>(
    family: &FamilySpec<T>,
    p: T,
    w: &WeightSpec<T>,
    n: usize,
    cfg: PlacementSearchConfig,
) -> Result<T> {
    let FamilySpec::Explicit { members } = family else {
        return Err(Error::UnsupportedVariant("brute-force gap of a family that is not an explicit list"));
    };
    let mut gap = T::zero();
    for a in members {
        let entries = finite_entries(a)?;
        let head = SequenceSpec::finite(entries[..n.min(entries.len())].to_vec())?;
        let g = brute_force_norm_pth(a, p, w, cfg)? - brute_force_norm_pth(&head, p, w, cfg)?;
        gap = gap.max(g);
    }
    Ok(gap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(slack: usize) -> PlacementSearchConfig {
        PlacementSearchConfig { slack, max_support: 8 }
    }

    #[test]
    fn norm_examples() {
        let h = WeightSpec::harmonic();
        let a = SequenceSpec::finite(vec![1.0, 2.0]).unwrap();
        assert_eq!(brute_force_norm_pth(&a, 1.0, &h, cfg(0)).unwrap(), 2.5);
        let c = SequenceSpec::finite(vec![-3.0]).unwrap();
        assert_eq!(brute_force_norm_pth(&c, 2.0, &h, cfg(5)).unwrap(), 9.0);
        let ones = SequenceSpec::<f64>::finite(vec![1.0, 1.0, 1.0]).unwrap();
        let got = brute_force_norm_pth(&ones, 1.0, &h, cfg(2)).unwrap();
        assert!((got - 11.0 / 6.0).abs() < 1e-15);
        assert_eq!(brute_force_norm_pth(&SequenceSpec::zero(), 1.0, &h, cfg(2)).unwrap(), 0.0);
    }

    #[test]
    fn support_cap() {
        let a = SequenceSpec::finite(vec![1.0; 9]).unwrap();
        assert_eq!(
            brute_force_norm_pth(&a, 1.0, &WeightSpec::harmonic(), PlacementSearchConfig::default()),
            Err(Error::SupportTooLarge { support: 9, max: 8 })
        );
    }

    #[test]
    fn seminorm_examples() {
        let h = WeightSpec::harmonic();
        let a = SequenceSpec::finite(vec![1.0, 2.0]).unwrap();
        assert_eq!(brute_force_seminorm_pth(&a, 1.0, &h, 2, cfg(0)).unwrap(), 2.5);
        assert_eq!(brute_force_seminorm_pth(&a, 1.0, &h, 1, cfg(0)).unwrap(), 1.0);
        let z = SequenceSpec::finite(vec![0.0, 0.0, 7.0]).unwrap();
        assert_eq!(brute_force_seminorm_pth(&z, 1.0, &h, 2, cfg(0)).unwrap(), 0.0);
    }

    #[test]
    fn gap_examples() {
        let h = WeightSpec::harmonic();
        let cfg = PlacementSearchConfig::default();
        let fam = |m: Vec<Vec<f64>>| {
            FamilySpec::explicit(m.into_iter().map(|e| SequenceSpec::finite(e).unwrap()).collect()).unwrap()
        };
        assert_eq!(brute_force_equinorm_gap(&fam(vec![vec![1.0, 2.0]]), 1.0, &h, 2, cfg).unwrap(), 0.0);
        assert_eq!(brute_force_equinorm_gap(&fam(vec![vec![0.0, 0.0, 1.0]]), 1.0, &h, 2, cfg).unwrap(), 1.0);
        for n in 0..5 {
            assert_eq!(brute_force_equinorm_gap(&fam(vec![vec![]]), 2.0, &h, n, cfg).unwrap(), 0.0);
        }
    }
}
