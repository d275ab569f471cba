use lorentz::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BUDGET: usize = 1 << 22;
const SLACK: f64 = 1e-12;

fn entry() -> impl Strategy<Value = f64> {
    prop_oneof![
        4 => -10.0..10.0f64,
        1 => Just(0.0),
        2 => prop::sample::select(vec![-5.0, -2.5, 1.0, 2.5, 5.0]),
    ]
}

fn finite(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(entry(), 0..=max_len)
}

fn weights() -> impl Strategy<Value = Weights64> {
    prop_oneof![
        Just(Weights64::harmonic()),
        Just(Weights64::inv_sqrt()),
        (0.05..=1.0f64).prop_map(|b| Weights64::power_decay(b).unwrap()),
        Just(Weights64::explicit_prefix(vec![1.0, 0.9, 0.9, 0.5], 1.0).unwrap()),
    ]
}

fn exponent() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), Just(2.0), 1.0..4.0f64]
}

fn seq(entries: &[f64]) -> Sequence64 {
    Sequence64::finite(entries.to_vec()).unwrap()
}

fn norm(a: &Sequence64, p: f64, w: &Weights64) -> Interval64 {
    lorentz_norm_pth(a, p, w, 1e-10, BUDGET).unwrap()
}

fn analytic_fixtures() -> Vec<Sequence64> {
    vec![
        Sequence64::power(1.0, 1.0).unwrap(),
        Sequence64::power(-2.0, 2.0).unwrap(),
        Sequence64::geometric(3.0, -0.7).unwrap(),
        Sequence64::geometric(1.0, 0.5).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rearrangement_is_stable_and_invertible(a in finite(10)) {
        let s = seq(&a);
        let n = a.len();
        let r = rearrangement_prefix(&s, n, BUDGET).unwrap();
        for k in 1..n {
            prop_assert!(r.values[k - 1] >= r.values[k]);
            if r.values[k - 1] == r.values[k] {
                if let (Some(i), Some(j)) = (r.indices[k - 1], r.indices[k]) {
                    prop_assert!(i < j);
                }
            }
        }
        for (k, idx) in r.indices.iter().enumerate() {
            if let Some(j) = idx {
                prop_assert_eq!(sigma_inverse_at(&s, *j, BUDGET).unwrap(), Some(k as u64 + 1));
            }
        }
    }

    #[test]
    fn norm_matches_exhaustive_search(a in finite(6), p in exponent(), w in weights()) {
        let s = seq(&a);
        let fast = norm(&s, p, &w);
        prop_assert!(fast.is_point());
        let slow = brute_force_norm_pth(&s, p, &w, PlacementSearchConfig::default()).unwrap();
        prop_assert!((fast.lo - slow).abs() <= SLACK * slow.max(1.0));
    }

    #[test]
    fn extra_positions_never_help(a in finite(5), p in exponent(), w in weights()) {
        let s = seq(&a);
        let results: Vec<f64> = (0..4)
            .map(|slack| brute_force_norm_pth(&s, p, &w, PlacementSearchConfig { slack, max_support: 8 }).unwrap())
            .collect();
        for pair in results.windows(2) {
            prop_assert!(pair[1] <= pair[0] + SLACK * pair[0].max(1.0));
        }
    }

    #[test]
    fn seminorm_matches_exhaustive_search(a in finite(7), p in exponent(), w in weights()) {
        let s = seq(&a);
        for i in 0..=a.len() {
            let fast = seminorm_pth(&s, p, &w, i as u64).unwrap();
            let slow = brute_force_seminorm_pth(&s, p, &w, i, PlacementSearchConfig::default()).unwrap();
            prop_assert!((fast - slow).abs() <= SLACK * slow.max(1.0));
        }
    }

    #[test]
    fn random_placements_are_dominated(a in finite(8), p in exponent(), w in weights(), seed in any::<u64>()) {
        let s = seq(&a);
        let best = norm(&s, p, &w).hi;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut slots: Vec<u64> = (1..=a.len() as u64 + 3).collect();
        for _ in 0..20 {
            slots.shuffle(&mut rng);
            let placed: f64 = a.iter().zip(&slots).map(|(x, &j)| x.abs().powf(p) * w.at(j)).sum();
            prop_assert!(placed <= best + SLACK * best.max(1.0));
        }
    }

    #[test]
    fn seminorms_increase_to_the_norm(a in finite(12), p in exponent(), w in weights()) {
        let s = seq(&a);
        let full = norm(&s, p, &w);
        let mut prev = 0.0;
        for i in 0..=a.len() as u64 + 2 {
            let cur = seminorm_pth(&s, p, &w, i).unwrap();
            prop_assert!(cur >= prev);
            prev = cur;
        }
        prop_assert!(full.overlaps(&Interval::point(prev), SLACK * prev.max(1.0)));
    }

    #[test]
    fn homogeneity_and_triangle(a in finite(8), b in finite(8), c in -5.0..5.0f64, p in exponent(), w in weights()) {
        let sa = seq(&a);
        let scaled = norm(&sa.scaled(c).unwrap(), p, &w).lo;
        let expected = c.abs().powf(p) * norm(&sa, p, &w).lo;
        prop_assert!((scaled - expected).abs() <= 1e-10 * expected.max(1.0));

        let len = a.len().max(b.len());
        let at = |v: &[f64], k: usize| v.get(k).copied().unwrap_or(0.0);
        let sum: Vec<f64> = (0..len).map(|k| at(&a, k) + at(&b, k)).collect();
        let root = |x: &[f64]| norm(&seq(x), p, &w).lo.powf(1.0 / p);
        prop_assert!(root(&sum) <= root(&a) + root(&b) + 1e-9);
    }

    #[test]
    fn decomposition_chain_on_finite_sequences(a in finite(10), p in exponent(), w in weights()) {
        let s = seq(&a);
        for i in 0..=20u64 {
            let d = decompose(&s, p, &w, i, 1e-10, BUDGET).unwrap();
            check_chain(&d)?;
        }
    }

    #[test]
    fn domination_orders_norms_and_tails(g in finite(8), fractions in prop::collection::vec(-1.0..=1.0f64, 8), p in exponent(), w in weights()) {
        let a: Vec<f64> = g.iter().zip(&fractions).map(|(x, f)| x * f).collect();
        let (sa, sg) = (seq(&a), seq(&g));
        prop_assert!(norm(&sa, p, &w).hi <= norm(&sg, p, &w).lo + SLACK * 1e3);
        for i in 0..=g.len() as u64 {
            let ta = decompose(&sa, p, &w, i, 1e-10, BUDGET).unwrap().tail_norm;
            let tg = decompose(&sg, p, &w, i, 1e-10, BUDGET).unwrap().tail_norm;
            prop_assert!(ta.hi <= tg.lo + SLACK * 1e3);
        }
    }

    #[test]
    fn gap_is_bounded_by_the_tail(a in finite(10), p in exponent(), w in weights()) {
        let s = seq(&a);
        let mut prev: Option<(Interval64, Interval64)> = None;
        for i in 0..=a.len() as u64 + 1 {
            let d = decompose(&s, p, &w, i, 1e-10, BUDGET).unwrap();
            let gap = d.norm_pth.lo - d.seminorm.hi;
            prop_assert!(gap <= d.tail_norm.hi + SLACK * 1e3);
            if let Some((h, t)) = prev {
                prop_assert!(d.head_complement.lo <= h.hi + SLACK * 1e3);
                prop_assert!(d.tail_norm.lo <= t.hi + SLACK * 1e3);
            }
            prev = Some((d.head_complement, d.tail_norm));
        }
    }

    #[test]
    fn lambda_counts_large_entries(a in finite(10), d in 0.1..8.0f64, p in exponent(), w in weights()) {
        let s = seq(&a);
        let bound = norm(&s, p, &w).hi * (1.0 + 1e-12);
        let count = a.iter().filter(|x| x.abs() >= d).count() as u64;
        prop_assert!(count <= lambda_of(bound, d, p, &w).unwrap());
    }

    #[test]
    fn gamma_bounds_every_member(members in prop::collection::vec(finite(8), 1..5), d in 0.05..8.0f64) {
        let family = Family64::explicit(members.iter().map(|m| seq(m)).collect()).unwrap();
        let Gamma::Finite(n) = gamma_of(&family, d).unwrap() else {
            panic!("explicit finite families vanish uniformly");
        };
        for m in &members {
            for (k, x) in m.iter().enumerate() {
                if k as u64 + 1 >= n {
                    prop_assert!(x.abs() < d);
                }
            }
        }
        for k in 1..=9u64 {
            let major = gamma_inverse_at(&family, k).unwrap();
            for m in &members {
                let x = m.get(k as usize - 1).copied().unwrap_or(0.0);
                prop_assert!(x.abs() <= major + 1e-12);
            }
        }
    }

    #[test]
    fn equinorm_index_is_monotone_in_eps(members in prop::collection::vec(finite(8), 1..5), p in exponent(), w in weights()) {
        let family = Family64::explicit(members.iter().map(|m| seq(m)).collect()).unwrap();
        let mut prev = 0;
        for eps in [1.0, 0.1, 0.01, 0.001] {
            let EquinormOutcome::Index { index, gap } = min_equinorm_index(&family, p, &w, eps, BUDGET).unwrap() else {
                panic!("finite families are equinormed");
            };
            prop_assert!(index >= prev);
            prop_assert!(gap.hi < eps);
            let oracle = brute_force_equinorm_gap(&family, p, &w, index as usize, PlacementSearchConfig::default()).unwrap();
            prop_assert!(oracle < eps + SLACK * 1e3);
            if index > 1 {
                let before = brute_force_equinorm_gap(&family, p, &w, index as usize - 1, PlacementSearchConfig::default()).unwrap();
                prop_assert!(before >= eps - SLACK * 1e3);
            }
            prev = index;
        }
    }

    // ‖x − y‖^p ≤ 2^(p−1)(‖x‖^p + ‖y‖^p) applied to the tails
    #[test]
    fn tails_of_differences(members in prop::collection::vec(finite(7), 1..5), n in 0..8u64, p in exponent(), w in weights()) {
        let family = Family64::explicit(members.iter().map(|m| seq(m)).collect()).unwrap();
        let tail = |f: &Family64| -> f64 {
            let Family64::Explicit { members } = f else { unreachable!() };
            members
                .iter()
                .map(|m| decompose(m, p, &w, n, 1e-10, BUDGET).unwrap().tail_norm.hi)
                .fold(0.0, f64::max)
        };
        let diffs = difference_family(&family).unwrap();
        prop_assert!(tail(&diffs) <= 2f64.powf(p) * tail(&family) * (1.0 + 1e-12) + SLACK);
    }

    #[test]
    fn criteria_agree_on_explicit_families(members in prop::collection::vec(finite(8), 1..6), p in exponent(), w in weights()) {
        let family = Family64::explicit(members.iter().map(|m| seq(m)).collect()).unwrap();
        let c = certify(&family, p, &w, &[0.1, 0.01, 0.001], 1e-10, BUDGET).unwrap();
        prop_assert_eq!(c.verdict, Verdict::Precompact);
        prop_assert!(c.cross_check_agreement);
        // H_N never exceeds S_N, so the tail criterion needs at least as many indices
        for ((_, n_gap), (_, n_tail)) in c.equinorm_table.iter().zip(&c.tail_table) {
            prop_assert!(n_gap <= n_tail);
        }
    }
}

fn check_chain(d: &Decomposition64) -> std::result::Result<(), TestCaseError> {
    let tol = SLACK * d.norm_pth.hi.max(1.0);
    prop_assert!(d.seminorm.lo + d.shifted_tail.lo <= d.norm_pth.hi + tol, "S + S̃ > norm: {d:?}");
    prop_assert!((d.head + d.head_complement).overlaps(&d.norm_pth, tol), "H + H̃ != norm: {d:?}");
    prop_assert!((d.weight_head + d.weight_complement).overlaps(&d.norm_pth, tol), "W + W̃ != norm: {d:?}");
    prop_assert!(d.norm_pth.lo <= d.seminorm.hi + d.tail_norm.hi + tol, "norm > S + T: {d:?}");
    Ok(())
}

#[test]
fn decomposition_chain_on_analytic_fixtures() {
    for a in analytic_fixtures() {
        for w in [Weights64::harmonic(), Weights64::inv_sqrt()] {
            for p in [1.0, 2.0] {
                if !classify_membership(&a, p, &w, BUDGET).unwrap().is_member() {
                    continue;
                }
                for i in 0..=20 {
                    let d = decompose(&a, p, &w, i, 1e-8, BUDGET).unwrap();
                    check_chain(&d).unwrap();
                }
            }
        }
    }
}

#[test]
fn seminorms_of_analytic_members_enter_the_norm_interval() {
    for a in analytic_fixtures() {
        let w = Weights64::harmonic();
        let full = lorentz_norm_pth(&a, 2.0, &w, 1e-6, BUDGET).unwrap();
        let entered = (0..24).map(|k| 1u64 << k).any(|n| {
            let s = seminorm_pth(&a, 2.0, &w, n).unwrap();
            full.lo - 1e-6 <= s && s <= full.hi
        });
        assert!(entered, "{a:?}");
    }
}

#[test]
fn envelope_bounds_sampled_terms() {
    let env = Envelope64::power_tail(2.0, 1.5).unwrap();
    let entries: Vec<f64> = (1..=40).map(|i| (i as f64).powf(-1.5) * if i % 3 == 0 { -1.0 } else { 1.0 }).collect();
    let tabled = Sequence64::tabled_with_prefix(entries, env, 10).unwrap();
    let fixtures = [tabled, Sequence64::power(1.0, 1.0).unwrap(), Sequence64::geometric(-1.0, 0.9).unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for a in &fixtures {
        let probes: Vec<u64> = (0..1000).map(|_| rand::Rng::gen_range(&mut rng, 11..5000)).collect();
        for i in probes {
            let bound = a.abs_upper(i);
            if let Ok(x) = term_at(a, i) {
                assert!(x.abs() <= bound + 1e-15);
            }
        }
    }
}

// Dominating the seminorm gap of A does not bound the gap of A − A by 2^p times it:
// the difference of two members can move a small tail entry to the top rank.
#[test]
fn seminorm_gap_of_differences_can_exceed_the_doubled_gap() {
    let w = Weights64::harmonic();
    let family = Family64::explicit(vec![seq(&[5.0, 5.0, 5.0, 0.0, 1.0]), seq(&[5.0, 5.0, 5.0, 0.0, 0.0])]).unwrap();
    let cfg = PlacementSearchConfig::default();
    let gap = brute_force_equinorm_gap(&family, 1.0, &w, 4, cfg).unwrap();
    assert!((gap - 0.25).abs() < 1e-15);
    let diffs = difference_family(&family).unwrap();
    let diff_gap = brute_force_equinorm_gap(&diffs, 1.0, &w, 4, cfg).unwrap();
    assert_eq!(diff_gap, 1.0);
    assert!(diff_gap > 2.0 * gap);
}
