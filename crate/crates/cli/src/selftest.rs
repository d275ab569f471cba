//! Seeded randomized checks of the library against the brute-force oracle and
//! the structural inequalities between norms, seminorms and tails.

use lorentz::{
    brute_force_norm_pth, decompose, difference_family, gamma_inverse_at, gamma_of, lambda_of, lorentz_norm_pth,
    min_equinorm_index, seminorm_pth, Decomposition64, EquinormOutcome, Family64, Gamma, Interval64,
    PlacementSearchConfig, Sequence64, Weights64,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const BUDGET: usize = 1 << 22;
/// Absolute agreement demanded of the library against the oracle.
pub const ORACLE_TOL: f64 = 1e-12;
const SLACK: f64 = 1e-12;
const EPS_LADDER: [f64; 3] = [0.1, 0.01, 0.001];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub trials: usize,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    fn new(name: &'static str, trials: usize) -> Self {
        Self {
            name,
            trials,
            checks: 0,
            failures: 0,
            first_failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    fn error(&mut self, e: impl std::fmt::Display) {
        self.check(false, || format!("library error: {e}"));
    }
}

/// Random inputs for the suites; each suite draws from its own stream.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    /// Up to `max_len` entries in `[-10, 10]`; each entry after the first repeats
    /// the modulus of an earlier one with probability `tie_prob`.
    pub fn entries(&mut self, max_len: usize, tie_prob: f64) -> Vec<f64> {
        let len = self.rng.gen_range(1..=max_len);
        let mut out: Vec<f64> = Vec::with_capacity(len);
        for k in 0..len {
            let x = if k > 0 && self.rng.gen_bool(tie_prob) {
                let earlier = out[self.rng.gen_range(0..k)];
                if self.rng.gen_bool(0.5) {
                    -earlier
                } else {
                    earlier
                }
            } else if self.rng.gen_bool(0.1) {
                0.0
            } else {
                self.rng.gen_range(-10.0..=10.0)
            };
            out.push(x);
        }
        out
    }

    pub fn finite(&mut self, max_len: usize) -> Sequence64 {
        Sequence64::finite(self.entries(max_len, 0.3)).expect("entries are finite")
    }

    /// A finite sequence, or now and then a geometric one.
    pub fn sequence(&mut self, max_len: usize) -> Sequence64 {
        if self.rng.gen_bool(0.1) {
            let c = self.rng.gen_range(-10.0..=10.0);
            let r = self.rng.gen_range(-0.9..=0.9);
            Sequence64::geometric(c, r).expect("|r| < 1")
        } else {
            self.finite(max_len)
        }
    }

    pub fn weights(&mut self) -> Weights64 {
        match self.rng.gen_range(0..4) {
            0 => Weights64::harmonic(),
            1 => Weights64::inv_sqrt(),
            2 => Weights64::power_decay(self.rng.gen_range(0.05..=1.0)).expect("beta in (0, 1]"),
            _ => Weights64::explicit_prefix(vec![1.0, 0.9, 0.9, 0.5], 1.0).expect("nonincreasing prefix"),
        }
    }

    pub fn exponent(&mut self) -> f64 {
        match self.rng.gen_range(0..3) {
            0 => 1.0,
            1 => 2.0,
            _ => self.rng.gen_range(1.0..4.0),
        }
    }

    pub fn explicit_family(&mut self, max_members: usize, max_len: usize) -> Vec<Sequence64> {
        let count = self.rng.gen_range(1..=max_members);
        (0..count).map(|_| self.finite(max_len)).collect()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

fn norm(a: &Sequence64, p: f64, w: &Weights64) -> lorentz::Result<Interval64> {
    lorentz_norm_pth(a, p, w, 1e-10, BUDGET)
}

fn slack(x: f64) -> f64 {
    SLACK * x.abs().max(1.0)
}

/// Library norm against exhaustive placement, for both standard weights and `p ∈ {1, 2}`.
pub fn oracle_equivalence(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("oracle equivalence", trials);
    let mut sampler = Sampler::new(seed, 1);
    for _ in 0..trials {
        let a = sampler.finite(7);
        for w in [Weights64::harmonic(), Weights64::inv_sqrt()] {
            for p in [1.0, 2.0] {
                let fast = match norm(&a, p, &w) {
                    Ok(x) => x,
                    Err(e) => {
                        report.error(e);
                        continue;
                    }
                };
                let slow = match brute_force_norm_pth(&a, p, &w, PlacementSearchConfig::default()) {
                    Ok(x) => x,
                    Err(e) => {
                        report.error(e);
                        continue;
                    }
                };
                report.check((fast.lo - slow).abs() <= ORACLE_TOL && (fast.hi - slow).abs() <= ORACLE_TOL, || {
                    format!("{a:?}, p = {p}, {w:?}: library {fast:?}, oracle {slow}")
                });
            }
        }
    }
    report
}

/// No injective placement of the entries beats the norm.
pub fn permutation_dominance(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("permutation dominance", trials);
    let mut sampler = Sampler::new(seed, 2);
    for _ in 0..trials {
        let entries = sampler.entries(8, 0.3);
        let (p, w) = (sampler.exponent(), sampler.weights());
        let a = Sequence64::finite(entries.clone()).expect("finite entries");
        let best = match norm(&a, p, &w) {
            Ok(x) => x.hi,
            Err(e) => {
                report.error(e);
                continue;
            }
        };
        let mut slots: Vec<u64> = (1..=entries.len() as u64 + 3).collect();
        for _ in 0..20 {
            slots.shuffle(sampler.rng());
            let placed: f64 = entries.iter().zip(&slots).map(|(x, &j)| x.abs().powf(p) * w.at(j)).sum();
            report.check(placed <= best + slack(best), || {
                format!("{entries:?} placed at {slots:?} gives {placed} > {best}")
            });
        }
    }
    report
}

/// `S_i ≤ S_{i+1}`.
pub fn seminorm_monotonicity(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("seminorm monotonicity", trials);
    let mut sampler = Sampler::new(seed, 3);
    for _ in 0..trials {
        let a = sampler.sequence(12);
        let (p, w) = (sampler.exponent(), sampler.weights());
        let mut prev = 0.0;
        for i in 0..=16u64 {
            match seminorm_pth(&a, p, &w, i) {
                Ok(cur) => {
                    report.check(cur >= prev, || format!("{a:?}: S_{i} = {cur} < S_{} = {prev}", i - 1));
                    prev = cur;
                }
                Err(e) => report.error(e),
            }
        }
    }
    report
}

/// `S_i` reaches the norm enclosure.
pub fn seminorm_convergence(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("seminorm convergence", trials);
    let mut sampler = Sampler::new(seed, 4);
    for _ in 0..trials {
        let a = sampler.sequence(12);
        let (p, w) = (sampler.exponent(), sampler.weights());
        let full = match lorentz_norm_pth(&a, p, &w, 1e-9, BUDGET) {
            Ok(x) => x,
            Err(e) => {
                report.error(e);
                continue;
            }
        };
        let mut entered = false;
        let mut bounded = true;
        for k in 0..12 {
            let Ok(s) = seminorm_pth(&a, p, &w, 1 << k) else {
                bounded = false;
                break;
            };
            bounded &= s <= full.hi + slack(full.hi);
            entered |= full.lo - 1e-9 - slack(full.lo) <= s;
        }
        report.check(bounded && entered, || {
            format!("{a:?}, p = {p}: seminorms do not settle into {full:?}")
        });
    }
    report
}

fn chain_holds(d: &Decomposition64) -> bool {
    let tol = slack(d.norm_pth.hi);
    d.seminorm.lo + d.shifted_tail.lo <= d.norm_pth.hi + tol
        && (d.head + d.head_complement).overlaps(&d.norm_pth, tol)
        && (d.weight_head + d.weight_complement).overlaps(&d.norm_pth, tol)
        && d.norm_pth.lo <= d.seminorm.hi + d.tail_norm.hi + tol
}

/// `S + S̃ ≤ ‖a‖^p = H + H̃ = W + W̃ ≤ S + T` at `i = 0..=20`.
pub fn decomposition_chain(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("decomposition chain", trials);
    let mut sampler = Sampler::new(seed, 5);
    for _ in 0..trials {
        let a = sampler.sequence(12);
        let (p, w) = (sampler.exponent(), sampler.weights());
        for i in 0..=20 {
            match decompose(&a, p, &w, i, 1e-9, BUDGET) {
                Ok(d) => report.check(chain_holds(&d), || format!("{a:?}, p = {p}, {w:?}: {d:?}")),
                Err(e) => report.error(e),
            }
        }
    }
    report
}

/// `|a| ≤ |g|` entrywise orders norms and seminorms.
pub fn domination_monotonicity(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("domination monotonicity", trials);
    let mut sampler = Sampler::new(seed, 6);
    for _ in 0..trials {
        let top = sampler.entries(10, 0.3);
        let below: Vec<f64> = top.iter().map(|x| x * sampler.rng().gen_range(-1.0..=1.0)).collect();
        let (p, w) = (sampler.exponent(), sampler.weights());
        let g = Sequence64::finite(top.clone()).expect("finite entries");
        let a = Sequence64::finite(below.clone()).expect("finite entries");
        match (norm(&a, p, &w), norm(&g, p, &w)) {
            (Ok(na), Ok(ng)) => report.check(na.lo <= ng.hi + slack(ng.hi), || {
                format!("‖{below:?}‖ = {na:?} above ‖{top:?}‖ = {ng:?}")
            }),
            (Err(e), _) | (_, Err(e)) => report.error(e),
        }
        for i in [1, 3, 6] {
            match (seminorm_pth(&a, p, &w, i), seminorm_pth(&g, p, &w, i)) {
                (Ok(sa), Ok(sg)) => report.check(sa <= sg + slack(sg), || {
                    format!("S_{i} of {below:?} = {sa} above S_{i} of {top:?} = {sg}")
                }),
                (Err(e), _) | (_, Err(e)) => report.error(e),
            }
        }
    }
    report
}

/// A sequence with `‖a‖^p ≤ M` has at most `λ(M, d)` entries of modulus `≥ d`.
pub fn lambda_soundness(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("lambda soundness", trials);
    let mut sampler = Sampler::new(seed, 7);
    for _ in 0..trials {
        let entries = sampler.entries(10, 0.3);
        let (p, w) = (sampler.exponent(), sampler.weights());
        let d = sampler.rng().gen_range(0.1..8.0);
        let a = Sequence64::finite(entries.clone()).expect("finite entries");
        let bound = match norm(&a, p, &w) {
            Ok(x) => x.hi * (1.0 + SLACK),
            Err(e) => {
                report.error(e);
                continue;
            }
        };
        let count = entries.iter().filter(|x| x.abs() >= d).count() as u64;
        match lambda_of(bound, d, p, &w) {
            Ok(limit) => report.check(count <= limit, || {
                format!("{entries:?} has {count} entries ≥ {d} but λ({bound}, {d}) = {limit}")
            }),
            Err(e) => report.error(e),
        }
    }
    report
}

/// Entries past `γ(d)` fall below `d`, and `γ⁻¹(n)` majorizes `|a_n|`, for listed
/// families and for sampled members of dominated ones.
pub fn gamma_soundness(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("gamma soundness", trials);
    let mut sampler = Sampler::new(seed, 8);
    for trial in 0..trials {
        let d = sampler.rng().gen_range(0.05..8.0);
        if trial % 2 == 0 {
            let members = sampler.explicit_family(4, 8);
            let rows: Vec<Vec<f64>> = members.iter().map(|m| m.entries().unwrap_or_default().to_vec()).collect();
            let family = Family64::explicit(members).expect("finite members");
            match gamma_of(&family, d) {
                Ok(Gamma::Finite(n)) => {
                    let ok = rows
                        .iter()
                        .all(|r| r.iter().enumerate().all(|(k, x)| (k as u64) + 1 < n || x.abs() < d));
                    report.check(ok, || format!("{rows:?}: an entry at or past γ({d}) = {n} reaches {d}"));
                }
                Ok(Gamma::Infinite) => report.check(false, || format!("{rows:?}: γ({d}) infinite")),
                Err(e) => report.error(e),
            }
            for n in 1..=9u64 {
                match gamma_inverse_at(&family, n) {
                    Ok(major) => {
                        let ok = rows.iter().all(|r| {
                            r.get(n as usize - 1).copied().unwrap_or(0.0).abs() <= major + slack(major)
                        });
                        report.check(ok, || format!("{rows:?}: γ⁻¹({n}) = {major} misses an entry"));
                    }
                    Err(e) => report.error(e),
                }
            }
        } else {
            let c = sampler.rng().gen_range(0.1..10.0);
            let s = sampler.rng().gen_range(0.5..3.0);
            let envelope = Sequence64::power(c, s).expect("valid power");
            let family = Family64::dominated(envelope.clone(), vec![]).expect("analytic envelope");
            let index = sampler.rng().gen_range(1..=10_000u64);
            let sample = envelope.abs_upper(index) * sampler.rng().gen_range(-1.0..=1.0);
            match gamma_of(&family, d) {
                Ok(Gamma::Finite(n)) => report.check(index < n || sample.abs() < d, || {
                    format!("c = {c}, s = {s}: entry {index} = {sample} reaches {d} past γ = {n}")
                }),
                Ok(Gamma::Infinite) => report.check(false, || format!("c = {c}, s = {s}: γ({d}) infinite")),
                Err(e) => report.error(e),
            }
            match gamma_inverse_at(&family, index) {
                Ok(major) => report.check(sample.abs() <= major + slack(major), || {
                    format!("c = {c}, s = {s}: γ⁻¹({index}) = {major} below {sample}")
                }),
                Err(e) => report.error(e),
            }
        }
    }
    report
}

/// `sup_{a ∈ A} (‖a‖^p − S_n(a))` for a list of finite members.
pub fn explicit_gap(members: &[Sequence64], p: f64, w: &Weights64, n: u64) -> lorentz::Result<f64> {
    let mut gap: f64 = 0.0;
    for a in members {
        let full = norm(a, p, w)?.hi;
        gap = gap.max(full - seminorm_pth(a, p, w, n)?);
    }
    Ok(gap)
}

/// At `N(ε)` for `A`, the gap of `A − A` stays within `2^p ε`.
pub fn difference_propagation(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("A - A propagation", trials);
    let mut sampler = Sampler::new(seed, 9);
    for _ in 0..trials {
        let members = sampler.explicit_family(5, 7);
        let (p, w) = (sampler.exponent(), sampler.weights());
        let family = Family64::explicit(members.clone()).expect("finite members");
        let diffs = match difference_family(&family) {
            Ok(Family64::Explicit { members }) => members,
            Ok(_) => unreachable!("differences of a list form a list"),
            Err(e) => {
                report.error(e);
                continue;
            }
        };
        for eps in EPS_LADDER {
            let n = match min_equinorm_index(&family, p, &w, eps, BUDGET) {
                Ok(EquinormOutcome::Index { index, .. }) => index,
                Ok(EquinormOutcome::NotEquinormed(witness)) => {
                    report.check(false, || format!("finite family not equinormed: {witness:?}"));
                    continue;
                }
                Err(e) => {
                    report.error(e);
                    continue;
                }
            };
            match (explicit_gap(&members, p, &w, n), explicit_gap(&diffs, p, &w, n)) {
                (Ok(gap), Ok(diff_gap)) if gap <= eps => {
                    let limit = 2f64.powf(p) * eps;
                    report.check(diff_gap <= limit + slack(limit), || {
                        format!("p = {p}, eps = {eps}, N = {n}: gap {gap}, difference gap {diff_gap} > {limit}")
                    })
                }
                (Ok(_), Ok(_)) => {}
                (Err(e), _) | (_, Err(e)) => report.error(e),
            }
        }
    }
    report
}

/// Every suite at the same trial count.
pub fn run_all(seed: u64, trials: usize) -> Vec<SuiteReport> {
    vec![
        oracle_equivalence(seed, trials),
        permutation_dominance(seed, trials),
        seminorm_monotonicity(seed, trials),
        seminorm_convergence(seed, trials),
        decomposition_chain(seed, trials),
        domination_monotonicity(seed, trials),
        lambda_soundness(seed, trials),
        gamma_soundness(seed, trials),
        difference_propagation(seed, trials),
    ]
}
