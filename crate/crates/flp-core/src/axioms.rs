//! Per-instance verification of the fairness and structural axioms, and
//! seeded searches for axiom counterexamples over profile spaces.
//!
//! Every inequality is checked with slack `numeric_eps` on the satisfying
//! side, so float error never produces a spurious violation. `margin` is the
//! raw slack of the tightest constraint (positive or zero when it held).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::mechanisms::{evaluate, MechanismSpec};
use crate::profile::{distance, LocationProfile, Tolerances};
use crate::sampling::{binary_profiles, breakpoint_candidates, Sampler};
use crate::{Error, Result};

/// Axiom identifiers, with the CLI strings
/// `ifs, ufs, pf, spf, prop, unanimity, pareto, anon, mono, strictmono, uncomp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxiomId {
    Ifs,
    Ufs,
    Pf,
    Spf,
    Proportionality,
    Unanimity,
    Pareto,
    Anonymity,
    Monotonic,
    StrictMonotonic,
    Uncompromising,
}

impl AxiomId {
    pub const ALL: [AxiomId; 11] = [
        AxiomId::Ifs,
        AxiomId::Ufs,
        AxiomId::Pf,
        AxiomId::Spf,
        AxiomId::Proportionality,
        AxiomId::Unanimity,
        AxiomId::Pareto,
        AxiomId::Anonymity,
        AxiomId::Monotonic,
        AxiomId::StrictMonotonic,
        AxiomId::Uncompromising,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AxiomId::Ifs => "ifs",
            AxiomId::Ufs => "ufs",
            AxiomId::Pf => "pf",
            AxiomId::Spf => "spf",
            AxiomId::Proportionality => "prop",
            AxiomId::Unanimity => "unanimity",
            AxiomId::Pareto => "pareto",
            AxiomId::Anonymity => "anon",
            AxiomId::Monotonic => "mono",
            AxiomId::StrictMonotonic => "strictmono",
            AxiomId::Uncompromising => "uncomp",
        }
    }
}

impl core::str::FromStr for AxiomId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AxiomId::ALL
            .iter()
            .copied()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::UnknownIdentifier(String::from(s)))
    }
}

impl core::fmt::Display for AxiomId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Three-valued outcome: proportionality and unanimity report an explicit
/// vacuous state on non-binding instances so searches can distinguish
/// binding from non-binding coverage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Holding {
    Holds,
    HoldsVacuously,
    Fails,
}

impl Holding {
    pub fn holds(self) -> bool {
        !matches!(self, Holding::Fails)
    }

    pub fn binding(self) -> bool {
        !matches!(self, Holding::HoldsVacuously)
    }
}

/// What exactly violated (or most tightly satisfied) the axiom.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Agent(usize),
    Group(Vec<usize>),
    Permutation(Vec<usize>),
    ProfilePair(LocationProfile, LocationProfile),
    Report { agent: usize, report: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomVerdict {
    pub axiom: AxiomId,
    pub holding: Holding,
    pub witness: Option<Witness>,
    /// Slack of the tightest constraint: nonnegative (up to `numeric_eps`)
    /// when the axiom holds, negative when it fails.
    pub margin: f64,
}

impl AxiomVerdict {
    fn decide(axiom: AxiomId, margin: f64, witness: Witness, eps: f64) -> Self {
        let holding = if margin >= -eps {
            Holding::Holds
        } else {
            Holding::Fails
        };
        AxiomVerdict {
            axiom,
            holding,
            witness: Some(witness),
            margin,
        }
    }

    fn vacuous(axiom: AxiomId) -> Self {
        AxiomVerdict {
            axiom,
            holding: Holding::HoldsVacuously,
            witness: None,
            margin: 0.0,
        }
    }
}

/// IFS: every agent within distance 1 - 1/n of the facility.
pub fn check_ifs(profile: &LocationProfile, y: f64, tol: &Tolerances) -> AxiomVerdict {
    let n = profile.n() as f64;
    let bound = 1.0 - 1.0 / n;
    let (mut margin, mut worst) = (f64::INFINITY, 0);
    for (i, &x) in profile.locations().iter().enumerate() {
        let slack = bound - distance(y, x);
        if slack < margin {
            margin = slack;
            worst = i;
        }
    }
    AxiomVerdict::decide(AxiomId::Ifs, margin, Witness::Agent(worst), tol.numeric_eps)
}

/// Maximal co-located groups of the sorted profile: agents whose locations
/// chain within `numeric_eps` of each other.
fn colocated_groups(profile: &LocationProfile, eps: f64) -> Vec<Vec<usize>> {
    let idx = profile.sorted_idx();
    let xs = profile.locations();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in idx {
        match groups.last_mut() {
            Some(g) if (xs[i] - xs[*g.last().unwrap()]).abs() <= eps => g.push(i),
            _ => groups.push(alloc::vec![i]),
        }
    }
    groups
}

/// UFS: every co-located group S within distance 1 - |S|/n of the facility.
pub fn check_ufs(profile: &LocationProfile, y: f64, tol: &Tolerances) -> AxiomVerdict {
    let n = profile.n() as f64;
    let xs = profile.locations();
    let mut margin = f64::INFINITY;
    let mut worst: Vec<usize> = Vec::new();
    for group in colocated_groups(profile, tol.numeric_eps) {
        let bound = 1.0 - group.len() as f64 / n;
        let d = group
            .iter()
            .map(|&i| distance(y, xs[i]))
            .fold(0.0f64, f64::max);
        if bound - d < margin {
            margin = bound - d;
            worst = group;
        }
    }
    AxiomVerdict::decide(AxiomId::Ufs, margin, Witness::Group(worst), tol.numeric_eps)
}

fn windowed_fairness(
    axiom: AxiomId,
    profile: &LocationProfile,
    y: f64,
    scale: f64,
    tol: &Tolerances,
) -> AxiomVerdict {
    let n = profile.n();
    let idx = profile.sorted_idx();
    let xs = profile.locations();
    let mut margin = f64::INFINITY;
    let mut worst: Vec<usize> = Vec::new();
    for i in 0..n {
        for j in i..n {
            let s = (j - i + 1) as f64;
            let lo = xs[idx[i]];
            let hi = xs[idx[j]];
            let r = hi - lo;
            let bound = scale * (n as f64 - s) / n as f64 + r;
            let d = distance(y, lo).max(distance(y, hi));
            if bound - d < margin {
                margin = bound - d;
                worst = idx[i..=j].to_vec();
            }
        }
    }
    AxiomVerdict::decide(axiom, margin, Witness::Group(worst), tol.numeric_eps)
}

/// PF: every contiguous window S of the sorted profile with range r stays
/// within distance (n-|S|)/n + r. Contiguous windows suffice: any subset is
/// dominated by the window spanning it (same r bound, superset size).
pub fn check_pf(profile: &LocationProfile, y: f64, tol: &Tolerances) -> AxiomVerdict {
    windowed_fairness(AxiomId::Pf, profile, y, 1.0, tol)
}

/// SPF: the PF window bound with (n-|S|)/n scaled by the full profile range.
pub fn check_spf(profile: &LocationProfile, y: f64, tol: &Tolerances) -> AxiomVerdict {
    windowed_fairness(AxiomId::Spf, profile, y, profile.range(), tol)
}

/// Proportionality: on binary profiles the facility equals the fraction of
/// agents at 1; vacuous otherwise.
pub fn check_proportionality(profile: &LocationProfile, y: f64, tol: &Tolerances) -> AxiomVerdict {
    if !profile.is_binary(tol.numeric_eps) {
        return AxiomVerdict::vacuous(AxiomId::Proportionality);
    }
    let target = profile.ones_count(tol.numeric_eps) as f64 / profile.n() as f64;
    let margin = -distance(y, target);
    let holding = if margin >= -tol.numeric_eps {
        Holding::Holds
    } else {
        Holding::Fails
    };
    AxiomVerdict {
        axiom: AxiomId::Proportionality,
        holding,
        witness: Some(Witness::Group(profile.sorted_idx().to_vec())),
        margin,
    }
}

/// Unanimity: when all agents share a location, the facility sits there;
/// vacuous otherwise.
pub fn check_unanimity(profile: &LocationProfile, y: f64, tol: &Tolerances) -> AxiomVerdict {
    if profile.range() > tol.numeric_eps {
        return AxiomVerdict::vacuous(AxiomId::Unanimity);
    }
    let margin = -distance(y, profile.min());
    let holding = if margin >= -tol.numeric_eps {
        Holding::Holds
    } else {
        Holding::Fails
    };
    AxiomVerdict {
        axiom: AxiomId::Unanimity,
        holding,
        witness: Some(Witness::Group(profile.sorted_idx().to_vec())),
        margin,
    }
}

/// Pareto optimality: y in [min x, max x].
pub fn check_pareto(profile: &LocationProfile, y: f64, tol: &Tolerances) -> AxiomVerdict {
    let below = y - profile.min();
    let above = profile.max() - y;
    let (margin, worst) = if below <= above {
        (below, profile.sorted_idx()[0])
    } else {
        (above, profile.sorted_idx()[profile.n() - 1])
    };
    AxiomVerdict::decide(AxiomId::Pareto, margin, Witness::Agent(worst), tol.numeric_eps)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// All permutations of 0..n in a deterministic order (Heap's algorithm).
fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut result = Vec::with_capacity(factorial(n));
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut result);
    result
}

/// Anonymity of a mechanism at one profile: all relabelings give the same
/// facility. Exhaustive over n! permutations for n <= 6, otherwise up to
/// `permutation_budget` seeded random permutations.
pub fn check_anonymity(
    spec: &MechanismSpec,
    profile: &LocationProfile,
    permutation_budget: usize,
    tol: &Tolerances,
) -> Result<AxiomVerdict> {
    let n = profile.n();
    let baseline = evaluate(spec, profile, tol)?.y.value();
    let perms: Vec<Vec<usize>> = if n <= 6 {
        all_permutations(n)
    } else {
        let mut sampler = Sampler::new(0);
        (0..permutation_budget).map(|_| sampler.permutation(n)).collect()
    };
    let mut margin = f64::INFINITY;
    let mut worst: Vec<usize> = (0..n).collect();
    for sigma in perms {
        let permuted = profile.permute(&sigma)?;
        let y = evaluate(spec, &permuted, tol)?.y.value();
        let slack = -distance(baseline, y);
        if slack < margin {
            margin = slack;
            worst = sigma;
        }
    }
    Ok(AxiomVerdict::decide(
        AxiomId::Anonymity,
        margin,
        Witness::Permutation(worst),
        tol.numeric_eps,
    ))
}

/// Outcome of a monotonicity check on one ordered profile pair.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    pub monotonic: bool,
    pub strict: bool,
    pub y_low: f64,
    pub y_high: f64,
}

/// Requires `low <= high` componentwise with at least one strict increase;
/// reports whether f(low) <= f(high) and whether the increase is strict.
pub fn check_monotonic(
    spec: &MechanismSpec,
    low: &LocationProfile,
    high: &LocationProfile,
    tol: &Tolerances,
) -> Result<MonotonicityReport> {
    if low.n() != high.n() {
        return Err(Error::IncomparableProfiles);
    }
    let pairs = low.locations().iter().zip(high.locations().iter());
    let mut any_strict = false;
    for (&a, &b) in pairs {
        if a > b {
            return Err(Error::IncomparableProfiles);
        }
        if a < b {
            any_strict = true;
        }
    }
    if !any_strict {
        return Err(Error::IncomparableProfiles);
    }
    let y_low = evaluate(spec, low, tol)?.y.value();
    let y_high = evaluate(spec, high, tol)?.y.value();
    Ok(MonotonicityReport {
        monotonic: y_low <= y_high + tol.numeric_eps,
        strict: y_low < y_high - tol.numeric_eps,
        y_low,
        y_high,
    })
}

/// Maps a monotonicity report to a verdict for `mono` or `strictmono`.
pub fn monotonicity_verdict(
    report: &MonotonicityReport,
    strict: bool,
    low: &LocationProfile,
    high: &LocationProfile,
) -> AxiomVerdict {
    let ok = if strict { report.strict } else { report.monotonic };
    AxiomVerdict {
        axiom: if strict {
            AxiomId::StrictMonotonic
        } else {
            AxiomId::Monotonic
        },
        holding: if ok { Holding::Holds } else { Holding::Fails },
        witness: Some(Witness::ProfilePair(low.clone(), high.clone())),
        margin: report.y_high - report.y_low,
    }
}

/// Uncompromising at one (profile, agent): with y = f(x) and the agent
/// strictly on one side of y, any report on that same side of y leaves the
/// facility unchanged. Vacuous when the agent sits at the facility.
pub fn check_uncompromising(
    spec: &MechanismSpec,
    profile: &LocationProfile,
    agent: usize,
    report_grid: f64,
    tol: &Tolerances,
) -> Result<AxiomVerdict> {
    if agent >= profile.n() {
        return Err(Error::NoSuchAgent(agent));
    }
    let y = evaluate(spec, profile, tol)?.y.value();
    let x = profile.locations()[agent];
    if distance(x, y) <= tol.numeric_eps {
        return Ok(AxiomVerdict::vacuous(AxiomId::Uncompromising));
    }
    let mut reports: Vec<f64> = Vec::new();
    let steps = crate::profile::grid_cells(report_grid);
    for k in 0..=steps {
        let r = (k as f64 * report_grid).min(1.0);
        let on_side = if x > y { r >= y } else { r <= y };
        if on_side {
            reports.push(r);
        }
    }
    reports.push(x);
    reports.push(y);
    let mut margin = f64::INFINITY;
    let mut worst = x;
    for &r in &reports {
        let deviated = profile.with_report(agent, r)?;
        let y2 = evaluate(spec, &deviated, tol)?.y.value();
        let slack = -distance(y, y2);
        if slack < margin {
            margin = slack;
            worst = r;
        }
    }
    Ok(AxiomVerdict::decide(
        AxiomId::Uncompromising,
        margin,
        Witness::Report {
            agent,
            report: worst,
        },
        tol.numeric_eps,
    ))
}

/// Dispatches the per-instance fairness axioms that judge a (profile, y) pair.
pub fn check_instance(
    axiom: AxiomId,
    profile: &LocationProfile,
    y: f64,
    tol: &Tolerances,
) -> Option<AxiomVerdict> {
    match axiom {
        AxiomId::Ifs => Some(check_ifs(profile, y, tol)),
        AxiomId::Ufs => Some(check_ufs(profile, y, tol)),
        AxiomId::Pf => Some(check_pf(profile, y, tol)),
        AxiomId::Spf => Some(check_spf(profile, y, tol)),
        AxiomId::Proportionality => Some(check_proportionality(profile, y, tol)),
        AxiomId::Unanimity => Some(check_unanimity(profile, y, tol)),
        AxiomId::Pareto => Some(check_pareto(profile, y, tol)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SearchVerdict {
    NoCounterexampleFound,
    Counterexample {
        profile: LocationProfile,
        verdict: AxiomVerdict,
    },
}

/// Outcome of a universal axiom search; counterexamples replay
/// deterministically from the stored profile.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub mechanism: MechanismSpec,
    pub axiom: AxiomId,
    pub verdict: SearchVerdict,
    pub instances_checked: u64,
    pub search_space: String,
}

impl SearchReport {
    pub fn found(&self) -> bool {
        matches!(self.verdict, SearchVerdict::Counterexample { .. })
    }
}

pub const BINARY_EXHAUSTIVE_MAX_N: usize = 12;

/// The profile stream every search walks: exhaustive binary profiles first
/// (lexicographic, n <= 12), then all-equal profiles on the grid, then
/// breakpoint-structured and uniform random samples under the seed.
fn candidate_profiles(
    spec: &MechanismSpec,
    n: usize,
    samples: usize,
    sampler: &mut Sampler,
    tol: &Tolerances,
) -> Vec<LocationProfile> {
    let mut profiles: Vec<LocationProfile> = Vec::new();
    if n <= BINARY_EXHAUSTIVE_MAX_N {
        profiles.extend(binary_profiles(n));
    }
    let steps = crate::profile::grid_cells(tol.grid_step);
    for k in 0..=steps {
        let c = (k as f64 * tol.grid_step).min(1.0);
        profiles.push(LocationProfile::new(alloc::vec![c; n]).expect("grid point in range"));
    }
    let candidates = breakpoint_candidates(&spec.fixed_points(n), tol.grid_step);
    let structured = samples / 4;
    for _ in 0..structured {
        profiles.push(sampler.structured_profile(n, &candidates));
    }
    for _ in structured..samples {
        profiles.push(sampler.random_profile(n));
    }
    profiles
}

/// Searches for a profile where the mechanism's output violates the axiom.
/// Deterministic under a fixed seed; the first counterexample in enumeration
/// order is returned.
pub fn search_axiom(
    spec: &MechanismSpec,
    axiom: AxiomId,
    n_range: (usize, usize),
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<SearchReport> {
    let (n_lo, n_hi) = n_range;
    if n_lo < 2 || n_hi < n_lo {
        return Err(Error::TooFewAgents(n_lo));
    }
    let mut sampler = Sampler::new(seed);
    let mut checked: u64 = 0;
    let search_space = format!(
        "n={n_lo}..{n_hi}, binary-exhaustive(n<={BINARY_EXHAUSTIVE_MAX_N}), samples={samples}, grid={}, seed={seed}",
        tol.grid_step
    );
    let report = |verdict: SearchVerdict, checked: u64| SearchReport {
        mechanism: spec.clone(),
        axiom,
        verdict,
        instances_checked: checked,
        search_space: search_space.clone(),
    };

    for n in n_lo..=n_hi {
        if spec.validate_for(n).is_err() {
            continue;
        }
        let profiles = candidate_profiles(spec, n, samples, &mut sampler, tol);
        match axiom {
            AxiomId::Anonymity => {
                for profile in profiles {
                    checked += 1;
                    let verdict = check_anonymity(spec, &profile, 720, tol)?;
                    if !verdict.holding.holds() {
                        return Ok(report(SearchVerdict::Counterexample { profile, verdict }, checked));
                    }
                }
            }
            AxiomId::Monotonic | AxiomId::StrictMonotonic => {
                let strict = axiom == AxiomId::StrictMonotonic;
                for low in profiles {
                    // raise a random nonempty subset of coordinates
                    let mut bumped = low.locations().to_vec();
                    let mut any = false;
                    for x in bumped.iter_mut() {
                        if sampler.uniform() < 0.5 {
                            let room = 1.0 - *x;
                            if room > 0.0 {
                                *x += sampler.uniform() * room;
                                any = true;
                            }
                        }
                    }
                    if !any {
                        let i = sampler.index(low.n());
                        if bumped[i] < 1.0 {
                            bumped[i] = (bumped[i] + tol.grid_step).min(1.0);
                        } else {
                            continue;
                        }
                    }
                    let high = LocationProfile::new(bumped)?;
                    checked += 1;
                    let rep = check_monotonic(spec, &low, &high, tol)?;
                    let verdict = monotonicity_verdict(&rep, strict, &low, &high);
                    if !verdict.holding.holds() {
                        return Ok(report(
                            SearchVerdict::Counterexample { profile: low, verdict },
                            checked,
                        ));
                    }
                }
            }
            AxiomId::Uncompromising => {
                for profile in profiles {
                    for agent in 0..profile.n() {
                        checked += 1;
                        let verdict =
                            check_uncompromising(spec, &profile, agent, tol.grid_step, tol)?;
                        if !verdict.holding.holds() {
                            return Ok(report(
                                SearchVerdict::Counterexample { profile, verdict },
                                checked,
                            ));
                        }
                    }
                }
            }
            _ => {
                for profile in profiles {
                    checked += 1;
                    let y = evaluate(spec, &profile, tol)?.y.value();
                    let verdict = check_instance(axiom, &profile, y, tol)
                        .ok_or_else(|| Error::UnknownIdentifier(String::from(axiom.as_str())))?;
                    if !verdict.holding.holds() {
                        return Ok(report(SearchVerdict::Counterexample { profile, verdict }, checked));
                    }
                }
            }
        }
    }
    Ok(report(SearchVerdict::NoCounterexampleFound, checked))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn profile(xs: &[f64]) -> LocationProfile {
        LocationProfile::new(xs.to_vec()).unwrap()
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn ifs_binding_and_failing() {
        // n-1 agents at 0, facility at 1/n: the agent at 1 binds exactly
        let p = profile(&[0.0, 0.0, 0.0, 0.0, 1.0]);
        let v = check_ifs(&p, 0.2, &tol());
        assert!(v.holding.holds());
        assert!(v.margin.abs() < 1e-12);
        // at the median (0) the agent at 1 has d = 1 > 4/5
        let v = check_ifs(&p, 0.0, &tol());
        assert_eq!(v.holding, Holding::Fails);
        assert_eq!(v.witness, Some(Witness::Agent(4)));
        let v = check_ifs(&profile(&[0.4, 0.4]), 0.4, &tol());
        assert!(v.holding.holds());
    }

    #[test]
    fn ufs_groups() {
        let p = profile(&[0.0, 0.0, 0.0, 0.0, 1.0, 1.0]);
        let v = check_ufs(&p, 2.0 / 6.0, &tol());
        assert!(v.holding.holds());
        assert!(v.margin.abs() < 1e-9, "both groups bind: margin {}", v.margin);
        let p = profile(&[0.0, 0.0, 1.0]);
        let v = check_ufs(&p, 0.0, &tol());
        assert_eq!(v.holding, Holding::Fails);
        assert_eq!(v.witness, Some(Witness::Group(vec![2])));
        let v = check_ufs(&profile(&[0.3, 0.3]), 0.3, &tol());
        assert!(v.holding.holds());
    }

    #[test]
    fn pf_windows() {
        let fig2 = profile(&[0.0, 0.0, 0.0, 0.0, 0.8, 1.0]);
        assert!(check_pf(&fig2, 2.0 / 6.0, &tol()).holding.holds());
        // window {0.8, 1}: s=2, r=0.2, bound 4/6+0.2 < d(0,1)=1
        let v = check_pf(&fig2, 0.0, &tol());
        assert_eq!(v.holding, Holding::Fails);
        assert!(check_pf(&profile(&[0.6, 0.6, 0.6]), 0.6, &tol()).holding.holds());
    }

    #[test]
    fn spf_cases() {
        let v = check_spf(&profile(&[0.0, 0.5]), 0.5, &tol());
        assert_eq!(v.holding, Holding::Fails);
        assert!((v.margin - (0.25 - 0.5)).abs() < 1e-12);
        assert!(check_spf(&profile(&[0.7, 0.7]), 0.7, &tol()).holding.holds());
        // R = 1 reduces SPF to PF
        assert!(check_spf(&profile(&[0.0, 1.0]), 0.5, &tol()).holding.holds());
    }

    #[test]
    fn proportionality_cases() {
        let p = profile(&[0.0, 0.0, 1.0]);
        assert!(check_proportionality(&p, 1.0 / 3.0, &tol()).holding.holds());
        assert_eq!(
            check_proportionality(&p, 0.5, &tol()).holding,
            Holding::Fails
        );
        let v = check_proportionality(&profile(&[0.3, 0.6]), 0.9, &tol());
        assert_eq!(v.holding, Holding::HoldsVacuously);
    }

    #[test]
    fn unanimity_cases() {
        let p = profile(&[0.7, 0.7, 0.7]);
        assert!(check_unanimity(&p, 0.7, &tol()).holding.holds());
        assert_eq!(check_unanimity(&p, 0.5, &tol()).holding, Holding::Fails);
        assert_eq!(
            check_unanimity(&profile(&[0.0, 1.0]), 0.2, &tol()).holding,
            Holding::HoldsVacuously
        );
    }

    #[test]
    fn pareto_cases() {
        let p = profile(&[0.2, 0.8]);
        assert!(check_pareto(&p, 0.5, &tol()).holding.holds());
        assert_eq!(check_pareto(&p, 0.1, &tol()).holding, Holding::Fails);
        let fig2 = profile(&[0.0, 0.0, 0.0, 0.0, 0.8, 1.0]);
        assert!(check_pareto(&fig2, 2.0 / 6.0, &tol()).holding.holds());
    }

    #[test]
    fn anonymity_cases() {
        let t = tol();
        let v = check_anonymity(&MechanismSpec::UniformPhantom, &profile(&[0.0, 0.0, 1.0]), 720, &t)
            .unwrap();
        assert!(v.holding.holds());
        let v = check_anonymity(&MechanismSpec::Median, &profile(&[0.9, 0.1, 0.4]), 720, &t).unwrap();
        assert!(v.holding.holds());
        let v = check_anonymity(
            &MechanismSpec::NonAnonFixture(1e-3),
            &profile(&[0.0, 0.0, 1.0]),
            720,
            &t,
        )
        .unwrap();
        assert_eq!(v.holding, Holding::Fails);
        assert!(matches!(v.witness, Some(Witness::Permutation(_))));
    }

    #[test]
    fn monotonicity_cases() {
        let t = tol();
        let rep = check_monotonic(
            &MechanismSpec::Average,
            &profile(&[0.0, 0.0]),
            &profile(&[0.0, 1.0]),
            &t,
        )
        .unwrap();
        assert!(rep.monotonic && rep.strict);
        // uniform phantom pinned at its phantom: monotonic but not strict
        let rep = check_monotonic(
            &MechanismSpec::UniformPhantom,
            &profile(&[0.1, 0.9]),
            &profile(&[0.1, 0.95]),
            &t,
        )
        .unwrap();
        assert!(rep.monotonic && !rep.strict);
        assert_eq!(rep.y_low, 0.5);
        // strict instance away from the phantom
        let rep = check_monotonic(
            &MechanismSpec::UniformPhantom,
            &profile(&[0.1, 0.2]),
            &profile(&[0.1, 0.25]),
            &t,
        )
        .unwrap();
        assert!(rep.strict);
        let rep = check_monotonic(
            &MechanismSpec::Constant(0.5),
            &profile(&[0.1, 0.2]),
            &profile(&[0.3, 0.4]),
            &t,
        )
        .unwrap();
        assert!(rep.monotonic && !rep.strict);
        // incomparable pair rejected
        assert!(check_monotonic(
            &MechanismSpec::Average,
            &profile(&[0.0, 0.5]),
            &profile(&[0.5, 0.0]),
            &t,
        )
        .is_err());
    }

    #[test]
    fn uncompromising_cases() {
        let t = tol();
        let fig2 = profile(&[0.0, 0.0, 0.0, 0.0, 0.8, 1.0]);
        let v = check_uncompromising(&MechanismSpec::UniformPhantom, &fig2, 5, 0.05, &t).unwrap();
        assert!(v.holding.holds());
        let v =
            check_uncompromising(&MechanismSpec::Average, &profile(&[0.0, 1.0]), 1, 0.25, &t).unwrap();
        assert_eq!(v.holding, Holding::Fails);
        // median with a non-median agent: output pinned at 0.4
        let v = check_uncompromising(&MechanismSpec::Median, &profile(&[0.0, 0.4, 1.0]), 2, 0.1, &t)
            .unwrap();
        assert!(v.holding.holds());
    }

    #[test]
    fn search_finds_known_counterexamples() {
        let t = tol();
        let r = search_axiom(&MechanismSpec::Median, AxiomId::Ifs, (5, 5), 0, 1, &t).unwrap();
        match &r.verdict {
            SearchVerdict::Counterexample { profile, .. } => {
                assert_eq!(profile.locations(), &[0.0, 0.0, 0.0, 0.0, 1.0]);
            }
            _ => panic!("expected counterexample"),
        }
        let r = search_axiom(
            &MechanismSpec::Midpoint,
            AxiomId::Proportionality,
            (3, 3),
            0,
            1,
            &t,
        )
        .unwrap();
        match &r.verdict {
            SearchVerdict::Counterexample { profile, .. } => {
                assert_eq!(profile.locations(), &[0.0, 0.0, 1.0]);
            }
            _ => panic!("expected counterexample"),
        }
    }

    #[test]
    fn search_uniform_pf_clean() {
        let t = tol();
        let r = search_axiom(&MechanismSpec::UniformPhantom, AxiomId::Pf, (2, 6), 500, 7, &t).unwrap();
        assert!(!r.found(), "uniform phantom should satisfy PF: {:?}", r.verdict);
        assert!(r.instances_checked > 0);
    }

    #[test]
    fn search_replays_deterministically() {
        let t = tol();
        let a = search_axiom(&MechanismSpec::Nash, AxiomId::Ufs, (2, 4), 200, 42, &t).unwrap();
        let b = search_axiom(&MechanismSpec::Nash, AxiomId::Ufs, (2, 4), 200, 42, &t).unwrap();
        assert_eq!(a, b);
    }
}
