//! Utilitarian welfare, approximation ratios, and the closed-form
//! worst-case bounds attained by the constrained-median and uniform-phantom
//! mechanisms on binary profiles.

use alloc::vec;
use alloc::vec::Vec;

use crate::mechanisms::{evaluate, MechanismSpec};
use crate::profile::{utility, LocationProfile, Tolerances};
use crate::sampling::{binary_profiles, Sampler};
use crate::{Error, Result};

/// Sum of agent utilities at facility `y`.
pub fn social_welfare(y: f64, profile: &LocationProfile) -> f64 {
    profile.locations().iter().map(|&x| utility(y, x)).sum()
}

/// Product of agent utilities at facility `y`.
pub fn nash_welfare(y: f64, profile: &LocationProfile) -> f64 {
    profile.locations().iter().map(|&x| utility(y, x)).product()
}

/// Maximum attainable social welfare. The sum of `1 - |y - x_i|` is
/// piecewise linear in `y` and maximized at any median of the profile, so
/// evaluating at the left median is exact.
pub fn optimal_welfare(profile: &LocationProfile) -> f64 {
    let median = profile.order_stat((profile.n() - 1) / 2);
    social_welfare(median, profile)
}

/// `OPT / SW(y)`, with an infinite ratio when the achieved welfare is
/// numerically zero but the optimum is not.
pub fn approx_ratio(y: f64, profile: &LocationProfile, tol: &Tolerances) -> f64 {
    let opt = optimal_welfare(profile);
    let got = social_welfare(y, profile);
    if got.abs() <= tol.numeric_eps {
        if opt.abs() <= tol.numeric_eps {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        opt / got
    }
}

/// Worst-case approximation ratio over binary profiles of any mechanism that
/// guarantees individual fair share: `1 + (n-2)/(n^2 - 2n + 2)`.
pub fn ifs_lower_bound(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::TooFewAgents(n));
    }
    let n = n as f64;
    Ok(1.0 + (n - 2.0) / (n * n - 2.0 * n + 2.0))
}

/// Worst-case approximation ratio over binary profiles of any mechanism that
/// guarantees unanimous fair share: the maximum of
/// `n(n-k) / (k^2 + (n-k)^2)` over `0 <= k <= n/2`, returned with the
/// maximizing `k`. Tends to `(sqrt(2)+1)/2` as `n` grows.
pub fn ufs_lower_bound(n: usize) -> Result<(f64, usize)> {
    if n < 2 {
        return Err(Error::TooFewAgents(n));
    }
    let mut best = (0.0_f64, 0usize);
    for k in 0..=n / 2 {
        let (nf, kf) = (n as f64, k as f64);
        let ratio = nf * (nf - kf) / (kf * kf + (nf - kf) * (nf - kf));
        if ratio > best.0 {
            best = (ratio, k);
        }
    }
    Ok(best)
}

/// Cap on `n` for the per-class binary scan of anonymous mechanisms.
pub const BINARY_CLASS_MAX_N: usize = 20;

/// Result of a worst-case approximation search.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxResult {
    pub mechanism: MechanismSpec,
    pub n: usize,
    pub worst_ratio: f64,
    pub worst_profile: LocationProfile,
    pub search_space: usize,
}

/// Exact worst case over all binary profiles of size `n`. Anonymous
/// mechanisms only need the `n + 1` ones-count classes (up to
/// [`BINARY_CLASS_MAX_N`] agents); others get the full `2^n` enumeration
/// (up to 12 agents). Ties break toward the lexicographically smallest
/// profile, which both scans visit first.
pub fn worst_case_binary(
    spec: &MechanismSpec,
    n: usize,
    tol: &Tolerances,
) -> Result<ApproxResult> {
    spec.validate_for(n)?;
    let mut worst: Option<(f64, LocationProfile)> = None;
    let mut search_space = 0usize;
    let mut consider = |profile: LocationProfile, tol: &Tolerances| -> Result<()> {
        let y = evaluate(spec, &profile, tol)?.y.value();
        let ratio = approx_ratio(y, &profile, tol);
        search_space += 1;
        if worst.as_ref().is_none_or(|(r, _)| ratio > *r) {
            worst = Some((ratio, profile));
        }
        Ok(())
    };
    if spec.is_anonymous() && n <= BINARY_CLASS_MAX_N {
        // zeros-first profiles are the lexicographically smallest in each class
        for ones in 0..=n {
            let mut xs = vec![0.0; n];
            for x in xs.iter_mut().skip(n - ones) {
                *x = 1.0;
            }
            consider(LocationProfile::new(xs)?, tol)?;
        }
    } else if n <= crate::axioms::BINARY_EXHAUSTIVE_MAX_N {
        for profile in binary_profiles(n) {
            consider(profile, tol)?;
        }
    } else {
        return Err(Error::BudgetExceeded(alloc::format!(
            "binary worst case for non-anonymous mechanism needs n <= {}, got {n}",
            crate::axioms::BINARY_EXHAUSTIVE_MAX_N
        )));
    }
    let (worst_ratio, worst_profile) = worst.expect("at least one binary profile");
    Ok(ApproxResult {
        mechanism: spec.clone(),
        n,
        worst_ratio,
        worst_profile,
        search_space,
    })
}

/// Randomized worst-case search over continuous profiles: seeded uniform
/// samples plus structured profiles built from the mechanism's fixed points.
pub fn worst_case_search(
    spec: &MechanismSpec,
    n: usize,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<ApproxResult> {
    spec.validate_for(n)?;
    let mut sampler = Sampler::new(seed);
    let mut candidates: Vec<f64> = spec.fixed_points(n);
    candidates.extend([0.0, 0.25, 0.5, 0.75, 1.0]);
    let mut worst: Option<(f64, LocationProfile)> = None;
    let mut search_space = 0usize;
    for s in 0..samples {
        let profile = if s % 4 == 0 {
            sampler.structured_profile(n, &candidates)
        } else {
            sampler.random_profile(n)
        };
        let y = evaluate(spec, &profile, tol)?.y.value();
        let ratio = approx_ratio(y, &profile, tol);
        search_space += 1;
        if worst.as_ref().is_none_or(|(r, _)| ratio > *r) {
            worst = Some((ratio, profile));
        }
    }
    let (worst_ratio, worst_profile) = worst.ok_or_else(|| {
        Error::BudgetExceeded(alloc::format!(
            "worst-case search needs samples >= 1, got {samples}"
        ))
    })?;
    Ok(ApproxResult {
        mechanism: spec.clone(),
        n,
        worst_ratio,
        worst_profile,
        search_space,
    })
}

/// One row of the bound-comparison table.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure1Row {
    pub n: usize,
    pub ifs_bound: f64,
    pub ufs_bound: f64,
    pub cmedian_worst: f64,
    pub uniform_worst: f64,
}

/// Closed-form lower bounds next to the realized binary worst cases of the
/// constrained-median and uniform-phantom mechanisms, for each `n` in range.
pub fn figure1_table(n_range: (usize, usize), tol: &Tolerances) -> Result<Vec<Figure1Row>> {
    let (lo, hi) = n_range;
    if lo < 2 || hi < lo {
        return Err(Error::TooFewAgents(lo));
    }
    let mut rows = Vec::with_capacity(hi - lo + 1);
    for n in lo..=hi {
        rows.push(Figure1Row {
            n,
            ifs_bound: ifs_lower_bound(n)?,
            ufs_bound: ufs_lower_bound(n)?.0,
            cmedian_worst: worst_case_binary(&MechanismSpec::ConstrainedMedian, n, tol)?
                .worst_ratio,
            uniform_worst: worst_case_binary(&MechanismSpec::UniformPhantom, n, tol)?.worst_ratio,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(xs: &[f64]) -> LocationProfile {
        LocationProfile::new(xs.to_vec()).unwrap()
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn welfare_and_ratio_example() {
        let p = profile(&[0.0, 0.0, 0.0, 0.0, 1.0, 1.0]);
        // utilities at y = 1/3: four agents 2/3, two agents 1/3
        let sw = social_welfare(1.0 / 3.0, &p);
        assert!((sw - 10.0 / 3.0).abs() < 1e-12);
        assert_eq!(optimal_welfare(&p), 4.0);
        assert!((approx_ratio(1.0 / 3.0, &p, &tol()) - 1.2).abs() < 1e-12);
    }

    #[test]
    fn nash_welfare_example() {
        let p = profile(&[0.0, 1.0]);
        assert!((nash_welfare(0.5, &p) - 0.25).abs() < 1e-12);
        assert_eq!(nash_welfare(0.0, &p), 0.0);
    }

    #[test]
    fn ifs_bound_values() {
        assert!((ifs_lower_bound(5).unwrap() - 20.0 / 17.0).abs() < 1e-12);
        assert_eq!(ifs_lower_bound(2).unwrap(), 1.0);
        assert!(ifs_lower_bound(1).is_err());
    }

    #[test]
    fn ufs_bound_values() {
        let (v, k) = ufs_lower_bound(6).unwrap();
        assert!((v - 1.2).abs() < 1e-12);
        assert_eq!(k, 2);
        // limit (sqrt(2) + 1) / 2
        let (v, k) = ufs_lower_bound(1000).unwrap();
        assert!((v - 1.207_106_78).abs() < 1e-6, "got {v}");
        let frac = k as f64 / 1000.0;
        assert!((frac - 0.292_893_22).abs() < 1e-2, "maximizer at {frac}");
    }

    #[test]
    fn cmedian_binary_worst_matches_formula() {
        let t = tol();
        for n in 2..=12 {
            let got = worst_case_binary(&MechanismSpec::ConstrainedMedian, n, &t)
                .unwrap()
                .worst_ratio;
            assert!(
                (got - ifs_lower_bound(n).unwrap()).abs() < 1e-9,
                "n = {n}: {got}"
            );
        }
    }

    #[test]
    fn uniform_binary_worst_matches_formula() {
        let t = tol();
        for n in 2..=12 {
            let got = worst_case_binary(&MechanismSpec::UniformPhantom, n, &t)
                .unwrap()
                .worst_ratio;
            assert!(
                (got - ufs_lower_bound(n).unwrap().0).abs() < 1e-9,
                "n = {n}: {got}"
            );
        }
    }

    #[test]
    fn median_is_optimal_on_binary() {
        let t = tol();
        for n in 2..=10 {
            let got = worst_case_binary(&MechanismSpec::Median, n, &t).unwrap();
            assert!((got.worst_ratio - 1.0).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn class_scan_agrees_with_full_enumeration() {
        let t = tol();
        for n in [3, 5, 8] {
            let by_class = worst_case_binary(&MechanismSpec::UniformPhantom, n, &t).unwrap();
            assert_eq!(by_class.search_space, n + 1);
            let mut full_worst = 0.0_f64;
            for p in binary_profiles(n) {
                let y = evaluate(&MechanismSpec::UniformPhantom, &p, &t)
                    .unwrap()
                    .y
                    .value();
                full_worst = full_worst.max(approx_ratio(y, &p, &t));
            }
            assert!((by_class.worst_ratio - full_worst).abs() < 1e-12);
        }
    }

    #[test]
    fn nonanonymous_gets_full_enumeration() {
        let t = tol();
        let got = worst_case_binary(&MechanismSpec::NonAnonFixture(0.01), 3, &t).unwrap();
        assert_eq!(got.search_space, 8);
    }

    #[test]
    fn random_search_never_beats_binary_worst_for_uniform() {
        let t = tol();
        for n in [2, 4, 7] {
            let binary = worst_case_binary(&MechanismSpec::UniformPhantom, n, &t).unwrap();
            let random =
                worst_case_search(&MechanismSpec::UniformPhantom, n, 2_000, 7, &t).unwrap();
            assert!(
                random.worst_ratio <= binary.worst_ratio + 1e-9,
                "n = {n}: random {} binary {}",
                random.worst_ratio,
                binary.worst_ratio
            );
        }
    }

    #[test]
    fn table_rows() {
        let rows = figure1_table((2, 6), &tol()).unwrap();
        assert_eq!(rows.len(), 5);
        let r5 = &rows[3];
        assert_eq!(r5.n, 5);
        assert!((r5.ifs_bound - 20.0 / 17.0).abs() < 1e-12);
        assert!((r5.cmedian_worst - 20.0 / 17.0).abs() < 1e-9);
        for r in &rows {
            assert!(r.ufs_bound <= r.uniform_worst + 1e-9);
            assert!(r.ifs_bound <= r.cmedian_worst + 1e-9);
        }
    }
}
