//! Property tests for the invariants the core algorithms must keep on
//! arbitrary inputs: metric identities, permutation invariance, the fairness
//! hierarchy, phantom-mechanism structure, and the Nash solver's optimality.

use proptest::prelude::*;

use flp_core::axioms::{
    check_anonymity, check_ifs, check_instance, check_pareto, check_pf, check_proportionality,
    check_ufs, check_unanimity, AxiomId, Holding,
};
use flp_core::mechanisms::{
    eval_phantom, evaluate, nash_mechanism, uniform_phantoms, MechanismSpec, PhantomVector,
};
use flp_core::sampling::Sampler;
use flp_core::welfare::nash_welfare;
use flp_core::{distance, utility, LocationProfile, Tolerances};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn locations(n: impl Into<proptest::collection::SizeRange>) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.0f64..=1.0, n)
}

proptest! {
    #[test]
    fn utility_distance_identity(y in 0.0f64..=1.0, x in 0.0f64..=1.0) {
        prop_assert!((utility(y, x) + distance(y, x) - 1.0).abs() < 1e-15);
        prop_assert!(distance(y, x) >= 0.0);
        prop_assert!(utility(y, x) >= 0.0);
    }

    #[test]
    fn permutation_preserves_sorted_view(xs in locations(2..9), seed in 0u64..1000) {
        let profile = LocationProfile::new(xs).unwrap();
        let sigma = Sampler::new(seed).permutation(profile.n());
        let permuted = profile.permute(&sigma).unwrap();
        prop_assert_eq!(profile.sorted(), permuted.sorted());
    }

    #[test]
    fn fairness_hierarchy(xs in locations(2..9), y in 0.0f64..=1.0) {
        let t = tol();
        let profile = LocationProfile::new(xs).unwrap();
        let pf = check_pf(&profile, y, &t);
        let ufs = check_ufs(&profile, y, &t);
        let ifs = check_ifs(&profile, y, &t);
        if pf.holding.holds() {
            prop_assert!(ufs.holding.holds(), "PF holds but UFS fails: {ufs:?}");
        }
        if ufs.holding.holds() {
            prop_assert!(ifs.holding.holds(), "UFS holds but IFS fails: {ifs:?}");
        }
    }

    #[test]
    fn phantom_mechanisms_clean_sweep(
        xs in locations(2..8),
        phantom_seed in 0u64..10_000,
    ) {
        let t = tol();
        let profile = LocationProfile::new(xs).unwrap();
        let n = profile.n();
        let mut sampler = Sampler::new(phantom_seed);
        let mut points: Vec<f64> = (0..n - 1).map(|_| sampler.uniform()).collect();
        points.sort_by(f64::total_cmp);
        let phantoms = PhantomVector::new(points).unwrap();
        let y = eval_phantom(&profile, &phantoms).unwrap().value();

        // output stays inside the agents' range (unanimity + efficiency)
        prop_assert!(y >= profile.min() - 1e-15 && y <= profile.max() + 1e-15);
        prop_assert!(check_pareto(&profile, y, &t).holding.holds());
        prop_assert!(check_unanimity(&profile, y, &t).holding.holds());

        // permutation invariance of the outcome
        let spec = MechanismSpec::Phantom(phantoms);
        let verdict = check_anonymity(&spec, &profile, 720, &t).unwrap();
        prop_assert!(verdict.holding.holds());
    }

    #[test]
    fn uniform_phantom_satisfies_pf_and_proportionality(xs in locations(2..9)) {
        let t = tol();
        let profile = LocationProfile::new(xs).unwrap();
        let y = eval_phantom(&profile, &uniform_phantoms(profile.n()).unwrap())
            .unwrap()
            .value();
        prop_assert!(check_pf(&profile, y, &t).holding.holds());
        prop_assert!(check_proportionality(&profile, y, &t).holding.holds());
    }

    #[test]
    fn verdict_is_permutation_invariant(
        xs in locations(2..7),
        y in 0.0f64..=1.0,
        seed in 0u64..1000,
    ) {
        let t = tol();
        let profile = LocationProfile::new(xs).unwrap();
        let sigma = Sampler::new(seed).permutation(profile.n());
        let permuted = profile.permute(&sigma).unwrap();
        for axiom in [AxiomId::Ifs, AxiomId::Ufs, AxiomId::Pf, AxiomId::Spf,
                      AxiomId::Proportionality, AxiomId::Unanimity, AxiomId::Pareto] {
            let a = check_instance(axiom, &profile, y, &t).unwrap();
            let b = check_instance(axiom, &permuted, y, &t).unwrap();
            prop_assert_eq!(a.holding, b.holding, "axiom {:?}", axiom);
            prop_assert!((a.margin - b.margin).abs() < 1e-12, "axiom {:?}", axiom);
        }
    }

    #[test]
    fn phantom_output_is_uncompromising_median_of_pool(xs in locations(3..8)) {
        // moving one agent toward the facility from either side must not move it
        let profile = LocationProfile::new(xs).unwrap();
        let n = profile.n();
        let phantoms = uniform_phantoms(n).unwrap();
        let y = eval_phantom(&profile, &phantoms).unwrap().value();
        for i in 0..n {
            let x = profile.locations()[i];
            let pulled = (x + y) / 2.0;
            let deviated = profile.with_report(i, pulled).unwrap();
            let y2 = eval_phantom(&deviated, &phantoms).unwrap().value();
            prop_assert!((y - y2).abs() < 1e-12, "agent {i}: {y} -> {y2}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nash_matches_dense_grid_argmax(xs in locations(2..7)) {
        let t = tol();
        let profile = LocationProfile::new(xs).unwrap();
        let out = nash_mechanism(&profile, &t);
        let y = out.y.value();

        let step = 1e-4;
        let (lo, hi) = (profile.min(), profile.max());
        let mut best = (nash_welfare(lo, &profile), lo);
        let mut g = lo;
        while g < hi {
            g= (g + step).min(hi);
            let w = nash_welfare(g, &profile);
            if w > best.0 {
                best = (w, g);
            }
        }
        // the solved point's welfare is at least the grid optimum
        prop_assert!(
            nash_welfare(y, &profile) >= best.0 - 1e-9,
            "solver {} (welfare {}), grid {} (welfare {})",
            y, nash_welfare(y, &profile), best.1, best.0
        );
        prop_assert!((y - best.1).abs() <= 2.0 * step);
    }
}

/// Brute-force oracle: proportional fairness quantified over *all* nonempty
/// agent subsets, not only contiguous windows of the sorted profile.
fn pf_all_subsets(profile: &LocationProfile, y: f64, eps: f64) -> (bool, f64) {
    let n = profile.n();
    let xs = profile.locations();
    let mut min_margin = f64::INFINITY;
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let s = members.len();
        let lo = members.iter().map(|&i| xs[i]).fold(f64::INFINITY, f64::min);
        let hi = members.iter().map(|&i| xs[i]).fold(f64::NEG_INFINITY, f64::max);
        let d = members
            .iter()
            .map(|&i| distance(y, xs[i]))
            .fold(0.0, f64::max);
        let bound = (n - s) as f64 / n as f64 + (hi - lo);
        min_margin = min_margin.min(bound - d);
    }
    (min_margin >= -eps, min_margin)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn windowed_pf_equals_subset_pf(
        xs in proptest::collection::vec(0usize..=10, 2..7),
        y_idx in 0usize..=10,
    ) {
        let t = tol();
        // coarse grid keeps the 2^n oracle honest about ties
        let profile =
            LocationProfile::new(xs.iter().map(|&k| k as f64 / 10.0).collect()).unwrap();
        let y = y_idx as f64 / 10.0;
        let windowed = check_pf(&profile, y, &t);
        let (oracle_holds, oracle_margin) = pf_all_subsets(&profile, y, t.numeric_eps);
        prop_assert_eq!(windowed.holding.holds(), oracle_holds);
        prop_assert!(
            (windowed.margin - oracle_margin).abs() < 1e-12,
            "windowed {} oracle {}",
            windowed.margin,
            oracle_margin
        );
    }
}

#[test]
fn holding_vacuous_is_not_binding() {
    let t = tol();
    let profile = LocationProfile::new(vec![0.2, 0.7]).unwrap();
    let v = check_proportionality(&profile, 0.9, &t);
    assert_eq!(v.holding, Holding::HoldsVacuously);
    assert!(v.holding.holds());
    assert!(!v.holding.binding());
}

#[test]
fn evaluate_matches_direct_constructors() {
    let t = tol();
    let profile = LocationProfile::new(vec![0.1, 0.4, 0.9]).unwrap();
    let median = evaluate(&MechanismSpec::Median, &profile, &t).unwrap().y.value();
    assert_eq!(median, 0.4);
    let uniform = evaluate(&MechanismSpec::UniformPhantom, &profile, &t)
        .unwrap()
        .y
        .value();
    assert_eq!(
        uniform,
        eval_phantom(&profile, &uniform_phantoms(3).unwrap()).unwrap().value()
    );
}
