//! Best-response dynamics for continuous strictly monotonic mechanisms, and
//! verification that converged equilibria land on the uniform-phantom
//! outcome of the true profile.
//!
//! Only mechanisms on an explicit allowlist are accepted: continuity and
//! strict monotonicity are not decidable by sampling, so capability is
//! declared, not inferred. The average mechanism ships on the list with a
//! closed-form best response.

use alloc::vec::Vec;

use crate::mechanisms::{evaluate, uniform_phantoms, eval_phantom, MechanismSpec};
use crate::profile::{distance, FacilityLocation, LocationProfile, Tolerances};
use crate::{Error, Result};

/// Mechanisms with a verified continuous + strictly monotonic structure.
pub fn supports_best_response(spec: &MechanismSpec) -> bool {
    matches!(spec, MechanismSpec::Average)
}

/// Optimal own-report given everyone else's reports. For the average
/// mechanism the peak is reached exactly when the mean equals the true
/// location, clamped to the unit interval.
pub fn best_response(spec: &MechanismSpec, true_location: f64, others_reports: &[f64]) -> Result<f64> {
    if !supports_best_response(spec) {
        return Err(Error::NotBestResponseCapable);
    }
    let n = others_reports.len() + 1;
    let sum_others: f64 = others_reports.iter().sum();
    Ok((n as f64 * true_location - sum_others).clamp(0.0, 1.0))
}

/// A converged (or aborted) run of round-robin best responses.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumResult {
    pub true_profile: LocationProfile,
    pub equilibrium_reports: LocationProfile,
    pub facility: FacilityLocation,
    pub iterations: usize,
    pub converged: bool,
    pub max_residual_gain: f64,
}

/// Round-robin best responses from truthful initial reports, until no report
/// moves by more than `solver_tol` in a full round or `max_iters` rounds.
/// The residual gain is measured by a grid deviation scan at `grid_step`.
pub fn best_response_dynamics(
    spec: &MechanismSpec,
    true_profile: &LocationProfile,
    max_iters: usize,
    gain_tol: f64,
    tol: &Tolerances,
) -> Result<EquilibriumResult> {
    if !supports_best_response(spec) {
        return Err(Error::NotBestResponseCapable);
    }
    let n = true_profile.n();
    let truth = true_profile.locations();
    let mut reports: Vec<f64> = truth.to_vec();
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iters {
        iterations += 1;
        let mut max_move: f64 = 0.0;
        for i in 0..n {
            let others: Vec<f64> = reports
                .iter()
                .enumerate()
                .filter_map(|(j, &r)| (j != i).then_some(r))
                .collect();
            let next = best_response(spec, truth[i], &others)?;
            max_move = max_move.max((next - reports[i]).abs());
            reports[i] = next;
        }
        if max_move <= tol.solver_tol {
            converged = true;
            break;
        }
    }
    let equilibrium_reports = LocationProfile::new(reports)?;
    let facility = evaluate(spec, &equilibrium_reports, tol)?.y;
    let (_, max_residual_gain) = verify_equilibrium(
        spec,
        true_profile,
        &equilibrium_reports,
        tol.grid_step,
        gain_tol,
        tol,
    )?;
    Ok(EquilibriumResult {
        true_profile: true_profile.clone(),
        equilibrium_reports,
        facility,
        iterations,
        converged: converged && max_residual_gain <= gain_tol,
        max_residual_gain,
    })
}

/// Grid-scans every agent's unilateral deviations from `reports`; the pair is
/// an equilibrium iff the best gain (in true-location distance) is at most
/// `gain_tol`. Works for any catalogue mechanism.
pub fn verify_equilibrium(
    spec: &MechanismSpec,
    true_profile: &LocationProfile,
    reports: &LocationProfile,
    report_grid: f64,
    gain_tol: f64,
    tol: &Tolerances,
) -> Result<(bool, f64)> {
    if true_profile.n() != reports.n() {
        return Err(Error::IncomparableProfiles);
    }
    let y = evaluate(spec, reports, tol)?.y.value();
    let truth = true_profile.locations();
    let steps = crate::profile::grid_cells(report_grid);
    let mut max_gain: f64 = 0.0;
    for i in 0..reports.n() {
        let honest_d = distance(y, truth[i]);
        for k in 0..=steps {
            let r = (k as f64 * report_grid).min(1.0);
            let deviated = reports.with_report(i, r)?;
            let y2 = evaluate(spec, &deviated, tol)?.y.value();
            max_gain = max_gain.max(honest_d - distance(y2, truth[i]));
        }
        // the truthful report and the agent's peak are always candidates
        for r in [truth[i]] {
            let deviated = reports.with_report(i, r)?;
            let y2 = evaluate(spec, &deviated, tol)?.y.value();
            max_gain = max_gain.max(honest_d - distance(y2, truth[i]));
        }
    }
    Ok((max_gain <= gain_tol, max_gain))
}

/// Outcome of checking the equilibrium-implements-uniform-phantom property
/// on one true profile.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumComparison {
    pub result: EquilibriumResult,
    pub uniform_target: f64,
    pub matches: bool,
}

/// Runs the dynamics and compares the equilibrium facility with the uniform
/// phantom outcome of the *true* profile.
pub fn verify_uniform_equivalence(
    spec: &MechanismSpec,
    true_profile: &LocationProfile,
    max_iters: usize,
    gain_tol: f64,
    comparison_tol: f64,
    tol: &Tolerances,
) -> Result<EquilibriumComparison> {
    let result = best_response_dynamics(spec, true_profile, max_iters, gain_tol, tol)?;
    let uniform_target =
        eval_phantom(true_profile, &uniform_phantoms(true_profile.n())?)?.value();
    let matches =
        result.converged && distance(result.facility.value(), uniform_target) <= comparison_tol;
    Ok(EquilibriumComparison {
        result,
        uniform_target,
        matches,
    })
}
