//! Manipulation search: strategyproofness evidence and counterexamples,
//! including small-coalition deviations.
//!
//! Report grids always include the agent locations and the mechanism's fixed
//! points, since phantom-family discontinuities sit exactly there. Gains
//! below 10x `numeric_eps` are discarded as float noise.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::mechanisms::{evaluate, MechanismSpec};
use crate::profile::{distance, LocationProfile, Tolerances};
use crate::sampling::{binary_profiles, breakpoint_candidates, Sampler};
use crate::{Error, Result};

/// A replayable strategyproofness violation: re-evaluating the mechanism at
/// the misreports reproduces the gain. For coalitions, `gain` is the smallest
/// member's gain (every member must strictly benefit) and the distances are
/// that member's.
#[derive(Debug, Clone, PartialEq)]
pub struct ManipulationWitness {
    pub true_profile: LocationProfile,
    pub agents: Vec<usize>,
    pub misreports: Vec<f64>,
    pub honest_distance: f64,
    pub deviant_distance: f64,
    pub gain: f64,
}

fn gain_floor(tol: &Tolerances) -> f64 {
    10.0 * tol.numeric_eps
}

/// Candidate misreports: the uniform grid, every agent location, and the
/// mechanism's fixed points.
fn report_candidates(
    spec: &MechanismSpec,
    profile: &LocationProfile,
    step: f64,
) -> Vec<f64> {
    let mut reports: Vec<f64> = Vec::new();
    let steps = crate::profile::grid_cells(step);
    for k in 0..=steps {
        reports.push((k as f64 * step).min(1.0));
    }
    reports.extend_from_slice(profile.locations());
    reports.extend(spec.fixed_points(profile.n()));
    reports.sort_by(f64::total_cmp);
    reports.dedup();
    reports
}

/// Scans one agent's deviations and returns the gain-maximizing one, if any
/// exceeds the noise floor.
pub fn best_manipulation(
    spec: &MechanismSpec,
    profile: &LocationProfile,
    agent: usize,
    report_grid: f64,
    tol: &Tolerances,
) -> Result<Option<ManipulationWitness>> {
    if agent >= profile.n() {
        return Err(Error::NoSuchAgent(agent));
    }
    let x = profile.locations()[agent];
    let honest = evaluate(spec, profile, tol)?.y.value();
    let honest_distance = distance(honest, x);
    if honest_distance <= tol.numeric_eps {
        return Ok(None);
    }
    let mut best: Option<ManipulationWitness> = None;
    for r in report_candidates(spec, profile, report_grid) {
        let deviated = profile.with_report(agent, r)?;
        let y = evaluate(spec, &deviated, tol)?.y.value();
        let gain = honest_distance - distance(y, x);
        if gain > gain_floor(tol) && best.as_ref().map_or(true, |w| gain > w.gain) {
            best = Some(ManipulationWitness {
                true_profile: profile.clone(),
                agents: alloc::vec![agent],
                misreports: alloc::vec![r],
                honest_distance,
                deviant_distance: distance(y, x),
                gain,
            });
        }
    }
    Ok(best)
}

/// Outcome of a strategyproofness search over a profile space.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategySearchReport {
    pub mechanism: MechanismSpec,
    pub witness: Option<ManipulationWitness>,
    pub instances_checked: u64,
    pub search_space: String,
}

/// Samples true profiles (binary-exhaustive for n <= 12, breakpoint-adjacent
/// structured, uniform random) and scans every agent's deviations; returns
/// the first witness in enumeration order. Deterministic under the seed.
pub fn strategyproofness_search(
    spec: &MechanismSpec,
    n_range: (usize, usize),
    profile_samples: usize,
    report_grid: f64,
    seed: u64,
    tol: &Tolerances,
) -> Result<StrategySearchReport> {
    let (n_lo, n_hi) = n_range;
    if n_lo < 2 || n_hi < n_lo {
        return Err(Error::TooFewAgents(n_lo));
    }
    let mut sampler = Sampler::new(seed);
    let mut checked: u64 = 0;
    let search_space = format!(
        "n={n_lo}..{n_hi}, samples={profile_samples}, grid={report_grid}, seed={seed}"
    );
    for n in n_lo..=n_hi {
        if spec.validate_for(n).is_err() {
            continue;
        }
        let mut profiles: Vec<LocationProfile> = Vec::new();
        if n <= 12 {
            profiles.extend(binary_profiles(n));
        }
        let candidates = breakpoint_candidates(&spec.fixed_points(n), report_grid);
        let structured = profile_samples / 4;
        for _ in 0..structured {
            profiles.push(sampler.structured_profile(n, &candidates));
        }
        for _ in structured..profile_samples {
            profiles.push(sampler.random_profile(n));
        }
        for profile in profiles {
            for agent in 0..n {
                checked += 1;
                if let Some(witness) = best_manipulation(spec, &profile, agent, report_grid, tol)? {
                    return Ok(StrategySearchReport {
                        mechanism: spec.clone(),
                        witness: Some(witness),
                        instances_checked: checked,
                        search_space,
                    });
                }
            }
        }
    }
    Ok(StrategySearchReport {
        mechanism: spec.clone(),
        witness: None,
        instances_checked: checked,
        search_space,
    })
}

/// Joint misreport search over coalitions of up to `coalition_max` agents
/// (capped at 3). A witness requires every coalition member to strictly gain.
pub fn group_manipulation_search(
    spec: &MechanismSpec,
    profile: &LocationProfile,
    coalition_max: usize,
    report_grid: f64,
    tol: &Tolerances,
) -> Result<Option<ManipulationWitness>> {
    if coalition_max > 3 {
        return Err(Error::CoalitionTooLarge(coalition_max));
    }
    let n = profile.n();
    let honest = evaluate(spec, profile, tol)?.y.value();
    let xs = profile.locations();
    let reports = report_candidates(spec, profile, report_grid);
    let floor = gain_floor(tol);

    let mut coalitions: Vec<Vec<usize>> = Vec::new();
    for size in 1..=coalition_max.min(n) {
        push_subsets(n, size, &mut coalitions);
    }

    for coalition in coalitions {
        let honest_distances: Vec<f64> =
            coalition.iter().map(|&i| distance(honest, xs[i])).collect();
        if honest_distances.iter().all(|&d| d <= floor) {
            continue;
        }
        let mut assignment = alloc::vec![0usize; coalition.len()];
        loop {
            let mut deviated = profile.clone();
            for (slot, &i) in coalition.iter().enumerate() {
                deviated = deviated.with_report(i, reports[assignment[slot]])?;
            }
            let y = evaluate(spec, &deviated, tol)?.y.value();
            let mut min_gain = f64::INFINITY;
            let mut min_slot = 0;
            for (slot, &i) in coalition.iter().enumerate() {
                let gain = honest_distances[slot] - distance(y, xs[i]);
                if gain < min_gain {
                    min_gain = gain;
                    min_slot = slot;
                }
            }
            if min_gain > floor {
                let i = coalition[min_slot];
                return Ok(Some(ManipulationWitness {
                    true_profile: profile.clone(),
                    misreports: assignment.iter().map(|&k| reports[k]).collect(),
                    agents: coalition,
                    honest_distance: distance(honest, xs[i]),
                    deviant_distance: distance(y, xs[i]),
                    gain: min_gain,
                }));
            }
            // next joint assignment in odometer order
            let mut slot = 0;
            loop {
                if slot == assignment.len() {
                    break;
                }
                assignment[slot] += 1;
                if assignment[slot] < reports.len() {
                    break;
                }
                assignment[slot] = 0;
                slot += 1;
            }
            if slot == assignment.len() {
                break;
            }
        }
    }
    Ok(None)
}

fn push_subsets(n: usize, size: usize, out: &mut Vec<Vec<usize>>) {
    let mut current: Vec<usize> = (0..size).collect();
    loop {
        out.push(current.clone());
        // advance combination
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if current[i] != i + n - size {
                break;
            }
            if i == 0 {
                return;
            }
        }
        current[i] += 1;
        for j in i + 1..size {
            current[j] = current[j - 1] + 1;
        }
    }
}
