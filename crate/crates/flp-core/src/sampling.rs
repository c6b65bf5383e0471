//! Deterministic instance generation for the search harnesses.
//!
//! All randomness flows through ChaCha8 seeded explicitly, so every search
//! report replays bit-for-bit on any platform.

use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::profile::LocationProfile;

/// Seeded ChaCha8 stream of uniform draws.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform in [0,1) with 53 bits of precision.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw from a slice.
    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[(self.rng.next_u64() % items.len() as u64) as usize]
    }

    pub fn index(&mut self, bound: usize) -> usize {
        (self.rng.next_u64() % bound as u64) as usize
    }

    pub fn random_profile(&mut self, n: usize) -> LocationProfile {
        let locations: Vec<f64> = (0..n).map(|_| self.uniform()).collect();
        LocationProfile::new(locations).expect("uniform draws are valid locations")
    }

    /// Profile whose entries are drawn from a fixed candidate set; used to
    /// place agents exactly on mechanism breakpoints and their neighborhoods.
    pub fn structured_profile(&mut self, n: usize, candidates: &[f64]) -> LocationProfile {
        let locations: Vec<f64> = (0..n).map(|_| *self.choose(candidates)).collect();
        LocationProfile::new(locations).expect("candidates are valid locations")
    }

    /// Random permutation of 0..n (Fisher-Yates).
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut sigma: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            sigma.swap(i, self.index(i + 1));
        }
        sigma
    }
}

/// All 2^n binary profiles in lexicographic order of (x_1..x_n), agent 1 most
/// significant. Enumeration is over labeled profiles: anonymity is not
/// assumed, so non-anonymous mechanisms are exercised correctly.
pub fn binary_profiles(n: usize) -> impl Iterator<Item = LocationProfile> {
    (0u64..(1u64 << n)).map(move |mask| {
        let locations: Vec<f64> = (0..n)
            .map(|i| {
                if mask >> (n - 1 - i) & 1 == 1 {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        LocationProfile::new(locations).expect("binary profiles are valid")
    })
}

/// Candidate locations on and around the mechanism's breakpoints, clamped to
/// the unit interval; search harnesses mix these into random sampling.
pub fn breakpoint_candidates(fixed_points: &[f64], step: f64) -> Vec<f64> {
    let mut candidates = alloc::vec![0.0, 1.0, 0.5];
    for &p in fixed_points {
        for delta in [-step, 0.0, step] {
            candidates.push((p + delta).clamp(0.0, 1.0));
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    candidates
}
