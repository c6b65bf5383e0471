//! Mechanisms, fairness axioms, and welfare analysis for the one-dimensional
//! facility location problem on the unit interval.
//!
//! The crate is split along the life cycle of an analysis:
//!
//! - [`profile`] holds the domain types (location profiles, facility
//!   locations, numeric tolerances) and distance/utility arithmetic.
//! - [`mechanisms`] evaluates the mechanism catalogue: median, midpoint,
//!   average, Nash, phantom mechanisms (uniform and constrained-median
//!   placements included), plus two fixture mechanisms used as
//!   counterexamples in characterization arguments.
//! - [`axioms`] checks fairness and structural axioms on single instances
//!   and searches profile spaces for counterexamples.
//! - [`strategy`] searches for profitable misreports, individually and for
//!   small coalitions.
//! - [`equilibrium`] runs best-response dynamics for continuous strictly
//!   monotonic mechanisms and verifies the resulting equilibria.
//! - [`welfare`] computes welfare approximation ratios, their closed-form
//!   lower bounds, and worst-case profiles over binary and continuous
//!   profile spaces.
//!
//! The core is `no_std` compatible (with `alloc`); all IO lives in the
//! companion CLI crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod axioms;
pub mod equilibrium;
mod error;
pub mod mechanisms;
pub mod profile;
pub mod sampling;
pub mod strategy;
pub mod welfare;

pub use error::Error;
pub use mechanisms::{MechanismOutput, MechanismSpec, PhantomVector};
pub use profile::{distance, utility, FacilityLocation, LocationProfile, Tolerances};

pub type Result<T> = core::result::Result<T, Error>;
