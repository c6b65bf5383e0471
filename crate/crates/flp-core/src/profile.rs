//! Domain types: location profiles, facility locations, tolerances, and the
//! distance/utility arithmetic everything else is built on.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Absolute distance between a facility and an agent location.
pub fn distance(y: f64, x: f64) -> f64 {
    (y - x).abs()
}

/// Agent utility `1 - |y - x|`, in [0,1] for inputs in the unit interval.
pub fn utility(y: f64, x: f64) -> f64 {
    1.0 - distance(y, x)
}

/// Number of grid cells covering [0,1] at the given positive step, i.e.
/// `ceil(1/step)`. Integer arithmetic so it works without `std`.
pub(crate) fn grid_cells(step: f64) -> usize {
    let inv = 1.0 / step;
    let floor = inv as usize;
    if (floor as f64) < inv {
        floor + 1
    } else {
        floor
    }
}

fn check_unit(x: f64) -> Result<f64> {
    if x.is_finite() && (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(Error::LocationOutOfRange(x))
    }
}

/// A facility location in the unit interval.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FacilityLocation(f64);

impl FacilityLocation {
    pub fn new(y: f64) -> Result<Self> {
        check_unit(y).map(FacilityLocation)
    }

    /// Constructor for internally computed values; clamps float drift of at
    /// most a few ulps back into the interval.
    pub(crate) fn from_computed(y: f64) -> Self {
        FacilityLocation(y.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// An ordered profile of agent locations in [0,1], n >= 2. Agent identity is
/// preserved (entries stay unsorted); a sorted index is attached at
/// construction so order statistics are cheap and stable.
#[derive(Debug, Clone, PartialEq)]
pub struct LocationProfile {
    locations: Vec<f64>,
    sorted_idx: Vec<usize>,
}

impl LocationProfile {
    pub fn new(locations: Vec<f64>) -> Result<Self> {
        if locations.len() < 2 {
            return Err(Error::TooFewAgents(locations.len()));
        }
        for &x in &locations {
            check_unit(x)?;
        }
        let mut sorted_idx: Vec<usize> = (0..locations.len()).collect();
        sorted_idx.sort_by(|&a, &b| locations[a].total_cmp(&locations[b]));
        Ok(LocationProfile {
            locations,
            sorted_idx,
        })
    }

    pub fn n(&self) -> usize {
        self.locations.len()
    }

    pub fn locations(&self) -> &[f64] {
        &self.locations
    }

    /// Locations in nondecreasing order.
    pub fn sorted(&self) -> Vec<f64> {
        self.sorted_idx.iter().map(|&i| self.locations[i]).collect()
    }

    /// Agent indices ordered by location.
    pub fn sorted_idx(&self) -> &[usize] {
        &self.sorted_idx
    }

    /// k-th smallest location, 0-based.
    pub fn order_stat(&self, k: usize) -> f64 {
        self.locations[self.sorted_idx[k]]
    }

    pub fn min(&self) -> f64 {
        self.order_stat(0)
    }

    pub fn max(&self) -> f64 {
        self.order_stat(self.n() - 1)
    }

    /// Full range `max - min`.
    pub fn range(&self) -> f64 {
        self.max() - self.min()
    }

    /// Relabels agents: entry i of the result is `locations[sigma[i]]`.
    pub fn permute(&self, sigma: &[usize]) -> Result<Self> {
        let n = self.n();
        if sigma.len() != n {
            return Err(Error::InvalidPermutation);
        }
        let mut seen = alloc::vec![false; n];
        for &j in sigma {
            if j >= n || seen[j] {
                return Err(Error::InvalidPermutation);
            }
            seen[j] = true;
        }
        LocationProfile::new(sigma.iter().map(|&j| self.locations[j]).collect())
    }

    /// The profile with agent `i`'s entry replaced by `report`.
    pub fn with_report(&self, agent: usize, report: f64) -> Result<Self> {
        if agent >= self.n() {
            return Err(Error::NoSuchAgent(agent));
        }
        check_unit(report)?;
        let mut locations = self.locations.clone();
        locations[agent] = report;
        LocationProfile::new(locations)
    }

    /// True when every location is 0 or 1 up to `eps`.
    pub fn is_binary(&self, eps: f64) -> bool {
        self.locations
            .iter()
            .all(|&x| x <= eps || x >= 1.0 - eps)
    }

    /// Number of agents at 1 (up to `eps`); meaningful on binary profiles.
    pub fn ones_count(&self, eps: f64) -> usize {
        self.locations.iter().filter(|&&x| x >= 1.0 - eps).count()
    }
}

/// Shared numeric tolerances. `numeric_eps` is the slack applied on the
/// satisfying side of every axiom inequality, `solver_tol` the stopping
/// bracket width of the Nash solver, `grid_step` the default search
/// resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub numeric_eps: f64,
    pub solver_tol: f64,
    pub grid_step: f64,
}

impl Tolerances {
    pub fn new(numeric_eps: f64, solver_tol: f64, grid_step: f64) -> Result<Self> {
        if numeric_eps > 0.0 && solver_tol > 0.0 && grid_step > 0.0 && solver_tol <= grid_step {
            Ok(Tolerances {
                numeric_eps,
                solver_tol,
                grid_step,
            })
        } else {
            Err(Error::InvalidTolerances)
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            numeric_eps: 1e-9,
            solver_tol: 1e-10,
            grid_step: 1e-2,
        }
    }
}
