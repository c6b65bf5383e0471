//! The mechanism catalogue: order-statistic mechanisms (median, phantom
//! family), the midpoint and average mechanisms, the Nash welfare maximizer,
//! and two fixture mechanisms used as counterexamples in characterization
//! arguments.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::profile::{FacilityLocation, LocationProfile, Tolerances};
use crate::{Error, Result};

/// n-1 fixed points, sorted nondecreasing in [0,1], parameterizing a phantom
/// mechanism for profiles of size n.
#[derive(Debug, Clone, PartialEq)]
pub struct PhantomVector(Vec<f64>);

impl PhantomVector {
    pub fn new(phantoms: Vec<f64>) -> Result<Self> {
        for &p in &phantoms {
            if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                return Err(Error::LocationOutOfRange(p));
            }
        }
        if phantoms.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::PhantomsUnsorted);
        }
        Ok(PhantomVector(phantoms))
    }

    pub fn points(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Phantoms at 1/n, 2/n, ..., (n-1)/n.
pub fn uniform_phantoms(n: usize) -> Result<PhantomVector> {
    if n < 2 {
        return Err(Error::TooFewAgents(n));
    }
    PhantomVector::new((1..n).map(|j| j as f64 / n as f64).collect())
}

/// ceil((n-1)/2) phantoms at 1/n, the remaining floor((n-1)/2) at 1 - 1/n.
pub fn constrained_median_phantoms(n: usize) -> Result<PhantomVector> {
    if n < 2 {
        return Err(Error::TooFewAgents(n));
    }
    let low = n / 2; // ceil((n-1)/2)
    let mut p = Vec::with_capacity(n - 1);
    for _ in 0..low {
        p.push(1.0 / n as f64);
    }
    for _ in low..n - 1 {
        p.push(1.0 - 1.0 / n as f64);
    }
    PhantomVector::new(p)
}

/// Closed descriptor selecting one mechanism from the catalogue.
#[derive(Debug, Clone, PartialEq)]
pub enum MechanismSpec {
    Median,
    Midpoint,
    Average,
    Nash,
    UniformPhantom,
    ConstrainedMedian,
    Phantom(PhantomVector),
    Constant(f64),
    /// Three-piece n=2 mechanism: strategyproof, anonymous, and proportional
    /// but distinct from the uniform phantom (it is not unanimous).
    Prop6Fixture,
    /// n=3 generalized-median mechanism that is strategyproof, unanimous, and
    /// IFS but not anonymous; the epsilon shifts agent 1's cap to 1/3 + eps.
    NonAnonFixture(f64),
}

impl MechanismSpec {
    /// Checks that the spec's parameters are valid and compatible with a
    /// profile of size `n`.
    pub fn validate_for(&self, n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::TooFewAgents(n));
        }
        match self {
            MechanismSpec::Phantom(p) if p.len() != n - 1 => Err(Error::PhantomLengthMismatch {
                expected: n - 1,
                got: p.len(),
            }),
            MechanismSpec::Constant(c) if !(0.0..=1.0).contains(c) || !c.is_finite() => {
                Err(Error::LocationOutOfRange(*c))
            }
            MechanismSpec::Prop6Fixture if n != 2 => Err(Error::IncompatibleSpec(format!(
                "prop6 fixture requires n = 2, got n = {n}"
            ))),
            MechanismSpec::NonAnonFixture(eps) if n != 3 => Err(Error::IncompatibleSpec(
                format!("nonanon fixture requires n = 3, got n = {n} (eps = {eps})"),
            )),
            MechanismSpec::NonAnonFixture(eps) if !(*eps > 0.0 && *eps < 1.0 / 3.0) => Err(
                Error::IncompatibleSpec(format!("nonanon eps must lie in (0, 1/3), got {eps}")),
            ),
            _ => Ok(()),
        }
    }

    /// Every catalogue entry except the n=3 fixture is invariant under agent
    /// relabeling.
    pub fn is_anonymous(&self) -> bool {
        !matches!(self, MechanismSpec::NonAnonFixture(_))
    }

    /// Fixed points where a mechanism's output can sit regardless of nearby
    /// reports; manipulation grids are augmented with these.
    pub fn fixed_points(&self, n: usize) -> Vec<f64> {
        match self {
            MechanismSpec::UniformPhantom => {
                uniform_phantoms(n).map(|p| p.0).unwrap_or_default()
            }
            MechanismSpec::ConstrainedMedian => constrained_median_phantoms(n)
                .map(|p| p.0)
                .unwrap_or_default(),
            MechanismSpec::Phantom(p) => p.0.clone(),
            MechanismSpec::Constant(c) => alloc::vec![*c],
            MechanismSpec::Prop6Fixture => alloc::vec![0.25, 0.5, 0.75],
            MechanismSpec::NonAnonFixture(eps) => {
                alloc::vec![1.0 / 3.0, 1.0 / 3.0 + eps, 2.0 / 3.0]
            }
            _ => Vec::new(),
        }
    }

    /// Textual form used by the CLI and config files.
    pub fn parse(s: &str) -> Result<Self> {
        let spec = match s {
            "median" => MechanismSpec::Median,
            "midpoint" => MechanismSpec::Midpoint,
            "average" => MechanismSpec::Average,
            "nash" => MechanismSpec::Nash,
            "uniform" => MechanismSpec::UniformPhantom,
            "cmedian" => MechanismSpec::ConstrainedMedian,
            "prop6" => MechanismSpec::Prop6Fixture,
            "nonanon" => MechanismSpec::NonAnonFixture(1e-3),
            _ => {
                if let Some(rest) = s.strip_prefix("phantom:") {
                    let points: core::result::Result<Vec<f64>, _> =
                        rest.split(',').map(|t| t.trim().parse::<f64>()).collect();
                    let points =
                        points.map_err(|_| Error::UnknownIdentifier(String::from(s)))?;
                    MechanismSpec::Phantom(PhantomVector::new(points)?)
                } else if let Some(rest) = s.strip_prefix("constant:") {
                    let c: f64 = rest
                        .trim()
                        .parse()
                        .map_err(|_| Error::UnknownIdentifier(String::from(s)))?;
                    if !(0.0..=1.0).contains(&c) {
                        return Err(Error::LocationOutOfRange(c));
                    }
                    MechanismSpec::Constant(c)
                } else if let Some(rest) = s.strip_prefix("nonanon:") {
                    let eps: f64 = rest
                        .trim()
                        .parse()
                        .map_err(|_| Error::UnknownIdentifier(String::from(s)))?;
                    MechanismSpec::NonAnonFixture(eps)
                } else {
                    return Err(Error::UnknownIdentifier(String::from(s)));
                }
            }
        };
        Ok(spec)
    }
}

impl core::str::FromStr for MechanismSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MechanismSpec::parse(s)
    }
}

impl core::fmt::Display for MechanismSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MechanismSpec::Median => write!(f, "median"),
            MechanismSpec::Midpoint => write!(f, "midpoint"),
            MechanismSpec::Average => write!(f, "average"),
            MechanismSpec::Nash => write!(f, "nash"),
            MechanismSpec::UniformPhantom => write!(f, "uniform"),
            MechanismSpec::ConstrainedMedian => write!(f, "cmedian"),
            MechanismSpec::Phantom(p) => {
                write!(f, "phantom:")?;
                for (i, x) in p.points().iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            MechanismSpec::Constant(c) => write!(f, "constant:{c}"),
            MechanismSpec::Prop6Fixture => write!(f, "prop6"),
            MechanismSpec::NonAnonFixture(eps) => write!(f, "nonanon:{eps}"),
        }
    }
}

/// Iteration count and final bracket width of the Nash solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverDiagnostics {
    pub iterations: u32,
    pub bracket_width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MechanismOutput {
    pub y: FacilityLocation,
    pub diagnostics: Option<SolverDiagnostics>,
}

impl MechanismOutput {
    fn plain(y: f64) -> Self {
        MechanismOutput {
            y: FacilityLocation::from_computed(y),
            diagnostics: None,
        }
    }
}

/// Median of the 2n-1 multiset {x_1..x_n, p_1..p_{n-1}} (its n-th smallest
/// element).
pub fn eval_phantom(profile: &LocationProfile, phantoms: &PhantomVector) -> Result<FacilityLocation> {
    let n = profile.n();
    if phantoms.len() != n - 1 {
        return Err(Error::PhantomLengthMismatch {
            expected: n - 1,
            got: phantoms.len(),
        });
    }
    let mut pool: Vec<f64> = profile.locations().to_vec();
    pool.extend_from_slice(phantoms.points());
    pool.sort_by(f64::total_cmp);
    Ok(FacilityLocation::from_computed(pool[n - 1]))
}

/// Median location: the ((n+1)/2)-th smallest for odd n, the (n/2)-th
/// smallest (left median) for even n, 1-based.
pub fn median_mechanism(profile: &LocationProfile) -> FacilityLocation {
    FacilityLocation::from_computed(profile.order_stat((profile.n() - 1) / 2))
}

/// Midpoint of the leftmost and rightmost agents.
pub fn midpoint_mechanism(profile: &LocationProfile) -> FacilityLocation {
    FacilityLocation::from_computed(0.5 * (profile.min() + profile.max()))
}

/// Arithmetic mean of all reports.
pub fn average_mechanism(profile: &LocationProfile) -> FacilityLocation {
    let sum: f64 = profile.locations().iter().sum();
    FacilityLocation::from_computed(sum / profile.n() as f64)
}

/// Maximizer of the product of agent utilities over [0,1].
///
/// The log-objective is strictly concave, so its derivative
/// `sum_i sign(x_i - y) / (1 - |y - x_i|)` is strictly decreasing and has a
/// unique root in [min x, max x]; we bisect on it down to `solver_tol`.
pub fn nash_mechanism(profile: &LocationProfile, tol: &Tolerances) -> MechanismOutput {
    let (mut lo, mut hi) = (profile.min(), profile.max());
    if hi - lo == 0.0 {
        return MechanismOutput {
            y: FacilityLocation::from_computed(lo),
            diagnostics: Some(SolverDiagnostics {
                iterations: 0,
                bracket_width: 0.0,
            }),
        };
    }
    let derivative = |y: f64| -> f64 {
        profile
            .locations()
            .iter()
            .map(|&x| {
                if x > y {
                    1.0 / (1.0 - (x - y))
                } else if x < y {
                    -1.0 / (1.0 - (y - x))
                } else {
                    0.0
                }
            })
            .sum()
    };
    let mut iterations = 0u32;
    while hi - lo > tol.solver_tol {
        let mid = 0.5 * (lo + hi);
        if derivative(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    MechanismOutput {
        y: FacilityLocation::from_computed(0.5 * (lo + hi)),
        diagnostics: Some(SolverDiagnostics {
            iterations,
            bracket_width: hi - lo,
        }),
    }
}

/// n=2 counterexample mechanism: 0 when both reports are at most 1/4, 1 when
/// both are at least 3/4, and 1/2 otherwise.
pub fn prop6_fixture(profile: &LocationProfile) -> Result<FacilityLocation> {
    MechanismSpec::Prop6Fixture.validate_for(profile.n())?;
    let (x1, x2) = (profile.locations()[0], profile.locations()[1]);
    let y = if x1 <= 0.25 && x2 <= 0.25 {
        0.0
    } else if x1 >= 0.75 && x2 >= 0.75 {
        1.0
    } else {
        0.5
    };
    Ok(FacilityLocation::from_computed(y))
}

/// n=3 generalized-median counterexample mechanism. Agent 1's singleton cap
/// is shifted to 1/3 + eps, breaking anonymity while keeping
/// strategyproofness, unanimity, and IFS.
pub fn nonanon_fixture(profile: &LocationProfile, eps: f64) -> Result<FacilityLocation> {
    let spec = MechanismSpec::NonAnonFixture(eps);
    spec.validate_for(profile.n())?;
    let x = profile.locations();
    let (x1, x2, x3) = (x[0], x[1], x[2]);
    let third = 1.0 / 3.0;
    let two_thirds = 2.0 / 3.0;
    let terms = [
        x1.min(third + eps),
        x2.min(third),
        x3.min(third),
        x1.min(x2).min(two_thirds),
        x2.min(x3).min(two_thirds),
        x1.min(x3).min(two_thirds),
        x1.min(x2).min(x3),
        0.0,
    ];
    let y = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(FacilityLocation::from_computed(y))
}

/// Uniform dispatch over the catalogue.
pub fn evaluate(
    spec: &MechanismSpec,
    profile: &LocationProfile,
    tol: &Tolerances,
) -> Result<MechanismOutput> {
    spec.validate_for(profile.n())?;
    let out = match spec {
        MechanismSpec::Median => MechanismOutput::plain(median_mechanism(profile).value()),
        MechanismSpec::Midpoint => MechanismOutput::plain(midpoint_mechanism(profile).value()),
        MechanismSpec::Average => MechanismOutput::plain(average_mechanism(profile).value()),
        MechanismSpec::Nash => nash_mechanism(profile, tol),
        MechanismSpec::UniformPhantom => {
            MechanismOutput::plain(eval_phantom(profile, &uniform_phantoms(profile.n())?)?.value())
        }
        MechanismSpec::ConstrainedMedian => MechanismOutput::plain(
            eval_phantom(profile, &constrained_median_phantoms(profile.n())?)?.value(),
        ),
        MechanismSpec::Phantom(p) => MechanismOutput::plain(eval_phantom(profile, p)?.value()),
        MechanismSpec::Constant(c) => MechanismOutput::plain(*c),
        MechanismSpec::Prop6Fixture => MechanismOutput::plain(prop6_fixture(profile)?.value()),
        MechanismSpec::NonAnonFixture(eps) => {
            MechanismOutput::plain(nonanon_fixture(profile, *eps)?.value())
        }
    };
    Ok(out)
}
