use alloc::string::String;
use core::fmt;

/// Errors surfaced by construction and search entry points. All numeric
/// evaluation on validated inputs is total.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A location (agent, phantom, or facility) is outside [0,1] or not finite.
    LocationOutOfRange(f64),
    /// Profiles require at least two agents.
    TooFewAgents(usize),
    /// Phantom vectors must be sorted nondecreasing.
    PhantomsUnsorted,
    /// A phantom vector's length does not match the profile size.
    PhantomLengthMismatch { expected: usize, got: usize },
    /// A permutation is not a bijection on the profile's agent indices.
    InvalidPermutation,
    /// A mechanism spec's parameters are incompatible with the profile size.
    IncompatibleSpec(String),
    /// Tolerances must be strictly positive with `solver_tol <= grid_step`.
    InvalidTolerances,
    /// Agent index out of bounds.
    NoSuchAgent(usize),
    /// A profile pair is not componentwise comparable.
    IncomparableProfiles,
    /// Best-response dynamics require a mechanism on the
    /// continuous + strictly-monotonic allowlist.
    NotBestResponseCapable,
    /// An enumeration budget would be exceeded (e.g. full 2^n for large n).
    BudgetExceeded(String),
    /// Unknown textual mechanism or axiom identifier.
    UnknownIdentifier(String),
    /// Coalition sizes above 3 are not searched.
    CoalitionTooLarge(usize),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::LocationOutOfRange(x) => write!(f, "location {x} outside [0,1]"),
            Error::TooFewAgents(n) => write!(f, "need at least 2 agents, got {n}"),
            Error::PhantomsUnsorted => write!(f, "phantom vector must be sorted nondecreasing"),
            Error::PhantomLengthMismatch { expected, got } => {
                write!(f, "expected {expected} phantoms, got {got}")
            }
            Error::InvalidPermutation => write!(f, "permutation is not a bijection on agents"),
            Error::IncompatibleSpec(msg) => write!(f, "incompatible mechanism spec: {msg}"),
            Error::InvalidTolerances => {
                write!(f, "tolerances must be positive with solver_tol <= grid_step")
            }
            Error::NoSuchAgent(i) => write!(f, "agent index {i} out of bounds"),
            Error::IncomparableProfiles => {
                write!(f, "profiles are not componentwise ordered")
            }
            Error::NotBestResponseCapable => write!(
                f,
                "mechanism is not on the continuous strictly-monotonic allowlist"
            ),
            Error::BudgetExceeded(msg) => write!(f, "enumeration budget exceeded: {msg}"),
            Error::UnknownIdentifier(s) => write!(f, "unknown identifier `{s}`"),
            Error::CoalitionTooLarge(k) => write!(f, "coalition size {k} exceeds cap of 3"),
        }
    }
}

impl core::error::Error for Error {}
