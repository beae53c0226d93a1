//! Error types shared by all modules.

use thiserror::Error;

/// Everything that can go wrong while building states, running the
/// protocol, or evaluating capacities.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A state needs at least one optical mode.
    #[error("state must have at least one mode (got {0})")]
    ZeroModes(usize),

    /// Mode index outside the state.
    #[error("mode index {mode} out of range for {n_modes}-mode state")]
    InvalidMode { mode: usize, n_modes: usize },

    /// Beamsplitter called with the same mode twice.
    #[error("beamsplitter modes must be distinct (both {0})")]
    IdenticalModes(usize),

    /// Transmittance must lie in [0, 1].
    #[error("transmittance {0} outside [0, 1]")]
    TransmittanceOutOfRange(f64),

    /// Squeezing strength is nonnegative by convention; flip the axis with
    /// the orientation angle instead.
    #[error("negative squeezing parameter {0}; use the orientation angle to flip the squeezed axis")]
    NegativeSqueezing(f64),

    /// A quantity that must be nonnegative was not.
    #[error("{name} must be nonnegative (got {value})")]
    NegativeValue { name: &'static str, value: f64 },

    /// The photon budget cannot cover the squeezing cost `sinh^2 r`.
    #[error("infeasible photon budget: n_bar = {n_bar} < sinh^2 r = {min_photons}")]
    InfeasibleBudget { n_bar: f64, min_photons: f64 },

    /// Antisqueezing below squeezing violates the uncertainty principle.
    #[error("antisqueezing r_plus = {r_plus} below squeezing r = {r} violates the uncertainty principle")]
    UncertaintyViolation { r: f64, r_plus: f64 },

    /// Bracketing root-finder got a bracket without a sign change.
    #[error("no sign change on bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    /// A covariance matrix failed validation.
    #[error("invalid covariance matrix: {0}")]
    InvalidCovariance(String),

    /// Bad configuration value.
    #[error("invalid configuration: {0}")]
    Config(String),
}
