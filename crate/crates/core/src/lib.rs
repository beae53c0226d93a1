//! Simulation of a continuous-variable dense-coding channel.
//!
//! The library is organized in four layers:
//!
//! * [`gaussian`] — exact Gaussian states (mean vector + covariance matrix)
//!   and the symplectic operations they support: squeezing, beamsplitters,
//!   phase rotations, displacements, loss, and homodyne statistics.
//! * [`protocol`] — the dense-coding pipeline: two orthogonally squeezed
//!   vacua combined into an EPR pair, a two-quadrature displacement on one
//!   beam, and decoding back into two displaced squeezed beams.
//! * [`capacity`] — channel-capacity formulas under a fixed mean photon
//!   number, the optimal-squeezing closed forms, and a bracketing
//!   root-finder for capacity crossovers.
//! * [`traces`] — seeded synthesis of spectrum-analyzer records (zero-span
//!   time traces and swept spectra) from the simulated noise levels.
//!
//! Conventions: `[x, p] = i`, vacuum quadrature variance `1/2`, and all dB
//! values are relative to that shot-noise level.

pub mod capacity;
pub mod error;
pub mod gaussian;
pub mod protocol;
pub mod traces;

pub use capacity::{CapacityPoint, ChannelModel};
pub use error::Error;
pub use gaussian::{GaussianState, HomodyneStats, SymplecticOp, VACUUM_VARIANCE};
pub use protocol::{DecodedResult, ExperimentConfig};
pub use traces::{Trace, TraceConfig, TraceKind};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
