//! Geometric phases of generalized coherent states driven by resonant
//! Hamiltonians on the sphere (SU(2)), the pseudosphere (SU(1,1)) and the
//! plane (Heisenberg–Weyl).
//!
//! The classical side integrates the variational equations of motion and
//! evaluates the geometric phase Γ and the dynamical phase Δ along closed
//! orbits; the [`oracle`] module propagates the same Hamiltonians exactly in a
//! finite or truncated Hilbert space so both sides can be compared.

#[cfg(feature = "cli")]
pub mod cli;
pub mod drive;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod integrator;
pub mod oracle;
pub mod phases;
pub mod resonance;
pub mod verify;

pub use drive::{Drive, DriveParams, SignConvention};
pub use dynamics::{IntegrationOptions, Trajectory};
pub use error::{Error, Result};
pub use geometry::{Chart, ChartVelocity, Manifold, PhasePoint};
