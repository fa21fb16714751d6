//! Wave-curve toolkit for planar isentropic MHD in Lagrangian coordinates.
//!
//! The crate constructs admissible discontinuities of the 6x6 planar MHD
//! system (intermediate shocks of the slow families and rotational contact
//! discontinuities), integrates rarefaction curves of the fast families, and
//! certifies non-contraction of a discontinuity under the weighted
//! relative-entropy pseudo-distance by locating intersections of those curves
//! with the level surface `eta(U|U_l) = a * eta(U|U_r)`.
//!
//! Modules follow the pipeline:
//!
//! * [`state`] / [`thermo`] — state representations, equation of state,
//!   entropy structure and the pseudo-distance integral,
//! * [`spectral`] — eigenvalues/eigenvectors of the quasilinear system and
//!   genuine-nonlinearity checks,
//! * [`waves`] — Hugoniot solves, contacts, admissibility and the entropy
//!   dissipation identity,
//! * [`rarefaction`] — adaptive integration of the family-1/6 curves,
//! * [`contraction`] — the weighted functional `F_a` and certificates,
//! * [`scenario`] — batch scenario files and machine-readable outputs.

// `!(x > 0.0)` is the NaN-rejecting form of a domain check; keep it.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod contraction;
pub mod error;
pub mod numeric;
pub mod rarefaction;
pub mod scenario;
pub mod spectral;
pub mod state;
pub mod thermo;
pub mod tol;
pub mod waves;

pub use error::WaveKitError;
pub use state::{ConservedState, DiscontinuityWave, FluidState, GasLaw, WaveFamily};
pub use tol::Tolerance;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, WaveKitError>;
