//! Crate-wide error type.

use thiserror::Error;

/// Which eigenvalue coincidence makes the printed eigenvectors lose rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coincidence {
    /// `alpha_+ = beta^2/v` — families 1 and 2 (and 5, 6) coincide.
    AlphaPlus,
    /// `alpha_- = beta^2/v` — families 2 and 3 (and 4, 5) coincide.
    AlphaMinus,
    /// Both coincide (`beta^2/v = c^2` with `|B| = 0`).
    Both,
}

impl std::fmt::Display for Coincidence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coincidence::AlphaPlus => write!(f, "alpha+ = beta^2/v (families 1,2 coincide)"),
            Coincidence::AlphaMinus => write!(f, "alpha- = beta^2/v (families 2,3 coincide)"),
            Coincidence::Both => write!(f, "alpha- = alpha+ = beta^2/v"),
        }
    }
}

#[derive(Debug, Error)]
pub enum WaveKitError {
    /// A quantity left its physical domain (nonpositive volume, gamma <= 1, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A documented precondition of an operation was violated by the caller.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The requested eigen-structure degenerates at this state.
    #[error("degenerate state for family {family}: {coincidence}")]
    Degenerate {
        family: usize,
        coincidence: Coincidence,
    },

    /// `v_right` sits on the transverse-field resonance `beta^2/sigma^2`.
    #[error("transverse-field resonance: |v_right - beta^2/sigma^2| = {gap:.3e} below tolerance")]
    Resonance { gap: f64 },

    /// The Hugoniot closure has no sign change in (or near) the admissible bracket.
    #[error("no shock: closure g(m) has no root in [{m_lo:.6e}, {m_hi:.6e}] (widened to {m_max:.6e})")]
    NoShock { m_lo: f64, m_hi: f64, m_max: f64 },

    /// More than one admissible root; refusing to pick silently.
    #[error("ambiguous shock solve: {} admissible speeds {roots:?}", roots.len())]
    AmbiguousShock { roots: Vec<f64> },

    /// A solved wave failed an admissibility inequality.
    #[error("inadmissible wave: {0}")]
    Inadmissible(String),

    /// Rarefaction integration hit an eigen-degeneracy mid-curve.
    #[error("degeneracy along curve at v = {v:.6e}: {coincidence} (last good sample kept)")]
    CurveDegeneracy { v: f64, coincidence: Coincidence },

    /// Adaptive step size underflowed.
    #[error("stiffness: step underflow at v = {v:.6e} (h = {h:.3e})")]
    Stiffness { v: f64, h: f64 },

    /// Pseudo-distance integral diverges.
    #[error("far-field mismatch: {0}")]
    FarFieldMismatch(String),

    /// `F_a` already vanishes at the curve origin.
    #[error("degenerate functional: |F_a| = {f_abs:.3e} at the curve origin (scale {scale:.3e})")]
    DegenerateFunctional { f_abs: f64, scale: f64 },

    /// `a = 1` dispatch found none of the required sign conditions.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// The monitored sign change never happened above the volume floor.
    #[error("no sigma_a crossing above v_floor = {v_floor:.6e} (F_a at floor: {f_floor:.6e})")]
    CrossingNotFound { v_floor: f64, f_floor: f64 },

    /// Scenario file violated the schema.
    #[error("scenario schema: {0}")]
    Schema(String),

    #[error("i/o on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl WaveKitError {
    /// Process exit code class for the CLI: 2 inconclusive, 3 inadmissible, 4 input.
    pub fn exit_code(&self) -> i32 {
        use WaveKitError::*;
        match self {
            Inconclusive(_) | CrossingNotFound { .. } | DegenerateFunctional { .. } => 2,
            NoShock { .. } | AmbiguousShock { .. } | Inadmissible(_) | Resonance { .. }
            | CurveDegeneracy { .. } | Stiffness { .. } => 3,
            Domain(_) | Precondition(_) | Degenerate { .. } | FarFieldMismatch(_)
            | Schema(_) | Io { .. } => 4,
        }
    }
}
