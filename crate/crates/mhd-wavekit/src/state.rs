//! State representations and the model parameters.
//!
//! Two coordinate systems coexist: the non-conservative working variables
//! `W = (v, B2, B3, u1, u2, u3)` used for spectral analysis, and the
//! conservative variables `U = (v, q2, q3, u1, u2, u3)` with `q_i = v B_i`
//! in which the entropy is convex. Conversions are exact up to rounding.

use serde::{Deserialize, Serialize};

use crate::error::WaveKitError;
use crate::Result;

/// Model parameters: adiabatic exponent of the pressure law `p(v) = v^-gamma`
/// and the constant longitudinal magnetic field component `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GasLaw {
    pub gamma: f64,
    pub beta: f64,
}

impl GasLaw {
    /// `gamma > 1` and `beta > 0` are required.
    ///
    /// Negative `beta` is rejected rather than normalized: the eigenvalue
    /// labelling assumes `beta > 0`, and the reflection `B -> -B, u -> u`
    /// maps a negative-`beta` problem onto a positive one.
    pub fn new(gamma: f64, beta: f64) -> Result<Self> {
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(WaveKitError::Domain(format!(
                "gamma must be finite and > 1, got {gamma}"
            )));
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(WaveKitError::Domain(format!(
                "beta must be finite and > 0, got {beta} (for beta < 0 reflect the transverse field)"
            )));
        }
        Ok(GasLaw { gamma, beta })
    }

    pub(crate) fn validated(&self) -> Result<()> {
        GasLaw::new(self.gamma, self.beta).map(|_| ())
    }
}

/// Non-conservative state `W = (v, B2, B3, u1, u2, u3)`, `v > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FluidState {
    pub v: f64,
    #[serde(rename = "B2")]
    pub b2: f64,
    #[serde(rename = "B3")]
    pub b3: f64,
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
}

/// Conservative state `U = (v, q2, q3, u1, u2, u3)` with `q_i = v B_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConservedState {
    pub v: f64,
    pub q2: f64,
    pub q3: f64,
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
}

impl FluidState {
    pub fn new(v: f64, b2: f64, b3: f64, u1: f64, u2: f64, u3: f64) -> Result<Self> {
        ensure_volume(v)?;
        Ok(FluidState {
            v,
            b2,
            b3,
            u1,
            u2,
            u3,
        })
    }

    pub fn to_conserved(&self) -> ConservedState {
        ConservedState {
            v: self.v,
            q2: self.v * self.b2,
            q3: self.v * self.b3,
            u1: self.u1,
            u2: self.u2,
            u3: self.u3,
        }
    }

    /// `|B|^2 = B2^2 + B3^2`.
    pub fn transverse_norm_sq(&self) -> f64 {
        self.b2 * self.b2 + self.b3 * self.b3
    }
}

impl ConservedState {
    pub fn new(v: f64, q2: f64, q3: f64, u1: f64, u2: f64, u3: f64) -> Result<Self> {
        ensure_volume(v)?;
        Ok(ConservedState {
            v,
            q2,
            q3,
            u1,
            u2,
            u3,
        })
    }

    pub fn to_fluid(&self) -> FluidState {
        FluidState {
            v: self.v,
            b2: self.q2 / self.v,
            b3: self.q3 / self.v,
            u1: self.u1,
            u2: self.u2,
            u3: self.u3,
        }
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.v, self.q2, self.q3, self.u1, self.u2, self.u3]
    }

    pub fn from_array(a: [f64; 6]) -> Self {
        ConservedState {
            v: a[0],
            q2: a[1],
            q3: a[2],
            u1: a[3],
            u2: a[4],
            u3: a[5],
        }
    }

    /// Max-norm distance between two states.
    pub fn dist_inf(&self, other: &ConservedState) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array().iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub(crate) fn ensure_volume(v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(WaveKitError::Domain(format!(
            "specific volume must be finite and > 0, got {v}"
        )));
    }
    Ok(())
}

/// Wave family of a discontinuity: slow shocks (3, 4) or rotational
/// contact discontinuities (2, 5). The extremal families 1 and 6 carry
/// rarefaction curves here, not shock curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WaveFamily {
    Shock3,
    Shock4,
    Contact2,
    Contact5,
}

impl WaveFamily {
    /// Characteristic field index (1..6).
    pub fn index(&self) -> usize {
        match self {
            WaveFamily::Contact2 => 2,
            WaveFamily::Shock3 => 3,
            WaveFamily::Shock4 => 4,
            WaveFamily::Contact5 => 5,
        }
    }

    pub fn is_shock(&self) -> bool {
        matches!(self, WaveFamily::Shock3 | WaveFamily::Shock4)
    }

    pub fn is_contact(&self) -> bool {
        !self.is_shock()
    }
}

impl std::fmt::Display for WaveFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WaveFamily::Shock3 => write!(f, "shock-3"),
            WaveFamily::Shock4 => write!(f, "shock-4"),
            WaveFamily::Contact2 => write!(f, "contact-2"),
            WaveFamily::Contact5 => write!(f, "contact-5"),
        }
    }
}

/// A candidate discontinuity `(U_l, U_r, sigma)` with its characteristic family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscontinuityWave {
    pub left: ConservedState,
    pub right: ConservedState,
    pub sigma: f64,
    pub family: WaveFamily,
}

/// Piecewise-constant profile: `n` breakpoints and `n + 1` values.
///
/// Serves as the skeleton of the witness initial data; any mollification
/// layer around the breakpoints is metadata, not stored here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseConstantProfile {
    pub breakpoints: Vec<f64>,
    pub values: Vec<ConservedState>,
}

impl PiecewiseConstantProfile {
    /// Breakpoints must be strictly increasing, with one more value than breakpoints.
    pub fn new(breakpoints: Vec<f64>, values: Vec<ConservedState>) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(WaveKitError::Precondition(format!(
                "profile needs {} values for {} breakpoints, got {}",
                breakpoints.len() + 1,
                breakpoints.len(),
                values.len()
            )));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(WaveKitError::Precondition(
                "profile breakpoints must be strictly increasing".into(),
            ));
        }
        Ok(PiecewiseConstantProfile {
            breakpoints,
            values,
        })
    }

    /// Value at position `x` (right-continuous at breakpoints).
    pub fn value_at(&self, x: f64) -> &ConservedState {
        let idx = self.breakpoints.partition_point(|&b| b <= x);
        &self.values[idx]
    }
}
