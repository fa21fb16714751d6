//! Equation of state, entropy structure and the pseudo-distance integral.
//!
//! The entropy is
//! `eta(U) = v^(1-gamma)/(gamma-1) + |u|^2/2 + (q2^2 + q3^2)/(2v)`,
//! where the first term is the closed form of the pressure integral
//! `int_v^inf p(s) ds` under `p(v) = v^-gamma`. All operations are pure.

use crate::error::WaveKitError;
use crate::state::{ensure_volume, ConservedState, DiscontinuityWave, GasLaw, PiecewiseConstantProfile};
use crate::tol::Tolerance;
use crate::Result;

/// Pressure `p(v) = v^-gamma`.
pub fn pressure(v: f64, law: &GasLaw) -> Result<f64> {
    law.validated()?;
    ensure_volume(v)?;
    Ok(v.powf(-law.gamma))
}

/// Squared sound speed `c^2 = -p'(v) = gamma v^(-gamma-1)`.
pub fn sound_speed_sq(v: f64, law: &GasLaw) -> Result<f64> {
    law.validated()?;
    ensure_volume(v)?;
    Ok(law.gamma * v.powf(-law.gamma - 1.0))
}

/// `p''(v) = gamma (gamma+1) v^(-gamma-2)`, positive: the pressure is convex.
pub(crate) fn pressure_dd(v: f64, law: &GasLaw) -> f64 {
    law.gamma * (law.gamma + 1.0) * v.powf(-law.gamma - 2.0)
}

/// Convex entropy of a conserved state.
pub fn entropy(u: &ConservedState, law: &GasLaw) -> Result<f64> {
    law.validated()?;
    ensure_volume(u.v)?;
    let internal = u.v.powf(1.0 - law.gamma) / (law.gamma - 1.0);
    let kinetic = 0.5 * (u.u1 * u.u1 + u.u2 * u.u2 + u.u3 * u.u3);
    let magnetic = (u.q2 * u.q2 + u.q3 * u.q3) / (2.0 * u.v);
    Ok(internal + kinetic + magnetic)
}

/// `grad eta(U) = (-p - (q2^2+q3^2)/(2v^2), q2/v, q3/v, u1, u2, u3)`.
pub fn entropy_gradient(u: &ConservedState, law: &GasLaw) -> Result<[f64; 6]> {
    law.validated()?;
    ensure_volume(u.v)?;
    let p = u.v.powf(-law.gamma);
    Ok([
        -p - (u.q2 * u.q2 + u.q3 * u.q3) / (2.0 * u.v * u.v),
        u.q2 / u.v,
        u.q3 / u.v,
        u.u1,
        u.u2,
        u.u3,
    ])
}

/// Relative entropy `eta(U|Ubar) = eta(U) - eta(Ubar) - grad eta(Ubar).(U - Ubar)`.
///
/// Positive-definite: zero exactly when `U = Ubar`.
pub fn relative_entropy(u: &ConservedState, ubar: &ConservedState, law: &GasLaw) -> Result<f64> {
    let e_u = entropy(u, law)?;
    let e_b = entropy(ubar, law)?;
    let g = entropy_gradient(ubar, law)?;
    let du = [
        u.v - ubar.v,
        u.q2 - ubar.q2,
        u.q3 - ubar.q3,
        u.u1 - ubar.u1,
        u.u2 - ubar.u2,
        u.u3 - ubar.u3,
    ];
    let lin: f64 = g.iter().zip(du.iter()).map(|(a, b)| a * b).sum();
    Ok(e_u - e_b - lin)
}

/// Entropy flux `G = (p + (q2^2+q3^2)/(2v^2)) u1 - (beta/v)(q2 u2 + q3 u3)`.
pub fn entropy_flux(u: &ConservedState, law: &GasLaw) -> Result<f64> {
    law.validated()?;
    ensure_volume(u.v)?;
    let p = u.v.powf(-law.gamma);
    let total_p = p + (u.q2 * u.q2 + u.q3 * u.q3) / (2.0 * u.v * u.v);
    Ok(total_p * u.u1 - (law.beta / u.v) * (u.q2 * u.u2 + u.q3 * u.u3))
}

/// Weighted pseudo-distance of a piecewise-constant profile against the
/// travelling discontinuity `S(t, x)` of `wave`, at time `t`:
///
/// `int d_a(profile(x), S(t,x)) dx` with weight 1 against `U_l` left of
/// `sigma t` and weight `a` against `U_r` right of it. Finite exactly when
/// the profile's far fields match the wave's endpoints, which is enforced.
pub fn pseudo_distance_integral(
    profile: &PiecewiseConstantProfile,
    wave: &DiscontinuityWave,
    a: f64,
    t: f64,
    law: &GasLaw,
    tol: &Tolerance,
) -> Result<f64> {
    if !(a > 0.0) {
        return Err(WaveKitError::Precondition(format!(
            "weight a must be > 0, got {a}"
        )));
    }
    let far_left = profile.values.first().expect("profile holds n+1 values");
    let far_right = profile.values.last().expect("profile holds n+1 values");
    if far_left.dist_inf(&wave.left) > tol.abs + tol.rel {
        return Err(WaveKitError::FarFieldMismatch(format!(
            "leftmost profile value differs from U_l by {:.3e}; the left tail integral diverges",
            far_left.dist_inf(&wave.left)
        )));
    }
    if far_right.dist_inf(&wave.right) > tol.abs + tol.rel {
        return Err(WaveKitError::FarFieldMismatch(format!(
            "rightmost profile value differs from U_r by {:.3e}; the right tail integral diverges",
            far_right.dist_inf(&wave.right)
        )));
    }

    // Merge the shock position into the breakpoint list and sum
    // length x weighted relative entropy over each bounded interval.
    // The unbounded end intervals contribute zero by the far-field check.
    let shock_x = wave.sigma * t;
    let mut cuts: Vec<f64> = profile.breakpoints.clone();
    let pos = cuts.partition_point(|&b| b < shock_x);
    if cuts.get(pos) != Some(&shock_x) {
        cuts.insert(pos, shock_x);
    }

    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        let mid = 0.5 * (x0 + x1);
        let value = profile.value_at(mid);
        let d = if mid < shock_x {
            relative_entropy(value, &wave.left, law)?
        } else {
            a * relative_entropy(value, &wave.right, law)?
        };
        total += (x1 - x0) * d;
    }
    Ok(total)
}
