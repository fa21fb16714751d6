//! Rarefaction curve integration for the genuinely nonlinear extremal
//! families 1 and 6.
//!
//! Both curves are parameterized by the specific volume: off degeneracy
//! `dv.r_1 = (v/a+)(a+ - beta^2/v) > 0` and `dv.r_6 = -(v/a+)(a+ - beta^2/v) < 0`,
//! so `W(v)` solves `dW/dv = r(W) / (dv.r(W))` and both traversal directions
//! (backward family 1 from the left state, forward family 6 from the right
//! state) run toward decreasing `v`. Integration is an embedded
//! Dormand-Prince 5(4) pair with error-per-unit-step control.

use crate::error::WaveKitError;
use crate::spectral::{alpha_roots, eigenvalues, eigenvector};
use crate::state::{ensure_volume, FluidState, GasLaw};
use crate::Result;

/// Families that carry rarefaction curves here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RarefactionFamily {
    One,
    Six,
}

impl RarefactionFamily {
    pub fn index(&self) -> usize {
        match self {
            RarefactionFamily::One => 1,
            RarefactionFamily::Six => 6,
        }
    }

    /// Curve direction: family 1 is traversed backward (`-r_1`), family 6
    /// forward (`+r_6`); `v` decreases either way.
    pub fn direction(&self) -> CurveDirection {
        match self {
            RarefactionFamily::One => CurveDirection::Backward,
            RarefactionFamily::Six => CurveDirection::Forward,
        }
    }

    /// The `v`-component of the traversal tangent (`-r_1` or `+r_6`),
    /// i.e. `dv/ds` along the curve; negative off degeneracy.
    pub fn dv_ds(&self, w: &FluidState, law: &GasLaw) -> Result<f64> {
        let r = eigenvector(w, law, self.index())?;
        Ok(match self {
            RarefactionFamily::One => -r[0],
            RarefactionFamily::Six => r[0],
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveDirection {
    Backward,
    Forward,
}

impl std::fmt::Display for CurveDirection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CurveDirection::Backward => write!(f, "backward"),
            CurveDirection::Forward => write!(f, "forward"),
        }
    }
}

/// One accepted sample of a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub v: f64,
    pub state: FluidState,
}

/// An integrated rarefaction curve; samples are ordered by strictly
/// decreasing `v`, starting at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct RarefactionCurve {
    pub origin: FluidState,
    pub family: RarefactionFamily,
    pub samples: Vec<CurveSample>,
}

impl RarefactionCurve {
    pub fn direction(&self) -> CurveDirection {
        self.family.direction()
    }
}

/// Observer verdict after each accepted sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveFlow {
    Continue,
    Stop,
}

/// Local error per unit step for the embedded pair.
const STEP_TOL: f64 = 1e-10;

/// Dormand-Prince 5(4) coefficients.
const DP_C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 6] = [
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// 5th-order weights minus the embedded 4th-order weights.
const DP_E: [f64; 7] = [
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
];

/// Right-hand side `dy/dv` for `y = (B2, B3, u1, u2, u3)`.
fn curve_rhs(family: RarefactionFamily, v: f64, y: &[f64; 5], law: &GasLaw) -> Result<[f64; 5]> {
    let w = FluidState {
        v,
        b2: y[0],
        b3: y[1],
        u1: y[2],
        u2: y[3],
        u3: y[4],
    };
    let r = eigenvector(&w, law, family.index())?;
    let dv = r[0];
    Ok([r[1] / dv, r[2] / dv, r[3] / dv, r[4] / dv, r[5] / dv])
}

fn map_degeneracy(err: WaveKitError, v: f64) -> WaveKitError {
    match err {
        WaveKitError::Degenerate { coincidence, .. } => {
            WaveKitError::CurveDegeneracy { v, coincidence }
        }
        other => other,
    }
}

/// Adaptive stepper walking a curve toward decreasing `v`.
#[derive(Debug)]
pub struct CurveStepper<'a> {
    law: &'a GasLaw,
    family: RarefactionFamily,
    v: f64,
    y: [f64; 5],
    h: f64,
}

impl<'a> CurveStepper<'a> {
    pub fn new(origin: &FluidState, family: RarefactionFamily, law: &'a GasLaw) -> Result<Self> {
        law.validated()?;
        ensure_volume(origin.v)?;
        // Degenerate origins are rejected up front; a |B| = 0 origin is fine
        // for families 1/6 as long as the fast branch is acoustic.
        eigenvector(origin, law, family.index()).map_err(|e| map_degeneracy(e, origin.v))?;
        Ok(CurveStepper {
            law,
            family,
            v: origin.v,
            y: [origin.b2, origin.b3, origin.u1, origin.u2, origin.u3],
            h: -1e-3 * origin.v,
        })
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn state(&self) -> FluidState {
        FluidState {
            v: self.v,
            b2: self.y[0],
            b3: self.y[1],
            u1: self.y[2],
            u2: self.y[3],
            u3: self.y[4],
        }
    }

    /// One accepted adaptive step toward `v_limit` (clamped to land on it).
    pub fn step_toward(&mut self, v_limit: f64) -> Result<CurveSample> {
        if !(v_limit < self.v) {
            return Err(WaveKitError::Precondition(format!(
                "step target {v_limit} must lie below current v {}",
                self.v
            )));
        }
        let k0 = curve_rhs(self.family, self.v, &self.y, self.law)
            .map_err(|e| map_degeneracy(e, self.v))?;
        let mut k = [[0.0_f64; 5]; 7];
        k[0] = k0;
        loop {
            let mut h = self.h.min(-0.0_f64);
            if self.v + h < v_limit {
                h = v_limit - self.v;
            }
            if h.abs() < 1e-14 * self.v {
                return Err(WaveKitError::Stiffness { v: self.v, h });
            }

            let mut failed = false;
            for stage in 0..6 {
                let mut ys = self.y;
                for (j, yj) in ys.iter_mut().enumerate() {
                    let mut acc = 0.0;
                    for (m, km) in k.iter().enumerate().take(stage + 1) {
                        acc += DP_A[stage][m] * km[j];
                    }
                    *yj += h * acc;
                }
                let vs = self.v + DP_C[stage] * h;
                match curve_rhs(self.family, vs, &ys, self.law) {
                    Ok(rhs) => k[stage + 1] = rhs,
                    Err(WaveKitError::Domain(_)) | Err(WaveKitError::Degenerate { .. }) => {
                        failed = true;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            if failed {
                // a stage left the valid domain: retry with a smaller step
                self.h = 0.25 * h;
                if self.h.abs() < 1e-14 * self.v {
                    return Err(WaveKitError::Stiffness { v: self.v, h: self.h });
                }
                continue;
            }

            let mut y_new = self.y;
            for (j, yj) in y_new.iter_mut().enumerate() {
                let mut acc = 0.0;
                for (m, km) in k.iter().enumerate().take(6) {
                    acc += DP_A[5][m] * km[j];
                }
                *yj += h * acc;
            }
            let mut err = 0.0_f64;
            for j in 0..5 {
                let mut e = 0.0;
                for (m, km) in k.iter().enumerate() {
                    e += DP_E[m] * km[j];
                }
                e *= h;
                let sc = 1.0 + self.y[j].abs().max(y_new[j].abs());
                err = err.max(e.abs() / sc);
            }
            let tol = STEP_TOL * h.abs();
            if err <= tol {
                self.v += h;
                self.y = y_new;
                let grow = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * (tol / err).powf(0.2)).clamp(0.2, 5.0)
                };
                self.h = h * grow;
                return Ok(CurveSample {
                    v: self.v,
                    state: self.state(),
                });
            }
            let shrink = (0.9 * (tol / err).powf(0.2)).clamp(0.1, 0.9);
            self.h = h * shrink;
        }
    }

    /// Walk down to exactly `v_target` (no-op if already there).
    pub fn advance_to(&mut self, v_target: f64) -> Result<CurveSample> {
        ensure_volume(v_target)?;
        while self.v > v_target * (1.0 + 1e-15) {
            self.step_toward(v_target)?;
        }
        Ok(CurveSample {
            v: self.v,
            state: self.state(),
        })
    }
}

/// Integrate the family-1 backward / family-6 forward rarefaction curve from
/// `origin` down to `v_floor`, feeding every accepted sample to `observer`
/// (which may stop the walk early, e.g. on a sign event).
pub fn rarefaction_integrate(
    origin: &FluidState,
    family: RarefactionFamily,
    v_floor: f64,
    law: &GasLaw,
    mut observer: impl FnMut(&CurveSample) -> CurveFlow,
) -> Result<RarefactionCurve> {
    ensure_volume(v_floor)?;
    if v_floor > origin.v {
        return Err(WaveKitError::Precondition(format!(
            "v_floor {} must not exceed the origin volume {}",
            v_floor, origin.v
        )));
    }
    let mut samples = vec![CurveSample {
        v: origin.v,
        state: *origin,
    }];
    if v_floor == origin.v {
        return Ok(RarefactionCurve {
            origin: *origin,
            family,
            samples,
        });
    }
    let mut stepper = CurveStepper::new(origin, family, law)?;
    loop {
        let sample = stepper.step_toward(v_floor)?;
        samples.push(sample);
        if observer(&sample) == CurveFlow::Stop {
            break;
        }
        if sample.v <= v_floor * (1.0 + 1e-15) {
            break;
        }
    }
    Ok(RarefactionCurve {
        origin: *origin,
        family,
        samples,
    })
}

/// Characteristic speed of the curve's own family at a state.
pub fn curve_lambda(family: RarefactionFamily, w: &FluidState, law: &GasLaw) -> Result<f64> {
    Ok(eigenvalues(w, law)?[family.index() - 1])
}

/// `v sqrt(alpha+)`, the quantity whose unbounded growth as `v -> 0+` drives
/// the tail behavior of the weighted functional along these curves.
pub fn v_sqrt_alpha_plus(w: &FluidState, law: &GasLaw) -> Result<f64> {
    Ok(w.v * alpha_roots(w, law)?.plus.sqrt())
}
