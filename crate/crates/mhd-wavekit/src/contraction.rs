//! Non-contraction certificates for admissible discontinuities.
//!
//! For a wave `(U_l, U_r, sigma)` and weight `a > 0` the functional
//! `F_a(U) = eta(U|U_l) - a eta(U|U_r)` is negative at `U_l`, positive at
//! `U_r`, and affine when `a = 1`. A state on a genuinely nonlinear
//! rarefaction curve where `F_a` changes sign witnesses an intersection with
//! the level surface `Sigma_a = {F_a = 0}`, which rules out contraction of
//! the wave in the `a`-weighted pseudo-distance. The dispatch is: backward
//! family-1 curve from `U_l` for `a < 1`, forward family-6 curve from `U_r`
//! for `a > 1`, and at `a = 1` whichever branch the wave's transverse-field
//! sign condition licenses.

use serde::Serialize;

use crate::error::WaveKitError;
use crate::rarefaction::{CurveSample, CurveStepper, RarefactionFamily};
use crate::state::{
    ConservedState, DiscontinuityWave, FluidState, GasLaw, PiecewiseConstantProfile, WaveFamily,
};
use crate::thermo::{entropy, entropy_gradient, relative_entropy};
use crate::tol::Tolerance;
use crate::waves::{
    condition_2b, condition_3b, condition_contact_ab, lax_check, rh_residual, rh_residual_norm,
    rh_scale, ConditionReport, ContactClass, ContactConditionReport,
};
use crate::Result;

/// Relative tolerance on `|F_a|` at an accepted witness.
pub const WITNESS_REL_TOL: f64 = 1e-9;
/// Default volume floor factor for crossing searches.
pub const V_FLOOR_FACTOR: f64 = 1e-4;
/// Default half-width of the witness middle plateau.
pub const WITNESS_HALF_WIDTH: f64 = 1.0;

/// The weighted relative-entropy functional `F_a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedFunctional {
    pub left_ref: ConservedState,
    pub right_ref: ConservedState,
    pub a: f64,
}

impl WeightedFunctional {
    pub fn new(left_ref: ConservedState, right_ref: ConservedState, a: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(WaveKitError::Precondition(format!(
                "weight a must be finite and > 0, got {a}"
            )));
        }
        Ok(WeightedFunctional {
            left_ref,
            right_ref,
            a,
        })
    }

    /// Normalization for `|F_a|` comparisons: the larger of the two
    /// cross relative entropies of the endpoints.
    pub fn scale(&self, law: &GasLaw) -> Result<f64> {
        let lr = relative_entropy(&self.left_ref, &self.right_ref, law)?;
        let rl = relative_entropy(&self.right_ref, &self.left_ref, law)?;
        Ok(lr.max(rl))
    }
}

/// `F_a(U) = eta(U|U_l) - a eta(U|U_r)`.
pub fn evaluate_f(fun: &WeightedFunctional, u: &ConservedState, law: &GasLaw) -> Result<f64> {
    let to_l = relative_entropy(u, &fun.left_ref, law)?;
    let to_r = relative_entropy(u, &fun.right_ref, law)?;
    Ok(to_l - fun.a * to_r)
}

/// Linear-bound constants for the sublevel set `{F_a <= 0}` when `a < 1`.
///
/// `F_a(U) <= 0` rearranges to `eta(U) <= c1 + w . U` with
/// `w = (grad eta(U_l) - a grad eta(U_r))/(1 - a)`; `c2 = |w|_inf` turns it
/// into `eta(U) <= c1 + c2 sum |U_i|`. Since the entropy grows superlinearly
/// in every direction and like `v^(1-gamma)` as `v -> 0`, the sublevel set
/// keeps `v` away from zero whenever the remaining components stay in a box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoercivityBound {
    pub c1: f64,
    pub c2: f64,
    gamma: f64,
}

impl CoercivityBound {
    /// The linear majorant `c1 + c2 sum |U_i|` at a state.
    pub fn linear_bound(&self, u: &ConservedState) -> f64 {
        let sum_abs = u.as_array().iter().map(|x| x.abs()).sum::<f64>();
        self.c1 + self.c2 * sum_abs
    }

    /// Largest `v*` such that `v < v*` forces `F_a > 0` for all states with
    /// `|q_i|, |u_i| <= m_box`: below it the internal-energy term alone
    /// exceeds the linear bound.
    pub fn v_star(&self, m_box: f64) -> f64 {
        let g = self.gamma;
        let energy = |v: f64| v.powf(1.0 - g) / (g - 1.0);
        let bound = |v: f64| self.c1 + self.c2 * (v + 5.0 * m_box);
        // energy decreases in v, the bound increases: bisect the crossing
        let mut hi = 1.0_f64;
        while energy(hi) > bound(hi) && hi < 1e12 {
            hi *= 2.0;
        }
        let mut lo = hi;
        while energy(lo) <= bound(lo) && lo > 1e-300 {
            lo *= 0.5;
        }
        if lo >= hi {
            return lo;
        }
        crate::numeric::bisect(&|v| energy(v) - bound(v), lo, hi, 1e-12)
    }
}

/// Compute the coercivity constants for `a < 1`.
pub fn coercivity_bound(fun: &WeightedFunctional, law: &GasLaw) -> Result<CoercivityBound> {
    if !(fun.a < 1.0) {
        return Err(WaveKitError::Precondition(format!(
            "coercivity bound applies for 0 < a < 1, got a = {}",
            fun.a
        )));
    }
    let gl = entropy_gradient(&fun.left_ref, law)?;
    let gr = entropy_gradient(&fun.right_ref, law)?;
    let el = entropy(&fun.left_ref, law)?;
    let er = entropy(&fun.right_ref, law)?;
    let a = fun.a;
    let one_minus = 1.0 - a;
    let ul = fun.left_ref.as_array();
    let ur = fun.right_ref.as_array();
    let dot = |g: &[f64; 6], u: &[f64; 6]| g.iter().zip(u.iter()).map(|(x, y)| x * y).sum::<f64>();
    let c1 = (el - a * er - dot(&gl, &ul) + a * dot(&gr, &ur)) / one_minus;
    let c2 = gl
        .iter()
        .zip(gr.iter())
        .map(|(l, r)| ((l - a * r) / one_minus).abs())
        .fold(0.0, f64::max);
    Ok(CoercivityBound {
        c1,
        c2,
        gamma: law.gamma,
    })
}

/// Which rarefaction curve a crossing search walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    R1Backward,
    R6Forward,
}

impl Branch {
    pub fn family(&self) -> RarefactionFamily {
        match self {
            Branch::R1Backward => RarefactionFamily::One,
            Branch::R6Forward => RarefactionFamily::Six,
        }
    }

    /// The curve origin on the wave.
    pub fn origin(&self, wave: &DiscontinuityWave) -> ConservedState {
        match self {
            Branch::R1Backward => wave.left,
            Branch::R6Forward => wave.right,
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Branch::R1Backward => write!(f, "R1-backward"),
            Branch::R6Forward => write!(f, "R6-forward"),
        }
    }
}

/// One monitored sample along a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaSample {
    pub v: f64,
    pub f_a: f64,
    pub state: FluidState,
}

/// Sign-condition report attached to a certificate, one per wave kind.
#[derive(Debug, Clone, Serialize)]
pub enum WaveConditions {
    Shock3(ConditionReport),
    Shock4(ConditionReport),
    Contact(ContactConditionReport),
}

impl WaveConditions {
    pub fn for_wave(wave: &DiscontinuityWave, tol: &Tolerance) -> Self {
        match wave.family {
            WaveFamily::Shock3 => WaveConditions::Shock3(condition_2b(wave)),
            WaveFamily::Shock4 => WaveConditions::Shock4(condition_3b(wave)),
            WaveFamily::Contact2 | WaveFamily::Contact5 => {
                WaveConditions::Contact(condition_contact_ab(wave, tol))
            }
        }
    }
}

/// Consistency note for `a < 1` crossings against the coercivity estimate.
#[derive(Debug, Clone, Serialize)]
pub struct CoercivityConsistency {
    pub c1: f64,
    pub c2: f64,
    /// Largest component box observed along the trace.
    pub m_observed: f64,
    /// `v*` certified for that box.
    pub v_star: f64,
    /// True when the crossing volume sits at or above `v*`: it can only sit
    /// below `v*` if the trace left the box.
    pub crossing_above_v_star: bool,
}

/// A non-contraction certificate: a witness state on the chosen curve where
/// `F_a` vanishes to tolerance, with the trace and condition reports.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub wave: DiscontinuityWave,
    pub a: f64,
    pub branch: Branch,
    pub witness: ConservedState,
    pub crossing_v: f64,
    pub f_at_witness: f64,
    pub f_scale: f64,
    pub conditions: WaveConditions,
    pub trace: Vec<FaSample>,
    pub witness_profile: PiecewiseConstantProfile,
    /// Mollification layer of the witness data, kept as metadata:
    /// the plateau `(-R, R)` transitions to the far fields over `(R, 2R)`.
    pub mollification_radii: (f64, f64),
    pub coercivity: Option<CoercivityConsistency>,
}

/// Outcome of a crossing search.
#[derive(Debug, Clone)]
pub enum CrossingSearch {
    Found(Box<Certificate>),
    /// No sign change above the floor; the full trace is kept.
    NotFound { trace: Vec<FaSample>, f_floor: f64 },
}

/// Walk the chosen rarefaction curve monitoring `F_a`; on the first sign
/// change, bisect in the volume parameter until `|F_a| <= 1e-9 scale` and
/// assemble the certificate (witness, trace, plateau profile of half-width
/// `R = 1` with far fields `U_l`/`U_r`).
pub fn find_sigma_crossing(
    wave: &DiscontinuityWave,
    a: f64,
    branch: Branch,
    law: &GasLaw,
    v_floor: Option<f64>,
) -> Result<CrossingSearch> {
    find_sigma_crossing_with(wave, a, branch, law, v_floor, &Tolerance::default())
}

pub fn find_sigma_crossing_with(
    wave: &DiscontinuityWave,
    a: f64,
    branch: Branch,
    law: &GasLaw,
    v_floor: Option<f64>,
    tol: &Tolerance,
) -> Result<CrossingSearch> {
    let fun = WeightedFunctional::new(wave.left, wave.right, a)?;
    let scale = fun.scale(law)?;
    let origin_cons = branch.origin(wave);
    let origin = origin_cons.to_fluid();
    let v_floor = v_floor.unwrap_or(V_FLOOR_FACTOR * origin.v);
    if !(v_floor > 0.0 && v_floor < origin.v) {
        return Err(WaveKitError::Precondition(format!(
            "v_floor {v_floor} must lie in (0, {})",
            origin.v
        )));
    }

    let f_tol = WITNESS_REL_TOL * scale;
    let f0 = evaluate_f(&fun, &origin_cons, law)?;
    if f0.abs() <= f_tol {
        return Err(WaveKitError::DegenerateFunctional {
            f_abs: f0.abs(),
            scale,
        });
    }

    let family = branch.family();
    let eval = |s: &CurveSample| -> Result<f64> { evaluate_f(&fun, &s.state.to_conserved(), law) };

    let mut trace = vec![FaSample {
        v: origin.v,
        f_a: f0,
        state: origin,
    }];
    let mut stepper = CurveStepper::new(&origin, family, law)?;
    let mut prev = CurveSample {
        v: origin.v,
        state: origin,
    };
    let mut prev_f = f0;
    let bracket = loop {
        let sample = stepper.step_toward(v_floor)?;
        let f = eval(&sample)?;
        trace.push(FaSample {
            v: sample.v,
            f_a: f,
            state: sample.state,
        });
        if f == 0.0 || (f < 0.0) != (prev_f < 0.0) {
            break Some((prev, prev_f, sample, f));
        }
        prev = sample;
        prev_f = f;
        if sample.v <= v_floor * (1.0 + 1e-15) {
            break None;
        }
    };

    let Some((hi, hi_f, lo, lo_f)) = bracket else {
        return Ok(CrossingSearch::NotFound {
            trace,
            f_floor: prev_f,
        });
    };

    // Bisection in v: re-integrate from the bracket's upper anchor each time.
    let mut hi = hi;
    let mut hi_f = hi_f;
    let mut lo_v = lo.v;
    let mut best = (lo, lo_f);
    for _ in 0..200 {
        if best.1.abs() <= f_tol {
            break;
        }
        let mid_v = 0.5 * (hi.v + lo_v);
        if (hi.v - lo_v) <= 1e-14 * hi.v {
            break;
        }
        let mut walker = CurveStepper::new(&hi.state, family, law)?;
        let mid = walker.advance_to(mid_v)?;
        let f_mid = eval(&mid)?;
        if f_mid.abs() < best.1.abs() {
            best = (mid, f_mid);
        }
        if (f_mid < 0.0) == (hi_f < 0.0) {
            hi = mid;
            hi_f = f_mid;
        } else {
            lo_v = mid.v;
        }
    }
    let (witness_sample, f_witness) = best;
    if f_witness.abs() > f_tol {
        return Err(WaveKitError::Inconclusive(format!(
            "crossing bisection stalled: |F_a| = {:.3e} above tolerance {:.3e}",
            f_witness.abs(),
            f_tol
        )));
    }

    let witness = witness_sample.state.to_conserved();
    // the stored trace runs from the origin down to the crossing only
    trace.retain(|s| s.v > witness_sample.v);
    trace.push(FaSample {
        v: witness_sample.v,
        f_a: f_witness,
        state: witness_sample.state,
    });
    trace.sort_by(|p, q| q.v.partial_cmp(&p.v).expect("finite volumes"));
    trace.dedup_by(|p, q| p.v == q.v);

    // Witness initial data: plateau on (-R, R), far fields beyond.
    let r = WITNESS_HALF_WIDTH;
    let witness_profile =
        PiecewiseConstantProfile::new(vec![-r, r], vec![wave.left, witness, wave.right])?;

    let coercivity = if a < 1.0 && branch == Branch::R1Backward {
        let bound = coercivity_bound(&fun, law)?;
        let m_observed = trace
            .iter()
            .map(|s| {
                let u = s.state.to_conserved();
                u.q2.abs()
                    .max(u.q3.abs())
                    .max(u.u1.abs())
                    .max(u.u2.abs())
                    .max(u.u3.abs())
            })
            .fold(0.0, f64::max);
        let v_star = bound.v_star(m_observed);
        Some(CoercivityConsistency {
            c1: bound.c1,
            c2: bound.c2,
            m_observed,
            v_star,
            crossing_above_v_star: witness_sample.v >= v_star,
        })
    } else {
        None
    };

    Ok(CrossingSearch::Found(Box::new(Certificate {
        wave: *wave,
        a,
        branch,
        witness,
        crossing_v: witness_sample.v,
        f_at_witness: f_witness,
        f_scale: scale,
        conditions: WaveConditions::for_wave(wave, tol),
        trace,
        witness_profile,
        mollification_radii: (r, 2.0 * r),
        coercivity,
    })))
}

/// Validate a wave for certification.
///
/// Shocks must satisfy the full jump conditions and Lax inequalities.
/// Contacts must satisfy the contact relations (`[v] = 0`, `[u1] = 0`,
/// `sigma = -+beta/sqrt(v)`) and the transverse jump equations; a
/// transverse-norm jump (which breaks the remaining RH equation) is
/// tolerated and surfaced through the condition report, since the strict
/// componentwise field conditions are unsatisfiable on norm-preserving
/// rotations.
fn validate_wave(wave: &DiscontinuityWave, law: &GasLaw, tol: &Tolerance) -> Result<()> {
    let scale = rh_scale(wave, law);
    if wave.family.is_shock() {
        let res = rh_residual_norm(wave, law)?;
        if !tol.small(res, scale) {
            return Err(WaveKitError::Inadmissible(format!(
                "shock RH residual {res:.3e} above tolerance"
            )));
        }
        let lax = lax_check(wave, law)?;
        if !lax.pass {
            return Err(WaveKitError::Inadmissible(
                "shock violates the Lax inequalities".into(),
            ));
        }
        return Ok(());
    }
    // contact relations
    if wave.left.v != wave.right.v || !tol.close(wave.left.u1, wave.right.u1) {
        return Err(WaveKitError::Inadmissible(format!(
            "contact needs [v] = 0 and [u1] = 0, got [v] = {}, [u1] = {}",
            wave.right.v - wave.left.v,
            wave.right.u1 - wave.left.u1
        )));
    }
    let expected_sigma = match wave.family {
        WaveFamily::Contact2 => -law.beta / wave.left.v.sqrt(),
        WaveFamily::Contact5 => law.beta / wave.left.v.sqrt(),
        _ => unreachable!(),
    };
    if !tol.close(wave.sigma, expected_sigma) {
        return Err(WaveKitError::Inadmissible(format!(
            "contact speed {} differs from -+beta/sqrt(v) = {expected_sigma}",
            wave.sigma
        )));
    }
    let res = rh_residual(wave, law)?;
    for (idx, r) in res.iter().enumerate() {
        if idx == 3 {
            continue; // the normal-momentum equation carries the |B|-norm jump
        }
        if !tol.small(*r, scale) {
            return Err(WaveKitError::Inadmissible(format!(
                "contact transverse jump equation {idx} violated: residual {r:.3e}"
            )));
        }
    }
    Ok(())
}

/// Branch dispatch for `a = 1` per the wave's sign conditions.
fn branch_at_one(wave: &DiscontinuityWave, tol: &Tolerance) -> Result<Branch> {
    match wave.family {
        WaveFamily::Shock3 => {
            if condition_2b(wave).holds {
                Ok(Branch::R6Forward)
            } else {
                Err(WaveKitError::Inconclusive(
                    "a = 1 for a family-3 shock needs the transverse decay condition; \
                     it does not hold, so neither curve is licensed"
                        .into(),
                ))
            }
        }
        WaveFamily::Shock4 => {
            if condition_3b(wave).holds {
                Ok(Branch::R1Backward)
            } else {
                Err(WaveKitError::Inconclusive(
                    "a = 1 for a family-4 shock needs the transverse growth condition; \
                     it does not hold, so neither curve is licensed"
                        .into(),
                ))
            }
        }
        WaveFamily::Contact2 | WaveFamily::Contact5 => {
            let rep = condition_contact_ab(wave, tol);
            match rep.class {
                ContactClass::A => Ok(Branch::R1Backward),
                ContactClass::B => Ok(Branch::R6Forward),
                ContactClass::Neither => Err(WaveKitError::Inconclusive(format!(
                    "a = 1 for a contact needs classification A or B; got neither{}",
                    rep.tension.map(|t| format!(" ({t})")).unwrap_or_default()
                ))),
            }
        }
    }
}

/// Produce a non-contraction certificate for the wave at weight `a`.
///
/// `a < 1` walks the backward family-1 curve from `U_l`; `a > 1` the forward
/// family-6 curve from `U_r`; `a = 1` dispatches on the applicable sign
/// condition and errs as inconclusive when none holds (no contraction claim
/// is implied).
pub fn certify_noncontraction(
    wave: &DiscontinuityWave,
    a: f64,
    law: &GasLaw,
) -> Result<Certificate> {
    certify_noncontraction_with(wave, a, law, None, &Tolerance::default())
}

pub fn certify_noncontraction_with(
    wave: &DiscontinuityWave,
    a: f64,
    law: &GasLaw,
    v_floor: Option<f64>,
    tol: &Tolerance,
) -> Result<Certificate> {
    law.validated()?;
    if !(a > 0.0) || !a.is_finite() {
        return Err(WaveKitError::Precondition(format!(
            "weight a must be finite and > 0, got {a}"
        )));
    }
    validate_wave(wave, law, tol)?;
    let branch = if a < 1.0 {
        Branch::R1Backward
    } else if a > 1.0 {
        Branch::R6Forward
    } else {
        branch_at_one(wave, tol)?
    };
    match find_sigma_crossing_with(wave, a, branch, law, v_floor, tol)? {
        CrossingSearch::Found(cert) => Ok(*cert),
        CrossingSearch::NotFound { trace, f_floor } => {
            let v_last = trace.last().map(|s| s.v).unwrap_or(f64::NAN);
            Err(WaveKitError::CrossingNotFound {
                v_floor: v_last,
                f_floor,
            })
        }
    }
}

/// The default 17-point log-spaced weight grid on `[1e-2, 1e2]`; the middle
/// point is exactly 1.
pub fn default_a_grid() -> Vec<f64> {
    let n = 17;
    (0..n)
        .map(|k| {
            if k == (n - 1) / 2 {
                1.0
            } else {
                10f64.powf(-2.0 + 4.0 * k as f64 / (n - 1) as f64)
            }
        })
        .collect()
}

/// One sampled point of the tail scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailSample {
    pub v: f64,
    /// `d F_1 / ds` along the traversal direction of the branch (`-r_1` or
    /// `+r_6`), assembled from a centered difference in `v` times the
    /// analytic `dv/ds`.
    pub df_ds: f64,
    /// `v sqrt(alpha+)` at the sample.
    pub v_sqrt_alpha_plus: f64,
}

/// Report of the tail scan: derivative samples on a geometric volume grid
/// plus trend verdicts over the tail half of the grid.
#[derive(Debug, Clone, Serialize)]
pub struct TailScanReport {
    pub branch: Branch,
    pub samples: Vec<TailSample>,
    /// The sign the traversal derivative is predicted to take on the tail:
    /// negative along R6-forward, positive along R1-backward.
    pub expected_sign_negative: bool,
    /// All tail samples carry the predicted sign.
    pub sign_matches: bool,
    /// `|dF_1/ds|` strictly increases toward the floor on the tail half.
    pub magnitude_increasing: bool,
    /// `v sqrt(alpha+)` strictly increases as `v` decreases on the tail half.
    pub v_sqrt_alpha_increasing: bool,
}

/// Sample `dF_1/ds` along the chosen curve at a geometric grid of volumes.
///
/// The difference quotient in `v` is converted to the traversal derivative
/// with the analytic tangent `dv/ds` of the branch, so the reported signs
/// follow the curve's own direction of travel (`v` decreasing on both).
pub fn f1_tail_scan(
    wave: &DiscontinuityWave,
    branch: Branch,
    law: &GasLaw,
    v_floor: Option<f64>,
) -> Result<TailScanReport> {
    let fun = WeightedFunctional::new(wave.left, wave.right, 1.0)?;
    let origin = branch.origin(wave).to_fluid();
    let v_floor = v_floor.unwrap_or(V_FLOOR_FACTOR * origin.v);
    if !(v_floor > 0.0 && v_floor < origin.v) {
        return Err(WaveKitError::Precondition(format!(
            "v_floor {v_floor} must lie in (0, {})",
            origin.v
        )));
    }
    let family = branch.family();
    let n = 25usize;
    let delta = 1e-5;
    let top = 0.9 * origin.v;
    let ratio = (v_floor * (1.0 + 10.0 * delta) / top).powf(1.0 / (n - 1) as f64);

    // single downward pass through all probe volumes
    let mut targets = Vec::with_capacity(3 * n);
    for k in 0..n {
        let vk = top * ratio.powi(k as i32);
        targets.push((vk * (1.0 + delta), k, 0u8));
        targets.push((vk, k, 1));
        targets.push((vk * (1.0 - delta), k, 2));
    }
    targets.sort_by(|p, q| q.0.partial_cmp(&p.0).expect("finite"));

    let mut stepper = CurveStepper::new(&origin, family, law)?;
    let mut probes = vec![[f64::NAN; 3]; n];
    let mut states = vec![origin; n];
    for (v, k, slot) in targets {
        let sample = stepper.advance_to(v)?;
        let f = evaluate_f(&fun, &sample.state.to_conserved(), law)?;
        probes[k][slot as usize] = f;
        if slot == 1 {
            states[k] = sample.state;
        }
    }

    let mut samples = Vec::with_capacity(n);
    for k in 0..n {
        let vk = top * ratio.powi(k as i32);
        let df_dv = (probes[k][0] - probes[k][2]) / (2.0 * delta * vk);
        let dv_ds = family.dv_ds(&states[k], law)?;
        samples.push(TailSample {
            v: vk,
            df_ds: df_dv * dv_ds,
            v_sqrt_alpha_plus: crate::rarefaction::v_sqrt_alpha_plus(&states[k], law)?,
        });
    }

    let expected_sign_negative = branch == Branch::R6Forward;
    let tail = &samples[n / 2..];
    let sign_matches = tail.iter().all(|s| {
        if expected_sign_negative {
            s.df_ds < 0.0
        } else {
            s.df_ds > 0.0
        }
    });
    let magnitude_increasing = tail.windows(2).all(|w| w[1].df_ds.abs() > w[0].df_ds.abs());
    let v_sqrt_alpha_increasing = tail
        .windows(2)
        .all(|w| w[1].v_sqrt_alpha_plus > w[0].v_sqrt_alpha_plus);

    Ok(TailScanReport {
        branch,
        samples,
        expected_sign_negative,
        sign_matches,
        magnitude_increasing,
        v_sqrt_alpha_increasing,
    })
}
