//! Admissible wave construction: Hugoniot loci of the slow families 3/4,
//! rotational contacts of families 2/5, and every admissibility check.
//!
//! The shock solve eliminates the velocities from the jump conditions and
//! roots the scalar closure in `m = sigma^2`
//!
//! `g(m) = p(v_r) - p(v_l) + (|B_r(m)|^2 - |B_l|^2)/2 + m (v_r - v_l)`
//!
//! with `B_{i,r}(m) = B_{i,l} (beta^2 - m v_l)/(beta^2 - m v_r)`, then
//! reconstructs the velocities and verifies Lax inequalities, jump signs
//! and entropy dissipation.

use serde::{Deserialize, Serialize};

use crate::error::WaveKitError;
use crate::numeric::{adaptive_simpson, bisect};
use crate::spectral::{alpha_roots, degeneracy_check, eigenvalues};
use crate::state::{ConservedState, DiscontinuityWave, FluidState, GasLaw, WaveFamily};
use crate::thermo::{entropy, entropy_flux, pressure};
use crate::tol::Tolerance;
use crate::Result;

/// A family-3/4 Hugoniot solve: from a left state to a target volume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShockSolveRequest {
    pub left: ConservedState,
    pub family: WaveFamily,
    pub v_right: f64,
    pub law: GasLaw,
}

/// A family-2/5 contact: rotate the transverse field of the left state by `angle`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactSpec {
    pub left: FluidState,
    pub family: WaveFamily,
    pub angle: f64,
}

/// The six residuals of the jump conditions, in equation order.
pub fn rh_residual(wave: &DiscontinuityWave, law: &GasLaw) -> Result<[f64; 6]> {
    let l = &wave.left;
    let r = &wave.right;
    let s = wave.sigma;
    let b = law.beta;
    let p_l = pressure(l.v, law)?;
    let p_r = pressure(r.v, law)?;
    let ptot_l = p_l + (l.q2 * l.q2 + l.q3 * l.q3) / (2.0 * l.v * l.v);
    let ptot_r = p_r + (r.q2 * r.q2 + r.q3 * r.q3) / (2.0 * r.v * r.v);
    Ok([
        -(r.u1 - l.u1) - s * (r.v - l.v),
        -b * (r.u2 - l.u2) - s * (r.q2 - l.q2),
        -b * (r.u3 - l.u3) - s * (r.q3 - l.q3),
        (ptot_r - ptot_l) - s * (r.u1 - l.u1),
        -b * (r.q2 / r.v - l.q2 / l.v) - s * (r.u2 - l.u2),
        -b * (r.q3 / r.v - l.q3 / l.v) - s * (r.u3 - l.u3),
    ])
}

/// Magnitude scale for RH residual comparisons.
pub fn rh_scale(wave: &DiscontinuityWave, law: &GasLaw) -> f64 {
    let l = &wave.left;
    let r = &wave.right;
    let p_l = l.v.powf(-law.gamma) + (l.q2 * l.q2 + l.q3 * l.q3) / (2.0 * l.v * l.v);
    let p_r = r.v.powf(-law.gamma) + (r.q2 * r.q2 + r.q3 * r.q3) / (2.0 * r.v * r.v);
    let smax = wave.sigma.abs();
    let umax = l
        .as_array()
        .iter()
        .chain(r.as_array().iter())
        .fold(0.0_f64, |acc, x| acc.max(x.abs()));
    1.0_f64.max(p_l).max(p_r).max(smax * umax)
}

/// Max-norm of the RH residual.
pub fn rh_residual_norm(wave: &DiscontinuityWave, law: &GasLaw) -> Result<f64> {
    Ok(rh_residual(wave, law)?
        .iter()
        .fold(0.0_f64, |acc, x| acc.max(x.abs())))
}

/// Transverse field component behind a discontinuity of speed `sigma`:
/// `B_r = B_l (v_l - beta^2/sigma^2)/(v_r - beta^2/sigma^2)`.
pub fn transverse_field_jump(
    b_left: f64,
    v_left: f64,
    v_right: f64,
    sigma: f64,
    law: &GasLaw,
) -> Result<f64> {
    law.validated()?;
    crate::state::ensure_volume(v_left)?;
    crate::state::ensure_volume(v_right)?;
    let res = law.beta * law.beta / (sigma * sigma);
    let gap = v_right - res;
    // guard strictly inside the 1e-12 bracket clearance used by the solver
    if gap.abs() <= 1e-13 * v_right.max(res) {
        return Err(WaveKitError::Resonance { gap: gap.abs() });
    }
    Ok(b_left * (v_left - res) / gap)
}

/// `B_{i,r}(m)` without the resonance guard, for closure scans.
fn b_right_of_m(b_left: f64, v_left: f64, v_right: f64, m: f64, law: &GasLaw) -> f64 {
    let bb = law.beta * law.beta;
    b_left * (bb - m * v_left) / (bb - m * v_right)
}

fn closure(req: &ShockSolveRequest, left: &FluidState, m: f64) -> f64 {
    let law = &req.law;
    let p_l = left.v.powf(-law.gamma);
    let p_r = req.v_right.powf(-law.gamma);
    let b2r = b_right_of_m(left.b2, left.v, req.v_right, m, law);
    let b3r = b_right_of_m(left.b3, left.v, req.v_right, m, law);
    p_r - p_l
        + 0.5 * ((b2r * b2r - left.b2 * left.b2) + (b3r * b3r - left.b3 * left.b3))
        + m * (req.v_right - left.v)
}

/// One Lax inequality with its margin.
#[derive(Debug, Clone, Serialize)]
pub struct LaxInequality {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
}

fn lax_ineq(name: String, lhs: f64, rhs: f64) -> LaxInequality {
    LaxInequality {
        name,
        lhs,
        rhs,
        margin: rhs - lhs,
        pass: lhs < rhs,
    }
}

/// Report of all four Lax inequalities for a family-`i` shock.
#[derive(Debug, Clone, Serialize)]
pub struct LaxReport {
    pub family: usize,
    pub inequalities: Vec<LaxInequality>,
    pub pass: bool,
}

/// Evaluates `lambda_i(U_r) < sigma < lambda_i(U_l)` and
/// `lambda_{i-1}(U_l) < sigma < lambda_{i+1}(U_r)` with margins.
pub fn lax_check(wave: &DiscontinuityWave, law: &GasLaw) -> Result<LaxReport> {
    if !wave.family.is_shock() {
        return Err(WaveKitError::Precondition(format!(
            "lax_check applies to shock families 3/4, got {}",
            wave.family
        )));
    }
    let i = wave.family.index();
    let lam_l = eigenvalues(&wave.left.to_fluid(), law)?;
    let lam_r = eigenvalues(&wave.right.to_fluid(), law)?;
    let s = wave.sigma;
    let inequalities = vec![
        lax_ineq(format!("lambda_{i}(U_r) < sigma"), lam_r[i - 1], s),
        lax_ineq(format!("sigma < lambda_{i}(U_l)"), s, lam_l[i - 1]),
        lax_ineq(format!("lambda_{}(U_l) < sigma", i - 1), lam_l[i - 2], s),
        lax_ineq(format!("sigma < lambda_{}(U_r)", i + 1), s, lam_r[i]),
    ];
    let pass = inequalities.iter().all(|q| q.pass);
    Ok(LaxReport {
        family: i,
        inequalities,
        pass,
    })
}

/// `[G] - sigma [eta]`, the entropy production of the wave; admissible
/// discontinuities dissipate (`<= 0`).
pub fn dissipation_direct(wave: &DiscontinuityWave, law: &GasLaw) -> Result<f64> {
    let de = entropy(&wave.right, law)? - entropy(&wave.left, law)?;
    let dg = entropy_flux(&wave.right, law)? - entropy_flux(&wave.left, law)?;
    Ok(dg - wave.sigma * de)
}

/// The factored form of the same quantity:
/// `-sigma [v] (int_0^1 (s p_r + (1-s) p_l - p(s v_r + (1-s) v_l)) ds
///  + sum_i ([B_i])^2 / 4)`.
///
/// The identity holds only on the Hugoniot set, so the RH residual is
/// checked first. The chord-minus-curve integral is evaluated by adaptive
/// Simpson quadrature (1e-12 absolute); it is nonnegative by convexity of `p`.
pub fn dissipation_factored(
    wave: &DiscontinuityWave,
    law: &GasLaw,
    tol: &Tolerance,
) -> Result<f64> {
    let res = rh_residual_norm(wave, law)?;
    let scale = rh_scale(wave, law);
    if !tol.small(res, scale) {
        return Err(WaveKitError::Precondition(format!(
            "dissipation_factored needs a Hugoniot wave: RH residual {res:.3e} (scale {scale:.3e})"
        )));
    }
    let (v_l, v_r) = (wave.left.v, wave.right.v);
    let p_l = pressure(v_l, law)?;
    let p_r = pressure(v_r, law)?;
    let gamma = law.gamma;
    let gibbs = adaptive_simpson(
        &move |s: f64| s * p_r + (1.0 - s) * p_l - (s * v_r + (1.0 - s) * v_l).powf(-gamma),
        0.0,
        1.0,
        1e-12,
    );
    let db2 = wave.right.q2 / v_r - wave.left.q2 / v_l;
    let db3 = wave.right.q3 / v_r - wave.left.q3 / v_l;
    Ok(-wave.sigma * (v_r - v_l) * (gibbs + 0.25 * (db2 * db2 + db3 * db3)))
}

/// Root-refinement tolerance on `m = sigma^2`.
const M_REL_TOL: f64 = 1e-14;
/// Bracket clearance away from the Lax bound and the resonance.
const BRACKET_EPS: f64 = 1e-12;
/// Points per closure scan.
const SCAN_POINTS: usize = 512;

fn scan_roots(req: &ShockSolveRequest, left: &FluidState, m_lo: f64, m_hi: f64) -> Vec<f64> {
    let mut roots = Vec::new();
    if !(m_lo < m_hi) {
        return roots;
    }
    let ratio = (m_hi / m_lo).powf(1.0 / (SCAN_POINTS - 1) as f64);
    let mut prev_m = m_lo;
    let mut prev_g = closure(req, left, prev_m);
    for k in 1..SCAN_POINTS {
        let m = if k == SCAN_POINTS - 1 {
            m_hi
        } else {
            m_lo * ratio.powi(k as i32)
        };
        let g = closure(req, left, m);
        if prev_g == 0.0 {
            roots.push(prev_m);
        } else if prev_g * g < 0.0 {
            roots.push(bisect(&|x| closure(req, left, x), prev_m, m, M_REL_TOL));
        }
        prev_m = m;
        prev_g = g;
    }
    if prev_g == 0.0 {
        roots.push(prev_m);
    }
    roots
}

/// Builds the full wave for a closure root and runs every admissibility
/// check; returns the violated-inequality description on failure.
fn build_and_check(
    req: &ShockSolveRequest,
    left: &FluidState,
    m: f64,
    tol: &Tolerance,
) -> std::result::Result<DiscontinuityWave, String> {
    let law = &req.law;
    let sigma = match req.family {
        WaveFamily::Shock3 => -m.sqrt(),
        WaveFamily::Shock4 => m.sqrt(),
        _ => unreachable!(),
    };
    let v_l = left.v;
    let v_r = req.v_right;
    let b2r = b_right_of_m(left.b2, v_l, v_r, m, law);
    let b3r = b_right_of_m(left.b3, v_l, v_r, m, law);
    let ul = left.to_conserved();
    let q2r = v_r * b2r;
    let q3r = v_r * b3r;
    let right = ConservedState {
        v: v_r,
        q2: q2r,
        q3: q3r,
        u1: ul.u1 - sigma * (v_r - v_l),
        u2: ul.u2 - sigma * (q2r - ul.q2) / law.beta,
        u3: ul.u3 - sigma * (q3r - ul.q3) / law.beta,
    };
    let wave = DiscontinuityWave {
        left: ul,
        right,
        sigma,
        family: req.family,
    };

    let res = rh_residual_norm(&wave, law).map_err(|e| e.to_string())?;
    let scale = rh_scale(&wave, law);
    if !tol.small(res, scale) {
        return Err(format!("RH residual {res:.3e} above tolerance"));
    }

    let lax = lax_check(&wave, law).map_err(|e| e.to_string())?;
    if !lax.pass {
        let worst = lax
            .inequalities
            .iter()
            .filter(|q| !q.pass)
            .map(|q| q.name.clone())
            .collect::<Vec<_>>()
            .join(", ");
        return Err(format!("Lax condition violated: {worst}"));
    }

    // jump sign facts
    let dv = v_r - v_l;
    let du1 = right.u1 - ul.u1;
    match req.family {
        WaveFamily::Shock3 => {
            if !(dv < 0.0 && du1 < 0.0) {
                return Err(format!("family-3 sign facts failed: [v]={dv}, [u1]={du1}"));
            }
        }
        WaveFamily::Shock4 => {
            if !(dv > 0.0 && du1 < 0.0) {
                return Err(format!("family-4 sign facts failed: [v]={dv}, [u1]={du1}"));
            }
        }
        _ => unreachable!(),
    }

    // transverse-field jump signs: [B_i] opposes B_{i,l} for family 3,
    // [B_i] follows B_{i,r} for family 4
    for (bl, br, i) in [(left.b2, b2r, 2), (left.b3, b3r, 3)] {
        let db = br - bl;
        let ok = match req.family {
            WaveFamily::Shock3 => {
                (bl > 0.0 && db < 0.0) || (bl < 0.0 && db > 0.0) || (bl == 0.0 && db == 0.0)
            }
            WaveFamily::Shock4 => {
                (br > 0.0 && db > 0.0) || (br < 0.0 && db < 0.0) || (br == 0.0 && db == 0.0)
            }
            _ => unreachable!(),
        };
        if !ok {
            return Err(format!(
                "transverse jump sign failed for B{i}: left {bl}, right {br}"
            ));
        }
    }

    // speed cap beta^2/v_r from the Lax bound on the right
    if !(m < law.beta * law.beta / v_r) {
        return Err(format!(
            "sigma^2 = {m} not below beta^2/v_r = {}",
            law.beta * law.beta / v_r
        ));
    }

    let diss = dissipation_direct(&wave, law).map_err(|e| e.to_string())?;
    if !(diss <= tol.abs + tol.rel * scale) {
        return Err(format!(
            "entropy production positive: [G]-sigma[eta] = {diss:.3e}"
        ));
    }

    Ok(wave)
}

/// Solve for the unique admissible family-3/4 shock with the requested
/// right volume.
///
/// The closure is scanned for sign changes on a log grid over the bracket
/// `(alpha_-(U_l)(1+eps), beta^2/v_r (1-eps))` for family 3 (speed squared
/// sits above the left Lax bound and below the right resonance); family 4
/// mirrors it with the cap `min(alpha_-(U_l), beta^2/v_r)` and an open lower
/// end. If no sign change is found, the upper end widens geometrically up to
/// `alpha_+(U_l)` before a no-shock verdict. Every root is checked for
/// admissibility: none admissible with roots present reports the violated
/// inequality; more than one admissible is an error listing all of them.
pub fn solve_shock(req: &ShockSolveRequest) -> Result<DiscontinuityWave> {
    solve_shock_with(req, &Tolerance::default())
}

pub fn solve_shock_with(req: &ShockSolveRequest, tol: &Tolerance) -> Result<DiscontinuityWave> {
    let law = &req.law;
    law.validated()?;
    let left = req.left.to_fluid();
    crate::state::ensure_volume(left.v)?;
    crate::state::ensure_volume(req.v_right)?;

    match req.family {
        WaveFamily::Shock3 => {
            if !(req.v_right < left.v) {
                return Err(WaveKitError::Precondition(format!(
                    "family 3 compresses: v_right {} must be strictly below v_left {}",
                    req.v_right, left.v
                )));
            }
        }
        WaveFamily::Shock4 => {
            if !(req.v_right > left.v) {
                return Err(WaveKitError::Precondition(format!(
                    "family 4 expands: v_right {} must be strictly above v_left {}",
                    req.v_right, left.v
                )));
            }
        }
        other => {
            return Err(WaveKitError::Precondition(format!(
                "solve_shock handles families 3/4, got {other}"
            )));
        }
    }

    let deg = degeneracy_check(&left, law)?;
    if deg.degenerate {
        return Err(WaveKitError::Precondition(format!(
            "left state is umbilic ({deg}); the slow-family Hugoniot is not isolated there"
        )));
    }

    let a_l = alpha_roots(&left, law)?;
    let resonance = law.beta * law.beta / req.v_right;
    let (m_lo, m_hi) = match req.family {
        WaveFamily::Shock3 => (
            a_l.minus * (1.0 + BRACKET_EPS),
            resonance * (1.0 - BRACKET_EPS),
        ),
        WaveFamily::Shock4 => {
            let cap = a_l.minus.min(resonance) * (1.0 - BRACKET_EPS);
            (BRACKET_EPS * cap, cap)
        }
        _ => unreachable!(),
    };

    let mut roots = scan_roots(req, &left, m_lo, m_hi);
    let mut m_max = m_hi;
    if roots.is_empty() {
        // widen toward alpha_+(U_l); the scan may step across the resonance
        let cap = a_l.plus * (1.0 - BRACKET_EPS);
        while roots.is_empty() && m_max < cap {
            let new_hi = (m_max * 2.0).min(cap);
            roots = scan_roots(req, &left, m_max, new_hi);
            m_max = new_hi;
        }
    }
    if roots.is_empty() {
        return Err(WaveKitError::NoShock { m_lo, m_hi, m_max });
    }

    let mut admissible = Vec::new();
    let mut rejections = Vec::new();
    for m in &roots {
        match build_and_check(req, &left, *m, tol) {
            Ok(wave) => admissible.push((*m, wave)),
            Err(why) => rejections.push(format!("m = {m:.12e}: {why}")),
        }
    }
    match admissible.len() {
        0 => Err(WaveKitError::Inadmissible(rejections.join("; "))),
        1 => Ok(admissible.pop().expect("one admissible root").1),
        _ => Err(WaveKitError::AmbiguousShock {
            roots: admissible.iter().map(|(m, _)| *m).collect(),
        }),
    }
}

/// Closed-form rotational contact of family 2 or 5.
///
/// `v` and `u1` are unchanged; the transverse field rotates by `angle`
/// (the flow of `r_2` with `angle = beta * s`), the transverse velocity
/// follows with `u_i = u_{i,l} + chi sqrt(v) (B_i - B_{i,l})`, `chi = +1`
/// for family 2 and `-1` for family 5; the speed is `-+beta/sqrt(v)`.
pub fn contact_construct(spec: &ContactSpec, law: &GasLaw) -> Result<DiscontinuityWave> {
    law.validated()?;
    crate::state::ensure_volume(spec.left.v)?;
    let family = match spec.family {
        WaveFamily::Contact2 | WaveFamily::Contact5 => spec.family,
        other => {
            return Err(WaveKitError::Precondition(format!(
                "contact_construct handles families 2/5, got {other}"
            )));
        }
    };
    let w = &spec.left;
    if w.transverse_norm_sq() == 0.0 {
        return Err(WaveKitError::Precondition(
            "|B| = 0: the rotation field vanishes and no nontrivial contact exists".into(),
        ));
    }
    let (sin, cos) = spec.angle.sin_cos();
    let b2 = w.b2 * cos + w.b3 * sin;
    let b3 = -w.b2 * sin + w.b3 * cos;
    let chi = if family == WaveFamily::Contact2 {
        1.0
    } else {
        -1.0
    };
    let sqv = w.v.sqrt();
    let right = FluidState {
        v: w.v,
        b2,
        b3,
        u1: w.u1,
        u2: w.u2 + chi * sqv * (b2 - w.b2),
        u3: w.u3 + chi * sqv * (b3 - w.b3),
    };
    let sigma = match family {
        WaveFamily::Contact2 => -law.beta / sqv,
        WaveFamily::Contact5 => law.beta / sqv,
        _ => unreachable!(),
    };
    let wave = DiscontinuityWave {
        left: w.to_conserved(),
        right: right.to_conserved(),
        sigma,
        family,
    };
    let res = rh_residual_norm(&wave, law)?;
    let scale = rh_scale(&wave, law);
    if res > 1e-12 * scale {
        return Err(WaveKitError::Inadmissible(format!(
            "constructed contact violates RH: residual {res:.3e}"
        )));
    }
    Ok(wave)
}

/// Which branch of a three-way sign condition a component pair satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignBranch {
    PositiveDecreasing,
    NegativeIncreasing,
    BothZero,
    None,
}

/// Per-component outcome of a shock transverse-field condition.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub component_2: SignBranch,
    pub component_3: SignBranch,
    pub holds: bool,
}

fn branch_toward_zero(b_big: f64, b_small: f64) -> SignBranch {
    // matches `b_big > b_small >= 0` / `b_big < b_small <= 0` / both zero
    if b_big > b_small && b_small >= 0.0 {
        SignBranch::PositiveDecreasing
    } else if b_big < b_small && b_small <= 0.0 {
        SignBranch::NegativeIncreasing
    } else if b_big == 0.0 && b_small == 0.0 {
        SignBranch::BothZero
    } else {
        SignBranch::None
    }
}

/// Family-3 condition: for each component, `B_l > B_r >= 0`, or
/// `B_l < B_r <= 0`, or both vanish.
pub fn condition_2b(wave: &DiscontinuityWave) -> ConditionReport {
    let (bl2, bl3) = (wave.left.q2 / wave.left.v, wave.left.q3 / wave.left.v);
    let (br2, br3) = (wave.right.q2 / wave.right.v, wave.right.q3 / wave.right.v);
    let c2 = branch_toward_zero(bl2, br2);
    let c3 = branch_toward_zero(bl3, br3);
    ConditionReport {
        component_2: c2,
        component_3: c3,
        holds: c2 != SignBranch::None && c3 != SignBranch::None,
    }
}

/// Family-4 condition: mirror of the family-3 one with left/right swapped
/// (`B_r > B_l >= 0`, or `B_r < B_l <= 0`, or both vanish).
pub fn condition_3b(wave: &DiscontinuityWave) -> ConditionReport {
    let (bl2, bl3) = (wave.left.q2 / wave.left.v, wave.left.q3 / wave.left.v);
    let (br2, br3) = (wave.right.q2 / wave.right.v, wave.right.q3 / wave.right.v);
    let c2 = branch_toward_zero(br2, bl2);
    let c3 = branch_toward_zero(br3, bl3);
    ConditionReport {
        component_2: c2,
        component_3: c3,
        holds: c2 != SignBranch::None && c3 != SignBranch::None,
    }
}

/// Contact classification outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContactClass {
    A,
    B,
    Neither,
}

impl std::fmt::Display for ContactClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ContactClass::A => write!(f, "A"),
            ContactClass::B => write!(f, "B"),
            ContactClass::Neither => write!(f, "neither"),
        }
    }
}

/// Classification of a contact against the strict componentwise growth (A)
/// / decay (B) conditions, with the conserved-norm tension surfaced.
#[derive(Debug, Clone, Serialize)]
pub struct ContactConditionReport {
    pub class: ContactClass,
    pub component_2_a: bool,
    pub component_3_a: bool,
    pub component_2_b: bool,
    pub component_3_b: bool,
    /// `|B_r|^2 - |B_l|^2`; zero on every genuine (rotational) contact.
    pub norm_jump: f64,
    /// Set whenever the classification interacts with transverse-norm
    /// conservation: (A)/(B) demand strict componentwise monotonicity of the
    /// field, which no norm-preserving rotation can satisfy on both
    /// components.
    pub tension: Option<String>,
}

/// Classify a contact wave against conditions (A) (each component strictly
/// grows, keeping sign: `B_r > B_l > 0` or `B_r < B_l < 0`) and (B) (each
/// strictly decays: `B_l > B_r > 0` or `B_l < B_r < 0`).
pub fn condition_contact_ab(wave: &DiscontinuityWave, tol: &Tolerance) -> ContactConditionReport {
    let (bl2, bl3) = (wave.left.q2 / wave.left.v, wave.left.q3 / wave.left.v);
    let (br2, br3) = (wave.right.q2 / wave.right.v, wave.right.q3 / wave.right.v);
    let grow = |l: f64, r: f64| (r > l && l > 0.0) || (r < l && l < 0.0);
    let decay = |l: f64, r: f64| (l > r && r > 0.0) || (l < r && r < 0.0);
    let a2 = grow(bl2, br2);
    let a3 = grow(bl3, br3);
    let b2 = decay(bl2, br2);
    let b3 = decay(bl3, br3);
    let class = if a2 && a3 {
        ContactClass::A
    } else if b2 && b3 {
        ContactClass::B
    } else {
        ContactClass::Neither
    };
    let norm_jump = (br2 * br2 + br3 * br3) - (bl2 * bl2 + bl3 * bl3);
    let norm_scale = (br2 * br2 + br3 * br3).max(bl2 * bl2 + bl3 * bl3);
    let conserved = tol.small(norm_jump, norm_scale);
    let both_nonzero = bl2 != 0.0 && bl3 != 0.0 && br2 != 0.0 && br3 != 0.0;
    let tension = match class {
        ContactClass::A | ContactClass::B if !conserved => Some(format!(
            "classified {class} with |B|^2 jump {norm_jump:.6e}: strict componentwise \
             monotonicity is incompatible with the norm-preserving rotation, so this wave \
             does not lie on any family-2/5 integral curve"
        )),
        ContactClass::Neither if conserved && both_nonzero => Some(
            "norm-preserving rotation with both components nonzero: one component's \
             magnitude must grow and the other shrink, so conditions (A)/(B) cannot hold"
                .into(),
        ),
        _ => None,
    };
    ContactConditionReport {
        class,
        component_2_a: a2,
        component_3_a: a3,
        component_2_b: b2,
        component_3_b: b3,
        norm_jump,
        tension,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn law(gamma: f64, beta: f64) -> GasLaw {
        GasLaw::new(gamma, beta).unwrap()
    }

    fn canonical_request(v_right: f64) -> ShockSolveRequest {
        ShockSolveRequest {
            left: FluidState::new(1.0, 0.5, 0.0, 0.0, 0.0, 0.0)
                .unwrap()
                .to_conserved(),
            family: WaveFamily::Shock3,
            v_right,
            law: law(5.0 / 3.0, 1.0),
        }
    }

    #[test]
    fn rh_residual_zero_on_trivial_wave() {
        let l = law(2.0, 1.0);
        let u = ConservedState::new(1.0, 0.3, -0.2, 0.1, 0.0, 0.5).unwrap();
        let w = DiscontinuityWave {
            left: u,
            right: u,
            sigma: -0.7,
            family: WaveFamily::Shock3,
        };
        assert_eq!(rh_residual(&w, &l).unwrap(), [0.0; 6]);
    }

    #[test]
    fn rh_residual_linear_in_sigma_perturbation() {
        let req = canonical_request(0.9);
        let wave = solve_shock(&req).unwrap();
        let mut off = wave;
        off.sigma += 1e-3;
        let r = rh_residual(&off, &req.law).unwrap();
        let dv = wave.right.v - wave.left.v;
        assert!((r[0] - (-1e-3 * dv)).abs() < 1e-12, "r0 = {}", r[0]);
    }

    #[test]
    fn transverse_jump_identity_and_zero_cases() {
        let l = law(2.0, 1.0);
        assert_eq!(transverse_field_jump(0.0, 1.0, 0.8, -0.9, &l).unwrap(), 0.0);
        let b = transverse_field_jump(0.7, 1.0, 1.0, -0.9, &l).unwrap();
        assert!((b - 0.7).abs() < 1e-15);
    }

    #[test]
    fn transverse_jump_resonance_guard() {
        let l = law(2.0, 1.0);
        // sigma^2 = 1.25 = beta^2 / v_r at v_r = 0.8
        let err = transverse_field_jump(0.5, 1.0, 0.8, -(1.25_f64.sqrt()), &l);
        assert!(matches!(err, Err(WaveKitError::Resonance { .. })));
    }

    #[test]
    fn solve_rejects_zero_strength_request() {
        let req = canonical_request(1.0);
        assert!(matches!(
            solve_shock(&req),
            Err(WaveKitError::Precondition(_))
        ));
    }

    #[test]
    fn solve_rejects_umbilic_left_state() {
        let mut req = canonical_request(0.9);
        req.left = ConservedState::new(1.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        req.law = law(2.0, 1.0);
        assert!(matches!(
            solve_shock(&req),
            Err(WaveKitError::Precondition(_))
        ));
    }

    #[test]
    fn canonical_family3_solve_matches_frozen_oracle() {
        // dense-scan + bisection oracle values, frozen
        let req = canonical_request(0.9);
        let w = solve_shock(&req).unwrap();
        assert!((w.sigma - (-0.961_272_054_254_525_1)).abs() < 1e-11);
        assert!((w.right.q2 - 0.203_018_109_241_112_24).abs() < 1e-11);
        assert_eq!(w.right.q3, 0.0);
        assert!((w.right.u1 - (-0.096_127_205_425_452_49)).abs() < 1e-11);
        assert!((w.right.u2 - (-0.285_480_392_206_189)).abs() < 1e-10);

        // postconditions
        assert!(w.sigma < 0.0);
        let b2r = w.right.q2 / w.right.v;
        assert!(b2r > 0.0 && b2r < 0.5);
        assert!(w.sigma * w.sigma < req.law.beta * req.law.beta / w.right.v);
        assert!(rh_residual_norm(&w, &req.law).unwrap() <= 1e-10 * rh_scale(&w, &req.law));
        assert!(lax_check(&w, &req.law).unwrap().pass);
        assert!(condition_2b(&w).holds);
    }

    #[test]
    fn slow_branch_terminates_below_switch_off_volume() {
        // with B_l = (0.5, 0), gamma = 5/3, beta = 1 the slow Hugoniot ends
        // near v_r ~ 0.8745 where the transverse field switches off; beyond
        // it the closure keeps its sign on the whole widened bracket
        let req = canonical_request(0.8);
        assert!(matches!(
            solve_shock(&req),
            Err(WaveKitError::NoShock { .. })
        ));
    }

    #[test]
    fn family4_solve_is_admissible() {
        let req = ShockSolveRequest {
            left: FluidState::new(1.0, 0.5, -0.3, 0.0, 0.0, 0.0)
                .unwrap()
                .to_conserved(),
            family: WaveFamily::Shock4,
            v_right: 1.1,
            law: law(5.0 / 3.0, 1.0),
        };
        let w = solve_shock(&req).unwrap();
        assert!(w.sigma > 0.0);
        assert!(w.right.v > w.left.v);
        assert!(w.right.u1 < w.left.u1);
        assert!(lax_check(&w, &req.law).unwrap().pass);
        assert!(condition_3b(&w).holds);
        // field amplifies away from zero, componentwise
        assert!(w.right.q2 / w.right.v > w.left.q2 / w.left.v);
        assert!(w.right.q3 / w.right.v < w.left.q3 / w.left.v);
        assert!(dissipation_direct(&w, &req.law).unwrap() <= 0.0);
    }

    #[test]
    fn lax_fails_for_trivial_and_reversed_waves() {
        let req = canonical_request(0.9);
        let w = solve_shock(&req).unwrap();
        let trivial = DiscontinuityWave {
            left: w.left,
            right: w.left,
            sigma: w.sigma,
            family: w.family,
        };
        assert!(!lax_check(&trivial, &req.law).unwrap().pass);
        let reversed = DiscontinuityWave {
            left: w.right,
            right: w.left,
            sigma: -w.sigma,
            family: w.family,
        };
        assert!(!lax_check(&reversed, &req.law).unwrap().pass);
    }

    #[test]
    fn dissipation_routes_agree_on_canonical_wave() {
        let req = canonical_request(0.9);
        let w = solve_shock(&req).unwrap();
        let d1 = dissipation_direct(&w, &req.law).unwrap();
        let d2 = dissipation_factored(&w, &req.law, &Tolerance::default()).unwrap();
        assert!(d1 < 0.0);
        assert!((d1 - d2).abs() <= 1e-10 * d1.abs(), "{d1} vs {d2}");
        // frozen from the prototype run
        assert!((d1 - (-0.002_241_545_647_781_416)).abs() < 1e-12);
    }

    #[test]
    fn dissipation_factored_requires_hugoniot_wave() {
        let l = law(2.0, 1.0);
        let ul = ConservedState::new(1.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let ur = ConservedState::new(0.9, 0.1, 0.0, 0.3, 0.0, 0.0).unwrap();
        let fake = DiscontinuityWave {
            left: ul,
            right: ur,
            sigma: -1.0,
            family: WaveFamily::Shock3,
        };
        assert!(dissipation_factored(&fake, &l, &Tolerance::default()).is_err());
        // a trivial jump satisfies RH for any speed and dissipates nothing
        let trivial = DiscontinuityWave {
            left: ul,
            right: ul,
            sigma: -1.0,
            family: WaveFamily::Shock3,
        };
        assert_eq!(
            dissipation_factored(&trivial, &l, &Tolerance::default()).unwrap(),
            0.0
        );
    }

    #[test]
    fn dissipation_factored_zero_field_reduces_to_gibbs_term() {
        // pure gas-dynamic jump: q = 0 on both sides, u2 = u3 = 0
        let l = law(2.0, 1.0);
        let v_l = 1.0_f64;
        let v_r = 0.8_f64;
        let m = (v_l.powf(-2.0) - v_r.powf(-2.0)) / (v_r - v_l);
        let sigma = -m.sqrt();
        let ul = ConservedState::new(v_l, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let ur = ConservedState::new(v_r, 0.0, 0.0, -sigma * (v_r - v_l), 0.0, 0.0).unwrap();
        let w = DiscontinuityWave {
            left: ul,
            right: ur,
            sigma,
            family: WaveFamily::Shock3,
        };
        let d_fact = dissipation_factored(&w, &l, &Tolerance::default()).unwrap();
        let gibbs = adaptive_simpson(
            &|s: f64| {
                s * v_r.powf(-2.0) + (1.0 - s) * v_l.powf(-2.0)
                    - (s * v_r + (1.0 - s) * v_l).powf(-2.0)
            },
            0.0,
            1.0,
            1e-13,
        );
        assert!((d_fact - (-sigma * (v_r - v_l) * gibbs)).abs() < 1e-14);
        let d_dir = dissipation_direct(&w, &l).unwrap();
        assert!((d_fact - d_dir).abs() < 1e-10 * d_dir.abs());
    }

    #[test]
    fn contact_identity_rotation_is_trivial() {
        let l = law(5.0 / 3.0, 1.0);
        let spec = ContactSpec {
            left: FluidState::new(1.0, 1.0, -1.0, 0.3, 0.1, -0.2).unwrap(),
            family: WaveFamily::Contact2,
            angle: 0.0,
        };
        let w = contact_construct(&spec, &l).unwrap();
        assert_eq!(w.left, w.right);
    }

    #[test]
    fn contact_quarter_turn_pinned_values() {
        let l = law(5.0 / 3.0, 1.0);
        let b = 0.8;
        let spec = ContactSpec {
            left: FluidState::new(1.0, b, 0.0, 0.0, 0.25, -0.5).unwrap(),
            family: WaveFamily::Contact2,
            angle: std::f64::consts::FRAC_PI_2,
        };
        let w = contact_construct(&spec, &l).unwrap();
        let fr = w.right.to_fluid();
        assert!(fr.b2.abs() < 1e-15);
        assert!((fr.b3 - (-b)).abs() < 1e-15);
        assert!((fr.u2 - (0.25 - b)).abs() < 1e-15);
        assert!((fr.u3 - (-0.5 - b)).abs() < 1e-15);
        assert_eq!(w.sigma, -1.0);
    }

    #[test]
    fn contact_preserves_norm_and_satisfies_rh() {
        let l = law(1.4, 0.6);
        let spec = ContactSpec {
            left: FluidState::new(0.5, 0.9, 0.4, -0.7, 0.0, 0.3).unwrap(),
            family: WaveFamily::Contact5,
            angle: 1.234,
        };
        let w = contact_construct(&spec, &l).unwrap();
        let fl = w.left.to_fluid();
        let fr = w.right.to_fluid();
        assert!(
            (fr.transverse_norm_sq() - fl.transverse_norm_sq()).abs()
                <= 1e-12 * fl.transverse_norm_sq()
        );
        assert!(w.sigma > 0.0);
        assert!(rh_residual_norm(&w, &l).unwrap() <= 1e-12 * rh_scale(&w, &l));
        assert_eq!(fr.v, fl.v);
        assert_eq!(fr.u1, fl.u1);
    }

    #[test]
    fn contact_rejects_zero_field() {
        let l = law(2.0, 1.0);
        let spec = ContactSpec {
            left: FluidState::new(1.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap(),
            family: WaveFamily::Contact2,
            angle: 0.5,
        };
        assert!(contact_construct(&spec, &l).is_err());
    }

    fn wave_with_fields(bl: (f64, f64), br: (f64, f64)) -> DiscontinuityWave {
        DiscontinuityWave {
            left: ConservedState::new(1.0, bl.0, bl.1, 0.0, 0.0, 0.0).unwrap(),
            right: ConservedState::new(1.0, br.0, br.1, 0.0, 0.0, 0.0).unwrap(),
            sigma: -1.0,
            family: WaveFamily::Shock3,
        }
    }

    #[test]
    fn condition_2b_cases() {
        assert!(condition_2b(&wave_with_fields((0.5, 0.0), (0.3, 0.0))).holds);
        assert!(!condition_2b(&wave_with_fields((0.5, 0.0), (-0.1, 0.0))).holds);
        assert!(condition_2b(&wave_with_fields((0.0, 0.0), (0.0, 0.0))).holds);
    }

    #[test]
    fn condition_3b_cases() {
        assert!(condition_3b(&wave_with_fields((0.3, 0.0), (0.5, 0.0))).holds);
        assert!(!condition_3b(&wave_with_fields((0.5, 0.0), (0.3, 0.0))).holds);
        assert!(condition_3b(&wave_with_fields((0.0, 0.0), (0.0, 0.0))).holds);
    }

    #[test]
    fn contact_classification_cases() {
        let t = Tolerance::default();
        let mk = |bl: (f64, f64), br: (f64, f64)| {
            let mut w = wave_with_fields(bl, br);
            w.family = WaveFamily::Contact2;
            w
        };
        let r = condition_contact_ab(&mk((1.0, -1.0), (1.2, -1.3)), &t);
        assert_eq!(r.class, ContactClass::A);
        assert!(r.tension.is_some(), "norm jump must be flagged");

        let r = condition_contact_ab(&mk((1.2, -1.3), (1.0, -1.0)), &t);
        assert_eq!(r.class, ContactClass::B);
        assert!(r.tension.is_some());

        let r = condition_contact_ab(&mk((1.0, 0.0), (0.5, 0.87)), &t);
        assert_eq!(r.class, ContactClass::Neither);
    }

    #[test]
    fn genuine_rotation_classifies_neither_with_structural_tension() {
        let l = law(5.0 / 3.0, 1.0);
        let spec = ContactSpec {
            left: FluidState::new(1.0, 1.0, -1.0, 0.0, 0.0, 0.0).unwrap(),
            family: WaveFamily::Contact2,
            angle: -0.3,
        };
        let w = contact_construct(&spec, &l).unwrap();
        let r = condition_contact_ab(&w, &Tolerance::default());
        assert_eq!(r.class, ContactClass::Neither);
        assert!(r.norm_jump.abs() < 1e-12);
        assert!(r.tension.is_some());
    }
}
