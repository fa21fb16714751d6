//! Spectral analysis of the 6x6 quasilinear form.
//!
//! In the non-conservative variables `W = (v, B2, B3, u1, u2, u3)` the system
//! reads `W_t + A(W) W_x = 0`. The characteristic polynomial of `A` factors as
//! `(lambda^2 - beta^2/v) f(lambda^2)` with
//! `f(L) = L^2 - ((|B|^2 + beta^2)/v + c^2) L + beta^2 c^2 / v`,
//! giving the six speeds `(-sqrt(a+), -beta/sqrt(v), -sqrt(a-), sqrt(a-),
//! beta/sqrt(v), sqrt(a+))` where `a±` are the roots of `f`.

use crate::error::{Coincidence, WaveKitError};
use crate::state::{ensure_volume, FluidState, GasLaw};
use crate::thermo::pressure_dd;
use crate::Result;

/// Relative gap under which a family's printed eigenvector loses rank.
pub const DEGENERACY_REL: f64 = 1e-9;

/// Squared slow/fast magnetosonic speeds, the roots of `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaRoots {
    pub minus: f64,
    pub plus: f64,
}

impl AlphaRoots {
    /// Coefficients of `f(L) = L^2 - s L + p` at this state.
    fn poly(w: &FluidState, law: &GasLaw) -> (f64, f64) {
        let c2 = law.gamma * w.v.powf(-law.gamma - 1.0);
        let s = (w.transverse_norm_sq() + law.beta * law.beta) / w.v + c2;
        let p = law.beta * law.beta * c2 / w.v;
        (s, p)
    }
}

/// Both roots of `f`, ordered. The larger root comes from the quadratic
/// formula, the smaller from the product `p / a+`, which stays accurate when
/// the roots separate widely (as they do for `v -> 0`).
pub fn alpha_roots(w: &FluidState, law: &GasLaw) -> Result<AlphaRoots> {
    law.validated()?;
    ensure_volume(w.v)?;
    let (s, p) = AlphaRoots::poly(w, law);
    let disc = (s * s - 4.0 * p).max(0.0);
    let plus = 0.5 * (s + disc.sqrt());
    let minus = p / plus;
    Ok(AlphaRoots { minus, plus })
}

/// The quasilinear matrix `A(W)` (rows: v, B2, B3, u1, u2, u3 equations).
pub fn char_matrix(w: &FluidState, law: &GasLaw) -> Result<[[f64; 6]; 6]> {
    law.validated()?;
    ensure_volume(w.v)?;
    let c2 = law.gamma * w.v.powf(-law.gamma - 1.0);
    let b = law.beta;
    let v = w.v;
    Ok([
        [0.0, 0.0, 0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, w.b2 / v, -b / v, 0.0],
        [0.0, 0.0, 0.0, w.b3 / v, 0.0, -b / v],
        [-c2, w.b2, w.b3, 0.0, 0.0, 0.0],
        [0.0, -b, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, -b, 0.0, 0.0, 0.0],
    ])
}

/// The six characteristic speeds in nondecreasing order.
pub fn eigenvalues(w: &FluidState, law: &GasLaw) -> Result<[f64; 6]> {
    let a = alpha_roots(w, law)?;
    let lam2 = law.beta / w.v.sqrt();
    Ok([
        -a.plus.sqrt(),
        -lam2,
        -a.minus.sqrt(),
        a.minus.sqrt(),
        lam2,
        a.plus.sqrt(),
    ])
}

fn check_family(family: usize) -> Result<()> {
    if !(1..=6).contains(&family) {
        return Err(WaveKitError::Precondition(format!(
            "characteristic family must be 1..6, got {family}"
        )));
    }
    Ok(())
}

/// Gap check for the printed eigenvector of `family`; returns the coincidence
/// that voids it, if any.
fn degeneracy_for(w: &FluidState, law: &GasLaw, family: usize) -> Result<Option<Coincidence>> {
    let a = alpha_roots(w, law)?;
    let beta_sq_v = law.beta * law.beta / w.v;
    let thresh = DEGENERACY_REL * a.plus;
    let gap_plus = (a.plus - beta_sq_v).abs();
    let gap_minus = (a.minus - beta_sq_v).abs();
    let hit = match family {
        1 | 6 => (gap_plus <= thresh).then_some(Coincidence::AlphaPlus),
        3 | 4 => (gap_minus <= thresh).then_some(Coincidence::AlphaMinus),
        2 | 5 => {
            // r_2/r_5 vanish with |B|; that happens exactly when one of the
            // alpha gaps closes.
            if gap_plus <= thresh && gap_minus <= thresh {
                Some(Coincidence::Both)
            } else if gap_plus <= thresh {
                Some(Coincidence::AlphaPlus)
            } else if gap_minus <= thresh {
                Some(Coincidence::AlphaMinus)
            } else {
                None
            }
        }
        _ => unreachable!(),
    };
    Ok(hit)
}

/// The right eigenvector of `A(W)` for the given family, exactly as the
/// closed-form display (no normalization).
pub fn eigenvector(w: &FluidState, law: &GasLaw, family: usize) -> Result<[f64; 6]> {
    check_family(family)?;
    if let Some(coincidence) = degeneracy_for(w, law, family)? {
        return Err(WaveKitError::Degenerate {
            family,
            coincidence,
        });
    }
    let a = alpha_roots(w, law)?;
    let beta_sq_v = law.beta * law.beta / w.v;
    let b = law.beta;
    let v = w.v;
    let (b2, b3) = (w.b2, w.b3);
    Ok(match family {
        1 => {
            let gap = a.plus - beta_sq_v;
            let sp = a.plus.sqrt();
            [
                (v / a.plus) * gap,
                -b2,
                -b3,
                (v / sp) * gap,
                -b * b2 / sp,
                -b * b3 / sp,
            ]
        }
        2 => [
            0.0,
            b * b3,
            -b * b2,
            0.0,
            b * v.sqrt() * b3,
            -b * v.sqrt() * b2,
        ],
        3 => {
            let gap = beta_sq_v - a.minus;
            let sm = a.minus.sqrt();
            [
                (v / a.minus) * gap,
                b2,
                b3,
                (v / sm) * gap,
                b * b2 / sm,
                b * b3 / sm,
            ]
        }
        4 => {
            let gap = beta_sq_v - a.minus;
            let sm = a.minus.sqrt();
            [
                -(v / a.minus) * gap,
                -b2,
                -b3,
                (v / sm) * gap,
                b * b2 / sm,
                b * b3 / sm,
            ]
        }
        5 => [
            0.0,
            b * b3,
            -b * b2,
            0.0,
            -b * v.sqrt() * b3,
            b * v.sqrt() * b2,
        ],
        6 => {
            let gap = a.plus - beta_sq_v;
            let sp = a.plus.sqrt();
            [
                -(v / a.plus) * gap,
                b2,
                b3,
                (v / sp) * gap,
                -b * b2 / sp,
                -b * b3 / sp,
            ]
        }
        _ => unreachable!(),
    })
}

/// Eigenvalue together with its eigenvector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub family: usize,
    pub lambda: f64,
    pub r: [f64; 6],
}

pub fn eigen_pair(w: &FluidState, law: &GasLaw, family: usize) -> Result<EigenPair> {
    check_family(family)?;
    let lambda = eigenvalues(w, law)?[family - 1];
    let r = eigenvector(w, law, family)?;
    Ok(EigenPair { family, lambda, r })
}

/// Partials of the selected `alpha` root with respect to `(v, B2, B3)`,
/// from implicit differentiation of `f`: `da/dx = (dS/dx a - dP/dx)/(2a - S)`.
fn alpha_partials(w: &FluidState, law: &GasLaw, plus: bool) -> Result<(f64, [f64; 3])> {
    let a = alpha_roots(w, law)?;
    let (s, _) = AlphaRoots::poly(w, law);
    let v = w.v;
    let c2 = law.gamma * v.powf(-law.gamma - 1.0);
    let pdd = pressure_dd(v, law);
    let bb = law.beta * law.beta;
    // c2'(v) = -p''(v)
    let ds_dv = -(w.transverse_norm_sq() + bb) / (v * v) - pdd;
    let dp_dv = bb * (-pdd / v - c2 / (v * v));
    let root = if plus { a.plus } else { a.minus };
    let denom = 2.0 * root - s;
    let da_dv = (ds_dv * root - dp_dv) / denom;
    let da_db2 = (2.0 * w.b2 / v) * root / denom;
    let da_db3 = (2.0 * w.b3 / v) * root / denom;
    Ok((root, [da_dv, da_db2, da_db3]))
}

/// Directional derivative `grad lambda_family . r_family` — the genuine
/// nonlinearity indicator. Identically zero for the linearly degenerate
/// families 2 and 5; positive elsewhere away from degeneracy.
pub fn gnl_derivative(w: &FluidState, law: &GasLaw, family: usize) -> Result<f64> {
    check_family(family)?;
    law.validated()?;
    ensure_volume(w.v)?;
    if family == 2 || family == 5 {
        // lambda_{2,5} = -+beta/sqrt(v) depend on v only, and the first
        // component of r_{2,5} vanishes.
        return Ok(0.0);
    }
    let r = eigenvector(w, law, family)?;
    let plus = family == 1 || family == 6;
    let (root, d) = alpha_partials(w, law, plus)?;
    // lambda = ±sqrt(alpha): grad lambda . r = ±(d alpha . r_{v,B}) / (2 sqrt(alpha))
    let dir = d[0] * r[0] + d[1] * r[1] + d[2] * r[2];
    let sign = match family {
        1 | 3 => -1.0,
        4 | 6 => 1.0,
        _ => unreachable!(),
    };
    Ok(sign * dir / (2.0 * root.sqrt()))
}

/// Outcome of the umbilic-configuration check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegeneracyReport {
    /// True when some alpha root sits on `beta^2/v` within tolerance.
    pub degenerate: bool,
    pub coincidence: Option<Coincidence>,
    /// Gaps `|alpha± - beta^2/v|` for diagnostics.
    pub gap_plus: f64,
    pub gap_minus: f64,
}

impl std::fmt::Display for DegeneracyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.coincidence {
            None => write!(f, "non-degenerate"),
            Some(c) => write!(f, "{c}"),
        }
    }
}

/// Detects the umbilic configuration: with `|B| ~ 0` one of `alpha±`
/// collides with `beta^2/v` (which one depends on `beta^2/v <> c^2`) and two
/// adjacent families share an eigenvalue.
pub fn degeneracy_check(w: &FluidState, law: &GasLaw) -> Result<DegeneracyReport> {
    let a = alpha_roots(w, law)?;
    let beta_sq_v = law.beta * law.beta / w.v;
    let thresh = DEGENERACY_REL * a.plus;
    let gap_plus = (a.plus - beta_sq_v).abs();
    let gap_minus = (a.minus - beta_sq_v).abs();
    let coincidence = if gap_plus <= thresh && gap_minus <= thresh {
        Some(Coincidence::Both)
    } else if gap_plus <= thresh {
        Some(Coincidence::AlphaPlus)
    } else if gap_minus <= thresh {
        Some(Coincidence::AlphaMinus)
    } else {
        None
    };
    Ok(DegeneracyReport {
        degenerate: coincidence.is_some(),
        coincidence,
        gap_plus,
        gap_minus,
    })
}

/// Frobenius norm of the quasilinear matrix, used to scale eigen-residuals.
pub fn matrix_norm(a: &[[f64; 6]; 6]) -> f64 {
    a.iter()
        .flat_map(|row| row.iter())
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
}

/// `A r - lambda r` residual, for verification.
pub fn eigen_residual(w: &FluidState, law: &GasLaw, pair: &EigenPair) -> Result<[f64; 6]> {
    let a = char_matrix(w, law)?;
    let mut res = [0.0; 6];
    for i in 0..6 {
        let mut acc = 0.0;
        for (j, rj) in pair.r.iter().enumerate() {
            acc += a[i][j] * rj;
        }
        res[i] = acc - pair.lambda * pair.r[i];
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn law(gamma: f64, beta: f64) -> GasLaw {
        GasLaw::new(gamma, beta).unwrap()
    }

    fn fluid(v: f64, b2: f64, b3: f64) -> FluidState {
        FluidState::new(v, b2, b3, 0.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn char_matrix_pinned_entries() {
        let l = law(2.0, 1.0);
        let a = char_matrix(&fluid(1.0, 1.0, 0.0), &l).unwrap();
        assert_eq!(a[0][3], -1.0);
        assert_eq!(a[3][0], -2.0); // -c^2 = -gamma v^(-gamma-1)
        let a0 = char_matrix(&fluid(1.0, 0.0, 0.0), &l).unwrap();
        assert_eq!(a0[1], [0.0, 0.0, 0.0, 0.0, -1.0, 0.0]);
        assert_eq!(a0[2], [0.0, 0.0, 0.0, 0.0, 0.0, -1.0]);
    }

    #[test]
    fn alpha_roots_factored_case() {
        // |B| = 0: f factors as (L - beta^2/v)(L - c^2)
        let l = law(2.0, 1.0);
        let a = alpha_roots(&fluid(1.0, 0.0, 0.0), &l).unwrap();
        assert!((a.minus - 1.0).abs() < 1e-14);
        assert!((a.plus - 2.0).abs() < 1e-14);
    }

    #[test]
    fn alpha_roots_two_plus_minus_sqrt2() {
        let l = law(2.0, 1.0);
        let a = alpha_roots(&fluid(1.0, 1.0, 0.0), &l).unwrap();
        let s2 = std::f64::consts::SQRT_2;
        assert!((a.plus - (2.0 + s2)).abs() < 1e-14);
        assert!((a.minus - (2.0 - s2)).abs() < 1e-14);
    }

    #[test]
    fn alpha_roots_strict_ordering_with_field() {
        let l = law(5.0 / 3.0, 0.7);
        let w = fluid(0.4, 0.8, -0.3);
        let a = alpha_roots(&w, &l).unwrap();
        let bv = l.beta * l.beta / w.v;
        let c2 = l.gamma * w.v.powf(-l.gamma - 1.0);
        assert!(a.minus < bv.min(c2));
        assert!(a.plus > bv.max(c2));
        // f(alpha±) = 0 after rescaling by the largest coefficient
        let (s, p) = (bv + w.transverse_norm_sq() / w.v + c2, bv * c2);
        let scale = s.abs().max(p.abs()).max(1.0);
        for root in [a.minus, a.plus] {
            let f = root * root - s * root + p;
            assert!(f.abs() <= 1e-12 * scale * root.max(1.0));
        }
    }

    #[test]
    fn eigenvalues_degenerate_and_generic() {
        let l = law(2.0, 1.0);
        let lam = eigenvalues(&fluid(1.0, 0.0, 0.0), &l).unwrap();
        let s2 = std::f64::consts::SQRT_2;
        let expect = [-s2, -1.0, -1.0, 1.0, 1.0, s2];
        for (a, b) in lam.iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-14);
        }
        let lam = eigenvalues(&fluid(1.0, 1.0, 0.0), &l).unwrap();
        let ap = 2.0 + s2;
        let am = 2.0 - s2;
        let expect = [-ap.sqrt(), -1.0, -am.sqrt(), am.sqrt(), 1.0, ap.sqrt()];
        for (a, b) in lam.iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!(lam.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn eigenvalues_rotation_invariant() {
        // only |B|^2 enters f: (B2,B3) -> (B3,-B2) leaves all speeds fixed
        let l = law(1.4, 0.9);
        let w1 = fluid(2.0, 0.6, -1.1);
        let w2 = fluid(2.0, -1.1, -0.6);
        let l1 = eigenvalues(&w1, &l).unwrap();
        let l2 = eigenvalues(&w2, &l).unwrap();
        for (a, b) in l1.iter().zip(l2.iter()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn eigenvector_family2_pinned() {
        let l = law(2.0, 1.0);
        let r = eigenvector(&fluid(1.0, 1.0, 0.0), &l, 2).unwrap();
        assert_eq!(r, [0.0, 0.0, -1.0, 0.0, 0.0, -1.0]);
    }

    #[test]
    fn eigenvector_family1_first_component_positive() {
        let l = law(5.0 / 3.0, 1.0);
        let r = eigenvector(&fluid(1.0, 0.5, 0.0), &l, 1).unwrap();
        assert!(r[0] > 0.0);
    }

    #[test]
    fn eigen_residuals_small() {
        let l = law(5.0 / 3.0, 1.3);
        let w = FluidState::new(0.8, 0.7, -0.2, 0.3, -1.0, 0.1).unwrap();
        let a = char_matrix(&w, &l).unwrap();
        let norm_a = matrix_norm(&a);
        for family in 1..=6 {
            let pair = eigen_pair(&w, &l, family).unwrap();
            let res = eigen_residual(&w, &l, &pair).unwrap();
            let norm_r: f64 = pair.r.iter().map(|x| x * x).sum::<f64>().sqrt();
            let norm_res: f64 = res.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!(
                norm_res <= 1e-10 * norm_a * norm_r,
                "family {family}: residual {norm_res:.3e}"
            );
        }
    }

    #[test]
    fn eigenvector_degeneracy_errors() {
        let l = law(2.0, 1.0);
        // c^2 = 2 > beta^2/v = 1: alpha- is the beta-branch, families 3,4 degenerate
        let w = fluid(1.0, 0.0, 0.0);
        assert!(eigenvector(&w, &l, 1).is_ok());
        assert!(eigenvector(&w, &l, 6).is_ok());
        for family in [2, 3, 4, 5] {
            let err = eigenvector(&w, &l, family).unwrap_err();
            assert!(matches!(err, WaveKitError::Degenerate { .. }), "{family}");
        }
        // beta^2/v = 4 > c^2 = 2: now the fast branch degenerates instead
        let l2 = law(2.0, 2.0);
        assert!(eigenvector(&w, &l2, 3).is_ok());
        assert!(eigenvector(&w, &l2, 1).is_err());
    }

    #[test]
    fn gnl_linearly_degenerate_families_exact_zero() {
        let l = law(1.4, 0.8);
        let w = fluid(1.7, 0.4, 0.9);
        assert_eq!(gnl_derivative(&w, &l, 2).unwrap(), 0.0);
        assert_eq!(gnl_derivative(&w, &l, 5).unwrap(), 0.0);
    }

    #[test]
    fn gnl_positive_for_genuinely_nonlinear_families() {
        let l = law(5.0 / 3.0, 1.0);
        let w = fluid(1.0, 1.0, 0.0);
        for family in [1, 3, 4, 6] {
            let g = gnl_derivative(&w, &l, family).unwrap();
            assert!(g > 0.0, "family {family}: {g}");
        }
    }

    #[test]
    fn gnl_matches_finite_differences() {
        let l = law(2.0, 1.2);
        let w = FluidState::new(0.9, 0.8, -0.5, 0.0, 0.0, 0.0).unwrap();
        for family in [1, 3, 4, 6] {
            let g = gnl_derivative(&w, &l, family).unwrap();
            let r = eigenvector(&w, &l, family).unwrap();
            let h = 1e-6;
            let lam = |dw: f64| {
                let shifted = FluidState::new(
                    w.v + dw * r[0],
                    w.b2 + dw * r[1],
                    w.b3 + dw * r[2],
                    0.0,
                    0.0,
                    0.0,
                )
                .unwrap();
                eigenvalues(&shifted, &l).unwrap()[family - 1]
            };
            let fd = (lam(h) - lam(-h)) / (2.0 * h);
            assert!(
                (fd - g).abs() <= 1e-6 * g.abs(),
                "family {family}: analytic {g} fd {fd}"
            );
        }
    }

    #[test]
    fn degeneracy_report_cases() {
        let l = law(2.0, 1.0);
        let rep = degeneracy_check(&fluid(1.0, 0.0, 0.0), &l).unwrap();
        assert!(rep.degenerate);
        assert_eq!(rep.coincidence, Some(Coincidence::AlphaMinus));

        let rep = degeneracy_check(&fluid(1.0, 1.0, 0.0), &l).unwrap();
        assert!(!rep.degenerate);

        let l2 = law(2.0, 2.0);
        let rep = degeneracy_check(&fluid(1.0, 0.0, 0.0), &l2).unwrap();
        assert_eq!(rep.coincidence, Some(Coincidence::AlphaPlus));
    }
}
