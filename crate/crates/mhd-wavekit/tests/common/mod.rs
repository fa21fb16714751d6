//! Shared test oracles, independent of the library's computation paths.

#![allow(dead_code)]

use mhd_wavekit::state::{ConservedState, FluidState, GasLaw};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random state on the acceptance domain: `v in [0.1, 10]`, `|B| in
/// [0.01, 5]` at a random orientation, velocities in `[-2, 2]`.
pub fn random_state(r: &mut ChaCha8Rng) -> FluidState {
    let v = r.gen_range(0.1..10.0);
    let mag = r.gen_range(0.01..5.0);
    let phi = r.gen_range(0.0..std::f64::consts::TAU);
    FluidState::new(
        v,
        mag * phi.cos(),
        mag * phi.sin(),
        r.gen_range(-2.0..2.0),
        r.gen_range(-2.0..2.0),
        r.gen_range(-2.0..2.0),
    )
    .unwrap()
}

pub fn random_law(r: &mut ChaCha8Rng) -> GasLaw {
    let gamma = [1.4, 5.0 / 3.0, 2.0][r.gen_range(0..3)];
    GasLaw::new(gamma, r.gen_range(0.1..3.0)).unwrap()
}

pub fn random_conserved(r: &mut ChaCha8Rng) -> ConservedState {
    random_state(r).to_conserved()
}

/// Central finite-difference gradient of a scalar function of a conserved
/// state, with per-component relative step `h`.
pub fn fd_gradient(
    f: &dyn Fn(&ConservedState) -> f64,
    u: &ConservedState,
    h: f64,
) -> [f64; 6] {
    let base = u.as_array();
    let mut grad = [0.0; 6];
    for (i, g) in grad.iter_mut().enumerate() {
        let step = h * (1.0 + base[i].abs());
        let mut up = base;
        up[i] += step;
        let mut dn = base;
        dn[i] -= step;
        *g = (f(&ConservedState::from_array(up)) - f(&ConservedState::from_array(dn)))
            / (2.0 * step);
    }
    grad
}

/// Classical fixed-step RK4 for an autonomous system.
pub fn rk4_fixed<const N: usize>(
    rhs: &dyn Fn(&[f64; N]) -> [f64; N],
    y0: [f64; N],
    t_end: f64,
    steps: usize,
) -> [f64; N] {
    let h = t_end / steps as f64;
    let mut y = y0;
    for _ in 0..steps {
        let k1 = rhs(&y);
        let mut y2 = y;
        for i in 0..N {
            y2[i] += 0.5 * h * k1[i];
        }
        let k2 = rhs(&y2);
        let mut y3 = y;
        for i in 0..N {
            y3[i] += 0.5 * h * k2[i];
        }
        let k3 = rhs(&y3);
        let mut y4 = y;
        for i in 0..N {
            y4[i] += h * k3[i];
        }
        let k4 = rhs(&y4);
        for i in 0..N {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    y
}

/// Composite-Simpson quadrature with a fixed panel count (test-only oracle,
/// kept separate from the library's adaptive routine).
pub fn simpson_fixed(f: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let n = 2 * panels;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + k as f64 * h);
    }
    acc * h / 3.0
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}
