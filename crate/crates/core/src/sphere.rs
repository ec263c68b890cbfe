//! Multistart optimization of smooth real objectives over the complex unit
//! sphere, used for the Davis-Wielandt objective and the refinement infima.
//!
//! The sphere `{y : ||y|| = 1}` in C^r is treated as a real manifold: the
//! ascent direction is the Euclidean gradient projected onto the tangent
//! space, steps are taken with backtracking line search, and iterates are
//! renormalized after every step. Restart seeds are derived deterministically
//! from a master seed, so parallel and serial runs agree bit-for-bit.

use crate::mat::CVector;
use crate::rng::{random_unit_vector, rng_for};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Relative projected-gradient tolerance declaring a restart converged.
const GRAD_TOL: f64 = 1e-9;
/// Maximum step halvings in the backtracking line search.
const MAX_BACKTRACK: usize = 60;

/// Result of a multistart sphere optimization.
#[derive(Debug, Clone)]
pub struct SphereOutcome {
    /// Best objective value found.
    pub value: f64,
    /// Unit vector attaining `value`.
    pub point: CVector,
    /// Total number of ascent runs performed.
    pub restarts_used: usize,
    /// Whether the run that produced `value` met the gradient tolerance.
    pub converged: bool,
}

/// Maximize `f` over the unit sphere of `C^dim` by projected gradient ascent
/// from `extra_seeds`, the standard basis vectors, and `restarts` random
/// starting points drawn from streams of `seed`.
///
/// `grad` must return the Euclidean gradient of `f` in the identification
/// `C^dim ~ R^{2 dim}` (any positive scalar multiple works).
pub fn maximize_on_sphere(
    dim: usize,
    f: &dyn Fn(&CVector) -> f64,
    grad: &dyn Fn(&CVector) -> CVector,
    extra_seeds: &[CVector],
    restarts: usize,
    max_iters: usize,
    seed: u64,
) -> SphereOutcome {
    let mut starts: Vec<CVector> = Vec::with_capacity(extra_seeds.len() + dim + restarts);
    for s in extra_seeds {
        let n = s.norm();
        if n > 1e-12 {
            starts.push(s / Complex64::new(n, 0.0));
        }
    }
    for k in 0..dim {
        let mut e = CVector::zeros(dim);
        e[k] = Complex64::new(1.0, 0.0);
        starts.push(e);
    }
    for k in 0..restarts {
        starts.push(random_unit_vector(&mut rng_for(seed, k as u64), dim));
    }

    let mut best_value = f64::NEG_INFINITY;
    let mut best_point = CVector::zeros(dim);
    let mut best_converged = false;
    let restarts_used = starts.len();
    for y0 in starts {
        let (value, point, converged) = ascend(f, grad, y0, max_iters);
        if value > best_value {
            best_value = value;
            best_point = point;
            best_converged = converged;
        }
    }
    SphereOutcome {
        value: best_value,
        point: best_point,
        restarts_used,
        converged: best_converged,
    }
}

/// Minimize `f` over the unit sphere using a central-difference gradient.
pub fn minimize_on_sphere_fd(
    dim: usize,
    f: &dyn Fn(&CVector) -> f64,
    extra_seeds: &[CVector],
    restarts: usize,
    max_iters: usize,
    seed: u64,
) -> SphereOutcome {
    let neg = |y: &CVector| -f(y);
    let grad = |y: &CVector| fd_gradient(&neg, y, 1e-5);
    let mut out = maximize_on_sphere(dim, &neg, &grad, extra_seeds, restarts, max_iters, seed);
    out.value = -out.value;
    out
}

/// Central-difference Euclidean gradient of `f` at `y` with step `h`,
/// identified with a complex vector (`d/dRe + i d/dIm` per coordinate).
pub fn fd_gradient(f: &dyn Fn(&CVector) -> f64, y: &CVector, h: f64) -> CVector {
    let mut g = CVector::zeros(y.len());
    let mut probe = y.clone();
    for k in 0..y.len() {
        let base = y[k];
        probe[k] = base + Complex64::new(h, 0.0);
        let fp = f(&probe);
        probe[k] = base - Complex64::new(h, 0.0);
        let fm = f(&probe);
        probe[k] = base + Complex64::new(0.0, h);
        let fip = f(&probe);
        probe[k] = base - Complex64::new(0.0, h);
        let fim = f(&probe);
        probe[k] = base;
        g[k] = Complex64::new((fp - fm) / (2.0 * h), (fip - fim) / (2.0 * h));
    }
    g
}

/// Single projected-gradient ascent run from `y0`.
fn ascend(
    f: &dyn Fn(&CVector) -> f64,
    grad: &dyn Fn(&CVector) -> CVector,
    y0: CVector,
    max_iters: usize,
) -> (f64, CVector, bool) {
    let mut y = normalize(y0);
    let mut fy = f(&y);
    let mut step: f64 = 0.5;
    for _ in 0..max_iters {
        let g = grad(&y);
        // Tangent projection for the real sphere: remove the radial component.
        let radial = y.dotc(&g).re;
        let d = &g - &y * Complex64::new(radial, 0.0);
        let dn = d.norm();
        if dn <= GRAD_TOL * fy.abs().max(1.0) {
            return (fy, y, true);
        }
        let dir = &d / Complex64::new(dn, 0.0);
        // Backtracking from a warm-started step length (Armijo condition;
        // the directional derivative along `dir` is dn).
        step = (step * 2.0).min(1.0);
        let mut accepted = false;
        for _ in 0..MAX_BACKTRACK {
            let candidate = normalize(&y + &dir * Complex64::new(step, 0.0));
            let fc = f(&candidate);
            if fc > fy + 1e-4 * step * dn {
                y = candidate;
                fy = fc;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            // No ascent along the gradient at the smallest step: numerically
            // stationary. Converged only if the gradient is already small.
            return (fy, y, dn <= 1e-6 * fy.abs().max(1.0));
        }
    }
    let g = grad(&y);
    let radial = y.dotc(&g).re;
    let dn = (&g - &y * Complex64::new(radial, 0.0)).norm();
    (fy, y, dn <= GRAD_TOL * fy.abs().max(1.0))
}

fn normalize(y: CVector) -> CVector {
    let n = y.norm();
    if n > 0.0 {
        y / Complex64::new(n, 0.0)
    } else {
        y
    }
}

/// Exhaustive maximization of a phase-invariant objective on the unit sphere
/// of C^2 via the two-angle chart `y = (cos t, e^{i phi} sin t)`.
///
/// Scans a `t_grid x phi_grid` grid, then refines the best cell with a
/// contracting 7x7 stencil search until the cell width is far below 1e-12.
pub fn dense_two_angle_max(
    f: &dyn Fn(&CVector) -> f64,
    t_grid: usize,
    phi_grid: usize,
) -> (f64, CVector) {
    let point = |t: f64, phi: f64| {
        CVector::from_vec(vec![
            Complex64::new(t.cos(), 0.0),
            Complex64::from_polar(t.sin(), phi),
        ])
    };
    let eval = |t: f64, phi: f64| f(&point(t, phi));

    let dt = 0.5 * PI / t_grid as f64;
    let dphi = 2.0 * PI / phi_grid as f64;
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 0..=t_grid {
        let t = i as f64 * dt;
        for j in 0..phi_grid {
            let phi = j as f64 * dphi;
            let v = eval(t, phi);
            if v > best.0 {
                best = (v, t, phi);
            }
        }
    }

    // Contracting stencil refinement around the best grid cell.
    let (mut bv, mut bt, mut bphi) = best;
    let mut ht = dt;
    let mut hphi = dphi;
    for _ in 0..55 {
        for di in -3i32..=3 {
            for dj in -3i32..=3 {
                let t = bt + di as f64 * ht / 3.0;
                let phi = bphi + dj as f64 * hphi / 3.0;
                let v = eval(t, phi);
                if v > bv {
                    bv = v;
                    bt = t;
                    bphi = phi;
                }
            }
        }
        ht *= 0.5;
        hphi *= 0.5;
    }
    (bv, point(bt, bphi))
}
