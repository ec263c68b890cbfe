//! Scalar radii of a weighted operator: operator seminorm, numerical
//! radius, Crawford number, minimum modulus, Davis-Wielandt radius, and the
//! refinement infima that sharpen several of the bounds.
//!
//! All quantities are evaluated on the rank-r compression of the operator
//! (see [`crate::reduce`]); the `a_`-prefixed functions wrap the reduction,
//! while the matrix-level functions operate on arbitrary square complex
//! matrices in the standard geometry and are reused by the bound evaluators
//! on composite expressions of the compression.

use crate::error::{Error, Result};
use crate::mat::{
    hermitian_eigen_desc, min_singular_value, spectral_norm, top_right_singular_vector, CMatrix,
    CVector,
};
use crate::operator::Operator;
use crate::reduce::{lift, reduce};
use crate::rng::{random_unit_vector, rng_for, stream_seed};
use crate::scan::{rotated_bottom_eigenvalue, rotated_hermitian_part, rotated_top_eigenvalue, scan_max};
use crate::semi::{a_inner, a_norm};
use crate::sphere::{dense_two_angle_max, maximize_on_sphere, minimize_on_sphere_fd, SphereOutcome};
use crate::weight::HermitianPsd;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Seed salt separating the Crawford sampling cross-check stream.
const CRAWFORD_SALT: u64 = 0x4352_4157;
/// Seed salt for the Davis-Wielandt multistart stream.
const DW_SALT: u64 = 0x4457_5244;
/// Seed salts for the three refinement-infimum minimizations.
const MU_SALT: u64 = 11;
const ETA_SALT: u64 = 12;
const DELTA_SALT: u64 = 13;

/// Tuning knobs for every iterative routine in the crate.
///
/// Defaults are sized so that the full bound suite on a rank-4 weight runs
/// in well under a second while leaving roughly nine significant digits.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerConfig {
    /// Random restarts for sphere maximizations.
    pub restarts: usize,
    /// Iteration cap per ascent run.
    pub max_iters: usize,
    /// Uniform grid size for angle scans over [0, 2*pi).
    pub theta_grid: usize,
    /// Final bracket width for golden-section refinement.
    pub refine_tol: f64,
    /// Grid size for one-parameter bound minimizations over [0, 1].
    pub alpha_grid: usize,
    /// Master seed; all randomized runs derive per-item streams from it.
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iters: 500,
            theta_grid: 2048,
            refine_tol: 1e-12,
            alpha_grid: 101,
            seed: 7,
        }
    }
}

impl OptimizerConfig {
    /// Rejects non-positive sizes and tolerances.
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0
            || self.max_iters == 0
            || self.theta_grid == 0
            || self.alpha_grid == 0
            || !(self.refine_tol > 0.0)
        {
            return Err(Error::InvalidParam(
                "optimizer configuration requires positive sizes and tolerance".into(),
            ));
        }
        Ok(())
    }

    /// Copy with `factor` times the restarts, for escalation on suspected
    /// under-estimation of a supremum.
    pub fn escalate_restarts(&self, factor: usize) -> Self {
        let mut out = self.clone();
        out.restarts = self.restarts.saturating_mul(factor);
        out
    }
}

/// Davis-Wielandt radius estimate: a certified-from-below value with an
/// analytic cap and the unit-seminorm vector attaining the value.
#[derive(Debug, Clone)]
pub struct DwResult {
    /// Best objective value found (lower approximation of the supremum).
    pub value: f64,
    /// Analytic cap sqrt(omega^2 + norm^4); the true radius lies between.
    pub upper_cap: f64,
    /// Ambient vector of unit seminorm with
    /// `sqrt(|<S w,w>_A|^2 + ||S w||_A^4) = value`.
    pub witness: CVector,
    /// Number of ascent runs performed.
    pub restarts_used: usize,
    /// Whether the best run met the gradient tolerance.
    pub converged: bool,
}

// ---------------------------------------------------------------------------
// Matrix-level quantities in the standard geometry.
// ---------------------------------------------------------------------------

/// Numerical radius of `m` with a witness unit vector, via an angle scan of
/// `lambda_max(Re(e^{i theta} m))` with golden-section refinement.
pub fn numerical_radius_with_witness(m: &CMatrix, cfg: &OptimizerConfig) -> (f64, CVector) {
    let (theta, value) = scan_max(
        |t| rotated_top_eigenvalue(m, t),
        cfg.theta_grid,
        cfg.refine_tol,
    );
    let (_, vecs) = hermitian_eigen_desc(&rotated_hermitian_part(m, theta));
    (value, vecs.column(0).into_owned())
}

/// Numerical radius of `m` (largest modulus in its numerical range).
pub fn numerical_radius(m: &CMatrix, cfg: &OptimizerConfig) -> f64 {
    scan_max(
        |t| rotated_top_eigenvalue(m, t),
        cfg.theta_grid,
        cfg.refine_tol,
    )
    .1
}

/// Crawford number of `m`: distance from the origin to its numerical range,
/// computed by the support-function formula
/// `max(0, max_theta lambda_min(Re(e^{i theta} m)))`.
///
/// For dimensions up to 3 the result is cross-checked against dense sphere
/// sampling of `|<m y, y>|`; disagreement beyond tolerance is an error
/// rather than a silently wrong value.
pub fn crawford_number(m: &CMatrix, cfg: &OptimizerConfig) -> Result<f64> {
    let (_, support) = scan_max(
        |t| rotated_bottom_eigenvalue(m, t),
        cfg.theta_grid,
        cfg.refine_tol,
    );
    let value = support.max(0.0);
    let dim = m.nrows();
    if dim <= 3 {
        let mut rng = rng_for(stream_seed(cfg.seed, CRAWFORD_SALT), 0);
        let mut sample_min = f64::INFINITY;
        for _ in 0..2048 {
            let y = random_unit_vector(&mut rng, dim);
            sample_min = sample_min.min(y.dotc(&(m * &y)).norm());
        }
        let tol = 1e-9 * spectral_norm(m).max(1.0);
        if value > sample_min + tol {
            return Err(Error::ToleranceFailure {
                context: "crawford support formula exceeded a sampled numerical-range point",
                value: value - sample_min,
            });
        }
    }
    Ok(value)
}

/// Smallest singular value of `m`.
pub fn min_modulus(m: &CMatrix) -> f64 {
    min_singular_value(m)
}

/// The Davis-Wielandt objective `|<m y, y>|^2 + ||m y||^4` at a unit vector.
pub fn dw_objective(m: &CMatrix, y: &CVector) -> f64 {
    let my = m * y;
    let q = y.dotc(&my);
    q.norm_sqr() + my.norm_squared().powi(2)
}

/// Multistart projected-gradient maximization of the Davis-Wielandt
/// objective. The outcome's `value` is on the radius scale (square root of
/// the best objective). Seeds: the top right singular vector, a numerical-
/// radius witness, the standard basis, and `cfg.restarts` random points.
pub fn dw_multistart(m: &CMatrix, cfg: &OptimizerConfig) -> SphereOutcome {
    let mh = m.adjoint();
    let mhm = &mh * m;
    let f = |y: &CVector| dw_objective(m, y);
    let grad = |y: &CVector| {
        let my = m * y;
        let q = y.dotc(&my);
        let weight = Complex64::new(2.0 * my.norm_squared(), 0.0);
        my * q.conj() + (&mh * y) * q + (&mhm * y) * weight
    };
    let (_, omega_witness) = numerical_radius_with_witness(m, cfg);
    let seeds = [top_right_singular_vector(m), omega_witness];
    let mut out = maximize_on_sphere(
        m.nrows(),
        &f,
        &grad,
        &seeds,
        cfg.restarts,
        cfg.max_iters,
        stream_seed(cfg.seed, DW_SALT),
    );
    out.value = out.value.max(0.0).sqrt();
    out
}

/// Exhaustive Davis-Wielandt maximization for 1- and 2-dimensional
/// matrices via the phase-quotient two-angle chart; value on the radius
/// scale. Errors for larger dimensions.
pub fn dw_dense(m: &CMatrix) -> Result<(f64, CVector)> {
    match m.nrows() {
        1 => {
            let e = CVector::from_element(1, Complex64::new(1.0, 0.0));
            Ok((dw_objective(m, &e).sqrt(), e))
        }
        2 => {
            let f = |y: &CVector| dw_objective(m, y);
            let (value, point) = dense_two_angle_max(&f, 256, 512);
            Ok((value.max(0.0).sqrt(), point))
        }
        n => Err(Error::InvalidParam(format!(
            "dense two-angle evaluation is defined for dimension <= 2, got {n}"
        ))),
    }
}

// ---------------------------------------------------------------------------
// Weighted quantities of an (A, S) pair.
// ---------------------------------------------------------------------------

/// Operator seminorm `sup {||S z||_A : ||z||_A = 1}` = sigma_max of the
/// compression.
pub fn a_op_norm(a: &HermitianPsd, s: &Operator) -> Result<f64> {
    Ok(spectral_norm(&reduce(a, s)?.reduced))
}

/// Weighted numerical radius `sup {|<S z, z>_A| : ||z||_A = 1}`.
pub fn a_numerical_radius(a: &HermitianPsd, s: &Operator, cfg: &OptimizerConfig) -> Result<f64> {
    cfg.validate()?;
    Ok(numerical_radius(&reduce(a, s)?.reduced, cfg))
}

/// Weighted Crawford number `inf {|<S z, z>_A| : ||z||_A = 1}`.
pub fn a_crawford(a: &HermitianPsd, s: &Operator, cfg: &OptimizerConfig) -> Result<f64> {
    cfg.validate()?;
    crawford_number(&reduce(a, s)?.reduced, cfg)
}

/// Minimum weighted modulus `inf {||S z||_A : ||z||_A = 1}` = sigma_min of
/// the compression.
pub fn a_min_modulus(a: &HermitianPsd, s: &Operator) -> Result<f64> {
    Ok(min_modulus(&reduce(a, s)?.reduced))
}

/// Weighted Davis-Wielandt radius
/// `sup {sqrt(|<S z, z>_A|^2 + ||S z||_A^4) : ||z||_A = 1}`.
///
/// Multistart ascent, blended with the exhaustive two-angle scan when the
/// weight has rank at most 2. The result carries a feasible witness and the
/// analytic cap; a value outside `[max(omega, norm^2), cap]` (up to
/// tolerance) is reported as an error, never silently returned.
pub fn a_dw_radius(a: &HermitianPsd, s: &Operator, cfg: &OptimizerConfig) -> Result<DwResult> {
    cfg.validate()?;
    let pair = reduce(a, s)?;
    let t = &pair.reduced;

    let ms = dw_multistart(t, cfg);
    let mut value = ms.value;
    let mut point = ms.point;
    let mut converged = ms.converged;
    if t.nrows() <= 2 {
        let (dense_value, dense_point) = dw_dense(t)?;
        if dense_value > value {
            value = dense_value;
            point = dense_point;
            converged = true;
        }
    }

    let omega = numerical_radius(t, cfg);
    let op_norm = spectral_norm(t);
    let upper_cap = (omega * omega + op_norm.powi(4)).sqrt();
    let scale = upper_cap.max(1.0);
    if value > upper_cap + 1e-9 * scale {
        return Err(Error::ToleranceFailure {
            context: "davis-wielandt value exceeded its analytic cap",
            value: value - upper_cap,
        });
    }
    let floor = omega.max(op_norm * op_norm);
    if value + 1e-6 * scale < floor {
        return Err(Error::ToleranceFailure {
            context: "davis-wielandt value fell below the sandwich floor",
            value: floor - value,
        });
    }
    Ok(DwResult {
        value,
        upper_cap,
        witness: lift(a, &point),
        restarts_used: ms.restarts_used,
        converged,
    })
}

/// Best approximation residual `inf_lambda ||u - lambda v||_A`, in closed
/// form via the orthogonal projection onto `v`.
pub fn residual_inf(a: &HermitianPsd, u: &CVector, v: &CVector) -> Result<f64> {
    if u.len() != a.dim || v.len() != a.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: if u.len() != a.dim { u.len() } else { v.len() },
        });
    }
    let nv = a_norm(a, v)?;
    if nv <= 1e-14 {
        return a_norm(a, u);
    }
    let nu = a_norm(a, u)?;
    let cross = a_inner(a, u, v)?.norm();
    Ok((nu * nu - (cross / nv).powi(2)).max(0.0).sqrt())
}

/// Standard-geometry projection residual `inf_lambda ||u - lambda v||` for
/// reduced-space vectors.
fn std_residual(u: &CVector, v: &CVector) -> f64 {
    let nv = v.norm();
    if nv <= 1e-14 {
        return u.norm();
    }
    let cross = v.dotc(u).norm();
    (u.norm_squared() - (cross / nv).powi(2)).max(0.0).sqrt()
}

/// The two refinement infima of the parameterized upper-bound family:
/// `mu = inf [g - g^2/(4 ||S z||_A^2)]` over the unit A-sphere with
/// `g(z) = residual_inf(S z, z)^2`, and `eta` the same with the adjoint in
/// place of `S`. The degenerate `||S z||_A = 0` branch contributes 0.
///
/// Both values are upper approximations of the true infima (the safe
/// direction for the bounds that subtract them). A sample evaluating below
/// `-1e-10` (scaled) is reported as an error for investigation, since the
/// bracket is nonnegative by construction.
pub fn mu_eta(a: &HermitianPsd, s: &Operator, cfg: &OptimizerConfig) -> Result<(f64, f64)> {
    cfg.validate()?;
    let pair = reduce(a, s)?;
    mu_eta_reduced(&pair.reduced, cfg)
}

/// The refinement infima evaluated directly on a compression matrix.
pub(crate) fn mu_eta_reduced(t: &CMatrix, cfg: &OptimizerConfig) -> Result<(f64, f64)> {
    let mu = bracket_inf(t, cfg, MU_SALT)?;
    let eta = bracket_inf(&t.adjoint(), cfg, ETA_SALT)?;
    Ok((mu, eta))
}

fn bracket_inf(t: &CMatrix, cfg: &OptimizerConfig, salt: u64) -> Result<f64> {
    let scale = spectral_norm(t).max(1.0);
    let objective = move |y: &CVector| {
        let ty = t * y;
        let nty = ty.norm();
        if nty <= 1e-12 * scale {
            return 0.0;
        }
        let g = std_residual(&ty, y).powi(2);
        g - g * g / (4.0 * nty * nty)
    };
    let value = sphere_inf(t.nrows(), &objective, cfg, salt);
    if value < -1e-10 * scale * scale {
        return Err(Error::ToleranceFailure {
            context: "refinement bracket evaluated negative",
            value,
        });
    }
    Ok(value)
}

/// Infimum over the unit A-sphere of the correction term
/// `delta(S_adj S z, S z, z)` from the refined two-vector inequality;
/// nonnegative, with the 0 branch whenever either argument seminorm
/// vanishes.
pub fn delta_inf(a: &HermitianPsd, s: &Operator, cfg: &OptimizerConfig) -> Result<f64> {
    cfg.validate()?;
    let pair = reduce(a, s)?;
    delta_inf_reduced(&pair.reduced, cfg)
}

/// The delta correction infimum evaluated directly on a compression matrix.
pub(crate) fn delta_inf_reduced(t: &CMatrix, cfg: &OptimizerConfig) -> Result<f64> {
    let th = t.adjoint();
    let tht = &th * t;
    let scale = spectral_norm(t).max(1.0);
    let objective = move |y: &CVector| {
        let b = t * y;
        let a_vec = &tht * y;
        let na = a_vec.norm();
        let nb = b.norm();
        if na <= 1e-12 * scale * scale || nb <= 1e-12 * scale {
            return 0.0;
        }
        let inner_ac = y.dotc(&a_vec).norm();
        let term = inner_ac * std_residual(y, &b) - 0.5 * std_residual(&a_vec, &b);
        (nb / na) * term * term
    };
    let value = sphere_inf(t.nrows(), &objective, cfg, DELTA_SALT);
    if value < -1e-10 * scale * scale {
        return Err(Error::ToleranceFailure {
            context: "delta correction evaluated negative",
            value,
        });
    }
    Ok(value)
}

/// Shared machinery for the refinement infima: dense sampling to locate
/// promising basins, then finite-difference descent from the best samples.
fn sphere_inf(dim: usize, f: &dyn Fn(&CVector) -> f64, cfg: &OptimizerConfig, salt: u64) -> f64 {
    let seed = stream_seed(cfg.seed, salt);
    let mut rng = rng_for(seed, 0);
    let mut samples: Vec<(f64, CVector)> = (0..1024)
        .map(|_| {
            let y = random_unit_vector(&mut rng, dim);
            (f(&y), y)
        })
        .collect();
    samples.sort_by(|p, q| p.0.total_cmp(&q.0));
    let best_sample = samples[0].0;
    let seeds: Vec<CVector> = samples.into_iter().take(4).map(|(_, y)| y).collect();
    let descended = minimize_on_sphere_fd(
        dim,
        f,
        &seeds,
        (cfg.restarts / 4).max(4),
        cfg.max_iters,
        stream_seed(seed, 1),
    );
    descended.value.min(best_sample)
}
