//! Numerical slack checks for the scalar and vector inequalities the
//! bound derivations rest on.
//!
//! Each check evaluates one inequality at concrete inputs and returns
//! `RHS - LHS`; a correct inequality never yields a slack below the noise
//! floor (-1e-10 at unit scale). The checks are pure and deterministic, so
//! a fuzz harness can fold thousands of samples into a
//! [`LemmaCheckResult`] per inequality.

use crate::error::{Error, Result};
use crate::mat::{hermitian_deviation, hermitian_extreme_eigenvalues, CVector};
use crate::operator::Operator;
use crate::radii::residual_inf;
use crate::semi::{a_adjoint, a_inner, a_norm};
use crate::weight::HermitianPsd;
use num_complex::Complex64;
use serde::Serialize;

/// Aggregated outcome of running one inequality check over a sample set.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaCheckResult {
    /// Stable identifier of the inequality.
    pub lemma_id: String,
    /// Number of samples folded in.
    pub samples: usize,
    /// Smallest slack observed across the samples.
    pub min_slack: f64,
    /// Number of samples with slack below -1e-10.
    pub violations: usize,
}

impl LemmaCheckResult {
    /// An empty accumulator for the given inequality.
    pub fn new(lemma_id: &str) -> Self {
        Self {
            lemma_id: lemma_id.to_string(),
            samples: 0,
            min_slack: f64::INFINITY,
            violations: 0,
        }
    }

    /// Folds one sample's slack into the tally.
    pub fn record(&mut self, slack: f64) {
        self.samples += 1;
        self.min_slack = self.min_slack.min(slack);
        if slack < -1e-10 {
            self.violations += 1;
        }
    }
}

/// Errors unless the vector has unit seminorm (within 1e-8); vectors with
/// seminorm below 1e-12 are always rejected because several inequalities
/// divide by seminorms.
fn require_a_unit(a: &HermitianPsd, v: &CVector) -> Result<f64> {
    let norm = a_norm(a, v)?;
    if norm < 1e-12 || (norm - 1.0).abs() > 1e-8 {
        return Err(Error::NotUnitVector { norm });
    }
    Ok(norm)
}

/// Slack of the parameterized product bound: for a unit-seminorm pivot
/// `c` and nonzero parameter, the product `|<a,c><c,b>|` of the two
/// projections is at most `(max{1, |alpha-1|} |a| |b| + |<a,b>|) / |alpha|`
/// (seminorms and semi-inner products throughout).
pub fn check_kz(
    a: &HermitianPsd,
    av: &CVector,
    bv: &CVector,
    cv: &CVector,
    alpha: Complex64,
) -> Result<f64> {
    if alpha.norm() == 0.0 {
        return Err(Error::InvalidParam(
            "the product-bound parameter must be nonzero".into(),
        ));
    }
    require_a_unit(a, cv)?;
    let lhs = (a_inner(a, av, cv)? * a_inner(a, cv, bv)?).norm();
    let coeff = (alpha - Complex64::new(1.0, 0.0)).norm().max(1.0);
    let rhs = (coeff * a_norm(a, av)? * a_norm(a, bv)? + a_inner(a, av, bv)?.norm())
        / alpha.norm();
    Ok(rhs - lhs)
}

/// The refinement subtracted from the arithmetic-mean product bound: zero
/// when either seminorm vanishes, otherwise a weighted square of the gap
/// between the pivot's projection residual and half the pair's residual.
pub fn refinement_delta(
    a: &HermitianPsd,
    av: &CVector,
    bv: &CVector,
    cv: &CVector,
) -> Result<f64> {
    let na = a_norm(a, av)?;
    let nb = a_norm(a, bv)?;
    if na * nb < 1e-14 {
        return Ok(0.0);
    }
    let term = a_inner(a, av, cv)?.norm() * residual_inf(a, cv, bv)?
        - 0.5 * residual_inf(a, av, bv)?;
    Ok((nb / na) * term * term)
}

/// Slack of the refined arithmetic-mean product bound: the projection
/// product is at most half of `|a| |b| + |<a,b>|` minus the
/// [`refinement_delta`] of the triple.
pub fn check_kzlaa(
    a: &HermitianPsd,
    av: &CVector,
    bv: &CVector,
    cv: &CVector,
) -> Result<f64> {
    require_a_unit(a, cv)?;
    let lhs = (a_inner(a, av, cv)? * a_inner(a, cv, bv)?).norm();
    let rhs = 0.5 * (a_norm(a, av)? * a_norm(a, bv)? + a_inner(a, av, bv)?.norm())
        - refinement_delta(a, av, bv, cv)?;
    Ok(rhs - lhs)
}

/// Slack of the mixed Cauchy-Schwarz bound: `|<Sx,z>|^2` is at most the
/// geometric mean of the Gram quadratic forms at `x` and `z` (both unit).
pub fn check_ll(
    a: &HermitianPsd,
    s: &Operator,
    x: &CVector,
    z: &CVector,
) -> Result<f64> {
    require_a_unit(a, x)?;
    require_a_unit(a, z)?;
    let adj = a_adjoint(a, s)?;
    let sx = s.matrix() * x;
    let gram_x = a_inner(a, &(adj.matrix() * &sx), x)?.re.max(0.0);
    let adj_z = adj.matrix() * z;
    let gram_z = a_inner(a, &(s.matrix() * &adj_z), z)?.re.max(0.0);
    let lhs = a_inner(a, &sx, z)?.norm().powi(2);
    Ok(gram_x.sqrt() * gram_z.sqrt() - lhs)
}

/// Slack of the power bound for weighted-positive operators: the
/// quadratic form of the n-th power dominates the n-th power of the
/// quadratic form at any unit vector.
pub fn check_power(
    a: &HermitianPsd,
    s: &Operator,
    z: &CVector,
    n: u32,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParam("the power must be positive".into()));
    }
    require_a_unit(a, z)?;
    let product = &a.matrix * s.matrix();
    let scale = product.iter().map(|e| e.norm()).fold(1.0, f64::max);
    let (_, lo) = hermitian_extreme_eigenvalues(&((&product + product.adjoint()) * Complex64::new(0.5, 0.0)));
    if hermitian_deviation(&product) > 1e-8 * scale || lo < -1e-8 * scale {
        return Err(Error::NotAPositive);
    }
    let base = a_inner(a, &(s.matrix() * z), z)?.re;
    let mut powered = z.clone();
    for _ in 0..n {
        powered = s.matrix() * &powered;
    }
    let lifted = a_inner(a, &powered, z)?.re;
    Ok(lifted - base.powi(n as i32))
}

/// Slack of the residual-refined Cauchy-Schwarz bound: `|<x,z>|` is at
/// most `|z| (|x| - resid(x,z)^2 / (2|x|))` whenever `x` has nonzero
/// seminorm.
pub fn check_kkk(a: &HermitianPsd, x: &CVector, z: &CVector) -> Result<f64> {
    let nx = a_norm(a, x)?;
    if nx <= 1e-12 {
        return Err(Error::InvalidParam(
            "the first vector must have seminorm above 1e-12".into(),
        ));
    }
    let resid = residual_inf(a, x, z)?;
    let rhs = a_norm(a, z)? * (nx - resid * resid / (2.0 * nx));
    Ok(rhs - a_inner(a, x, z)?.norm())
}

/// Slacks of the two scalar mean inequalities for positive `a`, `c`:
/// the geometric blend sits below the arithmetic blend, which sits below
/// the r-th power blend's r-th root. Returns both slacks in that order.
pub fn check_scalar_interp(a: f64, c: f64, alpha: f64, r: f64) -> Result<(f64, f64)> {
    if a <= 0.0 || c <= 0.0 {
        return Err(Error::InvalidParam("both scalars must be positive".into()));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParam(format!(
            "the blend parameter must lie in [0, 1], got {alpha}"
        )));
    }
    if r < 1.0 {
        return Err(Error::InvalidParam(format!(
            "the power must be at least 1, got {r}"
        )));
    }
    let arithmetic = alpha * a + (1.0 - alpha) * c;
    let geometric = a.powf(alpha) * c.powf(1.0 - alpha);
    let power_mean = (alpha * a.powf(r) + (1.0 - alpha) * c.powf(r)).powf(1.0 / r);
    Ok((arithmetic - geometric, power_mean - arithmetic))
}

/// Slack of the two-projection bound: the squared projections of `x` onto
/// `v` and `u` together stay below
/// `|x|^2 (max{|v|^2, |u|^2} + |<v,u>|)`.
pub fn check_l(
    a: &HermitianPsd,
    x: &CVector,
    u: &CVector,
    v: &CVector,
) -> Result<f64> {
    let lhs = a_inner(a, x, v)?.norm().powi(2) + a_inner(a, x, u)?.norm().powi(2);
    let nu = a_norm(a, u)?;
    let nv = a_norm(a, v)?;
    let rhs = a_norm(a, x)?.powi(2)
        * ((nv * nv).max(nu * nu) + a_inner(a, v, u)?.norm());
    Ok(rhs - lhs)
}

/// Slack of the quadratic-mean variant of the two-projection bound, with
/// the root of `|u|^4 + 2|<u,v>|^2 + |v|^4` on the right side.
pub fn check_lm310(
    a: &HermitianPsd,
    x: &CVector,
    u: &CVector,
    v: &CVector,
) -> Result<f64> {
    let lhs = a_inner(a, x, u)?.norm().powi(2) + a_inner(a, x, v)?.norm().powi(2);
    let nu = a_norm(a, u)?;
    let nv = a_norm(a, v)?;
    let rhs = a_norm(a, x)?.powi(2)
        * (nu.powi(4) + 2.0 * a_inner(a, u, v)?.norm().powi(2) + nv.powi(4)).sqrt();
    Ok(rhs - lhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::CMatrix;
    use crate::rng::{random_vector, rng_for};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real_mat(n: usize, entries: &[f64]) -> CMatrix {
        CMatrix::from_row_slice(n, n, &entries.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>())
    }

    fn identity2() -> HermitianPsd {
        HermitianPsd::new(&CMatrix::identity(2, 2)).unwrap()
    }

    fn diag12() -> HermitianPsd {
        HermitianPsd::new(&real_mat(2, &[1.0, 0.0, 0.0, 2.0])).unwrap()
    }

    fn e(k: usize) -> CVector {
        let mut v = CVector::zeros(2);
        v[k] = c(1.0, 0.0);
        v
    }

    fn normalized(a: &HermitianPsd, v: &CVector) -> CVector {
        v / Complex64::new(a_norm(a, v).unwrap(), 0.0)
    }

    #[test]
    fn product_bound_equality_and_orthogonality() {
        let a = identity2();
        let unit = e(0);
        // Collinear triple at parameter 2: both sides equal 1.
        let slack = check_kz(&a, &unit, &unit, &unit, c(2.0, 0.0)).unwrap();
        assert!(slack.abs() < 1e-12);

        // First vector orthogonal to the pivot: the left side vanishes.
        let slack = check_kz(&a, &e(1), &unit, &unit, c(1.0, 1.0)).unwrap();
        assert!(slack >= 0.0);

        assert!(matches!(
            check_kz(&a, &unit, &unit, &unit, c(0.0, 0.0)),
            Err(Error::InvalidParam(_))
        ));
        let long = e(0) * c(3.0, 0.0);
        assert!(matches!(
            check_kz(&a, &unit, &unit, &long, c(2.0, 0.0)),
            Err(Error::NotUnitVector { .. })
        ));
    }

    #[test]
    fn refined_product_bound_cases() {
        let a = identity2();
        let unit = e(0);
        // Collinear triple: refinement vanishes and the bound is tight.
        let slack = check_kzlaa(&a, &unit, &unit, &unit).unwrap();
        assert!(slack.abs() < 1e-12);

        // Zero first vector takes the zero branch of the refinement.
        let zero = CVector::zeros(2);
        let slack = check_kzlaa(&a, &zero, &e(1), &unit).unwrap();
        assert!(slack.abs() < 1e-12);
    }

    #[test]
    fn refined_bound_implies_the_parameter_two_bound() {
        // The parameter-2 product bound differs from the refined one by
        // exactly the refinement term, which must be nonnegative.
        let a = diag12();
        let mut rng = rng_for(41, 0);
        for _ in 0..200 {
            let av = random_vector(&mut rng, 2);
            let bv = random_vector(&mut rng, 2);
            let cv = normalized(&a, &random_vector(&mut rng, 2));
            let delta = refinement_delta(&a, &av, &bv, &cv).unwrap();
            assert!(delta >= -1e-12);
            let kz = check_kz(&a, &av, &bv, &cv, c(2.0, 0.0)).unwrap();
            let refined = check_kzlaa(&a, &av, &bv, &cv).unwrap();
            assert!((kz - refined - delta).abs() < 1e-9);
            assert!(refined >= -1e-10);
        }
    }

    #[test]
    fn mixed_cauchy_schwarz_cases() {
        let a = identity2();
        let unit = e(0);
        let id = Operator::identity(2);
        assert!(check_ll(&a, &id, &unit, &unit).unwrap().abs() < 1e-12);
        assert!(check_ll(&a, &Operator::zeros(2), &unit, &e(1)).unwrap().abs() < 1e-12);

        let w = diag12();
        let s = Operator::new(real_mat(2, &[0.0, 1.0, 0.0, 0.0])).unwrap();
        let mut rng = rng_for(42, 0);
        for _ in 0..200 {
            let x = normalized(&w, &random_vector(&mut rng, 2));
            let z = normalized(&w, &random_vector(&mut rng, 2));
            assert!(check_ll(&w, &s, &x, &z).unwrap() >= -1e-10);
        }
    }

    #[test]
    fn power_bound_cases() {
        let a = identity2();
        let z = normalized(&a, &(e(0) + e(1)));
        let s = Operator::new(real_mat(2, &[1.0, 0.0, 0.0, 4.0])).unwrap();
        // n = 1 is an identity.
        assert!(check_power(&a, &s, &z, 1).unwrap().abs() < 1e-12);
        // Hand-evaluated square case: 8.5 - 2.5^2.
        let slack = check_power(&a, &s, &z, 2).unwrap();
        assert!((slack - 2.25).abs() < 1e-12);

        let nil = Operator::new(real_mat(2, &[0.0, 1.0, 0.0, 0.0])).unwrap();
        assert!(matches!(
            check_power(&a, &nil, &z, 2),
            Err(Error::NotAPositive)
        ));
        assert!(matches!(
            check_power(&a, &s, &z, 0),
            Err(Error::InvalidParam(_))
        ));

        // Gram squares of weighted operators satisfy the hypothesis.
        let w = diag12();
        let s0 = Operator::new(real_mat(2, &[0.0, 1.0, 0.0, 0.0])).unwrap();
        let gram = a_adjoint(&w, &s0).unwrap().compose(&s0).unwrap();
        let mut rng = rng_for(43, 0);
        for _ in 0..100 {
            let z = normalized(&w, &random_vector(&mut rng, 2));
            for n in [2u32, 3] {
                assert!(check_power(&w, &gram, &z, n).unwrap() >= -1e-10);
            }
        }
    }

    #[test]
    fn residual_refined_cauchy_schwarz_cases() {
        let a = diag12();
        let x = e(0) + e(1);
        // Collinear pair: the residual vanishes and the bound is tight.
        assert!(check_kkk(&a, &x, &x).unwrap().abs() < 1e-12);
        assert!(matches!(
            check_kkk(&a, &CVector::zeros(2), &x),
            Err(Error::InvalidParam(_))
        ));
        let mut rng = rng_for(44, 0);
        for _ in 0..200 {
            let x = random_vector(&mut rng, 2);
            let z = random_vector(&mut rng, 2);
            if a_norm(&a, &x).unwrap() > 1e-6 {
                assert!(check_kkk(&a, &x, &z).unwrap() >= -1e-10);
            }
        }
    }

    #[test]
    fn scalar_mean_chain() {
        let (lo, hi) = check_scalar_interp(3.0, 3.0, 0.3, 2.5).unwrap();
        assert!(lo.abs() < 1e-12 && hi.abs() < 1e-12);
        let (lo, hi) = check_scalar_interp(1.0, 9.0, 0.5, 2.0).unwrap();
        assert!(lo > 0.0 && hi > 0.0);
        assert!(check_scalar_interp(0.0, 1.0, 0.5, 2.0).is_err());
        assert!(check_scalar_interp(1.0, 1.0, 1.5, 2.0).is_err());
        assert!(check_scalar_interp(1.0, 1.0, 0.5, 0.5).is_err());
    }

    #[test]
    fn two_projection_bounds() {
        let a = diag12();
        let mut rng = rng_for(45, 0);
        for _ in 0..200 {
            let x = random_vector(&mut rng, 2);
            let u = random_vector(&mut rng, 2);
            let v = random_vector(&mut rng, 2);
            assert!(check_l(&a, &x, &u, &v).unwrap() >= -1e-10);
            assert!(check_lm310(&a, &x, &u, &v).unwrap() >= -1e-10);
        }
        // Equal directions reduce the first bound to Cauchy-Schwarz.
        let x = random_vector(&mut rng, 2);
        let u = random_vector(&mut rng, 2);
        assert!(check_l(&a, &x, &u, &u).unwrap() >= -1e-12);
    }

    #[test]
    fn result_accumulator_counts_violations() {
        let mut result = LemmaCheckResult::new("demo");
        result.record(0.5);
        result.record(-5e-11);
        result.record(1.0);
        assert_eq!(result.samples, 3);
        assert_eq!(result.violations, 0);
        assert!((result.min_slack + 5e-11).abs() < 1e-18);
        result.record(-1e-9);
        assert_eq!(result.violations, 1);
    }
}
