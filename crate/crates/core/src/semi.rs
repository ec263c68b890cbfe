//! The weighted semi-inner product, membership test, and weighted adjoint.

use crate::error::{Error, Result};
use crate::mat::{spectral_norm, CVector};
use crate::operator::Operator;
use crate::weight::HermitianPsd;
use num_complex::Complex64;

/// Semi-inner product `<Ax, z>`, linear in the first argument and
/// conjugate-linear in the second.
pub fn a_inner(a: &HermitianPsd, x: &CVector, z: &CVector) -> Result<Complex64> {
    check_vec(a, x)?;
    check_vec(a, z)?;
    let ax = &a.matrix * x;
    Ok(z.dotc(&ax))
}

/// Seminorm `sqrt(<Az, z>)`; the radicand is clamped at zero against
/// rounding.
pub fn a_norm(a: &HermitianPsd, z: &CVector) -> Result<f64> {
    let v = a_inner(a, z, z)?;
    Ok(v.re.max(0.0).sqrt())
}

/// Whether the operator maps the null space of the weight into itself; in
/// finite dimensions this is exactly the condition for a weighted adjoint
/// to exist. Vacuously true for an invertible weight.
///
/// The tolerance self-calibrates against the weight's own kernel
/// residual `max_k |A k|` over the stored kernel basis: eigensolver noise
/// makes that residual nonzero, and any vector in the kernel's span
/// inherits it scaled by the operator norm, while genuine kernel escape
/// produces leakage at the scale of the operator entries themselves.
pub fn admits_a_adjoint(a: &HermitianPsd, s: &Operator) -> Result<bool> {
    check_op(a, s)?;
    if a.kernel_basis.ncols() == 0 {
        return Ok(true);
    }
    let kernel_residual = (&a.matrix * &a.kernel_basis)
        .column_iter()
        .map(|col| col.norm())
        .fold(0.0f64, f64::max);
    let tol =
        a.rank_tol.max(10.0 * kernel_residual) * spectral_norm(s.matrix()) * a.dim as f64;
    let image = &a.matrix * (s.matrix() * &a.kernel_basis);
    for col in image.column_iter() {
        if col.norm() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The weighted adjoint `A^+ S^H A`, the distinguished solution Z of
/// A Z = S^H A with range inside range(A).
pub fn a_adjoint(a: &HermitianPsd, s: &Operator) -> Result<Operator> {
    if !admits_a_adjoint(a, s)? {
        return Err(Error::NotInBa);
    }
    let m = &a.pinv * s.matrix().adjoint() * &a.matrix;
    Operator::new(m)
}

/// Weighted real part `(S + S^#)/2`.
pub fn re_part(a: &HermitianPsd, s: &Operator) -> Result<Operator> {
    let adj = a_adjoint(a, s)?;
    Ok(s.add(&adj)?.scale(Complex64::new(0.5, 0.0)))
}

/// Weighted imaginary part `(S - S^#)/(2i)`.
pub fn im_part(a: &HermitianPsd, s: &Operator) -> Result<Operator> {
    let adj = a_adjoint(a, s)?;
    Ok(s.sub(&adj)?.scale(Complex64::new(0.0, -0.5)))
}

/// Whether `A * S` is Hermitian within 1e-10 relative, i.e. S is
/// selfadjoint with respect to the weight.
pub fn is_a_selfadjoint(a: &HermitianPsd, s: &Operator) -> Result<bool> {
    check_op(a, s)?;
    let m = &a.matrix * s.matrix();
    Ok(crate::mat::hermitian_deviation(&m) <= 1e-10)
}

fn check_vec(a: &HermitianPsd, v: &CVector) -> Result<()> {
    if v.len() != a.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: v.len(),
        });
    }
    Ok(())
}

fn check_op(a: &HermitianPsd, s: &Operator) -> Result<()> {
    if s.dim() != a.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: s.dim(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::CMatrix;
    use crate::mat::frob_dist;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real_mat(n: usize, entries: &[f64]) -> CMatrix {
        CMatrix::from_row_slice(n, n, &entries.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>())
    }

    fn ones_weight() -> HermitianPsd {
        HermitianPsd::new(&real_mat(2, &[1.0, 1.0, 1.0, 1.0])).unwrap()
    }

    #[test]
    fn inner_product_convention() {
        // Weights store a spectral reconstruction, so values are exact only
        // up to rounding in the eigensystem product.
        let close = |got: Complex64, want: Complex64| (got - want).norm() < 1e-12;

        let a = HermitianPsd::new(&CMatrix::identity(2, 2)).unwrap();
        let e1 = CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(close(a_inner(&a, &e1, &e1).unwrap(), c(1.0, 0.0)));

        let d = HermitianPsd::new(&real_mat(2, &[1.0, 0.0, 0.0, 2.0])).unwrap();
        let e2 = CVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(close(a_inner(&d, &e2, &e2).unwrap(), c(2.0, 0.0)));

        // Degenerate weight pairs distinct basis vectors.
        let x = CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let z = CVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(close(a_inner(&ones_weight(), &x, &z).unwrap(), c(1.0, 0.0)));

        // Conjugate linearity in the second slot.
        let zi = z.map(|v| v * c(0.0, 1.0));
        assert!(close(a_inner(&ones_weight(), &x, &zi).unwrap(), c(0.0, -1.0)));
    }

    #[test]
    fn membership_detects_kernel_escape() {
        let a = ones_weight();
        let stays = Operator::new(real_mat(2, &[2.0, 2.0, 0.0, 0.0])).unwrap();
        assert!(admits_a_adjoint(&a, &stays).unwrap());
        let escapes = Operator::new(real_mat(2, &[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert!(!admits_a_adjoint(&a, &escapes).unwrap());
        assert!(matches!(a_adjoint(&a, &escapes), Err(Error::NotInBa)));
    }

    #[test]
    fn membership_vacuous_for_invertible_weight() {
        let a = HermitianPsd::new(&CMatrix::identity(2, 2)).unwrap();
        let s = Operator::new(real_mat(2, &[3.0, 1.0, 7.0, 2.0])).unwrap();
        assert!(admits_a_adjoint(&a, &s).unwrap());
    }

    #[test]
    fn zero_operator_admits_adjoint_everywhere() {
        let a = ones_weight();
        let zero = Operator::zeros(2);
        assert!(admits_a_adjoint(&a, &zero).unwrap());
    }

    #[test]
    fn adjoint_examples() {
        // Rank-one weight: the worked introductory pair.
        let a = ones_weight();
        let s = Operator::new(real_mat(2, &[2.0, 2.0, 0.0, 0.0])).unwrap();
        let adj = a_adjoint(&a, &s).unwrap();
        assert!(frob_dist(adj.matrix(), &real_mat(2, &[1.0, 1.0, 1.0, 1.0])) < 1e-12);

        // Identity weight: classical adjoint.
        let id = HermitianPsd::new(&CMatrix::identity(2, 2)).unwrap();
        let m = CMatrix::from_row_slice(2, 2, &[c(1.0, 2.0), c(0.0, 1.0), c(3.0, 0.0), c(0.0, -4.0)]);
        let t = Operator::new(m.clone()).unwrap();
        let adj = a_adjoint(&id, &t).unwrap();
        assert!(frob_dist(adj.matrix(), &m.adjoint()) < 1e-12);

        // Invertible diagonal weight.
        let d = HermitianPsd::new(&real_mat(2, &[1.0, 0.0, 0.0, 2.0])).unwrap();
        let nil = Operator::new(real_mat(2, &[0.0, 1.0, 0.0, 0.0])).unwrap();
        let adj = a_adjoint(&d, &nil).unwrap();
        assert!(frob_dist(adj.matrix(), &real_mat(2, &[0.0, 0.0, 0.5, 0.0])) < 1e-12);
    }

    #[test]
    fn adjoint_satisfies_defining_equation_and_range() {
        let a = ones_weight();
        let s = Operator::new(real_mat(2, &[2.0, 2.0, 0.0, 0.0])).unwrap();
        let adj = a_adjoint(&a, &s).unwrap();
        // A S^# = S^H A
        let lhs = &a.matrix * adj.matrix();
        let rhs = s.matrix().adjoint() * &a.matrix;
        assert!(frob_dist(&lhs, &rhs) < 1e-10);
        // range(S^#) inside range(A): P S^# = S^#
        let p = a.range_projection();
        assert!(frob_dist(&(&p * adj.matrix()), adj.matrix()) < 1e-10);
        // (S^#)^# = P S P
        let adj2 = a_adjoint(&a, &adj).unwrap();
        let psp = &p * s.matrix() * &p;
        assert!(frob_dist(adj2.matrix(), &psp) < 1e-10);
    }

    #[test]
    fn real_and_imaginary_parts() {
        let d = HermitianPsd::new(&real_mat(2, &[1.0, 0.0, 0.0, 2.0])).unwrap();
        let nil = Operator::new(real_mat(2, &[0.0, 1.0, 0.0, 0.0])).unwrap();
        let re = re_part(&d, &nil).unwrap();
        assert!(frob_dist(re.matrix(), &real_mat(2, &[0.0, 0.5, 0.25, 0.0])) < 1e-12);

        // Both parts are selfadjoint for the weight, and A(Re + i Im) = AS.
        let im = im_part(&d, &nil).unwrap();
        assert!(is_a_selfadjoint(&d, &re).unwrap());
        assert!(is_a_selfadjoint(&d, &im).unwrap());
        let recombined = re.matrix() + im.matrix() * c(0.0, 1.0);
        let lhs = &d.matrix * recombined;
        let rhs = &d.matrix * nil.matrix();
        assert!(frob_dist(&lhs, &rhs) < 1e-10);

        // A diagonal operator aligned with a diagonal weight is its own
        // weighted real part.
        let s = Operator::new(real_mat(2, &[1.0, 0.0, 0.0, 2.0])).unwrap();
        let re = re_part(&d, &s).unwrap();
        assert!(frob_dist(re.matrix(), s.matrix()) < 1e-12);
        let im = im_part(&d, &s).unwrap();
        assert!(crate::mat::max_abs(im.matrix()) < 1e-12);
    }
}
