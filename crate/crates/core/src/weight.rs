//! Validated positive-semidefinite weights and their spectral companions.

use crate::error::{Error, Result};
use crate::mat::{hermitian_deviation, hermitian_eigen_desc, CMatrix, CVector};
use num_complex::Complex64;

/// Default relative scale for the rank threshold.
pub const DEFAULT_RANK_TOL_SCALE: f64 = 1e-12;

/// A validated Hermitian positive-semidefinite weight together with the
/// spectral data every other computation relies on.
///
/// Eigenvalues are stored in descending order; those below `rank_tol` are
/// clamped to exactly zero before the square root and pseudoinverse are
/// formed, so a nearly singular weight cannot leak amplified noise into
/// them. The stored matrix is itself rebuilt from the clamped spectrum:
/// matrix, square root, pseudoinverse, and bases then share one exact
/// eigensystem, and kernel vectors annihilate the matrix at rounding
/// precision rather than at eigensolver precision.
#[derive(Debug, Clone)]
pub struct HermitianPsd {
    /// Ambient dimension n.
    pub dim: usize,
    /// The weight matrix, reconstructed from the clamped spectrum.
    pub matrix: CMatrix,
    /// Eigenvalues in descending order, clamped at the rank threshold.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors, columns matching `eigenvalues`.
    pub eigenvectors: CMatrix,
    /// Number of eigenvalues above the rank threshold.
    pub rank: usize,
    /// Principal square root.
    pub sqrt: CMatrix,
    /// Moore-Penrose pseudoinverse.
    pub pinv: CMatrix,
    /// Pseudoinverse of the square root.
    pub pinv_sqrt: CMatrix,
    /// First `rank` eigenvectors: an orthonormal basis of the range.
    pub range_basis: CMatrix,
    /// Remaining eigenvectors: an orthonormal basis of the null space.
    pub kernel_basis: CMatrix,
    /// Absolute threshold below which eigenvalues are treated as zero.
    pub rank_tol: f64,
    /// The relative scale the threshold was derived from.
    pub rank_tol_scale: f64,
}

/// Validates a candidate weight and precomputes its spectral companions.
///
/// The rank threshold is `rank_tol_scale * n * max|eigenvalue|`. An
/// eigenvalue below `-rank_tol` rejects the matrix; eigenvalues within
/// `rank_tol` of zero are clamped to exactly zero. A weight whose spectrum
/// is entirely below the threshold is rejected: the unit sphere of its
/// seminorm is empty, so none of the derived quantities exist.
pub fn validate_psd(m: &CMatrix, rank_tol_scale: f64) -> Result<HermitianPsd> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if !(rank_tol_scale > 0.0) {
        return Err(Error::InvalidParam(format!(
            "rank_tol_scale must be positive, got {rank_tol_scale}"
        )));
    }
    let n = m.nrows();
    let asymmetry = hermitian_deviation(m);
    if asymmetry > 1e-10 {
        return Err(Error::NotHermitian { asymmetry });
    }
    // Feed the eigensolver the exactly Hermitian part of the input.
    let symmetrized = crate::mat::hermitian_part(m);
    let (eigenvalues, eigenvectors) = hermitian_eigen_desc(&symmetrized);
    let max_abs_eig = eigenvalues.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    let rank_tol = rank_tol_scale * n as f64 * max_abs_eig;
    if let Some(&worst) = eigenvalues
        .iter()
        .filter(|&&v| v < -rank_tol)
        .min_by(|a, b| a.total_cmp(b))
    {
        return Err(Error::NotPsd { eigenvalue: worst });
    }
    let eigenvalues: Vec<f64> = eigenvalues
        .iter()
        .map(|&v| if v <= rank_tol { 0.0 } else { v })
        .collect();
    let rank = eigenvalues.iter().filter(|&&v| v > 0.0).count();
    if rank == 0 {
        return Err(Error::ZeroWeight);
    }

    let from_spectrum = |f: &dyn Fn(f64) -> f64| -> CMatrix {
        let d = CVector::from_iterator(
            n,
            eigenvalues.iter().map(|&v| Complex64::new(f(v), 0.0)),
        );
        &eigenvectors * CMatrix::from_diagonal(&d) * eigenvectors.adjoint()
    };
    // Store the reconstruction, not the input: the computed eigenvectors are
    // then an exact eigensystem of the stored matrix (up to rounding), so
    // everything derived from the spectrum stays consistent with it even
    // when the eigensolver resolved the input's eigenvectors imperfectly.
    let matrix = crate::mat::hermitian_part(&from_spectrum(&|v| v));
    let sqrt = from_spectrum(&|v| v.sqrt());
    let pinv = from_spectrum(&|v| if v > 0.0 { 1.0 / v } else { 0.0 });
    let pinv_sqrt = from_spectrum(&|v| if v > 0.0 { 1.0 / v.sqrt() } else { 0.0 });
    let range_basis = eigenvectors.columns(0, rank).into_owned();
    let kernel_basis = eigenvectors.columns(rank, n - rank).into_owned();

    Ok(HermitianPsd {
        dim: n,
        matrix,
        eigenvalues,
        eigenvectors,
        rank,
        sqrt,
        pinv,
        pinv_sqrt,
        range_basis,
        kernel_basis,
        rank_tol,
        rank_tol_scale,
    })
}

impl HermitianPsd {
    /// Validates with the default rank threshold scale.
    pub fn new(m: &CMatrix) -> Result<Self> {
        validate_psd(m, DEFAULT_RANK_TOL_SCALE)
    }

    /// Orthogonal projection onto the range, `range_basis * range_basis^H`.
    pub fn range_projection(&self) -> CMatrix {
        &self.range_basis * self.range_basis.adjoint()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::frob_dist;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real_mat(n: usize, entries: &[f64]) -> CMatrix {
        CMatrix::from_row_slice(n, n, &entries.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>())
    }

    #[test]
    fn identity_weight() {
        let a = HermitianPsd::new(&CMatrix::identity(2, 2)).unwrap();
        assert_eq!(a.rank, 2);
        assert!(frob_dist(&a.sqrt, &CMatrix::identity(2, 2)) < 1e-12);
        assert!(frob_dist(&a.pinv, &CMatrix::identity(2, 2)) < 1e-12);
        assert!(a.kernel_basis.ncols() == 0);
    }

    #[test]
    fn rank_one_weight_pseudoinverse() {
        let m = real_mat(2, &[1.0, 1.0, 1.0, 1.0]);
        let a = HermitianPsd::new(&m).unwrap();
        assert_eq!(a.rank, 1);
        let expected = real_mat(2, &[0.25, 0.25, 0.25, 0.25]);
        assert!(frob_dist(&a.pinv, &expected) < 1e-12);
        // Moore-Penrose identities by direct multiplication.
        let apa = &a.matrix * &a.pinv * &a.matrix;
        assert!(frob_dist(&apa, &a.matrix) < 1e-12);
        let pap = &a.pinv * &a.matrix * &a.pinv;
        assert!(frob_dist(&pap, &a.pinv) < 1e-12);
        let proj = &a.matrix * &a.pinv;
        assert!(frob_dist(&proj, &proj.adjoint()) < 1e-12);
    }

    #[test]
    fn indefinite_rejected() {
        let m = real_mat(2, &[1.0, 0.0, 0.0, -1.0]);
        match HermitianPsd::new(&m) {
            Err(Error::NotPsd { eigenvalue }) => assert!((eigenvalue + 1.0).abs() < 1e-12),
            other => panic!("expected NotPsd, got {other:?}"),
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = real_mat(2, &[1.0, 1.0, 0.0, 1.0]);
        assert!(matches!(
            HermitianPsd::new(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn zero_weight_rejected() {
        let m = real_mat(2, &[0.0, 0.0, 0.0, 0.0]);
        assert!(matches!(HermitianPsd::new(&m), Err(Error::ZeroWeight)));
    }

    #[test]
    fn near_singular_eigenvalue_clamped() {
        let m = real_mat(2, &[1.0, 0.0, 0.0, 1e-16]);
        let a = HermitianPsd::new(&m).unwrap();
        assert_eq!(a.rank, 1);
        assert_eq!(a.eigenvalues[1], 0.0);
        // The pseudoinverse must not blow up on the clamped direction.
        assert!(crate::mat::max_abs(&a.pinv) < 2.0);
    }

    #[test]
    fn bases_are_orthonormal_and_split() {
        let m = real_mat(3, &[2.0, 1.0, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0, 0.0]);
        let a = HermitianPsd::new(&m).unwrap();
        assert_eq!(a.rank, 2);
        let gram = a.range_basis.adjoint() * &a.range_basis;
        assert!(frob_dist(&gram, &CMatrix::identity(2, 2)) < 1e-12);
        let on_kernel = &a.matrix * &a.kernel_basis;
        assert!(crate::mat::max_abs(&on_kernel) <= a.rank_tol.max(1e-14));
    }
}
