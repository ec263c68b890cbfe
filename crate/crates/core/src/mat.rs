//! Dense complex matrix aliases and small helpers.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Dense complex matrix.
pub type CMatrix = DMatrix<Complex64>;
/// Dense complex column vector.
pub type CVector = DVector<Complex64>;

/// Largest entry magnitude, 0 for an empty matrix.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Frobenius distance between two matrices of equal shape.
pub fn frob_dist(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).norm()
}

/// Relative deviation of `m` from its conjugate transpose.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let scale = max_abs(m).max(1.0);
    let mut dev: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev / scale
}

/// Hermitian part (M + M^H)/2.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Spectral norm: largest singular value. 0 for an empty matrix.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().max()
}

/// Smallest singular value. 0 for an empty matrix.
pub fn min_singular_value(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().min()
}

/// Right singular vector for the largest singular value.
pub fn top_right_singular_vector(m: &CMatrix) -> CVector {
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let mut top = 0;
    for (k, s) in svd.singular_values.iter().enumerate() {
        if *s > svd.singular_values[top] {
            top = k;
        }
    }
    v_t.row(top).adjoint()
}

/// Eigenvalues of a Hermitian matrix in descending order with matching
/// orthonormal eigenvectors as columns.
pub fn hermitian_eigen_desc(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let se = nalgebra::SymmetricEigen::new(m.clone());
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[j].total_cmp(&se.eigenvalues[i]));
    let vals: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vecs = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &se.eigenvectors.column(src));
    }
    (vals, vecs)
}

/// Largest and smallest eigenvalue of a Hermitian matrix.
pub fn hermitian_extreme_eigenvalues(m: &CMatrix) -> (f64, f64) {
    let ev = m.clone().symmetric_eigenvalues();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in ev.iter() {
        lo = lo.min(*v);
        hi = hi.max(*v);
    }
    (hi, lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigen_desc_orders_and_diagonalizes() {
        let m = CMatrix::from_row_slice(
            3,
            3,
            &[
                c(2.0, 0.0),
                c(0.0, 1.0),
                c(0.5, 0.0),
                c(0.0, -1.0),
                c(-1.0, 0.0),
                c(0.0, 0.0),
                c(0.5, 0.0),
                c(0.0, 0.0),
                c(0.5, 0.0),
            ],
        );
        let (vals, vecs) = hermitian_eigen_desc(&m);
        assert!(vals.windows(2).all(|w| w[0] >= w[1]));
        // U^H U = I
        let gram = vecs.adjoint() * &vecs;
        assert!(frob_dist(&gram, &CMatrix::identity(3, 3)) < 1e-10);
        // M U = U diag(vals)
        let lam = CMatrix::from_diagonal(&CVector::from_iterator(
            3,
            vals.iter().map(|&v| c(v, 0.0)),
        ));
        assert!(frob_dist(&(&m * &vecs), &(&vecs * lam)) < 1e-9);
    }

    #[test]
    fn spectral_norm_matches_singular_values() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(3.0, 4.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!((spectral_norm(&m) - 5.0).abs() < 1e-12);
        assert!(min_singular_value(&m).abs() < 1e-12);
    }

    #[test]
    fn hermitian_deviation_detects_asymmetry() {
        let sym = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]);
        assert!(hermitian_deviation(&sym) < 1e-15);
        let asym = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(2.0, 0.0)]);
        assert!(hermitian_deviation(&asym) > 0.5);
    }
}
