//! Compression of a weighted operator onto the range of the weight.
//!
//! For a weight A of rank r with orthonormal range basis V, the r x r
//! compression `T = V^H A^{1/2} S A^{+1/2} V` carries the weighted geometry
//! to the standard geometry of C^r: with `y = V^H A^{1/2} z` one has
//! `<Sz,z>_A = <Ty,y>`, `||Sz||_A = ||Ty||`, and z of unit seminorm sweeps
//! the whole unit sphere of C^r. Every radius and bound in this crate is
//! computed through this compression.

use crate::error::Result;
use crate::mat::{CMatrix, CVector};
use crate::operator::Operator;

use crate::weight::HermitianPsd;

/// A weight together with the compression of one operator onto its range.
#[derive(Debug, Clone)]
pub struct ReducedPair {
    /// The validated weight.
    pub weight: HermitianPsd,
    /// The r x r compressed operator.
    pub reduced: CMatrix,
}

/// Compresses `s` onto the range of `a`; errors when `s` does not map the
/// null space of `a` into itself (no adjoint, no compression identity).
pub fn reduce(a: &HermitianPsd, s: &Operator) -> Result<ReducedPair> {
    if !crate::semi::admits_a_adjoint(a, s)? {
        return Err(crate::error::Error::NotInBa);
    }
    Ok(ReducedPair {
        weight: a.clone(),
        reduced: reduce_matrix(a, s),
    })
}

/// The compression matrix alone, for callers that assemble several
/// operators against one weight. The caller is responsible for membership.
pub fn reduce_matrix(a: &HermitianPsd, s: &Operator) -> CMatrix {
    let v = &a.range_basis;
    v.adjoint() * &a.sqrt * s.matrix() * &a.pinv_sqrt * v
}

/// Lifts a reduced-space unit vector back to an ambient vector of unit
/// seminorm, `z = A^{+1/2} V y`.
pub fn lift(a: &HermitianPsd, y: &CVector) -> CVector {
    &a.pinv_sqrt * (&a.range_basis * y)
}

/// Pushes an ambient vector to the reduced space, `y = V^H A^{1/2} z`.
pub fn push(a: &HermitianPsd, z: &CVector) -> CVector {
    a.range_basis.adjoint() * (&a.sqrt * z)
}
