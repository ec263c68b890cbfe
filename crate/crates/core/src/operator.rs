//! Bounded operators as dense square matrices.

use crate::error::{Error, Result};
use crate::mat::CMatrix;
use num_complex::Complex64;

/// A square operator on the ambient space.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    matrix: CMatrix,
}

impl Operator {
    /// Wraps a square matrix.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        Ok(Self { matrix })
    }

    /// The zero operator of dimension `n`.
    pub fn zeros(n: usize) -> Self {
        Self {
            matrix: CMatrix::zeros(n, n),
        }
    }

    /// The identity operator of dimension `n`.
    pub fn identity(n: usize) -> Self {
        Self {
            matrix: CMatrix::identity(n, n),
        }
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Consumes the wrapper.
    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &Operator) -> Result<Operator> {
        self.check_dim(rhs.dim())?;
        Ok(Operator {
            matrix: &self.matrix * &rhs.matrix,
        })
    }

    /// Entrywise sum.
    pub fn add(&self, rhs: &Operator) -> Result<Operator> {
        self.check_dim(rhs.dim())?;
        Ok(Operator {
            matrix: &self.matrix + &rhs.matrix,
        })
    }

    /// Entrywise difference.
    pub fn sub(&self, rhs: &Operator) -> Result<Operator> {
        self.check_dim(rhs.dim())?;
        Ok(Operator {
            matrix: &self.matrix - &rhs.matrix,
        })
    }

    /// Scalar multiple.
    pub fn scale(&self, factor: Complex64) -> Operator {
        Operator {
            matrix: &self.matrix * factor,
        }
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if self.dim() != other {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other,
            });
        }
        Ok(())
    }
}
