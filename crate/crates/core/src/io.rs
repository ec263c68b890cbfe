//! JSON interchange structures for matrices and the input-file shapes the
//! command-line tools consume.
//!
//! A matrix is `{"dim": n, "entries": [[[re, im], ...], ...]}` with rows
//! listed top to bottom. Input files bundle named matrices: a pair file
//! carries a weight `A` and an operator `S`; a block file carries `A` with
//! off-diagonal factors `B` and `C`; a triple file carries `A` with two
//! operators `S` and `T`.

use crate::error::{Error, Result};
use crate::mat::CMatrix;
use crate::operator::Operator;
use crate::weight::HermitianPsd;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A dense complex matrix in interchange form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    /// Number of rows and columns.
    pub dim: usize,
    /// Row-major entries, each as `[re, im]`.
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixJson {
    /// Captures a square matrix.
    pub fn from_matrix(m: &CMatrix) -> Self {
        let dim = m.nrows();
        let entries = (0..dim)
            .map(|i| (0..dim).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect();
        Self { dim, entries }
    }

    /// Rebuilds the dense matrix, validating the row and column counts.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.entries.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: self.entries.len(),
            });
        }
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: row.len(),
                });
            }
            for (j, &[re, im]) in row.iter().enumerate() {
                m[(i, j)] = Complex64::new(re, im);
            }
        }
        Ok(m)
    }
}

/// Input file with a weight and one operator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairFile {
    #[serde(rename = "A")]
    pub a: MatrixJson,
    #[serde(rename = "S")]
    pub s: MatrixJson,
}

impl PairFile {
    /// Captures a weight and an operator.
    pub fn from_parts(a: &HermitianPsd, s: &Operator) -> Self {
        Self {
            a: MatrixJson::from_matrix(&a.matrix),
            s: MatrixJson::from_matrix(s.matrix()),
        }
    }

    /// Validates the weight and wraps the operator.
    pub fn into_parts(&self) -> Result<(HermitianPsd, Operator)> {
        let a = HermitianPsd::new(&self.a.to_matrix()?)?;
        let s = Operator::new(self.s.to_matrix()?)?;
        if s.dim() != a.dim {
            return Err(Error::DimensionMismatch {
                expected: a.dim,
                found: s.dim(),
            });
        }
        Ok((a, s))
    }
}

/// Input file with a weight and two off-diagonal factors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockFile {
    #[serde(rename = "A")]
    pub a: MatrixJson,
    #[serde(rename = "B")]
    pub b: MatrixJson,
    #[serde(rename = "C")]
    pub c: MatrixJson,
}

impl BlockFile {
    /// Validates the weight and wraps both factors.
    pub fn into_parts(&self) -> Result<(HermitianPsd, Operator, Operator)> {
        let a = HermitianPsd::new(&self.a.to_matrix()?)?;
        let b = Operator::new(self.b.to_matrix()?)?;
        let c = Operator::new(self.c.to_matrix()?)?;
        for op in [&b, &c] {
            if op.dim() != a.dim {
                return Err(Error::DimensionMismatch {
                    expected: a.dim,
                    found: op.dim(),
                });
            }
        }
        Ok((a, b, c))
    }
}

/// Input file with a weight and two operators.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TripleFile {
    #[serde(rename = "A")]
    pub a: MatrixJson,
    #[serde(rename = "S")]
    pub s: MatrixJson,
    #[serde(rename = "T")]
    pub t: MatrixJson,
}

impl TripleFile {
    /// Validates the weight and wraps both operators.
    pub fn into_parts(&self) -> Result<(HermitianPsd, Operator, Operator)> {
        let a = HermitianPsd::new(&self.a.to_matrix()?)?;
        let s = Operator::new(self.s.to_matrix()?)?;
        let t = Operator::new(self.t.to_matrix()?)?;
        for op in [&s, &t] {
            if op.dim() != a.dim {
                return Err(Error::DimensionMismatch {
                    expected: a.dim,
                    found: op.dim(),
                });
            }
        }
        Ok((a, s, t))
    }
}

/// Formats a float with 17 significant digits, enough to reproduce the
/// exact bit pattern on re-parse.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serde adapter that renders a float through [`fmt_f64`], for row types
/// whose serialized form must keep full replay fidelity.
pub fn serialize_full<S: serde::Serializer>(x: &f64, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&fmt_f64(*x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::max_abs;

    #[test]
    fn matrix_round_trip() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, -2.0),
                Complex64::new(0.5, 0.0),
                Complex64::new(0.0, 3.25),
                Complex64::new(-1.0, 1e-17),
            ],
        );
        let json = MatrixJson::from_matrix(&m);
        let text = serde_json::to_string(&json).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert!(max_abs(&(back.to_matrix().unwrap() - &m)) == 0.0);
    }

    #[test]
    fn ragged_entries_rejected() {
        let bad = MatrixJson {
            dim: 2,
            entries: vec![vec![[1.0, 0.0], [0.0, 0.0]], vec![[0.0, 0.0]]],
        };
        assert!(matches!(
            bad.to_matrix(),
            Err(Error::DimensionMismatch { .. })
        ));
        let short = MatrixJson {
            dim: 2,
            entries: vec![vec![[1.0, 0.0], [0.0, 0.0]]],
        };
        assert!(short.to_matrix().is_err());
    }

    #[test]
    fn pair_file_validates_both_parts() {
        let text = r#"{"A": {"dim": 2, "entries": [[[1,0],[0,0]],[[0,0],[2,0]]]},
                       "S": {"dim": 2, "entries": [[[0,0],[1,0]],[[0,0],[0,0]]]}}"#;
        let pair: PairFile = serde_json::from_str(text).unwrap();
        let (a, s) = pair.into_parts().unwrap();
        assert_eq!(a.dim, 2);
        assert_eq!(s.dim(), 2);

        let mismatched = PairFile {
            a: MatrixJson::from_matrix(&CMatrix::identity(2, 2)),
            s: MatrixJson::from_matrix(&CMatrix::identity(3, 3)),
        };
        assert!(matches!(
            mismatched.into_parts(),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn float_formatting_round_trips_significant_digits() {
        for x in [0.1, 1.0 / 3.0, 20.0f64.sqrt(), -5e-11, 0.0] {
            let printed = fmt_f64(x);
            let back: f64 = printed.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{printed}");
        }
    }
}
