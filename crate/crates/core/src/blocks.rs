//! Two-by-two operator blocks over a doubled weight: assembly, the
//! blockwise adjoint identity, radius equalities for structured blocks,
//! and off-diagonal radius bounds.
//!
//! The doubled weight is `diag(A, A)`; a block matrix of operators that
//! each admit an `A`-adjoint admits an adjoint with respect to the doubled
//! weight, and its adjoint is the blockwise adjoint of the transposed
//! grid. Structured blocks (diagonal, symmetric, anti-diagonal) have their
//! radii expressible through the single-weight radii of the blocks; these
//! equalities are exposed as value pairs so callers can assert agreement
//! at optimizer tolerance.

use crate::error::{Error, Result};
use crate::mat::{max_abs, CMatrix};
use crate::operator::Operator;
use crate::radii::{a_dw_radius, a_numerical_radius, numerical_radius, OptimizerConfig};
use crate::reduce::reduce;
use crate::rng::{random_vector, rng_for};
use crate::semi::{a_adjoint, a_norm};
use crate::weight::HermitianPsd;
use num_complex::Complex64;

/// Number of seeded sample vectors used to test that a supplied operator
/// preserves the seminorm (together with its adjoint).
const ISOMETRY_SAMPLES: usize = 50;

/// Seed stream index for the isometry sample vectors.
const ISOMETRY_SALT: u64 = 0x4953_4f4d;

/// Discrepancy between two radius estimates that triggers a restart
/// escalation before the pair is reported.
const ESCALATION_TRIGGER: f64 = 5e-6;

/// A 2x2 grid of equal-dimension operators together with its assembly.
#[derive(Debug, Clone)]
pub struct BlockOperator {
    blocks: [[Operator; 2]; 2],
    assembled: Operator,
}

impl BlockOperator {
    /// Assembles the grid into a single operator of twice the dimension.
    pub fn new(blocks: [[Operator; 2]; 2]) -> Result<Self> {
        let n = blocks[0][0].dim();
        for row in &blocks {
            for b in row {
                if b.dim() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: b.dim(),
                    });
                }
            }
        }
        let mut full = CMatrix::zeros(2 * n, 2 * n);
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                full.view_mut((i * n, j * n), (n, n)).copy_from(b.matrix());
            }
        }
        Ok(Self {
            blocks,
            assembled: Operator::new(full)?,
        })
    }

    /// `[[S, 0], [0, T]]`.
    pub fn diagonal(s: &Operator, t: &Operator) -> Result<Self> {
        let z = Operator::zeros(s.dim());
        Self::new([[s.clone(), z.clone()], [z, t.clone()]])
    }

    /// `[[S, T], [T, S]]`.
    pub fn symmetric(s: &Operator, t: &Operator) -> Result<Self> {
        Self::new([[s.clone(), t.clone()], [t.clone(), s.clone()]])
    }

    /// `[[0, X], [Y, 0]]`.
    pub fn anti_diagonal(x: &Operator, y: &Operator) -> Result<Self> {
        let z = Operator::zeros(x.dim());
        Self::new([[z.clone(), x.clone()], [y.clone(), z]])
    }

    /// The block at grid position `(i, j)`.
    pub fn block(&self, i: usize, j: usize) -> &Operator {
        &self.blocks[i][j]
    }

    /// The assembled operator of twice the block dimension.
    pub fn assembled(&self) -> &Operator {
        &self.assembled
    }

    /// Dimension of each block.
    pub fn block_dim(&self) -> usize {
        self.blocks[0][0].dim()
    }
}

/// The doubled weight `diag(A, A)`, revalidated so downstream consumers
/// get the usual factorizations.
pub fn lift_weight(a: &HermitianPsd) -> Result<HermitianPsd> {
    let n = a.dim;
    let mut full = CMatrix::zeros(2 * n, 2 * n);
    full.view_mut((0, 0), (n, n)).copy_from(&a.matrix);
    full.view_mut((n, n), (n, n)).copy_from(&a.matrix);
    HermitianPsd::new(&full)
}

/// Whether the adjoint of an assembled block grid with respect to the
/// doubled weight equals the blockwise adjoint of the transposed grid,
/// entrywise within 1e-10.
pub fn block_adjoint_check(
    a: &HermitianPsd,
    s11: &Operator,
    s12: &Operator,
    s21: &Operator,
    s22: &Operator,
) -> Result<bool> {
    let lifted = lift_weight(a)?;
    let grid = BlockOperator::new([
        [s11.clone(), s12.clone()],
        [s21.clone(), s22.clone()],
    ])?;
    let lhs = a_adjoint(&lifted, grid.assembled())?;
    let expected = BlockOperator::new([
        [a_adjoint(a, s11)?, a_adjoint(a, s21)?],
        [a_adjoint(a, s12)?, a_adjoint(a, s22)?],
    ])?;
    Ok(max_abs(&(lhs.matrix() - expected.assembled().matrix())) <= 1e-10)
}

/// Runs both estimators, escalating the optimizer once when they disagree
/// beyond the trigger; each side is a supremum estimate, so the larger of
/// the two runs is kept per side.
fn escalated_pair(
    cfg: &OptimizerConfig,
    lhs: impl Fn(&OptimizerConfig) -> Result<f64>,
    rhs: impl Fn(&OptimizerConfig) -> Result<f64>,
) -> Result<(f64, f64)> {
    let mut l = lhs(cfg)?;
    let mut r = rhs(cfg)?;
    if (l - r).abs() > ESCALATION_TRIGGER {
        let strong = cfg.escalate_restarts(4);
        l = l.max(lhs(&strong)?);
        r = r.max(rhs(&strong)?);
    }
    Ok((l, r))
}

/// The radius of `[[S, 0], [0, T]]` under the doubled weight, paired with
/// the larger of the two single-block radii; the sides agree up to
/// optimizer tolerance.
pub fn dw_diag_equality(
    a: &HermitianPsd,
    s: &Operator,
    t: &Operator,
    cfg: &OptimizerConfig,
) -> Result<(f64, f64)> {
    cfg.validate()?;
    let lifted = lift_weight(a)?;
    let block = BlockOperator::diagonal(s, t)?;
    escalated_pair(
        cfg,
        |c| Ok(a_dw_radius(&lifted, block.assembled(), c)?.value),
        |c| {
            Ok(a_dw_radius(a, s, c)?
                .value
                .max(a_dw_radius(a, t, c)?.value))
        },
    )
}

/// The radius of `[[S, T], [T, S]]` paired with the radius of
/// `diag(S - T, S + T)` under the doubled weight; the sides agree up to
/// optimizer tolerance.
pub fn dw_sym_equality(
    a: &HermitianPsd,
    s: &Operator,
    t: &Operator,
    cfg: &OptimizerConfig,
) -> Result<(f64, f64)> {
    cfg.validate()?;
    let lifted = lift_weight(a)?;
    let sym = BlockOperator::symmetric(s, t)?;
    let diff = s.sub(t)?;
    let sum = s.add(t)?;
    let split = BlockOperator::diagonal(&diff, &sum)?;
    escalated_pair(
        cfg,
        |c| Ok(a_dw_radius(&lifted, sym.assembled(), c)?.value),
        |c| Ok(a_dw_radius(&lifted, split.assembled(), c)?.value),
    )
}

/// The radius of `[[0, S], [S, 0]]` under the doubled weight, paired with
/// the radius of `S` itself; the sides agree up to optimizer tolerance.
pub fn dw_antidiag(
    a: &HermitianPsd,
    s: &Operator,
    cfg: &OptimizerConfig,
) -> Result<(f64, f64)> {
    cfg.validate()?;
    let lifted = lift_weight(a)?;
    let anti = BlockOperator::anti_diagonal(s, s)?;
    escalated_pair(
        cfg,
        |c| Ok(a_dw_radius(&lifted, anti.assembled(), c)?.value),
        |c| Ok(a_dw_radius(a, s, c)?.value),
    )
}

/// Compressions of the two off-diagonal factors with the products every
/// off-diagonal bound needs.
struct OffDiag {
    /// Compression of the top-right factor.
    b: CMatrix,
    /// Compression of the bottom-left factor.
    c: CMatrix,
    /// Gram product of the top-right factor (`adjoint * factor`).
    gb: CMatrix,
    /// Gram product of the bottom-left factor.
    gc: CMatrix,
}

impl OffDiag {
    fn new(a: &HermitianPsd, b: &Operator, c: &Operator) -> Result<Self> {
        let rb = reduce(a, b)?.reduced;
        let rc = reduce(a, c)?.reduced;
        let gb = rb.adjoint() * &rb;
        let gc = rc.adjoint() * &rc;
        Ok(Self { b: rb, c: rc, gb, gc })
    }

    /// Numerical radius of `[[0, X], [Y, 0]]` assembled at the compressed
    /// level; equals the doubled-weight radius of the operator block.
    fn anti_radius(&self, x: &CMatrix, y: &CMatrix, cfg: &OptimizerConfig) -> f64 {
        let r = x.nrows();
        let mut full = CMatrix::zeros(2 * r, 2 * r);
        full.view_mut((0, r), (r, r)).copy_from(x);
        full.view_mut((r, 0), (r, r)).copy_from(y);
        numerical_radius(&full, cfg)
    }
}

/// Upper bound on the radius of `[[0, B], [C, 0]]` under the doubled
/// weight, from the two mixed Gram combinations and the cross products.
pub fn bound_tt(
    a: &HermitianPsd,
    b: &Operator,
    c: &Operator,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    cfg.validate()?;
    let od = OffDiag::new(a, b, c)?;
    let rev_b = &od.b * od.b.adjoint();
    let rev_c = &od.c * od.c.adjoint();
    let first = numerical_radius(&(&rev_b + &od.gc + (&od.gc * &od.gc) * scalar(4.0)), cfg);
    let second = numerical_radius(&(&od.gb + &rev_c + (&od.gb * &od.gb) * scalar(4.0)), cfg);
    let cross_bc = numerical_radius(&(&od.b * &od.c), cfg);
    let cross_cb = numerical_radius(&(&od.c * &od.b), cfg);
    Ok((0.25 * first.max(second) + 0.5 * cross_bc.max(cross_cb)).sqrt())
}

/// Upper bound on the radius of `[[0, B], [C, 0]]` splitting the Gram
/// powers into shifted halves plus a mixed anti-diagonal radius.
pub fn bound_th310(
    a: &HermitianPsd,
    b: &Operator,
    c: &Operator,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    cfg.validate()?;
    let od = OffDiag::new(a, b, c)?;
    let gc2 = &od.gc * &od.gc;
    let gb2 = &od.gb * &od.gb;
    let plus = numerical_radius(&(&gc2 + &od.gc), cfg)
        .max(numerical_radius(&(&od.gb + &gb2), cfg));
    let minus = numerical_radius(&(&gc2 - &od.gc), cfg)
        .max(numerical_radius(&(&od.gb - &gb2), cfg));
    let mixed = od.anti_radius(&(&od.gc * &od.b), &(&od.gb * &od.c), cfg);
    Ok((0.5 * plus + 0.5 * minus + mixed).sqrt())
}

/// Fourth-root upper bound on the radius of `[[0, B], [C, 0]]` from the
/// squared Gram powers plus twice the squared mixed anti-diagonal radius.
pub fn bound_th312(
    a: &HermitianPsd,
    b: &Operator,
    c: &Operator,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    cfg.validate()?;
    let od = OffDiag::new(a, b, c)?;
    let gc2 = &od.gc * &od.gc;
    let gb2 = &od.gb * &od.gb;
    let power = numerical_radius(&(&gc2 + &gc2 * &gc2), cfg)
        .max(numerical_radius(&(&gb2 + &gb2 * &gb2), cfg));
    let mixed = od.anti_radius(&(&od.gc * &od.b), &(&od.gb * &od.c), cfg);
    Ok((power + 2.0 * mixed * mixed).powf(0.25))
}

fn scalar(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Numerical-radius equalities for the three structured block shapes.
#[derive(Debug, Clone)]
pub struct BlockEqualityReport {
    /// Radius of `diag(S, T)` vs `max` of the block radii.
    pub diagonal: (f64, f64),
    /// Radius of `[[S, T], [T, S]]` vs `max` over the sum and difference.
    pub symmetric: (f64, f64),
    /// Radius of `[[0, S], [S, 0]]` vs the radius of `S`.
    pub anti_diagonal: (f64, f64),
}

impl BlockEqualityReport {
    /// Largest absolute discrepancy across the three equalities.
    pub fn max_discrepancy(&self) -> f64 {
        [self.diagonal, self.symmetric, self.anti_diagonal]
            .iter()
            .map(|(l, r)| (l - r).abs())
            .fold(0.0, f64::max)
    }
}

/// Evaluates both sides of the three numerical-radius block equalities.
pub fn omega_block_equalities(
    a: &HermitianPsd,
    s: &Operator,
    t: &Operator,
    cfg: &OptimizerConfig,
) -> Result<BlockEqualityReport> {
    cfg.validate()?;
    let lifted = lift_weight(a)?;
    let diag = BlockOperator::diagonal(s, t)?;
    let sym = BlockOperator::symmetric(s, t)?;
    let anti = BlockOperator::anti_diagonal(s, s)?;
    let ws = a_numerical_radius(a, s, cfg)?;
    let wt = a_numerical_radius(a, t, cfg)?;
    let w_sum = a_numerical_radius(a, &s.add(t)?, cfg)?;
    let w_diff = a_numerical_radius(a, &s.sub(t)?, cfg)?;
    Ok(BlockEqualityReport {
        diagonal: (
            a_numerical_radius(&lifted, diag.assembled(), cfg)?,
            ws.max(wt),
        ),
        symmetric: (
            a_numerical_radius(&lifted, sym.assembled(), cfg)?,
            w_sum.max(w_diff),
        ),
        anti_diagonal: (a_numerical_radius(&lifted, anti.assembled(), cfg)?, ws),
    })
}

/// Verifies on seeded samples that `V` and its adjoint preserve the
/// seminorm, then returns the radius of the conjugated operator
/// `V-adjoint * S * V` paired with the radius of `S`; the sides agree up
/// to optimizer tolerance.
pub fn dw_unitary_invariance(
    a: &HermitianPsd,
    s: &Operator,
    v: &Operator,
    cfg: &OptimizerConfig,
) -> Result<(f64, f64)> {
    cfg.validate()?;
    let v_adj = a_adjoint(a, v)?;
    let mut rng = rng_for(cfg.seed, ISOMETRY_SALT);
    for _ in 0..ISOMETRY_SAMPLES {
        let x = random_vector(&mut rng, a.dim);
        let base = a_norm(a, &x)?;
        let tol = 1e-8 * base.max(1.0);
        let through_v = a_norm(a, &(v.matrix() * &x))?;
        let through_adj = a_norm(a, &(v_adj.matrix() * &x))?;
        if (through_v - base).abs() > tol || (through_adj - base).abs() > tol {
            return Err(Error::NotAUnitary);
        }
    }
    let conjugated = v_adj.compose(&s.compose(v)?)?;
    escalated_pair(
        cfg,
        |c| Ok(a_dw_radius(a, &conjugated, c)?.value),
        |c| Ok(a_dw_radius(a, s, c)?.value),
    )
}

/// The radius of `P * S`, with `P` the orthogonal projection onto the
/// weight's range, paired with the radius of `S`; the compression of
/// `P * S` coincides with that of `S`, so the sides agree up to optimizer
/// tolerance.
pub fn dw_projection_invariance(
    a: &HermitianPsd,
    s: &Operator,
    cfg: &OptimizerConfig,
) -> Result<(f64, f64)> {
    cfg.validate()?;
    let projected = Operator::new(a.range_projection() * s.matrix())?;
    escalated_pair(
        cfg,
        |c| Ok(a_dw_radius(a, &projected, c)?.value),
        |c| Ok(a_dw_radius(a, s, c)?.value),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semi::admits_a_adjoint;

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

    fn diag12_op() -> Operator {
        Operator::new(real_mat(2, &[1.0, 0.0, 0.0, 2.0])).unwrap()
    }

    fn nilpotent() -> Operator {
        Operator::new(real_mat(2, &[0.0, 1.0, 0.0, 0.0])).unwrap()
    }

    fn cfg() -> OptimizerConfig {
        OptimizerConfig::default()
    }

    #[test]
    fn lifted_weight_examples() {
        let id4 = lift_weight(&identity2()).unwrap();
        assert_eq!(id4.dim, 4);
        assert!(max_abs(&(&id4.matrix - CMatrix::identity(4, 4))) < 1e-14);
        assert_eq!(id4.rank, 4);

        let lifted = lift_weight(&diag12()).unwrap();
        assert!((lifted.matrix[(0, 0)].re - 1.0).abs() < 1e-14);
        assert!((lifted.matrix[(1, 1)].re - 2.0).abs() < 1e-14);
        assert!((lifted.matrix[(2, 2)].re - 1.0).abs() < 1e-14);
        assert!((lifted.matrix[(3, 3)].re - 2.0).abs() < 1e-14);

        let ones = HermitianPsd::new(&real_mat(2, &[1.0, 1.0, 1.0, 1.0])).unwrap();
        assert_eq!(lift_weight(&ones).unwrap().rank, 2);
    }

    #[test]
    fn assembly_agrees_blockwise_and_joins_membership() {
        let s = nilpotent();
        let t = diag12_op();
        let grid = BlockOperator::new([
            [s.clone(), t.clone()],
            [Operator::zeros(2), s.clone()],
        ])
        .unwrap();
        assert_eq!(grid.block_dim(), 2);
        let full = grid.assembled().matrix();
        for i in 0..2 {
            for j in 0..2 {
                let block_view = full.view((i * 2, j * 2), (2, 2)).clone_owned();
                assert!(max_abs(&(block_view - grid.block(i, j).matrix())) < 1e-15);
            }
        }

        // Each block admits a weighted adjoint, so the assembly does too.
        let a = diag12();
        let lifted = lift_weight(&a).unwrap();
        assert!(admits_a_adjoint(&a, &s).unwrap());
        assert!(admits_a_adjoint(&lifted, grid.assembled()).unwrap());

        let wrong = BlockOperator::new([
            [Operator::zeros(2), Operator::zeros(3)],
            [Operator::zeros(2), Operator::zeros(2)],
        ]);
        assert!(matches!(wrong, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn adjoint_transposes_the_grid() {
        let id = Operator::identity(2);
        assert!(block_adjoint_check(&identity2(), &id, &id, &id, &id).unwrap());

        // One off-diagonal block: its weighted adjoint lands transposed.
        let z = Operator::zeros(2);
        assert!(block_adjoint_check(&diag12(), &z, &nilpotent(), &z, &z).unwrap());

        // The claimed placement is the transposed one: against the naive
        // (untransposed) grid the check fails for an asymmetric pair.
        let a = diag12();
        let lifted = lift_weight(&a).unwrap();
        let grid = BlockOperator::new([
            [z.clone(), nilpotent()],
            [z.clone(), z.clone()],
        ])
        .unwrap();
        let adj = a_adjoint(&lifted, grid.assembled()).unwrap();
        let s12_adj = a_adjoint(&a, &nilpotent()).unwrap();
        let placed = adj.matrix().view((2, 0), (2, 2)).clone_owned();
        assert!(max_abs(&(placed - s12_adj.matrix())) < 1e-12);
        assert!((s12_adj.matrix()[(1, 0)].re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn diagonal_radius_equality() {
        let (lhs, rhs) = dw_diag_equality(&diag12(), &diag12_op(), &diag12_op(), &cfg()).unwrap();
        assert!((lhs - rhs).abs() < 1e-5);
        assert!((rhs - 20.0f64.sqrt()).abs() < 1e-6);

        let (l0, r0) =
            dw_diag_equality(&diag12(), &diag12_op(), &Operator::zeros(2), &cfg()).unwrap();
        assert!((l0 - r0).abs() < 1e-5);
        assert!((r0 - 20.0f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn symmetric_radius_equality() {
        let (lhs, rhs) = dw_sym_equality(&diag12(), &diag12_op(), &nilpotent(), &cfg()).unwrap();
        assert!((lhs - rhs).abs() < 1e-5, "{lhs} vs {rhs}");

        // With the second block zero both shapes carry the same operator.
        let (l0, r0) = dw_sym_equality(&diag12(), &nilpotent(), &Operator::zeros(2), &cfg()).unwrap();
        assert!((l0 - r0).abs() < 1e-5);
        assert!((l0 - 0.5).abs() < 1e-5);
    }

    #[test]
    fn anti_diagonal_radius_equality() {
        let (lhs, rhs) = dw_antidiag(&diag12(), &nilpotent(), &cfg()).unwrap();
        assert!((lhs - rhs).abs() < 1e-5);
        assert!((rhs - 0.5).abs() < 1e-6);
    }

    #[test]
    fn off_diagonal_bounds_on_identities() {
        let a = identity2();
        let id = Operator::identity(2);
        let tt = bound_tt(&a, &id, &id, &cfg()).unwrap();
        assert!((tt * tt - 2.0).abs() < 1e-9, "{}", tt * tt);
        let t310 = bound_th310(&a, &id, &id, &cfg()).unwrap();
        assert!((t310 * t310 - 2.0).abs() < 1e-9);
        let t312 = bound_th312(&a, &id, &id, &cfg()).unwrap();
        assert!((t312 - 2.0f64.sqrt()).abs() < 1e-9);

        // All three cap the doubled-weight radius of the off-diagonal
        // block; for identity factors every one of them is tight.
        let lifted = lift_weight(&a).unwrap();
        let anti = BlockOperator::anti_diagonal(&id, &id).unwrap();
        let dw = a_dw_radius(&lifted, anti.assembled(), &cfg()).unwrap().value;
        for v in [tt, t310, t312] {
            assert!(v >= dw - 1e-6);
        }

        let z = Operator::zeros(2);
        assert!(bound_tt(&a, &z, &z, &cfg()).unwrap() < 1e-12);
        assert!(bound_th310(&a, &z, &z, &cfg()).unwrap() < 1e-12);
        assert!(bound_th312(&a, &z, &z, &cfg()).unwrap() < 1e-12);
    }

    #[test]
    fn equal_factors_collapse_to_single_operator_bounds() {
        for (a, s) in [
            (diag12(), diag12_op()),
            (diag12(), nilpotent()),
            (identity2(), diag12_op()),
        ] {
            let collapsed = bound_th310(&a, &s, &s, &cfg()).unwrap();
            let single = crate::bounds::competitor("eq21", &a, &s, &cfg()).unwrap();
            assert!((collapsed - single).abs() < 1e-8, "{collapsed} vs {single}");

            let collapsed4 = bound_th312(&a, &s, &s, &cfg()).unwrap();
            let single4 = crate::bounds::competitor("eq18", &a, &s, &cfg()).unwrap();
            assert!((collapsed4 - single4).abs() < 1e-8);
        }
    }

    #[test]
    fn radius_equalities_for_structured_blocks() {
        let report =
            omega_block_equalities(&diag12(), &diag12_op(), &diag12_op(), &cfg()).unwrap();
        assert!(report.max_discrepancy() < 1e-5, "{report:?}");
        // Equal blocks: the symmetric shape doubles the operator.
        assert!((report.symmetric.0 - 4.0).abs() < 1e-8);

        let trivial =
            omega_block_equalities(&diag12(), &nilpotent(), &Operator::zeros(2), &cfg()).unwrap();
        assert!(trivial.max_discrepancy() < 1e-5);
        let w = a_numerical_radius(&diag12(), &nilpotent(), &cfg()).unwrap();
        assert!((trivial.diagonal.1 - w).abs() < 1e-12);
    }

    #[test]
    fn unitary_conjugation_preserves_the_radius() {
        let angle = 0.7f64;
        let rot = Operator::new(real_mat(
            2,
            &[angle.cos(), -angle.sin(), angle.sin(), angle.cos()],
        ))
        .unwrap();
        let (lhs, rhs) = dw_unitary_invariance(&identity2(), &nilpotent(), &rot, &cfg()).unwrap();
        assert!((lhs - rhs).abs() < 1e-5, "{lhs} vs {rhs}");

        let stretch = Operator::new(real_mat(2, &[2.0, 0.0, 0.0, 1.0])).unwrap();
        assert!(matches!(
            dw_unitary_invariance(&identity2(), &nilpotent(), &stretch, &cfg()),
            Err(Error::NotAUnitary)
        ));
    }

    #[test]
    fn range_projection_leaves_the_radius_alone() {
        let a = HermitianPsd::new(&real_mat(3, &[1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0]))
            .unwrap();
        let s = Operator::new(real_mat(3, &[1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 3.0]))
            .unwrap();
        let (lhs, rhs) = dw_projection_invariance(&a, &s, &cfg()).unwrap();
        assert!((lhs - rhs).abs() < 1e-5);
        assert!((rhs - 20.0f64.sqrt()).abs() < 1e-6);
    }
}
