//! Seeded random corpora: weight/operator generators compatible with the
//! adjoint requirements, plus the suite runners the command-line fuzzer
//! and the acceptance harness share.
//!
//! Determinism contract: every item draws from its own stream derived
//! from the master seed and the item index, so results are identical
//! whether items run serially or in parallel, and output ordering is by
//! item index.

use crate::blocks::{
    bound_th310, bound_th312, bound_tt, dw_antidiag, dw_diag_equality,
    dw_projection_invariance, dw_sym_equality, dw_unitary_invariance, lift_weight,
    omega_block_equalities, BlockOperator,
};
use crate::bounds::{bound_report, BoundCsvRow};
use crate::error::{Error, Result};
use crate::io::{PairFile, TripleFile};
use crate::lemmas::{
    check_kkk, check_kz, check_kzlaa, check_l, check_ll, check_lm310, check_power,
    check_scalar_interp, refinement_delta, LemmaCheckResult,
};
use crate::mat::{hermitian_part, hermitian_eigen_desc, max_abs, CMatrix, CVector};
use crate::operator::Operator;
use crate::radii::{
    a_dw_radius, a_numerical_radius, a_op_norm, dw_dense, dw_multistart, OptimizerConfig,
};
use crate::reduce::reduce;
use crate::rng::{random_matrix, random_vector, rng_for, stream_seed};
use crate::semi::{a_adjoint, a_norm};
use crate::weight::HermitianPsd;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Stream indices separating the suites, so each draws independent items
/// from the same master seed.
const PAIR_STREAM: u64 = 1;
const TRIPLE_STREAM: u64 = 2;
const LEMMA_STREAM: u64 = 3;
const ORACLE_STREAM: u64 = 4;

/// Corpus shape: how many items to generate and from which families.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FuzzConfig {
    /// Master seed; equal seeds give byte-identical corpora.
    pub seed: u64,
    /// Number of items.
    pub count: usize,
    /// Weight dimensions to cycle through.
    pub dims: Vec<usize>,
    /// How many of the smallest weight eigenvalues to zero, cycled
    /// independently of the dimension.
    pub rank_deficit: Vec<usize>,
    /// Scale of the random operator entries.
    pub magnitude: f64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            count: 100,
            dims: vec![2, 3, 4],
            rank_deficit: vec![0, 1],
            magnitude: 1.0,
        }
    }
}

impl FuzzConfig {
    /// Rejects empty or contradictory corpus shapes.
    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidParam("count must be at least 1".into()));
        }
        if self.dims.is_empty() || self.dims.iter().any(|&d| d < 2) {
            return Err(Error::InvalidParam(
                "dims must be nonempty with every entry at least 2".into(),
            ));
        }
        let min_dim = *self.dims.iter().min().expect("dims checked nonempty");
        if self.rank_deficit.is_empty() || self.rank_deficit.iter().any(|&d| d >= min_dim) {
            return Err(Error::InvalidParam(
                "rank_deficit must be nonempty with every entry below the smallest dim".into(),
            ));
        }
        if !(self.magnitude.is_finite() && self.magnitude > 0.0) {
            return Err(Error::InvalidParam("magnitude must be positive".into()));
        }
        Ok(())
    }

    /// The (dimension, rank deficit) used for a given item index; cycles
    /// both lists so every combination appears.
    pub fn item_shape(&self, item: usize) -> (usize, usize) {
        let dim = self.dims[item % self.dims.len()];
        let deficit = self.rank_deficit[(item / self.dims.len()) % self.rank_deficit.len()];
        (dim, deficit)
    }
}

// ---------------------------------------------------------------------------
// Generators.
// ---------------------------------------------------------------------------

/// A random weight of the given dimension: the spectrum of a random
/// Hermitian matrix, shifted away from zero (each eigenvalue becomes
/// `0.3 + |original|`) with the requested number of smallest eigenvalues
/// zeroed afterwards.
pub fn random_weight(rng: &mut ChaCha8Rng, dim: usize, deficit: usize) -> Result<HermitianPsd> {
    let g = random_matrix(rng, dim, dim, 1.0);
    let (vals, vecs) = hermitian_eigen_desc(&hermitian_part(&g));
    let mut spectrum: Vec<f64> = vals.iter().map(|v| 0.3 + v.abs()).collect();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| spectrum[i].total_cmp(&spectrum[j]));
    for &i in order.iter().take(deficit) {
        spectrum[i] = 0.0;
    }
    let diag = CMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            Complex64::new(spectrum[i], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    HermitianPsd::new(&(&vecs * diag * vecs.adjoint()))
}

/// A random operator that maps the weight's null space into itself (the
/// adjoint-existence requirement): block triangular on the orthogonal
/// (range, kernel) splitting of the weight.
pub fn random_member(rng: &mut ChaCha8Rng, a: &HermitianPsd, magnitude: f64) -> Result<Operator> {
    let n = a.dim;
    let r = a.rank;
    let k = n - r;
    let mut coords = CMatrix::zeros(n, n);
    coords
        .view_mut((0, 0), (r, r))
        .copy_from(&random_matrix(rng, r, r, magnitude));
    if k > 0 {
        coords
            .view_mut((r, 0), (k, r))
            .copy_from(&random_matrix(rng, k, r, magnitude));
        coords
            .view_mut((r, r), (k, k))
            .copy_from(&random_matrix(rng, k, k, magnitude));
    }
    let mut basis = CMatrix::zeros(n, n);
    basis.view_mut((0, 0), (n, r)).copy_from(&a.range_basis);
    if k > 0 {
        basis.view_mut((0, r), (n, k)).copy_from(&a.kernel_basis);
    }
    Operator::new(&basis * coords * basis.adjoint())
}

/// A random operator that preserves the seminorm together with its
/// adjoint: a unitary rotation of the weight's range (conjugated into the
/// original coordinates) extended by the identity on the kernel.
pub fn random_a_unitary(rng: &mut ChaCha8Rng, a: &HermitianPsd) -> Result<Operator> {
    let n = a.dim;
    let r = a.rank;
    let q = random_matrix(rng, r, r, 1.0).qr().q();
    let rotated = &a.range_basis * q * a.range_basis.adjoint();
    let inner = &a.pinv_sqrt * rotated * &a.sqrt;
    let kernel_part = CMatrix::identity(n, n) - a.range_projection();
    Operator::new(inner + kernel_part)
}

fn pair_id(item: usize) -> String {
    format!("pair-{item:05}")
}

/// The weight/operator pair for one corpus index.
pub fn generate_pair(fc: &FuzzConfig, item: usize) -> Result<(HermitianPsd, Operator)> {
    let mut rng = rng_for(stream_seed(fc.seed, PAIR_STREAM), item as u64);
    let (dim, deficit) = fc.item_shape(item);
    let a = random_weight(&mut rng, dim, deficit)?;
    let s = random_member(&mut rng, &a, fc.magnitude)?;
    Ok((a, s))
}

/// The weight plus two operators and a seminorm-preserving conjugator for
/// one corpus index of the equality suite.
pub fn generate_triple(
    fc: &FuzzConfig,
    item: usize,
) -> Result<(HermitianPsd, Operator, Operator, Operator)> {
    let mut rng = rng_for(stream_seed(fc.seed, TRIPLE_STREAM), item as u64);
    let (dim, deficit) = fc.item_shape(item);
    let a = random_weight(&mut rng, dim, deficit)?;
    let s = random_member(&mut rng, &a, fc.magnitude)?;
    let t = random_member(&mut rng, &a, fc.magnitude)?;
    let v = random_a_unitary(&mut rng, &a)?;
    Ok((a, s, t, v))
}

// ---------------------------------------------------------------------------
// Bound corpus.
// ---------------------------------------------------------------------------

/// One verification failure with everything needed to replay it.
#[derive(Debug, Clone, Serialize)]
pub struct ViolationRecord {
    pub pair_id: String,
    pub bound_id: String,
    pub kind: String,
    pub value: f64,
    pub dw_value: f64,
    /// The exact inputs, re-runnable through the pair-file interface.
    pub input: PairFile,
}

/// Outcome of evaluating the bound family over a corpus.
#[derive(Debug, Clone)]
pub struct CorpusOutcome {
    /// One row per bound entry per pair, ordered by item index.
    pub rows: Vec<BoundCsvRow>,
    /// Entries whose verification failed even after escalation.
    pub violations: Vec<ViolationRecord>,
    /// How many items needed a radius-search escalation.
    pub escalated_items: usize,
}

/// Evaluates the full bound family on `count` generated pairs.
pub fn run_bound_corpus(fc: &FuzzConfig, oc: &OptimizerConfig) -> Result<CorpusOutcome> {
    fc.validate()?;
    oc.validate()?;
    let per_item: Vec<(Vec<BoundCsvRow>, Vec<ViolationRecord>, bool)> = (0..fc.count)
        .into_par_iter()
        .map(|item| {
            let (a, s) = generate_pair(fc, item)?;
            let report = bound_report(&a, &s, oc)?;
            let id = pair_id(item);
            let rows = report.csv_rows(&id);
            let violations = report
                .entries
                .iter()
                .filter(|e| !e.holds)
                .map(|e| ViolationRecord {
                    pair_id: id.clone(),
                    bound_id: e.bound_id.clone(),
                    kind: e.kind.to_string(),
                    value: e.value,
                    dw_value: report.dw.value,
                    input: PairFile::from_parts(&a, &s),
                })
                .collect();
            Ok((rows, violations, report.escalated))
        })
        .collect::<Result<_>>()?;

    let mut outcome = CorpusOutcome {
        rows: Vec::new(),
        violations: Vec::new(),
        escalated_items: 0,
    };
    for (rows, violations, escalated) in per_item {
        outcome.rows.extend(rows);
        outcome.violations.extend(violations);
        outcome.escalated_items += usize::from(escalated);
    }
    Ok(outcome)
}

// ---------------------------------------------------------------------------
// Equality and identity suite.
// ---------------------------------------------------------------------------

/// One failed check from the equality suite; the conjugator is not stored
/// because it is regenerated from the seed and item index.
#[derive(Debug, Clone, Serialize)]
pub struct TripleViolation {
    pub item: usize,
    pub check_id: String,
    pub gap: f64,
    pub input: TripleFile,
}

/// Aggregate gaps of the equality suite, grouped by tolerance class.
#[derive(Debug, Clone)]
pub struct TripleOutcome {
    pub items: usize,
    /// Largest gap among the optimizer-vs-optimizer radius equalities
    /// (tolerance 1e-5).
    pub max_equality_gap: f64,
    /// Largest gap among the scan-level radius identities (tolerance
    /// 1e-8).
    pub max_identity_gap: f64,
    /// Largest residual among the adjoint algebra identities (tolerance
    /// 1e-10, relative to the operand scale).
    pub max_adjoint_gap: f64,
    /// Smallest margin of the off-diagonal upper bounds over the computed
    /// radius (must stay above -1e-6).
    pub min_dominance_margin: f64,
    pub violations: Vec<TripleViolation>,
}

struct TripleItem {
    equality_gap: f64,
    identity_gap: f64,
    adjoint_gap: f64,
    dominance_margin: f64,
    violations: Vec<TripleViolation>,
}

fn relative_gap(lhs: &CMatrix, rhs: &CMatrix) -> f64 {
    let scale = max_abs(lhs).max(max_abs(rhs)).max(1.0);
    max_abs(&(lhs - rhs)) / scale
}

fn triple_item(fc: &FuzzConfig, oc: &OptimizerConfig, item: usize) -> Result<TripleItem> {
    let (a, s, t, v) = generate_triple(fc, item)?;
    let mut out = TripleItem {
        equality_gap: 0.0,
        identity_gap: 0.0,
        adjoint_gap: 0.0,
        dominance_margin: f64::INFINITY,
        violations: Vec::new(),
    };
    let note = |id: &str, gap: f64, tol: f64, out: &mut TripleItem| {
        if gap > tol {
            out.violations.push(TripleViolation {
                item,
                check_id: id.to_string(),
                gap,
                input: TripleFile {
                    a: crate::io::MatrixJson::from_matrix(&a.matrix),
                    s: crate::io::MatrixJson::from_matrix(s.matrix()),
                    t: crate::io::MatrixJson::from_matrix(t.matrix()),
                },
            });
        }
    };

    // Optimizer-level radius equalities for structured blocks.
    let equalities = [
        ("diag_split", dw_diag_equality(&a, &s, &t, oc)?),
        ("symmetric_split", dw_sym_equality(&a, &s, &t, oc)?),
        ("anti_diagonal", dw_antidiag(&a, &s, oc)?),
        ("unitary_conjugation", dw_unitary_invariance(&a, &s, &v, oc)?),
        ("range_projection", dw_projection_invariance(&a, &s, oc)?),
    ];
    for (id, (lhs, rhs)) in equalities {
        let gap = (lhs - rhs).abs();
        out.equality_gap = out.equality_gap.max(gap);
        note(id, gap, 1e-5, &mut out);
    }
    let block_eq = omega_block_equalities(&a, &s, &t, oc)?;
    let gap = block_eq.max_discrepancy();
    out.equality_gap = out.equality_gap.max(gap);
    note("omega_blocks", gap, 1e-5, &mut out);

    // Scan-level radius identities.
    let s_adj = a_adjoint(&a, &s)?;
    let w_s = a_numerical_radius(&a, &s, oc)?;
    let w_adj = a_numerical_radius(&a, &s_adj, oc)?;
    let gap = (w_s - w_adj).abs();
    out.identity_gap = out.identity_gap.max(gap);
    note("radius_of_adjoint", gap, 1e-8, &mut out);

    let dw = a_dw_radius(&a, &s, oc)?;
    let norm = a_op_norm(&a, &s)?;
    let floor = w_s.max(norm * norm);
    let gap = (floor - dw.value).max(0.0);
    out.identity_gap = out.identity_gap.max(gap);
    note("sandwich_floor", gap, 1e-8, &mut out);
    let gap = (dw.value - dw.upper_cap).max(0.0);
    out.identity_gap = out.identity_gap.max(gap);
    note("sandwich_cap", gap, 1e-8, &mut out);

    // Adjoint algebra, relative to operand scale.
    let t_adj = a_adjoint(&a, &t)?;
    let sum_adj = a_adjoint(&a, &s.add(&t)?)?;
    let gap = relative_gap(sum_adj.matrix(), &(s_adj.matrix() + t_adj.matrix()));
    out.adjoint_gap = out.adjoint_gap.max(gap);
    note("adjoint_additive", gap, 1e-10, &mut out);

    let prod_adj = a_adjoint(&a, &s.compose(&t)?)?;
    let gap = relative_gap(prod_adj.matrix(), &(t_adj.matrix() * s_adj.matrix()));
    out.adjoint_gap = out.adjoint_gap.max(gap);
    note("adjoint_antimultiplicative", gap, 1e-10, &mut out);

    let double = a_adjoint(&a, &s_adj)?;
    let p = a.range_projection();
    let gap = relative_gap(double.matrix(), &(&p * s.matrix() * &p));
    out.adjoint_gap = out.adjoint_gap.max(gap);
    note("adjoint_involution_on_range", gap, 1e-10, &mut out);

    let gap = relative_gap(
        &(&a.matrix * s_adj.matrix()),
        &(s.matrix().adjoint() * &a.matrix),
    );
    out.adjoint_gap = out.adjoint_gap.max(gap);
    note("adjoint_defining_equation", gap, 1e-10, &mut out);

    // Off-diagonal upper bounds dominate the block radius.
    let lifted = lift_weight(&a)?;
    let anti = BlockOperator::anti_diagonal(&s, &t)?;
    let dw_anti = a_dw_radius(&lifted, anti.assembled(), oc)?.value;
    for (id, value) in [
        ("off_diag_mixed", bound_tt(&a, &s, &t, oc)?),
        ("off_diag_split", bound_th310(&a, &s, &t, oc)?),
        ("off_diag_fourth_root", bound_th312(&a, &s, &t, oc)?),
    ] {
        let margin = value - dw_anti;
        out.dominance_margin = out.dominance_margin.min(margin);
        note(id, (-margin).max(0.0), 1e-6, &mut out);
    }

    Ok(out)
}

/// Runs the equality and identity suite over `count` generated triples.
pub fn run_triple_suite(fc: &FuzzConfig, oc: &OptimizerConfig) -> Result<TripleOutcome> {
    fc.validate()?;
    oc.validate()?;
    let per_item: Vec<TripleItem> = (0..fc.count)
        .into_par_iter()
        .map(|item| triple_item(fc, oc, item))
        .collect::<Result<_>>()?;
    let mut outcome = TripleOutcome {
        items: fc.count,
        max_equality_gap: 0.0,
        max_identity_gap: 0.0,
        max_adjoint_gap: 0.0,
        min_dominance_margin: f64::INFINITY,
        violations: Vec::new(),
    };
    for item in per_item {
        outcome.max_equality_gap = outcome.max_equality_gap.max(item.equality_gap);
        outcome.max_identity_gap = outcome.max_identity_gap.max(item.identity_gap);
        outcome.max_adjoint_gap = outcome.max_adjoint_gap.max(item.adjoint_gap);
        outcome.min_dominance_margin = outcome.min_dominance_margin.min(item.dominance_margin);
        outcome.violations.extend(item.violations);
    }
    Ok(outcome)
}

// ---------------------------------------------------------------------------
// Inequality (lemma) suite.
// ---------------------------------------------------------------------------

/// Identifiers of the inequality checks, in the order their slacks are
/// produced per sample.
pub const LEMMA_IDS: [&str; 9] = [
    "kz",
    "kzlaa",
    "kz_from_refinement",
    "ll",
    "power",
    "kkk",
    "scalar_interp",
    "l",
    "lm310",
];

fn unit_vector(rng: &mut ChaCha8Rng, a: &HermitianPsd) -> Result<CVector> {
    for _ in 0..100 {
        let v = random_vector(rng, a.dim);
        let n = a_norm(a, &v)?;
        if n > 1e-6 {
            return Ok(v / Complex64::new(n, 0.0));
        }
    }
    Err(Error::InvalidParam(
        "failed to draw a vector with nonnegligible seminorm".into(),
    ))
}

fn lemma_sample(seed: u64, k: usize) -> Result<[f64; 9]> {
    let mut rng = rng_for(stream_seed(seed, LEMMA_STREAM), k as u64);
    let dim = 2 + (k % 4);
    let deficit = (k / 4) % 2;
    let a = random_weight(&mut rng, dim, deficit)?;

    let av = random_vector(&mut rng, dim);
    let bv = random_vector(&mut rng, dim);
    let cv = unit_vector(&mut rng, &a)?;
    let alpha = {
        let raw = Complex64::new(rng.gen::<f64>() * 4.0 - 2.0, rng.gen::<f64>() * 4.0 - 2.0);
        if raw.norm() < 1e-3 {
            Complex64::new(2.0, 0.0)
        } else {
            raw
        }
    };
    let kz = check_kz(&a, &av, &bv, &cv, alpha)?;
    let kzlaa = check_kzlaa(&a, &av, &bv, &cv)?;
    let implied = refinement_delta(&a, &av, &bv, &cv)?;

    let s = random_member(&mut rng, &a, 1.0)?;
    let x = unit_vector(&mut rng, &a)?;
    let z = unit_vector(&mut rng, &a)?;
    let ll = check_ll(&a, &s, &x, &z)?;

    let s0 = random_member(&mut rng, &a, 1.0)?;
    let gram = a_adjoint(&a, &s0)?.compose(&s0)?;
    let power = check_power(&a, &gram, &unit_vector(&mut rng, &a)?, 2 + (k as u32 % 2))?;

    let kx = {
        let mut v = random_vector(&mut rng, dim);
        while a_norm(&a, &v)? <= 1e-6 {
            v = random_vector(&mut rng, dim);
        }
        v
    };
    let kkk = check_kkk(&a, &kx, &random_vector(&mut rng, dim))?;

    let sa = (rng.gen::<f64>() * 3.0 - 1.5).exp();
    let sc = (rng.gen::<f64>() * 3.0 - 1.5).exp();
    let (lo, hi) = check_scalar_interp(sa, sc, rng.gen::<f64>(), 1.0 + rng.gen::<f64>() * 3.0)?;
    let scalar = lo.min(hi);

    let x2 = random_vector(&mut rng, dim);
    let u2 = random_vector(&mut rng, dim);
    let v2 = random_vector(&mut rng, dim);
    let l = check_l(&a, &x2, &u2, &v2)?;
    let lm310 = check_lm310(&a, &x2, &u2, &v2)?;

    Ok([kz, kzlaa, implied, ll, power, kkk, scalar, l, lm310])
}

/// Folds `samples` random evaluations of every inequality check into one
/// result per inequality. The third result records the nonnegativity of
/// the refinement term, which is exactly the gap between the
/// parameter-two product bound and its refined form.
pub fn run_lemma_suite(seed: u64, samples: usize) -> Result<Vec<LemmaCheckResult>> {
    if samples == 0 {
        return Err(Error::InvalidParam("samples must be at least 1".into()));
    }
    let slacks: Vec<[f64; 9]> = (0..samples)
        .into_par_iter()
        .map(|k| lemma_sample(seed, k))
        .collect::<Result<_>>()?;
    let mut results: Vec<LemmaCheckResult> =
        LEMMA_IDS.iter().map(|id| LemmaCheckResult::new(id)).collect();
    for sample in slacks {
        for (result, slack) in results.iter_mut().zip(sample) {
            result.record(slack);
        }
    }
    Ok(results)
}

// ---------------------------------------------------------------------------
// Dense-oracle agreement.
// ---------------------------------------------------------------------------

/// Shapes with weight rank at most two, where the dense two-angle oracle
/// is available for cross-checking the multistart search.
const ORACLE_SHAPES: [(usize, usize); 4] = [(2, 0), (3, 1), (2, 1), (4, 2)];

/// Largest |multistart - dense| radius difference over `count` generated
/// low-rank pairs.
pub fn run_oracle_agreement(fc: &FuzzConfig, oc: &OptimizerConfig) -> Result<f64> {
    fc.validate()?;
    oc.validate()?;
    let diffs: Vec<f64> = (0..fc.count)
        .into_par_iter()
        .map(|item| {
            let mut rng = rng_for(stream_seed(fc.seed, ORACLE_STREAM), item as u64);
            let (dim, deficit) = ORACLE_SHAPES[item % ORACLE_SHAPES.len()];
            let a = random_weight(&mut rng, dim, deficit)?;
            let s = random_member(&mut rng, &a, fc.magnitude)?;
            let t = reduce(&a, &s)?.reduced;
            let searched = dw_multistart(&t, oc).value;
            let (dense, _) = dw_dense(&t)?;
            Ok((searched - dense).abs())
        })
        .collect::<Result<_>>()?;
    Ok(diffs.into_iter().fold(0.0, f64::max))
}
