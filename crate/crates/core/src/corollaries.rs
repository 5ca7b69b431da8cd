//! Consequences of a split certificate: the trace inequality, its
//! Hilbert–Schmidt form for orthogonal projections, and the averages
//! inequality for special collections of numbers.

use thiserror::Error;

use crate::certify::{self, Certificate, CertifyConfig, CertifyError, Refutation, Verdict};
use crate::forms::{self, FormError, Instance};
use crate::linalg::{self, LinalgError, Matrix, SymmetricMatrix};

/// Tolerance for [`projection_check`] inside [`hs_check`].
pub const PROJECTION_TOL: f64 = 1e-10;
/// Gate on `‖P₁P₂‖_F` relative to `1 + ‖P₁‖_F ‖P₂‖_F`.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorollaryError {
    #[error("verdict is not Certified; the trace inequality has no hypothesis to stand on")]
    PreconditionNotCertified,
    #[error("{0} is not an orthogonal projection")]
    NotProjection(&'static str),
    #[error("projections are not mutually orthogonal (‖P1 P2‖_F = {0:e})")]
    NotOrthogonalPair(f64),
    #[error("hypothesis refuted: T[h] < 2‖P1 h‖‖P2 h‖ at the witness (gap {:e})", .0.gap)]
    HypothesisRefuted(Box<Refutation>),
    #[error("hypothesis could not be decided (max f = {f_star:e})")]
    HypothesisInconclusive { f_star: f64 },
    #[error("L must have {expected} rows, got {got}")]
    BadOperatorShape { expected: usize, got: usize },
    #[error("sequences have different lengths: a={a}, b={b}, t={t}")]
    LengthMismatch { a: usize, b: usize, t: usize },
    #[error("negative entry {value} at index {index}")]
    NegativeInput { index: usize, value: f64 },
    #[error("averages inequality violated: {0}")]
    AveragesViolated(&'static str),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceReport {
    pub trace_t: f64,
    /// `2 √(tr A · tr B)`
    pub bound: f64,
    pub margin: f64,
}

/// `tr T - 2 √(tr A · tr B)` without any hypothesis check.
pub fn trace_margin(t: &SymmetricMatrix, a: &SymmetricMatrix, b: &SymmetricMatrix) -> TraceReport {
    let trace_t = t.trace();
    let bound = 2.0 * (a.trace().max(0.0) * b.trace().max(0.0)).sqrt();
    TraceReport { trace_t, bound, margin: trace_t - bound }
}

/// Trace inequality `tr T >= 2 √(tr A · tr B)` for a certified instance.
///
/// With `T ⪰ αA + α⁻¹B`, taking traces gives
/// `tr T >= α tr A + α⁻¹ tr B >= 2 √(tr A · tr B)`.
pub fn trace_check(inst: &Instance, verdict: &Verdict) -> Result<TraceReport, CorollaryError> {
    if verdict.certificate().is_none() {
        return Err(CorollaryError::PreconditionNotCertified);
    }
    Ok(trace_margin(inst.t(), inst.a(), inst.b()))
}

/// `‖P² - P‖_F <= tol (1 + ‖P‖_F)`.
pub fn projection_check(p: &SymmetricMatrix, tol: f64) -> bool {
    let m = p.to_matrix();
    let sq = match m.matmul(&m) {
        Ok(sq) => sq,
        Err(_) => return false,
    };
    let diff: f64 = sq.as_slice().iter().zip(m.as_slice()).map(|(x, y)| (x - y) * (x - y)).sum();
    diff.sqrt() <= tol * (1.0 + p.frobenius_norm())
}

#[derive(Debug, Clone, PartialEq)]
pub struct HsReport {
    /// `tr(Lᵀ T L)`
    pub lhs: f64,
    /// `2 ‖P₁L‖_HS ‖P₂L‖_HS`
    pub rhs: f64,
    pub margin: f64,
    /// Certificate for `T ⪰ αP₁ + α⁻¹P₂`, i.e. for `⟨Th,h⟩ >= 2‖P₁h‖‖P₂h‖`.
    pub hypothesis: Certificate,
    /// `λ_min(Lᵀ(T - αP₁ - α⁻¹P₂)L)`: the hypothesis certificate carried
    /// through the congruence.
    pub transferred_slack: f64,
    /// `(LᵀTL, LᵀP₁L, LᵀP₂L)`; `None` when `P₁L = 0` or `P₂L = 0`.
    pub reduced_instance: Option<Instance>,
    /// The engine run on the reduced instance.
    pub reduced_verdict: Option<Verdict>,
    /// Combined scale `‖T‖_F + ‖P₁‖_F + ‖P₂‖_F` times `1 + ‖L‖_F²`.
    pub scale: f64,
}

/// Hilbert–Schmidt corollary: `tr(LᵀTL) >= 2‖P₁L‖_HS‖P₂L‖_HS`.
///
/// The hypothesis `⟨Th,h⟩ >= 2‖P₁h‖‖P₂h‖` is the pointwise inequality for
/// the triple `(T, P₁, P₂)` because `‖Pⱼh‖² = ⟨Pⱼh,h⟩`, so it is certified
/// here rather than assumed. The conclusion is the trace inequality for the
/// congruent triple `(LᵀTL, LᵀP₁L, LᵀP₂L)`, which inherits the certificate:
/// `Lᵀ(T - αP₁ - α⁻¹P₂)L ⪰ 0`.
pub fn hs_check(
    t: &SymmetricMatrix,
    p1: &SymmetricMatrix,
    p2: &SymmetricMatrix,
    l: &Matrix,
    config: &CertifyConfig,
) -> Result<HsReport, CorollaryError> {
    if !projection_check(p1, PROJECTION_TOL) {
        return Err(CorollaryError::NotProjection("P1"));
    }
    if !projection_check(p2, PROJECTION_TOL) {
        return Err(CorollaryError::NotProjection("P2"));
    }
    let cross = p1.to_matrix().matmul(&p2.to_matrix())?.frobenius_norm();
    if cross > ORTHOGONALITY_TOL * (1.0 + p1.frobenius_norm() * p2.frobenius_norm()) {
        return Err(CorollaryError::NotOrthogonalPair(cross));
    }
    if l.rows() != t.dim() {
        return Err(CorollaryError::BadOperatorShape { expected: t.dim(), got: l.rows() });
    }

    let inst = forms::validate_instance(t.clone(), p1.clone(), p2.clone())?;
    let hypothesis = match certify::certify(&inst, config)? {
        Verdict::Certified(c) => c,
        Verdict::Refuted(r) => return Err(CorollaryError::HypothesisRefuted(Box::new(r))),
        Verdict::Inconclusive(i) => return Err(CorollaryError::HypothesisInconclusive { f_star: i.f_star }),
    };

    let ltl = t.congruence(l)?;
    let lp1 = p1.congruence(l)?;
    let lp2 = p2.congruence(l)?;
    let p1l = p1.to_matrix().matmul(l)?.frobenius_norm();
    let p2l = p2.to_matrix().matmul(l)?.frobenius_norm();
    let lhs = ltl.trace();
    let rhs = 2.0 * p1l * p2l;

    let transferred = forms::pencil(&inst, hypothesis.alpha)?.congruence(l)?;
    let transferred_slack = linalg::min_eigenvalue(&transferred)?;

    let (reduced_instance, reduced_verdict) = match forms::validate_instance(ltl, lp1, lp2) {
        Ok(r) => {
            let v = certify::certify(&r, config)?;
            (Some(r), Some(v))
        }
        Err(FormError::ZeroForm { .. }) => (None, None),
        Err(e) => return Err(e.into()),
    };

    let l_norm = l.frobenius_norm();
    Ok(HsReport {
        lhs,
        rhs,
        margin: lhs - rhs,
        hypothesis,
        transferred_slack,
        reduced_instance,
        reduced_verdict,
        scale: inst.scale() * (1.0 + l_norm * l_norm),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AveragesReport {
    pub n: usize,
    /// `Σ √(aᵢbᵢ) / n`
    pub ag: f64,
    /// `√(Σaᵢ · Σbᵢ) / n`
    pub ga: f64,
    /// `Σtᵢ / n`
    pub t_mean: f64,
    pub special: bool,
}

impl AveragesReport {
    /// Whether `t_mean >= ga` (the special-collection inequality), regardless
    /// of the `special` flag.
    pub fn special_inequality_holds(&self) -> bool {
        self.t_mean >= self.ga - 1e-10 * (1.0 + self.ga)
    }
}

/// Compares the arithmetic mean of geometric means with the geometric mean
/// of arithmetic means. `ga >= ag` always holds (Cauchy–Schwarz). When
/// `special` is set the `tᵢ` are claimed to come from a certified operator,
/// `tᵢ = ⟨Teᵢ,eᵢ⟩/2`, and `t_mean >= ga` is enforced as well.
pub fn averages_check(a: &[f64], b: &[f64], t: &[f64], special: bool) -> Result<AveragesReport, CorollaryError> {
    if a.len() != b.len() || a.len() != t.len() {
        return Err(CorollaryError::LengthMismatch { a: a.len(), b: b.len(), t: t.len() });
    }
    for (index, &value) in a.iter().chain(b).enumerate() {
        if value.is_nan() || value < 0.0 {
            return Err(CorollaryError::NegativeInput { index: index % a.len().max(1), value });
        }
    }
    let n = a.len();
    let denom = n.max(1) as f64;
    let ag = a.iter().zip(b).map(|(x, y)| (x * y).sqrt()).sum::<f64>() / denom;
    let ga = (a.iter().sum::<f64>() * b.iter().sum::<f64>()).sqrt() / denom;
    let t_mean = t.iter().sum::<f64>() / denom;
    if ga < ag - 1e-12 * (1.0 + ga) {
        return Err(CorollaryError::AveragesViolated("ga >= ag"));
    }
    let report = AveragesReport { n, ag, ga, t_mean, special };
    if special && !report.special_inequality_holds() {
        return Err(CorollaryError::AveragesViolated("t_mean >= ga"));
    }
    Ok(report)
}

/// `(aᵢ, bᵢ, tᵢ) = (⟨Aeᵢ,eᵢ⟩, ⟨Beᵢ,eᵢ⟩, ⟨Teᵢ,eᵢ⟩/2)` for a system of vectors.
pub fn remark_collection(inst: &Instance, vectors: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let mut a = Vec::with_capacity(vectors.len());
    let mut b = Vec::with_capacity(vectors.len());
    let mut t = Vec::with_capacity(vectors.len());
    for e in vectors {
        a.push(inst.a().quad_form(e).max(0.0));
        b.push(inst.b().quad_form(e).max(0.0));
        t.push(0.5 * inst.t().quad_form(e));
    }
    (a, b, t)
}
