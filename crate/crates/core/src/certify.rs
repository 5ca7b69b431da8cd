//! Decision procedure for `T[x] >= 2 √(A[x] B[x])`.
//!
//! The engine maximizes `f(s) = λ_min(T - sA - s⁻¹B)` over `s > 0`. If the
//! maximum is nonnegative the maximizer `α` is a split certificate,
//! `T ⪰ αA + α⁻¹B`, which implies the pointwise inequality by scalar AM-GM.
//! If the maximum is negative, a vector `x` in the minimal eigenspace of the
//! pencil at `α` with `τ(x) = α` violates the pointwise inequality outright.
//!
//! # Why `f` is concave
//!
//! For fixed `x`, `s ↦ xᵀ(T - sA - s⁻¹B)x = T[x] - sA[x] - s⁻¹B[x]` is
//! concave on `(0, ∞)` because `A[x] >= 0` and `B[x] >= 0` (the term
//! `-s⁻¹B[x]` has second derivative `-2B[x]/s³ <= 0`). `f` is the pointwise
//! infimum of these over unit `x`, and an infimum of concave functions is
//! concave. Since `A, B ≠ 0`, `f(s) -> -∞` at both ends, so the supremum is
//! attained and a golden-section search on a three-point bracket finds it.

use num_complex::Complex64;
use thiserror::Error;

use crate::forms::{self, FormError, Instance};
use crate::linalg::{self, LinalgError, SymmetricMatrix};

const BRACKET_FACTOR: f64 = 10.0;
const BRACKET_LIMITS: (f64, f64) = (1e-12, 1e12);
const INV_PHI: f64 = 0.618_033_988_749_894_9;
/// Relative stationarity residual at which a single eigenvector is accepted
/// as a witness without bisection.
const STATIONARY_REL_TOL: f64 = 1e-7;
const CLUSTER_WIDEN: f64 = 100.0;
const FALLBACK_SAMPLES: usize = 720;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyConfig {
    /// Relative width of the final golden-section interval.
    pub tol_s: f64,
    /// Certified when `f* >= -eps_cert · scale`.
    pub eps_cert: f64,
    /// Refuted only when `f* < -eps_ref · scale` and the witness gap exceeds
    /// `eps_ref · scale`.
    pub eps_ref: f64,
    /// Cap on golden-section steps.
    pub max_iter: usize,
    /// Eigenvalue clustering tolerance for the minimal eigenspace.
    pub cluster_tol: f64,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig { tol_s: 1e-9, eps_cert: 1e-9, eps_ref: 1e-7, max_iter: 200, cluster_tol: 1e-8 }
    }
}

impl CertifyConfig {
    pub fn validate(&self) -> Result<(), CertifyError> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(CertifyError::InvalidConfig(format!("{name} must be positive and finite, got {v}")))
            }
        };
        positive("tol_s", self.tol_s)?;
        positive("eps_cert", self.eps_cert)?;
        positive("eps_ref", self.eps_ref)?;
        positive("cluster_tol", self.cluster_tol)?;
        if self.eps_cert >= self.eps_ref {
            return Err(CertifyError::InvalidConfig(format!(
                "eps_cert ({}) must be smaller than eps_ref ({})",
                self.eps_cert, self.eps_ref
            )));
        }
        if self.max_iter == 0 {
            return Err(CertifyError::InvalidConfig("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("bracket expansion left [1e-12, 1e12] (best s = {best_s:e}, f = {best_f:e})")]
    BracketOverflow { best_s: f64, best_f: f64 },
    #[error("no witness found at alpha = {alpha_star:e}")]
    WitnessNotFound { alpha_star: f64 },
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A split value `α > 0` for which `T - αA - α⁻¹B` is PSD up to the certify
/// tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub alpha: f64,
    /// `λ_min(T - αA - α⁻¹B)`.
    pub slack: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
}

/// A unit vector violating the pointwise inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct Refutation {
    pub witness: Vec<f64>,
    /// `T[x]`
    pub lhs: f64,
    /// `2 √(A[x] B[x])`
    pub rhs: f64,
    pub gap: f64,
    pub alpha_star: f64,
    /// `|τ(x) - α*|`; zero when `A[x] = B[x] = 0`.
    pub tau_mismatch: f64,
}

impl Refutation {
    /// The witness read back as a complex vector, for instances produced by
    /// [`forms::realify`].
    pub fn complex_witness(&self) -> Vec<Complex64> {
        forms::complexify(&self.witness)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InconclusiveReason {
    /// The maximum fell between the certify and refute thresholds.
    Band,
    BracketOverflow,
    WitnessNotFound,
    /// A witness was found but failed the independent recheck.
    VerificationFailed,
}

impl InconclusiveReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            InconclusiveReason::Band => "band",
            InconclusiveReason::BracketOverflow => "bracket-overflow",
            InconclusiveReason::WitnessNotFound => "witness-not-found",
            InconclusiveReason::VerificationFailed => "verification-failed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Inconclusive {
    pub alpha_star: f64,
    pub f_star: f64,
    /// `(-eps_ref · scale, -eps_cert · scale)`
    pub band: (f64, f64),
    pub reason: InconclusiveReason,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Certified(Certificate),
    Refuted(Refutation),
    Inconclusive(Inconclusive),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictTag {
    Certified,
    Refuted,
    Inconclusive,
}

impl VerdictTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictTag::Certified => "certified",
            VerdictTag::Refuted => "refuted",
            VerdictTag::Inconclusive => "inconclusive",
        }
    }
}

impl Verdict {
    pub fn tag(&self) -> VerdictTag {
        match self {
            Verdict::Certified(_) => VerdictTag::Certified,
            Verdict::Refuted(_) => VerdictTag::Refuted,
            Verdict::Inconclusive(_) => VerdictTag::Inconclusive,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Certified(c) => Some(c),
            _ => None,
        }
    }

    pub fn refutation(&self) -> Option<&Refutation> {
        match self {
            Verdict::Refuted(r) => Some(r),
            _ => None,
        }
    }
}

/// `f(s) = λ_min(T - sA - s⁻¹B)`.
pub fn fval(inst: &Instance, s: f64) -> Result<f64, CertifyError> {
    let p = forms::pencil(inst, s)?;
    Ok(linalg::min_eigenvalue(&p)?)
}

/// Three geometrically spaced points with the middle value not below either
/// end. By concavity the maximum of `f` lies in `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub mid: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_mid: f64,
    pub f_hi: f64,
}

/// Expands `(0.1, 1, 10)` by factors of ten toward the larger end value until
/// the middle point dominates.
pub fn bracket(inst: &Instance) -> Result<Bracket, CertifyError> {
    let mut mid = 1.0;
    let mut f_lo = fval(inst, mid / BRACKET_FACTOR)?;
    let mut f_mid = fval(inst, mid)?;
    let mut f_hi = fval(inst, mid * BRACKET_FACTOR)?;
    let mut best = best_of(&[(mid / BRACKET_FACTOR, f_lo), (mid, f_mid), (mid * BRACKET_FACTOR, f_hi)]);
    loop {
        if f_hi > f_mid {
            mid *= BRACKET_FACTOR;
            f_lo = f_mid;
            f_mid = f_hi;
            let hi = mid * BRACKET_FACTOR;
            if hi > BRACKET_LIMITS.1 {
                return Err(CertifyError::BracketOverflow { best_s: best.0, best_f: best.1 });
            }
            f_hi = fval(inst, hi)?;
            best = best_of(&[best, (hi, f_hi)]);
        } else if f_lo > f_mid {
            mid /= BRACKET_FACTOR;
            f_hi = f_mid;
            f_mid = f_lo;
            let lo = mid / BRACKET_FACTOR;
            if lo < BRACKET_LIMITS.0 {
                return Err(CertifyError::BracketOverflow { best_s: best.0, best_f: best.1 });
            }
            f_lo = fval(inst, lo)?;
            best = best_of(&[best, (lo, f_lo)]);
        } else {
            return Ok(Bracket { lo: mid / BRACKET_FACTOR, mid, hi: mid * BRACKET_FACTOR, f_lo, f_mid, f_hi });
        }
    }
}

fn best_of(points: &[(f64, f64)]) -> (f64, f64) {
    let mut best = points[0];
    for p in &points[1..] {
        if p.1 > best.1 {
            best = *p;
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub alpha_star: f64,
    pub f_star: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
}

/// Golden-section maximization of `f` with the default step cap.
pub fn maximize(inst: &Instance, tol_s: f64) -> Result<Maximum, CertifyError> {
    maximize_with(inst, tol_s, CertifyConfig::default().max_iter)
}

/// Golden-section maximization of `f` over the bracket, run directly in `s`.
/// Stops when the interval width drops below `tol_s` times its left end or
/// after `max_iter` steps. The returned point is the best of every
/// evaluation, so `f_star` is never below any value the search has seen.
pub fn maximize_with(inst: &Instance, tol_s: f64, max_iter: usize) -> Result<Maximum, CertifyError> {
    let br = bracket(inst)?;
    let (mut a, mut b) = (br.lo, br.hi);
    let mut best = (br.mid, br.f_mid);

    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = fval(inst, x1)?;
    let mut f2 = fval(inst, x2)?;
    best = best_of(&[best, (x1, f1), (x2, f2)]);

    let mut iterations = 0;
    while iterations < max_iter && b - a > tol_s * a {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = fval(inst, x2)?;
            best = best_of(&[best, (x2, f2)]);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = fval(inst, x1)?;
            best = best_of(&[best, (x1, f1)]);
        }
        iterations += 1;
    }
    Ok(Maximum { alpha_star: best.0, f_star: best.1, iterations, bracket: (br.lo, br.hi) })
}

/// Stationarity residual `g(x) = -A[x] + α⁻²B[x]`; zero exactly when
/// `τ(x) = α` (for `A[x] > 0`).
fn stationarity(a: &SymmetricMatrix, b: &SymmetricMatrix, alpha: f64, x: &[f64]) -> (f64, f64) {
    let ax = a.quad_form(x);
    let bx = b.quad_form(x) / (alpha * alpha);
    (bx - ax, ax.abs() + bx.abs())
}

/// Extracts a refuting vector at the maximizer using the default clustering
/// tolerance.
pub fn extract_witness(inst: &Instance, alpha_star: f64) -> Result<Refutation, CertifyError> {
    extract_witness_with(inst, alpha_star, CertifyConfig::default().cluster_tol)
}

/// Finds `x` in the minimal eigenspace of the pencil at `alpha_star` with
/// `τ(x) = alpha_star`.
///
/// The eigenspace is a linear subspace, so every point on the great circle
/// through two of its unit vectors is again a minimal eigenvector. Taking
/// the eigenspace directions where the stationarity residual `g` is most
/// negative and most positive, `g` is monotone along the quarter circle
/// between them and bisection finds its zero. If `g` has one sign on the
/// whole eigenspace the cluster is widened once; after that the two lowest
/// eigenvectors of the pencil are scanned, and finally the eigenspace vector
/// with the largest direct violation is taken.
pub fn extract_witness_with(inst: &Instance, alpha_star: f64, cluster_tol: f64) -> Result<Refutation, CertifyError> {
    let p = forms::pencil(inst, alpha_star)?;
    let dec = linalg::eigh(&p)?;
    for tol in [cluster_tol, cluster_tol * CLUSTER_WIDEN] {
        let (_, basis) = linalg::cluster_from(&dec, tol);
        if let Some(x) = stationary_point_in_span(inst, alpha_star, &basis)? {
            return Ok(build_refutation(inst, alpha_star, x));
        }
    }
    if let Some(x) = scan_lowest_pair(inst, alpha_star, &p, &dec.eigenvectors) {
        return Ok(build_refutation(inst, alpha_star, x));
    }
    // g keeps one sign on the eigenspace, e.g. when α* sits a rounding step
    // off a smooth maximum. Every minimal eigenvector then violates the
    // inequality by -f* up to a second-order term; take the best one.
    let (_, basis) = linalg::cluster_from(&dec, cluster_tol * CLUSTER_WIDEN);
    basis
        .into_iter()
        .map(|v| (-inst.pointwise_margin(&v), v))
        .filter(|(gap, _)| *gap > 0.0)
        .max_by(|x, y| x.0.total_cmp(&y.0))
        .map(|(_, v)| build_refutation(inst, alpha_star, v))
        .ok_or(CertifyError::WitnessNotFound { alpha_star })
}

fn stationary_point_in_span(inst: &Instance, alpha: f64, basis: &[Vec<f64>]) -> Result<Option<Vec<f64>>, CertifyError> {
    let (a, b) = (inst.a_nonneg(), inst.b_nonneg());
    for v in basis {
        let (g, size) = stationarity(a, b, alpha, v);
        if g.abs() <= STATIONARY_REL_TOL * size {
            return Ok(Some(v.clone()));
        }
    }
    if basis.len() < 2 {
        return Ok(None);
    }

    // g restricted to the span, diagonalized: its extreme directions are the
    // most negative and most positive residuals available in the eigenspace.
    let k = basis.len();
    let inv2 = 1.0 / (alpha * alpha);
    let mut gram = vec![0.0; k * k];
    for i in 0..k {
        let ai = a.mul_vec(&basis[i]);
        let bi = b.mul_vec(&basis[i]);
        for j in 0..k {
            gram[i * k + j] = inv2 * linalg::dot(&bi, &basis[j]) - linalg::dot(&ai, &basis[j]);
        }
    }
    let gram = SymmetricMatrix::new(k, gram)?;
    let gdec = linalg::eigh(&gram)?;
    let lift = |c: &[f64]| -> Vec<f64> {
        let mut x = vec![0.0; basis[0].len()];
        for (ci, v) in c.iter().zip(basis) {
            for (xj, vj) in x.iter_mut().zip(v) {
                *xj += ci * vj;
            }
        }
        x
    };
    let neg = lift(&gdec.eigenvectors[0]);
    let pos = lift(&gdec.eigenvectors[k - 1]);
    let (g_neg, _) = stationarity(a, b, alpha, &neg);
    let (g_pos, _) = stationarity(a, b, alpha, &pos);
    if g_neg > 0.0 || g_pos < 0.0 {
        return Ok(None);
    }
    Ok(Some(bisect_on_arc(a, b, alpha, &neg, &pos)))
}

/// Zero of `g` on `cos θ · neg + sin θ · pos`, `θ ∈ [0, π/2]`, given
/// `g(neg) <= 0 <= g(pos)`.
fn bisect_on_arc(a: &SymmetricMatrix, b: &SymmetricMatrix, alpha: f64, neg: &[f64], pos: &[f64]) -> Vec<f64> {
    let point = |theta: f64| -> Vec<f64> {
        let (s, c) = theta.sin_cos();
        neg.iter().zip(pos).map(|(u, v)| c * u + s * v).collect()
    };
    let (mut lo, mut hi) = (0.0_f64, std::f64::consts::FRAC_PI_2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (g, _) = stationarity(a, b, alpha, &point(mid));
        if g == 0.0 {
            return point(mid);
        }
        if g < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x_lo = point(lo);
    let x_hi = point(hi);
    if stationarity(a, b, alpha, &x_lo).0.abs() <= stationarity(a, b, alpha, &x_hi).0.abs() {
        x_lo
    } else {
        x_hi
    }
}

/// Last resort: scan the great circle through the two lowest eigenvectors of
/// the pencil, bisect every sign change of `g`, and keep the candidate with
/// the largest violation.
fn scan_lowest_pair(
    inst: &Instance,
    alpha: f64,
    pencil: &SymmetricMatrix,
    eigenvectors: &[Vec<f64>],
) -> Option<Vec<f64>> {
    if eigenvectors.len() < 2 {
        return None;
    }
    let (a, b) = (inst.a_nonneg(), inst.b_nonneg());
    let (u, w) = (&eigenvectors[0], &eigenvectors[1]);
    let point = |theta: f64| -> Vec<f64> {
        let (s, c) = theta.sin_cos();
        u.iter().zip(w).map(|(p, q)| c * p + s * q).collect()
    };
    let step = std::f64::consts::PI / FALLBACK_SAMPLES as f64;
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut prev = point(0.0);
    let mut g_prev = stationarity(a, b, alpha, &prev).0;
    for k in 1..=FALLBACK_SAMPLES {
        let cur = point(k as f64 * step);
        let g_cur = stationarity(a, b, alpha, &cur).0;
        if g_prev.signum() != g_cur.signum() || g_cur == 0.0 {
            let (neg, pos) = if g_prev <= 0.0 { (&prev, &cur) } else { (&cur, &prev) };
            // neg and pos are not orthogonal here; bisect on the chord instead.
            let x = bisect_on_chord(a, b, alpha, neg, pos);
            if pencil.quad_form(&x) < 0.0 {
                let gap = -inst.pointwise_margin(&x);
                if best.as_ref().is_none_or(|(g, _)| gap > *g) {
                    best = Some((gap, x));
                }
            }
        }
        prev = cur;
        g_prev = g_cur;
    }
    best.filter(|(gap, _)| *gap > 0.0).map(|(_, x)| x)
}

fn bisect_on_chord(a: &SymmetricMatrix, b: &SymmetricMatrix, alpha: f64, neg: &[f64], pos: &[f64]) -> Vec<f64> {
    let point = |t: f64| -> Vec<f64> { neg.iter().zip(pos).map(|(u, v)| (1.0 - t) * u + t * v).collect() };
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if stationarity(a, b, alpha, &point(mid)).0 < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    point(0.5 * (lo + hi))
}

fn build_refutation(inst: &Instance, alpha_star: f64, x: Vec<f64>) -> Refutation {
    let witness = linalg::normalized(&x).unwrap_or(x);
    let (lhs, rhs) = inst.pointwise_sides(&witness);
    let tau_mismatch = match forms::tau(inst, &witness) {
        Ok(t) => (t - alpha_star).abs(),
        Err(_) => 0.0,
    };
    Refutation { witness, lhs, rhs, gap: rhs - lhs, alpha_star, tau_mismatch }
}

/// Runs the full decision procedure.
///
/// * `Certified` when `max f >= -eps_cert · scale`.
/// * `Refuted` when `max f < -eps_ref · scale` and the extracted witness,
///   re-evaluated from scratch, violates the pointwise inequality by more
///   than `eps_ref · scale`.
/// * `Inconclusive` otherwise, with the achieved maximum and the reason.
pub fn certify(inst: &Instance, config: &CertifyConfig) -> Result<Verdict, CertifyError> {
    config.validate()?;
    let scale = inst.scale();
    let band = (-config.eps_ref * scale, -config.eps_cert * scale);
    let inconclusive =
        |alpha_star, f_star, reason| Ok(Verdict::Inconclusive(Inconclusive { alpha_star, f_star, band, reason }));

    let max = match maximize_with(inst, config.tol_s, config.max_iter) {
        Ok(m) => m,
        Err(CertifyError::BracketOverflow { best_s, best_f }) => {
            return inconclusive(best_s, best_f, InconclusiveReason::BracketOverflow)
        }
        Err(e) => return Err(e),
    };

    if max.f_star >= band.1 {
        return Ok(Verdict::Certified(Certificate {
            alpha: max.alpha_star,
            slack: max.f_star,
            iterations: max.iterations,
            bracket: max.bracket,
        }));
    }
    if max.f_star >= band.0 {
        return inconclusive(max.alpha_star, max.f_star, InconclusiveReason::Band);
    }

    let refutation = match extract_witness_with(inst, max.alpha_star, config.cluster_tol) {
        Ok(r) => r,
        Err(CertifyError::WitnessNotFound { .. }) => {
            return inconclusive(max.alpha_star, max.f_star, InconclusiveReason::WitnessNotFound)
        }
        Err(e) => return Err(e),
    };
    if verify_refutation(inst, &refutation, config.eps_ref) {
        Ok(Verdict::Refuted(refutation))
    } else {
        inconclusive(max.alpha_star, max.f_star, InconclusiveReason::VerificationFailed)
    }
}

/// Independent recheck of a refutation: unit witness, and
/// `T[x] < 2 √(A[x] B[x]) - eps_ref · scale` from direct evaluation.
pub fn verify_refutation(inst: &Instance, r: &Refutation, eps_ref: f64) -> bool {
    if r.witness.len() != inst.dim() || (linalg::norm2(&r.witness) - 1.0).abs() > 1e-12 {
        return false;
    }
    let t = inst.t().quad_form(&r.witness);
    let a = inst.a().quad_form(&r.witness).max(0.0);
    let b = inst.b().quad_form(&r.witness).max(0.0);
    t < 2.0 * (a * b).sqrt() - eps_ref * inst.scale()
}

/// Independent recheck of a certificate: the pencil at `alpha` passes the
/// PSD test at tolerance `tol`.
pub fn verify_certificate(inst: &Instance, c: &Certificate, tol: f64) -> Result<bool, CertifyError> {
    let p = forms::pencil(inst, c.alpha)?;
    Ok(linalg::psd_check(&p, tol)?)
}

/// Certifies a triple of Hermitian forms through realification. A refuting
/// witness `(u, v)` corresponds to the complex vector `u + iv`, see
/// [`Refutation::complex_witness`].
pub fn certify_hermitian(h: &forms::HermitianInstance, config: &CertifyConfig) -> Result<Verdict, CertifyError> {
    let inst = forms::realify(h)?;
    certify(&inst, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::validate_instance;

    fn inst(t: SymmetricMatrix, a: SymmetricMatrix, b: SymmetricMatrix) -> Instance {
        validate_instance(t, a, b).unwrap()
    }

    fn coord(t: SymmetricMatrix) -> Instance {
        inst(t, SymmetricMatrix::diag(&[1.0, 0.0]), SymmetricMatrix::diag(&[0.0, 1.0]))
    }

    #[test]
    fn fval_examples() {
        let c = coord(SymmetricMatrix::identity(2));
        assert_eq!(fval(&c, 1.0).unwrap(), 0.0);
        assert_eq!(fval(&c, 2.0).unwrap(), -1.0);
        let i2 = SymmetricMatrix::identity(2);
        let same = inst(i2.scaled(2.0), i2.clone(), i2.clone());
        assert_eq!(fval(&same, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn bracket_contains_one() {
        let br = bracket(&coord(SymmetricMatrix::identity(2))).unwrap();
        assert!(br.lo < 1.0 && 1.0 < br.hi);
        assert!(br.f_mid >= br.f_lo && br.f_mid >= br.f_hi);
        let i2 = SymmetricMatrix::identity(2);
        let br = bracket(&inst(i2.scaled(2.0), i2.clone(), i2)).unwrap();
        assert!(br.lo < 1.0 && 1.0 < br.hi);
    }

    #[test]
    fn bracket_moves_toward_large_maximizer() {
        // f(s) = min(1e6 - s, 1 - 1/s) ... peaks near s = 1e6
        let c = coord(SymmetricMatrix::diag(&[1e6, 1.0]));
        let br = bracket(&c).unwrap();
        assert!(br.hi >= 1e5, "{br:?}");
    }

    #[test]
    fn bracket_overflow_on_tiny_form() {
        let c = coord(SymmetricMatrix::identity(2));
        let tiny = inst(c.t().clone(), SymmetricMatrix::diag(&[1e-30, 0.0]), c.b().clone());
        match bracket(&tiny) {
            Err(CertifyError::BracketOverflow { .. }) => {}
            other => panic!("expected overflow, got {other:?}"),
        }
        let v = certify(&tiny, &CertifyConfig::default()).unwrap();
        match v {
            Verdict::Inconclusive(i) => assert_eq!(i.reason, InconclusiveReason::BracketOverflow),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn maximize_examples() {
        let m = maximize(&coord(SymmetricMatrix::identity(2)), 1e-9).unwrap();
        assert!((m.alpha_star - 1.0).abs() < 1e-6);
        assert!(m.f_star.abs() < 1e-8);

        let m = maximize(&coord(SymmetricMatrix::identity(2).scaled(0.5)), 1e-9).unwrap();
        assert!((m.alpha_star - 1.0).abs() < 1e-6);
        assert!((m.f_star + 0.5).abs() < 1e-8);

        // f(s) = min(4 - s, 1 - 1/s): the branches cross at s² - 3s - 1 = 0
        let m = maximize(&coord(SymmetricMatrix::diag(&[4.0, 1.0])), 1e-9).unwrap();
        let s_star = (3.0 + 13f64.sqrt()) / 2.0;
        assert!((m.alpha_star - s_star).abs() < 1e-6);
        assert!((m.f_star - (4.0 - s_star)).abs() < 1e-8);

        // A = B = e1 e1ᵀ, T = diag(4, 0): f(s) = min(4 - s - 1/s, 0) is flat
        // at 0 on [2 - √3, 2 + √3]
        let e1 = SymmetricMatrix::diag(&[1.0, 0.0]);
        let flat = inst(SymmetricMatrix::diag(&[4.0, 0.0]), e1.clone(), e1);
        let m = maximize(&flat, 1e-9).unwrap();
        assert_eq!(m.f_star, 0.0);
        assert!((2.0 - 3f64.sqrt() - 1e-9..=2.0 + 3f64.sqrt() + 1e-9).contains(&m.alpha_star));
    }

    #[test]
    fn witness_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for (t, gap) in [(SymmetricMatrix::identity(2).scaled(0.5), 0.5), (SymmetricMatrix::zeros(2), 1.0)] {
            let r = extract_witness(&coord(t), 1.0).unwrap();
            assert!((r.witness[0].abs() - h).abs() < 1e-12);
            assert!((r.witness[1].abs() - h).abs() < 1e-12);
            assert!(r.witness[0] * r.witness[1] > 0.0);
            assert!((r.gap - gap).abs() < 1e-12, "{r:?}");
            assert!(r.tau_mismatch < 1e-12);
        }
    }

    #[test]
    fn certify_examples() {
        let i2 = SymmetricMatrix::identity(2);
        let cfg = CertifyConfig::default();
        match certify(&inst(i2.scaled(2.0), i2.clone(), i2.clone()), &cfg).unwrap() {
            Verdict::Certified(c) => {
                assert!((c.alpha - 1.0).abs() < 1e-6);
                assert!(c.slack.abs() < 1e-8);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(certify(&coord(i2.clone()), &cfg).unwrap().tag(), VerdictTag::Certified);
        match certify(&coord(i2.scaled(0.5)), &cfg).unwrap() {
            Verdict::Refuted(r) => assert!((r.gap - 0.5).abs() < 1e-6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_t_is_refuted_quickly() {
        let c = coord(SymmetricMatrix::diag(&[-1.0, 1.0]));
        let v = certify(&c, &CertifyConfig::default()).unwrap();
        let r = v.refutation().expect("refuted");
        assert!(verify_refutation(&c, r, 1e-7));
    }

    #[test]
    fn config_validation() {
        let bad = CertifyConfig { eps_cert: 1e-7, eps_ref: 1e-9, ..Default::default() };
        assert!(matches!(bad.validate(), Err(CertifyError::InvalidConfig(_))));
        let bad = CertifyConfig { tol_s: 0.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = CertifyConfig { max_iter: 0, ..Default::default() };
        assert!(bad.validate().is_err());
        let c = coord(SymmetricMatrix::identity(2));
        let bad = CertifyConfig { eps_cert: f64::NAN, ..Default::default() };
        assert!(certify(&c, &bad).is_err());
    }

    #[test]
    fn hermitian_refutation_maps_back_to_complex_vector() {
        use crate::forms::{HermitianInstance, HermitianMatrix};
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        // A = e1 e1*, B = w w* with w = (i, 1)/√2-ish, T = 0.1 I: refuted
        let t = HermitianMatrix::from_real(&SymmetricMatrix::identity(2).scaled(0.1));
        let a = HermitianMatrix::from_rows(&[vec![one, zero], vec![zero, zero]]).unwrap();
        let b = HermitianMatrix::from_rows(&[vec![one, -i], vec![i, one]]).unwrap();
        let h = HermitianInstance::new(t.clone(), a.clone(), b.clone()).unwrap();
        let v = certify_hermitian(&h, &CertifyConfig::default()).unwrap();
        let r = v.refutation().unwrap_or_else(|| panic!("{v:?}"));
        let z = r.complex_witness();
        let lhs = t.form_value(&z).unwrap();
        let rhs = 2.0 * (a.form_value(&z).unwrap() * b.form_value(&z).unwrap()).sqrt();
        assert!((lhs - r.lhs).abs() < 1e-12 && (rhs - r.rhs).abs() < 1e-12);
        assert!(lhs < rhs);
    }
}
