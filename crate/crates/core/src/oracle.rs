//! Independent ground truth at desk scale.
//!
//! [`sphere_scan`] checks the pointwise inequality by brute force on a grid
//! of the unit circle or sphere, [`grid_alpha`] scans the pencil parameter on
//! a log grid, and the generators build instances whose verdict is known by
//! construction.

use thiserror::Error;

use crate::certify::{self, CertifyError};
use crate::forms::{self, FormError, Instance};
use crate::linalg::{self, LinalgError, Matrix, SymmetricMatrix};
use crate::rng::SplitMix64;

/// Largest angular step accepted by [`sphere_scan`].
pub const MAX_RESOLUTION: f64 = 0.05;

/// Retry budget for [`gen_violating`].
pub const GENERATOR_RETRIES: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("sphere scan supports dimensions 2 and 3 only, got {0}")]
    UnsupportedDimension(usize),
    #[error("resolution must be in (0, {MAX_RESOLUTION}], got {0}")]
    InvalidResolution(f64),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("generator exhausted after {0} attempts")]
    GeneratorExhausted(usize),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
}

/// Grid minimum of `T[x] - 2 √(A[x] B[x])` over unit vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub min_value: f64,
    pub argmin: Vec<f64>,
    /// Requested angular step in radians; the grid step never exceeds it.
    pub resolution: f64,
    /// `2 · scale · resolution`. The margin is Lipschitz on the sphere with
    /// constant `2‖T‖₂ + 4 √(‖A‖₂‖B‖₂) <= 2 · scale`, and every unit vector
    /// lies within `resolution` of a grid point, so the true infimum is at
    /// least `min_value - error_bound`.
    pub error_bound: f64,
}

/// Brute-force scan of the pointwise margin on the unit circle (dim 2) or
/// the upper unit hemisphere (dim 3; the margin is even in `x`).
pub fn sphere_scan(inst: &Instance, resolution: f64) -> Result<ScanResult, OracleError> {
    if !(resolution > 0.0 && resolution <= MAX_RESOLUTION) {
        return Err(OracleError::InvalidResolution(resolution));
    }
    let mut best = (f64::INFINITY, Vec::new());
    let mut visit = |x: Vec<f64>| {
        let v = inst.pointwise_margin(&x);
        if v < best.0 {
            best = (v, x);
        }
    };
    match inst.dim() {
        2 => {
            let n = (std::f64::consts::PI / resolution).ceil() as usize;
            let step = std::f64::consts::PI / n as f64;
            for k in 0..n {
                let (s, c) = (k as f64 * step).sin_cos();
                visit(vec![c, s]);
            }
        }
        3 => {
            let n_polar = (std::f64::consts::FRAC_PI_2 / resolution).ceil() as usize;
            let polar_step = std::f64::consts::FRAC_PI_2 / n_polar as f64;
            let n_az = (2.0 * std::f64::consts::PI / resolution).ceil() as usize;
            let az_step = 2.0 * std::f64::consts::PI / n_az as f64;
            visit(vec![0.0, 0.0, 1.0]);
            for j in 1..=n_polar {
                let (st, ct) = (j as f64 * polar_step).sin_cos();
                for k in 0..n_az {
                    let (sp, cp) = (k as f64 * az_step).sin_cos();
                    visit(vec![st * cp, st * sp, ct]);
                }
            }
        }
        d => return Err(OracleError::UnsupportedDimension(d)),
    }
    Ok(ScanResult { min_value: best.0, argmin: best.1, resolution, error_bound: 2.0 * inst.scale() * resolution })
}

/// Maximizes `f` over `s = 10^e`, `e ∈ [lo_exp, hi_exp]`, sampled at
/// `points_per_decade` per decade. Returns `(best_s, best_f)`.
pub fn grid_alpha(inst: &Instance, points_per_decade: usize, decades: (f64, f64)) -> Result<(f64, f64), OracleError> {
    let (lo, hi) = decades;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(OracleError::InvalidGrid(format!("decades must satisfy lo < hi, got ({lo}, {hi})")));
    }
    if points_per_decade < 10 {
        return Err(OracleError::InvalidGrid(format!("need at least 10 points per decade, got {points_per_decade}")));
    }
    let n = ((hi - lo) * points_per_decade as f64).round() as usize;
    let mut best = (f64::NAN, f64::NEG_INFINITY);
    for k in 0..=n {
        let s = 10f64.powf(lo + (hi - lo) * k as f64 / n as f64);
        let f = certify::fval(inst, s)?;
        if f > best.1 {
            best = (s, f);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `T = αA + α⁻¹B + C` with `C` PSD.
    Certified,
    /// `T = αA + α⁻¹B`.
    Tight,
    /// `T = c (αA + α⁻¹B)` with `0 < c < 1`.
    Violating,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Certified => "certified",
            Family::Tight => "tight",
            Family::Violating => "violating",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "certified" => Ok(Family::Certified),
            "tight" => Ok(Family::Tight),
            "violating" => Ok(Family::Violating),
            other => Err(format!("unknown family '{other}' (expected certified, tight or violating)")),
        }
    }
}

/// Fixed matrices that replace the corresponding random draws.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub a: Option<SymmetricMatrix>,
    pub b: Option<SymmetricMatrix>,
    pub c: Option<SymmetricMatrix>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub dim: usize,
    pub seed: u64,
    pub family: Family,
    pub alpha: f64,
    /// Shrink factor `c` for [`Family::Violating`].
    pub shrink: f64,
    /// Exchange the random `A` and `B` draws before assembling `T`.
    pub swap_ab: bool,
    pub overrides: Overrides,
}

impl GeneratorSpec {
    pub fn new(family: Family, dim: usize, seed: u64) -> Self {
        GeneratorSpec { dim, seed, family, alpha: 1.0, shrink: 0.5, swap_ab: false, overrides: Overrides::default() }
    }

    pub fn alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn shrink(mut self, c: f64) -> Self {
        self.shrink = c;
        self
    }

    pub fn swap_ab(mut self, swap: bool) -> Self {
        self.swap_ab = swap;
        self
    }

    pub fn overrides(mut self, o: Overrides) -> Self {
        self.overrides = o;
        self
    }

    fn check(&self) -> Result<(), OracleError> {
        if self.dim < 2 {
            return Err(OracleError::InvalidSpec(format!("dim must be at least 2, got {}", self.dim)));
        }
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(OracleError::InvalidSpec(format!("alpha must be positive, got {}", self.alpha)));
        }
        if self.family == Family::Violating && !(self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(OracleError::InvalidSpec(format!("shrink must lie in (0, 1), got {}", self.shrink)));
        }
        for m in [&self.overrides.a, &self.overrides.b, &self.overrides.c].into_iter().flatten() {
            if m.dim() != self.dim {
                return Err(OracleError::InvalidSpec(format!(
                    "override of dimension {} for dim {}",
                    m.dim(),
                    self.dim
                )));
            }
        }
        Ok(())
    }
}

/// `R Rᵀ` for a `dim x rank` matrix `R` with uniform(-1, 1) entries, drawn
/// row by row.
pub fn random_psd(rng: &mut SplitMix64, dim: usize, rank: usize) -> SymmetricMatrix {
    let r: Vec<f64> = (0..dim * rank).map(|_| rng.uniform(-1.0, 1.0)).collect();
    let mut data = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = 0.0;
            for k in 0..rank {
                acc += r[i * rank + k] * r[j * rank + k];
            }
            data[i * dim + j] = acc;
        }
    }
    SymmetricMatrix::new(dim, data).expect("R Rᵀ is symmetric and finite")
}

/// Full rank three times out of four, otherwise a uniform rank in `1..dim`.
fn random_rank(rng: &mut SplitMix64, dim: usize) -> usize {
    if rng.range_inclusive(0, 3) == 0 {
        rng.range_inclusive(1, dim - 1)
    } else {
        dim
    }
}

/// Symmetric matrix with uniform(-1, 1) entries on and above the diagonal.
pub fn random_symmetric(rng: &mut SplitMix64, dim: usize) -> SymmetricMatrix {
    let mut data = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let v = rng.uniform(-1.0, 1.0);
            data[i * dim + j] = v;
            data[j * dim + i] = v;
        }
    }
    SymmetricMatrix::new(dim, data).expect("symmetric by construction")
}

/// Orthogonal matrix from twice-applied modified Gram-Schmidt on uniform
/// columns.
pub fn random_orthogonal(rng: &mut SplitMix64, dim: usize) -> Matrix {
    loop {
        let mut cols: Vec<Vec<f64>> = (0..dim).map(|_| (0..dim).map(|_| rng.uniform(-1.0, 1.0)).collect()).collect();
        let mut ok = true;
        for j in 0..dim {
            for _ in 0..2 {
                for i in 0..j {
                    let d = linalg::dot(&cols[i], &cols[j]);
                    let (head, tail) = cols.split_at_mut(j);
                    for (x, q) in tail[0].iter_mut().zip(&head[i]) {
                        *x -= d * q;
                    }
                }
            }
            match linalg::normalized(&cols[j]) {
                Some(v) if linalg::norm2(&cols[j]) > 1e-8 => cols[j] = v,
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Matrix::from_columns(&cols).expect("square and finite");
        }
    }
}

fn draw_ab(spec: &GeneratorSpec, rng: &mut SplitMix64) -> (SymmetricMatrix, SymmetricMatrix) {
    let rank_a = random_rank(rng, spec.dim);
    let a = random_psd(rng, spec.dim, rank_a);
    let rank_b = random_rank(rng, spec.dim);
    let b = random_psd(rng, spec.dim, rank_b);
    let a = spec.overrides.a.clone().unwrap_or(a);
    let b = spec.overrides.b.clone().unwrap_or(b);
    if spec.swap_ab {
        (b, a)
    } else {
        (a, b)
    }
}

fn split_sum(alpha: f64, a: &SymmetricMatrix, b: &SymmetricMatrix) -> SymmetricMatrix {
    SymmetricMatrix::linear_combination(&[(alpha, a), (1.0 / alpha, b)])
}

/// `T = αA + α⁻¹B + C` with random PSD `A`, `B`, `C` (possibly rank
/// deficient, `C` possibly zero). Certified by construction.
pub fn gen_certified(spec: &GeneratorSpec) -> Result<Instance, OracleError> {
    spec.check()?;
    let mut rng = SplitMix64::new(spec.seed);
    let (a, b) = draw_ab(spec, &mut rng);
    let rank_c = rng.range_inclusive(0, spec.dim);
    let c = if rank_c == 0 { SymmetricMatrix::zeros(spec.dim) } else { random_psd(&mut rng, spec.dim, rank_c) };
    let c = spec.overrides.c.clone().unwrap_or(c);
    let t = SymmetricMatrix::linear_combination(&[(1.0, &split_sum(spec.alpha, &a, &b)), (1.0, &c)]);
    Ok(forms::validate_instance(t, a, b)?)
}

/// `T = αA + α⁻¹B`: zero slack at `α`.
pub fn gen_tight(spec: &GeneratorSpec) -> Result<Instance, OracleError> {
    spec.check()?;
    let mut rng = SplitMix64::new(spec.seed);
    let (a, b) = draw_ab(spec, &mut rng);
    Ok(forms::validate_instance(split_sum(spec.alpha, &a, &b), a, b)?)
}

/// `T = c (αA + α⁻¹B)` together with a unit witness `x` with `τ(x) = α`,
/// `A[x], B[x] > 0`, so that `T[x] = c · 2√(A[x]B[x])`.
///
/// Draws are repeated from the same stream until `A + B` is positive
/// definite and `-A + α⁻²B` is indefinite, at most [`GENERATOR_RETRIES`]
/// times.
pub fn gen_violating(spec: &GeneratorSpec) -> Result<(Instance, Vec<f64>), OracleError> {
    spec.check()?;
    let mut rng = SplitMix64::new(spec.seed);
    for _ in 0..GENERATOR_RETRIES {
        let (a, b) = draw_ab(spec, &mut rng);
        let sum = SymmetricMatrix::linear_combination(&[(1.0, &a), (1.0, &b)]);
        if linalg::min_eigenvalue(&sum)? <= 1e-6 * sum.frobenius_norm() {
            continue;
        }
        if let Some(x) = balanced_direction(&a, &b, spec.alpha)? {
            let t = split_sum(spec.alpha, &a, &b).scaled(spec.shrink);
            return Ok((forms::validate_instance(t, a, b)?, x));
        }
    }
    Err(OracleError::GeneratorExhausted(GENERATOR_RETRIES))
}

/// Unit `x` with `A[x] = α⁻²B[x] > 0`, from the extreme eigenvectors of
/// `G = -A + α⁻²B`: with `G u = g₋ u`, `G w = g₊ w`, `g₋ < 0 < g₊`, the
/// vector `cos θ u + sin θ w` has `G[x] = 0` when `tan²θ = -g₋/g₊`.
fn balanced_direction(a: &SymmetricMatrix, b: &SymmetricMatrix, alpha: f64) -> Result<Option<Vec<f64>>, OracleError> {
    let g = SymmetricMatrix::linear_combination(&[(-1.0, a), (1.0 / (alpha * alpha), b)]);
    let dec = linalg::eigh(&g)?;
    let n = dec.dim();
    let (g_neg, g_pos) = (dec.eigenvalues[0], dec.eigenvalues[n - 1]);
    let size = g.frobenius_norm();
    if !(g_neg < -1e-9 * size && g_pos > 1e-9 * size) {
        return Ok(None);
    }
    let theta = (-g_neg / g_pos).sqrt().atan();
    let (s, c) = theta.sin_cos();
    let x: Vec<f64> = dec.eigenvectors[0].iter().zip(&dec.eigenvectors[n - 1]).map(|(u, w)| c * u + s * w).collect();
    let x = linalg::normalized(&x).expect("combination of orthonormal vectors");
    if a.quad_form(&x) > 0.0 && b.quad_form(&x) > 0.0 {
        Ok(Some(x))
    } else {
        Ok(None)
    }
}

/// A generated instance and, for the violating family, its known witness.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub instance: Instance,
    pub witness: Option<Vec<f64>>,
}

pub fn generate(spec: &GeneratorSpec) -> Result<Generated, OracleError> {
    match spec.family {
        Family::Certified => Ok(Generated { instance: gen_certified(spec)?, witness: None }),
        Family::Tight => Ok(Generated { instance: gen_tight(spec)?, witness: None }),
        Family::Violating => {
            let (instance, w) = gen_violating(spec)?;
            Ok(Generated { instance, witness: Some(w) })
        }
    }
}

/// Orthogonal projections onto two mutually orthogonal, nontrivial random
/// subspaces of `R^dim`.
pub fn random_projection_pair(rng: &mut SplitMix64, dim: usize) -> (SymmetricMatrix, SymmetricMatrix) {
    assert!(dim >= 2, "need dim >= 2 for two nontrivial orthogonal subspaces");
    let q = random_orthogonal(rng, dim);
    let k1 = rng.range_inclusive(1, dim - 1);
    let k2 = rng.range_inclusive(1, dim - k1);
    let projector = |cols: std::ops::Range<usize>| {
        let mut p = SymmetricMatrix::zeros(dim);
        for j in cols {
            p = SymmetricMatrix::linear_combination(&[(1.0, &p), (1.0, &SymmetricMatrix::outer(&q.column(j)))]);
        }
        p
    };
    (projector(0..k1), projector(k1..k1 + k2))
}
