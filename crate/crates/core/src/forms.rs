//! Validated form triples, the pencil `T - sA - s⁻¹B`, the ratio map `τ`, and
//! realification of Hermitian (complex) forms.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{self, LinalgError, SymmetricMatrix};

/// PSD gate applied to `A` and `B`, relative to `1 + ‖·‖_F`.
pub const PSD_GATE: f64 = 1e-9;

/// Relative conjugate-symmetry tolerance for Hermitian input.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormLabel {
    A,
    B,
}

impl std::fmt::Display for FormLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormLabel::A => f.write_str("A"),
            FormLabel::B => f.write_str("B"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("form {which} is not positive semidefinite (lambda_min = {lambda_min:e})")]
    NotPsd { which: FormLabel, lambda_min: f64 },
    #[error("form {which} is the zero form")]
    ZeroForm { which: FormLabel },
    #[error("pencil parameter must be positive and finite, got {0}")]
    NonPositiveS(f64),
    #[error("tau is undefined: both A[x] and B[x] vanish")]
    BothZero,
    #[error("matrix is not Hermitian at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A validated triple `(T, A, B)` of forms on `Rⁿ`: `σ₀ = T`, `σ₁ = A`,
/// `σ₂ = B`. `A` and `B` are nonzero and PSD up to [`PSD_GATE`]; `T` is only
/// required to be symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    t: SymmetricMatrix,
    a: SymmetricMatrix,
    b: SymmetricMatrix,
    // A and B shifted by -λ_min·I when λ_min fell inside the gate; never T.
    a_nonneg: SymmetricMatrix,
    b_nonneg: SymmetricMatrix,
    scale: f64,
}

impl Instance {
    pub fn t(&self) -> &SymmetricMatrix {
        &self.t
    }

    pub fn a(&self) -> &SymmetricMatrix {
        &self.a
    }

    pub fn b(&self) -> &SymmetricMatrix {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.t.dim()
    }

    /// `‖T‖_F + ‖A‖_F + ‖B‖_F`, the reference for every absolute tolerance.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub(crate) fn a_nonneg(&self) -> &SymmetricMatrix {
        &self.a_nonneg
    }

    pub(crate) fn b_nonneg(&self) -> &SymmetricMatrix {
        &self.b_nonneg
    }

    /// The same forms with `A` and `B` exchanged.
    pub fn swapped(&self) -> Instance {
        Instance {
            t: self.t.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
            a_nonneg: self.b_nonneg.clone(),
            b_nonneg: self.a_nonneg.clone(),
            scale: self.scale,
        }
    }

    /// All three forms multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Instance, FormError> {
        validate_instance(self.t.scaled(c), self.a.scaled(c), self.b.scaled(c))
    }

    /// `T[x] - 2 √(A[x] B[x])`; negative values refute the pointwise inequality.
    pub fn pointwise_margin(&self, x: &[f64]) -> f64 {
        let (lhs, rhs) = self.pointwise_sides(x);
        lhs - rhs
    }

    /// `(T[x], 2 √(A[x] B[x]))`, with `A[x]`, `B[x]` clamped at zero.
    pub fn pointwise_sides(&self, x: &[f64]) -> (f64, f64) {
        let lhs = self.t.quad_form(x);
        let ax = self.a.quad_form(x).max(0.0);
        let bx = self.b.quad_form(x).max(0.0);
        (lhs, 2.0 * (ax * bx).sqrt())
    }
}

fn gate(which: FormLabel, m: &SymmetricMatrix) -> Result<SymmetricMatrix, FormError> {
    if m.is_zero() {
        return Err(FormError::ZeroForm { which });
    }
    let lambda_min = linalg::min_eigenvalue(m)?;
    if lambda_min < -PSD_GATE * (1.0 + m.frobenius_norm()) {
        return Err(FormError::NotPsd { which, lambda_min });
    }
    Ok(if lambda_min < 0.0 { m.add_identity(-lambda_min) } else { m.clone() })
}

/// Checks the hypotheses on `(T, A, B)` and packages them as an [`Instance`].
pub fn validate_instance(t: SymmetricMatrix, a: SymmetricMatrix, b: SymmetricMatrix) -> Result<Instance, FormError> {
    let n = t.dim();
    for m in [&a, &b] {
        if m.dim() != n {
            return Err(FormError::DimensionMismatch { expected: n, got: m.dim() });
        }
    }
    let a_nonneg = gate(FormLabel::A, &a)?;
    let b_nonneg = gate(FormLabel::B, &b)?;
    let scale = t.frobenius_norm() + a.frobenius_norm() + b.frobenius_norm();
    Ok(Instance { t, a, b, a_nonneg, b_nonneg, scale })
}

/// `xᵀ M x`.
pub fn evaluate(m: &SymmetricMatrix, x: &[f64]) -> Result<f64, FormError> {
    if x.len() != m.dim() {
        return Err(FormError::DimensionMismatch { expected: m.dim(), got: x.len() });
    }
    Ok(m.quad_form(x))
}

/// The pencil member `T - sA - s⁻¹B`.
pub fn pencil(inst: &Instance, s: f64) -> Result<SymmetricMatrix, FormError> {
    if !(s.is_finite() && s > 0.0) {
        return Err(FormError::NonPositiveS(s));
    }
    Ok(SymmetricMatrix::linear_combination(&[(1.0, &inst.t), (-s, &inst.a), (-1.0 / s, &inst.b)]))
}

/// `τ(x) = √(B[x] / A[x])`, with `+∞` when `A[x] = 0 < B[x]`.
pub fn tau(inst: &Instance, x: &[f64]) -> Result<f64, FormError> {
    let ax = evaluate(inst.a_nonneg(), x)?.max(0.0);
    let bx = evaluate(inst.b_nonneg(), x)?.max(0.0);
    match (ax > 0.0, bx > 0.0) {
        (false, false) => Err(FormError::BothZero),
        (false, true) => Ok(f64::INFINITY),
        _ => Ok((bx / ax).sqrt()),
    }
}

/// Dense `dim x dim` complex Hermitian matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self, FormError> {
        if dim == 0 {
            return Err(LinalgError::EmptyMatrix.into());
        }
        if data.len() != dim * dim {
            return Err(LinalgError::BadLength { expected: dim * dim, got: data.len() }.into());
        }
        if let Some(k) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(LinalgError::NonFinite { row: k / dim, col: k % dim }.into());
        }
        let max_abs = data.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
        let tol = HERMITIAN_TOL * (1.0 + max_abs);
        for i in 0..dim {
            for j in i..dim {
                if (data[i * dim + j] - data[j * dim + i].conj()).norm() > tol {
                    return Err(FormError::NotHermitian { row: i, col: j });
                }
            }
        }
        Ok(HermitianMatrix { dim, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, FormError> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(LinalgError::BadLength { expected: dim, got: row.len() }.into());
            }
            data.extend_from_slice(row);
        }
        Self::new(dim, data)
    }

    /// Embeds a real symmetric matrix.
    pub fn from_real(m: &SymmetricMatrix) -> Self {
        HermitianMatrix { dim: m.dim(), data: m.as_slice().iter().map(|v| Complex64::new(*v, 0.0)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    /// `⟨Mh, h⟩`, real for Hermitian `M`.
    pub fn form_value(&self, h: &[Complex64]) -> Result<f64, FormError> {
        if h.len() != self.dim {
            return Err(FormError::DimensionMismatch { expected: self.dim, got: h.len() });
        }
        let n = self.dim;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, hi) in h.iter().enumerate() {
            let r: Complex64 = self.data[i * n..(i + 1) * n].iter().zip(h).map(|(m, hj)| m * hj).sum();
            acc += r * hi.conj();
        }
        Ok(acc.re)
    }

    /// `M = X + iY` as the real `2n x 2n` block matrix `[[X, -Y], [Y, X]]`
    /// acting on `(Re h, Im h)`.
    pub fn realify(&self) -> SymmetricMatrix {
        let n = self.dim;
        let m = 2 * n;
        let mut data = vec![0.0; m * m];
        for i in 0..n {
            for j in 0..n {
                let z = self.get(i, j);
                data[i * m + j] = z.re;
                data[(i + n) * m + (j + n)] = z.re;
                data[i * m + (j + n)] = -z.im;
                data[(i + n) * m + j] = z.im;
            }
        }
        SymmetricMatrix::new(m, data).expect("realification of a Hermitian matrix is symmetric")
    }
}

/// A triple of Hermitian forms on `Cⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianInstance {
    pub t: HermitianMatrix,
    pub a: HermitianMatrix,
    pub b: HermitianMatrix,
}

impl HermitianInstance {
    pub fn new(t: HermitianMatrix, a: HermitianMatrix, b: HermitianMatrix) -> Result<Self, FormError> {
        for m in [&a, &b] {
            if m.dim() != t.dim() {
                return Err(FormError::DimensionMismatch { expected: t.dim(), got: m.dim() });
            }
        }
        Ok(HermitianInstance { t, a, b })
    }

    pub fn dim(&self) -> usize {
        self.t.dim()
    }
}

/// Reduces a complex instance to a real one of twice the dimension. Form
/// values, certificates and witnesses carry over unchanged; PSD and
/// nonzero gates are checked on the realified forms.
pub fn realify(h: &HermitianInstance) -> Result<Instance, FormError> {
    validate_instance(h.t.realify(), h.a.realify(), h.b.realify())
}

/// `(u, v) ↦ u + iv`, the inverse of the realification vector layout.
pub fn complexify(x: &[f64]) -> Vec<Complex64> {
    let n = x.len() / 2;
    (0..n).map(|k| Complex64::new(x[k], x[k + n])).collect()
}

/// `u + iv ↦ (u, v)`.
pub fn decomplexify(h: &[Complex64]) -> Vec<f64> {
    h.iter().map(|z| z.re).chain(h.iter().map(|z| z.im)).collect()
}
