//! Dense real linear algebra: symmetric matrices, a cyclic Jacobi eigensolver,
//! minimal eigenspaces and the positive-semidefiniteness test.
//!
//! Everything else in the crate funnels through [`eigh`]. The solver is a
//! plain cyclic Jacobi sweep: every rotation is an exact orthogonal
//! similarity, so symmetry is preserved and the accumulated eigenvectors are
//! orthonormal by construction.

use std::fmt;

use thiserror::Error;

/// Relative asymmetry accepted by [`SymmetricMatrix::new`].
pub const SYMMETRY_TOL: f64 = 1e-12;

const JACOBI_REL_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is not symmetric: |m[{row}][{col}] - m[{col}][{row}]| = {diff:e}")]
    NonSymmetric { row: usize, col: usize, diff: f64 },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("expected {expected} entries, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix dimension must be positive")]
    EmptyMatrix,
}

/// Dense `dim x dim` real symmetric matrix, row-major.
///
/// Construction goes through an asymmetry gate and then symmetrizes the
/// entries exactly, so downstream arithmetic never sees drift between
/// `m[i][j]` and `m[j][i]`.
#[derive(Clone, PartialEq)]
pub struct SymmetricMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self, LinalgError> {
        if dim == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(LinalgError::BadLength { expected: dim * dim, got: data.len() });
        }
        for (k, v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(LinalgError::NonFinite { row: k / dim, col: k % dim });
            }
        }
        let max_abs = data.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let gate = SYMMETRY_TOL * (1.0 + max_abs);
        for i in 0..dim {
            for j in (i + 1)..dim {
                let diff = (data[i * dim + j] - data[j * dim + i]).abs();
                if diff > gate {
                    return Err(LinalgError::NonSymmetric { row: i, col: j, diff });
                }
            }
        }
        let mut m = SymmetricMatrix { dim, data };
        m.symmetrize();
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(LinalgError::BadLength { expected: dim, got: row.len() });
            }
            data.extend_from_slice(row);
        }
        Self::new(dim, data)
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        SymmetricMatrix { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.data[i * values.len() + i] = *v;
        }
        m
    }

    /// Rank-one matrix `v vᵀ`.
    pub fn outer(v: &[f64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = v[i] * v[j];
            }
        }
        m
    }

    fn symmetrize(&mut self) {
        let n = self.dim;
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (self.data[i * n + j] + self.data[j * n + i]);
                self.data[i * n + j] = avg;
                self.data[j * n + i] = avg;
            }
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| *v == 0.0)
    }

    /// `xᵀ M x`. Panics on a length mismatch; see [`crate::forms::evaluate`]
    /// for the checked version.
    pub fn quad_form(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim, "vector length must match matrix dimension");
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let mut r = 0.0;
            for j in 0..n {
                r += row[j] * x[j];
            }
            acc += x[i] * r;
        }
        acc
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim, "vector length must match matrix dimension");
        (0..self.dim).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn scaled(&self, c: f64) -> Self {
        SymmetricMatrix { dim: self.dim, data: self.data.iter().map(|v| c * v).collect() }
    }

    /// `Σ cₖ Mₖ` over matrices of equal dimension.
    pub fn linear_combination(terms: &[(f64, &SymmetricMatrix)]) -> Self {
        assert!(!terms.is_empty(), "linear combination needs at least one term");
        let dim = terms[0].1.dim;
        let mut data = vec![0.0; dim * dim];
        for (c, m) in terms {
            assert_eq!(m.dim, dim, "linear combination of mismatched dimensions");
            for (d, v) in data.iter_mut().zip(&m.data) {
                *d += c * v;
            }
        }
        SymmetricMatrix { dim, data }
    }

    pub fn add_identity(&self, shift: f64) -> Self {
        let mut m = self.clone();
        for i in 0..self.dim {
            m.data[i * self.dim + i] += shift;
        }
        m
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix { rows: self.dim, cols: self.dim, data: self.data.clone() }
    }

    /// Congruence `Lᵀ M L` for a `dim x m` matrix `L`.
    pub fn congruence(&self, l: &Matrix) -> Result<SymmetricMatrix, LinalgError> {
        if l.rows != self.dim {
            return Err(LinalgError::DimensionMismatch { left: self.dim, right: l.rows });
        }
        let ml = self.to_matrix().matmul(l)?;
        let mut out = l.transpose().matmul(&ml)?;
        let m = out.rows;
        for i in 0..m {
            for j in (i + 1)..m {
                let avg = 0.5 * (out.data[i * m + j] + out.data[j * m + i]);
                out.data[i * m + j] = avg;
                out.data[j * m + i] = avg;
            }
        }
        Ok(SymmetricMatrix { dim: m, data: out.data })
    }
}

impl fmt::Debug for SymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[f64]> = (0..self.dim).map(|i| self.row(i)).collect();
        f.debug_struct("SymmetricMatrix").field("dim", &self.dim).field("rows", &rows).finish()
    }
}

/// General dense `rows x cols` real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(LinalgError::BadLength { expected: rows * cols, got: data.len() });
        }
        if let Some(k) = data.iter().position(|v| !v.is_finite()) {
            return Err(LinalgError::NonFinite { row: k / cols, col: k % cols });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::BadLength { expected: c, got: row.len() });
            }
            data.extend_from_slice(row);
        }
        Self::new(r, c, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut data = vec![0.0; r * c];
        for (j, col) in cols.iter().enumerate() {
            if col.len() != r {
                return Err(LinalgError::BadLength { expected: r, got: col.len() });
            }
            for (i, v) in col.iter().enumerate() {
                data[i * c + j] = *v;
            }
        }
        Self::new(r, c, data)
    }

    pub fn identity(n: usize) -> Self {
        SymmetricMatrix::identity(n).to_matrix()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = vec![0.0; self.rows * self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut data = vec![0.0; n * m];
        for i in 0..n {
            for p in 0..k {
                let a = self.data[i * k + p];
                if a == 0.0 {
                    continue;
                }
                for j in 0..m {
                    data[i * m + j] += a * other.data[p * m + j];
                }
            }
        }
        Ok(Matrix { rows: n, cols: m, data })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Eigenpairs of a symmetric matrix, eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` is the unit eigenvector paired with `eigenvalues[k]`.
    pub eigenvectors: Vec<Vec<f64>>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// `V Λ Vᵀ`.
    pub fn reconstruct(&self) -> SymmetricMatrix {
        let n = self.dim();
        let mut data = vec![0.0; n * n];
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            for i in 0..n {
                for j in 0..n {
                    data[i * n + j] += lambda * v[i] * v[j];
                }
            }
        }
        SymmetricMatrix { dim: n, data }
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Full symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Sweeps run until `off(M) <= 1e-14 ‖M‖_F` or 100 sweeps have elapsed.
/// Eigenvalues come back ascending; each eigenvector is signed so that its
/// largest-magnitude component (first one on ties) is positive, which makes
/// the output a deterministic function of the input bits.
pub fn eigh(m: &SymmetricMatrix) -> Result<SpectralDecomposition, LinalgError> {
    let n = m.dim;
    let mut a = m.data.clone();
    if let Some(k) = a.iter().position(|v| !v.is_finite()) {
        return Err(LinalgError::NonFinite { row: k / n, col: k % n });
    }
    // columns of v are the eigenvectors
    let mut v = SymmetricMatrix::identity(n).data;
    let threshold = JACOBI_REL_TOL * m.frobenius_norm();

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;

                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]).then(i.cmp(&j)));

    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    for &k in &order {
        eigenvalues.push(a[k * n + k]);
        let mut vec: Vec<f64> = (0..n).map(|i| v[i * n + k]).collect();
        fix_sign(&mut vec);
        eigenvectors.push(vec);
    }
    Ok(SpectralDecomposition { eigenvalues, eigenvectors })
}

fn fix_sign(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Smallest eigenvalue together with an orthonormal basis of every
/// eigenvector whose eigenvalue is within `cluster_tol (1 + ρ)` of it, where
/// `ρ` is the spectral radius.
pub fn min_eigenspace(m: &SymmetricMatrix, cluster_tol: f64) -> Result<(f64, Vec<Vec<f64>>), LinalgError> {
    let dec = eigh(m)?;
    Ok(cluster_from(&dec, cluster_tol))
}

pub(crate) fn cluster_from(dec: &SpectralDecomposition, cluster_tol: f64) -> (f64, Vec<Vec<f64>>) {
    let lambda_min = dec.min_eigenvalue();
    let cutoff = lambda_min + cluster_tol * (1.0 + dec.spectral_radius());
    let basis = dec
        .eigenvalues
        .iter()
        .zip(&dec.eigenvectors)
        .take_while(|(l, _)| **l <= cutoff)
        .map(|(_, v)| v.clone())
        .collect();
    (lambda_min, basis)
}

pub fn min_eigenvalue(m: &SymmetricMatrix) -> Result<f64, LinalgError> {
    Ok(eigh(m)?.min_eigenvalue())
}

/// `λ_min(M) >= -tol (1 + ‖M‖_F)`.
pub fn psd_check(m: &SymmetricMatrix, tol: f64) -> Result<bool, LinalgError> {
    let lambda = min_eigenvalue(m)?;
    Ok(lambda >= -tol * (1.0 + m.frobenius_norm()))
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn norm2(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

/// Returns `x / ‖x‖`, or `None` for the zero vector.
pub fn normalized(x: &[f64]) -> Option<Vec<f64>> {
    let n = norm2(x);
    if n == 0.0 || !n.is_finite() {
        return None;
    }
    Some(x.iter().map(|v| v / n).collect())
}
