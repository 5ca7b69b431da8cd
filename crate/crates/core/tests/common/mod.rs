//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use triform::rng::SplitMix64;
use triform::SymmetricMatrix;

/// Eigenvalues of a symmetric matrix of dimension ≤ 3 from the closed-form
/// roots of its characteristic polynomial, ascending.
pub fn closed_form_eigenvalues(m: &SymmetricMatrix) -> Vec<f64> {
    let g = |i, j| m.get(i, j);
    match m.dim() {
        1 => vec![g(0, 0)],
        2 => {
            let mean = 0.5 * (g(0, 0) + g(1, 1));
            let half = 0.5 * (g(0, 0) - g(1, 1));
            let r = half.hypot(g(0, 1));
            vec![mean - r, mean + r]
        }
        3 => {
            // Trigonometric solution of det(M - λI) = 0 for symmetric M.
            let p1 = g(0, 1).powi(2) + g(0, 2).powi(2) + g(1, 2).powi(2);
            let q = (g(0, 0) + g(1, 1) + g(2, 2)) / 3.0;
            let p2 = (g(0, 0) - q).powi(2) + (g(1, 1) - q).powi(2) + (g(2, 2) - q).powi(2) + 2.0 * p1;
            let p = (p2 / 6.0).sqrt();
            if p == 0.0 {
                return vec![q; 3];
            }
            let b = |i: usize, j: usize| (g(i, j) - if i == j { q } else { 0.0 }) / p;
            let det_b = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1))
                - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
                + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
            let phi = (det_b / 2.0).clamp(-1.0, 1.0).acos() / 3.0;
            let hi = q + 2.0 * p * phi.cos();
            let lo = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
            let mid = 3.0 * q - hi - lo;
            let mut v = vec![lo, mid, hi];
            v.sort_by(f64::total_cmp);
            v
        }
        d => panic!("closed form only for dim <= 3, got {d}"),
    }
}

/// Eigenvalues from nalgebra's symmetric eigensolver, ascending.
pub fn nalgebra_eigenvalues(m: &SymmetricMatrix) -> Vec<f64> {
    let n = m.dim();
    let dm = nalgebra::DMatrix::from_row_slice(n, n, m.as_slice());
    let mut v: Vec<f64> = dm.symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Symmetric matrix with uniform(-1, 1) entries times a random magnitude.
pub fn random_symmetric(rng: &mut SplitMix64, dim: usize) -> SymmetricMatrix {
    let magnitude = 10f64.powf(rng.uniform(-2.0, 2.0));
    let mut data = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let v = magnitude * rng.uniform(-1.0, 1.0);
            data[i * dim + j] = v;
            data[j * dim + i] = v;
        }
    }
    SymmetricMatrix::new(dim, data).unwrap()
}

/// Angle between the lines spanned by two vectors (sign-insensitive).
pub fn angular_distance(x: &[f64], y: &[f64]) -> f64 {
    let c = triform::linalg::dot(x, y).abs() / (triform::linalg::norm2(x) * triform::linalg::norm2(y));
    c.min(1.0).acos()
}

pub fn max_abs_diff(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}
