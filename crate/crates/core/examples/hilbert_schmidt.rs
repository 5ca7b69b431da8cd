//! With orthogonal projections P₁, P₂ (P₁P₂ = 0, P₁ + P₂ <= I) and a
//! certified (T, P₁, P₂), every operator L satisfies
//! tr(LᵀTL) >= 2 ‖P₁L‖_HS ‖P₂L‖_HS.
//!
//! ```bash
//! cargo run --example hilbert_schmidt
//! ```

use triform::corollaries::hs_check;
use triform::oracle::random_projection_pair;
use triform::rng::SplitMix64;
use triform::{CertifyConfig, Matrix, SymmetricMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = SplitMix64::new(7);
    let dim = 4;
    let (p1, p2) = random_projection_pair(&mut rng, dim);
    // T = P₁ + P₂ + (I - P₁ - P₂) satisfies the hypothesis with alpha = 1.
    let t = SymmetricMatrix::identity(dim);
    let config = CertifyConfig::default();
    for trial in 0..3 {
        let cols = (0..3).map(|_| (0..dim).map(|_| rng.uniform(-1.0, 1.0)).collect()).collect::<Vec<Vec<f64>>>();
        let l = Matrix::from_columns(&cols)?;
        let r = hs_check(&t, &p1, &p2, &l, &config)?;
        println!(
            "trial {trial}: tr(LᵀTL) = {:.6}  2‖P₁L‖‖P₂L‖ = {:.6}  margin = {:.6}  (alpha = {:.6})",
            r.lhs, r.rhs, r.margin, r.hypothesis.alpha
        );
    }
    Ok(())
}
