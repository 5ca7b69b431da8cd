//! Certifies the canonical tight instance T = I, A = e₁e₁ᵀ, B = e₂e₂ᵀ.
//!
//! ```bash
//! cargo run --example certify_canonical
//! ```

use triform::{certify, validate_instance, CertifyConfig, SymmetricMatrix, Verdict};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = validate_instance(
        SymmetricMatrix::identity(2),
        SymmetricMatrix::diag(&[1.0, 0.0]),
        SymmetricMatrix::diag(&[0.0, 1.0]),
    )?;
    let config = CertifyConfig::default();
    match certify(&inst, &config)? {
        Verdict::Certified(c) => {
            println!("certified: T - alpha A - B/alpha >= 0 at alpha = {:.12}", c.alpha);
            println!("slack (min eigenvalue at alpha) = {:.3e}", c.slack);
            println!("golden-section iterations = {}, bracket = {:?}", c.iterations, c.bracket);
            let ok = triform::certify::verify_certificate(&inst, &c, config.eps_ref)?;
            println!("independent re-check of the certificate: {ok}");
        }
        other => println!("unexpected verdict: {:?}", other.tag()),
    }
    Ok(())
}
