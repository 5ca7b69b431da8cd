//! Refutes T = I/2 against A = e₁e₁ᵀ, B = e₂e₂ᵀ and prints the witness.
//!
//! The pointwise inequality fails along (1, 1)/√2, where T[x] = 1/2 while
//! 2√(A[x]B[x]) = 1.
//!
//! ```bash
//! cargo run --example refute_with_witness
//! ```

use triform::certify::verify_refutation;
use triform::{certify, validate_instance, CertifyConfig, SymmetricMatrix, Verdict};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = validate_instance(
        SymmetricMatrix::diag(&[0.5, 0.5]),
        SymmetricMatrix::diag(&[1.0, 0.0]),
        SymmetricMatrix::diag(&[0.0, 1.0]),
    )?;
    let config = CertifyConfig::default();
    match certify(&inst, &config)? {
        Verdict::Refuted(r) => {
            println!("refuted at x = {:?}", r.witness);
            println!("T[x] = {:.12}, 2 sqrt(A[x] B[x]) = {:.12}, gap = {:.12}", r.lhs, r.rhs, r.gap);
            println!("maximizing alpha = {:.12}", r.alpha_star);
            println!("re-evaluated from the forms: {}", verify_refutation(&inst, &r, config.eps_ref));
        }
        other => println!("unexpected verdict: {:?}", other.tag()),
    }
    Ok(())
}
