//! Hermitian forms go through realification: a complex n×n instance is
//! decided as a real 2n×2n one and witnesses come back as complex vectors.
//!
//! ```bash
//! cargo run --example complex_forms
//! ```

use num_complex::Complex64;
use triform::certify::certify_hermitian;
use triform::{CertifyConfig, HermitianInstance, HermitianMatrix, Verdict};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = HermitianMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])?;
    let b = HermitianMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]])?;
    let config = CertifyConfig::default();

    for (name, off) in [("T = I", c(0.0, 0.0)), ("off-diagonal i", c(0.0, 1.0))] {
        // T = [[1, off], [conj(off), 1]]
        let t = HermitianMatrix::from_rows(&[vec![c(1.0, 0.0), off], vec![off.conj(), c(1.0, 0.0)]])?;
        let h = HermitianInstance::new(t, a.clone(), b.clone())?;
        let verdict = certify_hermitian(&h, &config)?;
        println!("{name}: {}", verdict.tag().as_str());
        match verdict {
            Verdict::Certified(cert) => println!("  alpha = {:.9}, slack = {:.3e}", cert.alpha, cert.slack),
            Verdict::Refuted(r) => {
                let h_vec = r.complex_witness();
                println!("  complex witness h = {h_vec:?}");
                println!("  <Th,h> = {:.9}, 2 sqrt(<Ah,h><Bh,h>) = {:.9}", h.t.form_value(&h_vec)?, r.rhs);
            }
            Verdict::Inconclusive(i) => println!("  max f = {:.3e} ({})", i.f_star, i.reason.as_str()),
        }
    }
    Ok(())
}
