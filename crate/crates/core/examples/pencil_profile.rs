//! Tabulates the concave profile s ↦ λ_min(T − sA − B/s) and the maximizer
//! found by bracketing and golden-section search.
//!
//! ```bash
//! cargo run --example pencil_profile
//! ```

use triform::certify::{fval, maximize};
use triform::{validate_instance, SymmetricMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = validate_instance(
        SymmetricMatrix::diag(&[4.0, 1.0]),
        SymmetricMatrix::diag(&[1.0, 0.0]),
        SymmetricMatrix::diag(&[0.0, 1.0]),
    )?;
    for k in -8..=8 {
        let s = 10f64.powf(k as f64 / 4.0);
        let f = fval(&inst, s)?;
        let bar = "#".repeat(((f + 4.0).max(0.0) * 8.0) as usize);
        println!("s = {s:>9.4}  f = {f:>+9.4}  {bar}");
    }
    let m = maximize(&inst, 1e-9)?;
    println!(
        "maximizer s* = {:.12} (closed form {:.12}), f(s*) = {:.12}",
        m.alpha_star,
        (3.0 + 13f64.sqrt()) / 2.0,
        m.f_star
    );
    Ok(())
}
