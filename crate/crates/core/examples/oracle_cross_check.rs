//! Cross-checks the certifier against a brute-force scan of the unit circle
//! (dimension 2) and a log-spaced grid over alpha.
//!
//! ```bash
//! cargo run --example oracle_cross_check
//! ```

use triform::oracle::{generate, grid_alpha, sphere_scan, Family, GeneratorSpec};
use triform::{certify, CertifyConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = CertifyConfig::default();
    for (family, seed) in [(Family::Certified, 1), (Family::Violating, 2), (Family::Tight, 3)] {
        let inst = generate(&GeneratorSpec::new(family, 2, seed))?.instance;
        let verdict = certify(&inst, &config)?;
        let scan = sphere_scan(&inst, 0.001)?;
        let (s, f) = grid_alpha(&inst, 50, (-4.0, 4.0))?;
        println!(
            "{:<9} verdict = {:<12} scan min = {:>+.3e} (± {:.1e})  grid max f = {:>+.3e} at alpha = {:.4}",
            family.as_str(),
            verdict.tag().as_str(),
            scan.min_value,
            scan.error_bound,
            f,
            s
        );
    }
    Ok(())
}
