//! Seeded instance generators and a small fuzz tally per family.
//!
//! ```bash
//! cargo run --example generators -- 200
//! ```

use triform::cli::{fuzz, GeneratorFlags};
use triform::oracle::Family;
use triform::CertifyConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let count = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(100);
    let config = CertifyConfig::default();
    for family in [Family::Certified, Family::Tight, Family::Violating] {
        let flags = GeneratorFlags { family, seed: 42, alpha: 1.0, shrink: 0.5 };
        let s = fuzz(count, None, 0.01, &flags, &config)?;
        println!(
            "{:<9} tally: {:<18} inconclusive = {:<3} oracle agreed {}/{}  property failures = {}",
            family.as_str(),
            s.tally,
            s.inconclusive,
            s.oracle_agreed,
            s.oracle_scanned,
            s.property_failures
        );
    }
    Ok(())
}
