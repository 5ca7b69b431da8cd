//! For a certified instance the trace inequality tr T >= 2 √(tr A · tr B)
//! follows. This example certifies a generated instance and checks it.
//!
//! ```bash
//! cargo run --example trace_corollary
//! ```

use triform::corollaries::trace_check;
use triform::oracle::{generate, Family, GeneratorSpec};
use triform::{certify, CertifyConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = CertifyConfig::default();
    for seed in 0..5 {
        let spec = GeneratorSpec::new(Family::Certified, 4, seed).alpha(2.5);
        let inst = generate(&spec)?.instance;
        let verdict = certify(&inst, &config)?;
        let report = trace_check(&inst, &verdict)?;
        println!(
            "seed {seed}: tr T = {:>10.6}  bound = {:>10.6}  margin = {:>10.6}",
            report.trace_t, report.bound, report.margin
        );
    }
    Ok(())
}
