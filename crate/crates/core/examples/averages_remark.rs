//! Means over a system of vectors: with aᵢ = A[eᵢ], bᵢ = B[eᵢ] and
//! tᵢ = T[eᵢ]/2 from a certified instance, the mean of tᵢ dominates the
//! geometric mean of the arithmetic means of aᵢ and bᵢ. Arbitrary data need
//! not satisfy that.
//!
//! ```bash
//! cargo run --example averages_remark
//! ```

use triform::corollaries::{averages_check, remark_collection};
use triform::oracle::{generate, Family, GeneratorSpec};
use triform::rng::SplitMix64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = generate(&GeneratorSpec::new(Family::Certified, 3, 11))?.instance;
    let mut rng = SplitMix64::new(3);
    let vectors: Vec<Vec<f64>> = (0..8).map(|_| (0..3).map(|_| rng.uniform(-1.0, 1.0)).collect()).collect();
    let (a, b, t) = remark_collection(&inst, &vectors);
    let r = averages_check(&a, &b, &t, true)?;
    println!("certified collection: mean t = {:.6} >= ga = {:.6} >= ag = {:.6}", r.t_mean, r.ga, r.ag);

    // tᵢ >= √(aᵢbᵢ) holds for each i, yet mean t = 2 < ga = 2.5.
    let r = averages_check(&[1.0, 4.0], &[4.0, 1.0], &[2.0, 2.0], false)?;
    println!(
        "unrelated data: mean t = {:.3}, ga = {:.3}, ag = {:.3}, special inequality holds: {}",
        r.t_mean,
        r.ga,
        r.ag,
        r.special_inequality_holds()
    );
    Ok(())
}
