//! Each provider's best capacity as a function of the rival's peak AoI.
//!
//! Shares are linear in each provider's own `1/dp`, so the best response is
//! flat until the rival is fresh enough to push the share against 0 or 1.
//!
//! ```text
//! cargo run --release --example best_response_curve [epsilon]
//! ```

use aoi_duopoly::{best_response, Role, Scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut s = Scenario::default();
    if let Some(eps) = std::env::args().nth(1) {
        s = s.with("epsilon", eps.parse()?)?;
    }
    println!("{:>10} {:>9} {:>9} {:>9} {:>9}", "rival dp", "BR1 mu", "BR1 dp", "BR2 mu", "BR2 dp");
    let rivals = (0..=16).map(|k| 0.05 * 1.6f64.powi(k)).chain([f64::INFINITY]);
    for dp in rivals {
        let b1 = best_response(&s, Role::Sp1, dp);
        let b2 = best_response(&s, Role::Sp2, dp);
        println!(
            "{:>10.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4}",
            dp,
            b1.mu,
            b1.peak_aoi(),
            b2.mu,
            b2.peak_aoi()
        );
    }
    Ok(())
}
