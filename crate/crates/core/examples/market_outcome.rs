//! Shares, surplus and profit for a few hand-picked strategy pairs.
//!
//! ```text
//! cargo run --example market_outcome
//! ```

use aoi_duopoly::equilibrium::evaluate;
use aoi_duopoly::{Role, Scenario, Strategy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = Scenario::default().with("epsilon", 2.0)?;
    println!("SP1: {}, SP2: {}", s.sp1.describe(), s.sp2.describe());

    let pairs = [
        ("symmetric", Strategy::with_capacity(&s.sp1, 3.125), Strategy::with_capacity(&s.sp2, 3.125)),
        ("SP1 bigger", Strategy::with_capacity(&s.sp1, 5.0), Strategy::with_capacity(&s.sp2, 3.125)),
        ("SP2 idle", Strategy::with_capacity(&s.sp1, 3.125), Strategy::IDLE),
        ("SP1 overloaded", Strategy { mu: 3.125, lambda: 1.9 }, Strategy::with_capacity(&s.sp2, 3.125)),
    ];

    println!(
        "\n{:<15} {:>7} {:>7} {:>7} {:>7} {:>6} {:>6} {:>7} {:>7} {:>7}",
        "", "mu1", "mu2", "dp1", "dp2", "m1", "m2", "pi1", "pi2", "SW"
    );
    for (name, s1, s2) in pairs {
        s1.check(Role::Sp1, &s.sp1)?;
        s2.check(Role::Sp2, &s.sp2)?;
        let o = evaluate(&s, &s1, &s2);
        println!(
            "{name:<15} {:>7.3} {:>7.3} {:>7.3} {:>7.3} {:>6.3} {:>6.3} {:>7.3} {:>7.3} {:>7.3}",
            s1.mu, s2.mu, o.delta_p1, o.delta_p2, o.m1, o.m2, o.pi1, o.pi2, o.social_welfare
        );
    }

    // The constraint check rejects rates the class does not admit.
    let bad = Strategy { mu: 3.125, lambda: 3.0 };
    if let Err(e) = bad.check(Role::Sp1, &s.sp1) {
        println!("\nrejected: {e}");
    }
    Ok(())
}
