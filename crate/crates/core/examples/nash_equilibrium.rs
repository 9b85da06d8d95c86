//! Solves the reference duopoly and audits the result.
//!
//! ```text
//! cargo run --release --example nash_equilibrium [epsilon]
//! ```

use aoi_duopoly::equilibrium::{deviation_gain, tol_profit, AUDIT_GRID_POINTS};
use aoi_duopoly::{find_nash, Role, Scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut s = Scenario::default();
    if let Some(eps) = std::env::args().nth(1) {
        s = s.with("epsilon", eps.parse()?)?;
    }
    let r = find_nash(&s);
    let o = &r.outcome;

    println!("SP1 {}  vs  SP2 {}", s.sp1.describe(), s.sp2.describe());
    println!(
        "{:?}: converged = {}, iterations = {}, residual = {:.2e}",
        r.method, r.converged, r.iterations, r.residual
    );
    for (name, st, dp, m, pi) in [
        ("SP1", r.strategy1, o.delta_p1, o.m1, o.pi1),
        ("SP2", r.strategy2, o.delta_p2, o.m2, o.pi2),
    ] {
        println!(
            "{name}: mu = {:.4}, lambda = {:.4}, rho = {:.3}, peak AoI = {:.4}, subscribers = {:.3}, profit = {:.4}",
            st.mu,
            st.lambda,
            st.utilization(),
            dp,
            m,
            pi
        );
    }
    println!(
        "consumer surplus = {:.4}, social welfare = {:.4}, covered = {}",
        o.cs1 + o.cs2,
        o.social_welfare,
        o.coverage.covered
    );

    let g1 = deviation_gain(&s, Role::Sp1, &r.strategy1, o.delta_p2, AUDIT_GRID_POINTS);
    let g2 = deviation_gain(&s, Role::Sp2, &r.strategy2, o.delta_p1, AUDIT_GRID_POINTS);
    println!("best unilateral gain: SP1 {g1:.2e}, SP2 {g2:.2e} (tolerance {:.0e})", tol_profit(&s));
    Ok(())
}
