//! Equilibria as the capacity cost c goes from 0.08 to 0.4.
//!
//! ```text
//! cargo run --release --example cost_sweep [out.csv]
//! ```
//!
//! Prints a summary table; with a path argument also writes the full CSV.

use std::fs::File;

use aoi_duopoly::sweep::{run_sweep, write_csv, SweepSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = SweepSpec::default_c();
    let records = run_sweep(&spec, None)?;

    println!(
        "{:>7} {:>8} {:>8} {:>6} {:>6} {:>8} {:>8} {:>6} {:>6} {:>8} {:>8} {:>8}",
        "c", "mu1", "mu2", "rho1", "rho2", "dp1", "dp2", "m1", "m2", "pi1", "pi2", "SW"
    );
    for r in &records {
        println!(
            "{:>7.4} {:>8.4} {:>8.4} {:>6.3} {:>6.3} {:>8.4} {:>8.4} {:>6.3} {:>6.3} {:>8.4} {:>8.4} {:>8.4}",
            r.parameter_value, r.mu1, r.mu2, r.rho1, r.rho2, r.delta_p1, r.delta_p2, r.m1, r.m2,
            r.pi1, r.pi2, r.social_welfare
        );
    }

    if let Some(path) = std::env::args().nth(1) {
        write_csv(File::create(&path)?, &spec.parameter, &records)?;
        eprintln!("wrote {path}");
    }
    Ok(())
}
