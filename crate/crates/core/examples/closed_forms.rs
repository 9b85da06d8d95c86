//! Average and peak AoI of an M/M/1-FCFS update stream across utilisation,
//! and the largest rate each service class admits at a given capacity.
//!
//! ```text
//! cargo run --example closed_forms [mu]
//! ```

use aoi_duopoly::aoi::mean_system_time;
use aoi_duopoly::{average_aoi, delay_tail_probability, peak_aoi, QueueOperatingPoint, ServiceClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mu: f64 = match std::env::args().nth(1) {
        Some(s) => s.parse()?,
        None => 1.0,
    };

    println!("mu = {mu}");
    println!("{:>5} {:>10} {:>10} {:>10} {:>10}", "rho", "avg AoI", "peak AoI", "E[T]", "P(T>1)");
    for k in 1..20 {
        let rho = k as f64 * 0.05;
        let q = QueueOperatingPoint::new(rho * mu, mu)?;
        println!(
            "{:>5.2} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
            rho,
            average_aoi(&q),
            peak_aoi(&q),
            mean_system_time(&q),
            delay_tail_probability(&q, 1.0)?
        );
    }

    // Peak AoI is minimised at rho = 1/2 with value 4/mu; average AoI a bit above.
    println!("\nmin peak AoI = {:.6} (4/mu = {:.6})", peak_aoi(&QueueOperatingPoint::new(mu / 2.0, mu)?), 4.0 / mu);

    println!("\nlargest admissible rate at this mu:");
    for class in [
        ServiceClass::embb(3.0)?,
        ServiceClass::urllc(0.8, 0.1)?,
        ServiceClass::urllc(2.0, 0.1)?,
        ServiceClass::urllc(8.0, 0.01)?,
    ] {
        let cap = class.max_feasible_lambda(mu);
        println!("  {}", class.describe());
        if cap > 0.0 {
            println!("    -> lambda <= {cap:.4}");
        } else {
            println!("    -> no traffic admitted");
        }
    }
    Ok(())
}
