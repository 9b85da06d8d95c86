//! Checks the closed forms against a seeded discrete-event simulation.
//!
//! ```text
//! cargo run --release --example simulate_queue [lambda mu [horizon [seed]]]
//! ```

use aoi_duopoly::aoi::mean_system_time;
use aoi_duopoly::{average_aoi, delay_tail_probability, peak_aoi, simulate, QueueOperatingPoint, SimConfig};

fn arg<T: std::str::FromStr>(i: usize, default: T) -> T {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lambda = arg(1, 0.5);
    let mu = arg(2, 1.0);
    let config = SimConfig::new(lambda, mu, arg(3, 1_000_000), arg(4, 0));
    let q = QueueOperatingPoint::new(lambda, mu)?;
    let t = mean_system_time(&q);
    let eps = [0.5 * t, t, 2.0 * t];

    let r = simulate(&config, &eps)?;
    println!("lambda = {lambda}, mu = {mu}, {} deliveries measured, {} batches", r.samples, r.batches);
    println!("{:<14} {:>10} {:>10} {:>9}", "", "exact", "simulated", "std err");
    let row = |name: &str, exact: f64, est: f64, se: f64| {
        println!("{name:<14} {exact:>10.5} {est:>10.5} {se:>9.5}");
    };
    row("average AoI", average_aoi(&q), r.empirical_average_aoi, r.average_aoi_std_error);
    row("peak AoI", peak_aoi(&q), r.empirical_mean_peak_aoi, r.mean_peak_aoi_std_error);
    row("avg - peak", -q.rho() / mu, r.aoi_gap, r.aoi_gap_std_error);
    row("E[T]", t, r.mean_system_time, r.system_time_std_error);
    for e in &r.empirical_tail {
        row(&format!("P(T>{:.3})", e.epsilon), delay_tail_probability(&q, e.epsilon)?, e.fraction, e.std_error);
    }
    Ok(())
}
