//! Seeded simulation of the M/M/1-FCFS status-update queue, used to check the
//! closed-form AoI and delay-tail expressions.
//!
//! Updates are generated as a Poisson stream and served in order by one
//! exponential server. The simulator walks delivery epochs in order: update
//! `i` arrives at `a_i`, starts service at `max(a_i, d_{i-1})` and is delivered
//! at `d_i`. Between deliveries the age grows linearly, so the area under the
//! sawtooth is integrated exactly.
//!
//! Randomness comes from ChaCha8 seeded with `seed`; arrivals use stream 0 and
//! services stream 1, so changing one rate never perturbs the other sequence.
//!
//! Standard errors are batch means over [`BATCHES`] contiguous batches, which
//! accounts for the autocorrelation between consecutive updates.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};

pub const BATCHES: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub lambda: f64,
    pub mu: f64,
    /// Delivered updates to simulate, warmup included.
    pub horizon: u64,
    /// Leading deliveries excluded from every estimate.
    pub warmup: u64,
    pub seed: u64,
}

impl SimConfig {
    /// Config with the default warmup of 1% of the horizon.
    pub fn new(lambda: f64, mu: f64, horizon: u64, seed: u64) -> Self {
        SimConfig {
            lambda,
            mu,
            horizon,
            warmup: horizon / 100,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let stable = self.lambda.is_finite()
            && self.mu.is_finite()
            && self.lambda > 0.0
            && self.lambda < self.mu;
        if !stable {
            return Err(ModelError::InfeasibleOperatingPoint {
                lambda: self.lambda,
                mu: self.mu,
            });
        }
        if self.horizon <= self.warmup {
            return Err(ModelError::InvalidParameter {
                name: "horizon",
                value: self.horizon as f64,
                reason: "must exceed warmup",
            });
        }
        Ok(())
    }
}

/// Empirical fraction of system times above `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailEstimate {
    pub epsilon: f64,
    pub fraction: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub config: SimConfig,
    /// Time average of the age sawtooth over the measured window.
    pub empirical_average_aoi: f64,
    pub average_aoi_std_error: f64,
    /// Mean age just before each measured delivery.
    pub empirical_mean_peak_aoi: f64,
    pub mean_peak_aoi_std_error: f64,
    /// Batch estimate of `average - peak`, for the `-rho/mu` identity.
    pub aoi_gap: f64,
    pub aoi_gap_std_error: f64,
    pub mean_system_time: f64,
    pub system_time_std_error: f64,
    pub empirical_tail: Vec<TailEstimate>,
    /// Measured deliveries (horizon minus warmup).
    pub samples: u64,
    /// Length of the measured window.
    pub observed_time: f64,
    pub batches: usize,
}

#[derive(Debug, Clone, Default)]
struct Batch {
    area: f64,
    time: f64,
    peak_sum: f64,
    system_sum: f64,
    exceed: Vec<u64>,
    count: u64,
}

fn mean_and_se(xs: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = xs.clone().count() as f64;
    let mean = xs.clone().sum::<f64>() / n;
    if n < 2.0 {
        return (mean, f64::NAN);
    }
    let var = xs.map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Runs one replication and estimates the AoI metrics and the delay tail at
/// each value in `tail_epsilons`.
pub fn simulate(config: &SimConfig, tail_epsilons: &[f64]) -> Result<SimReport> {
    config.validate()?;
    if let Some(&bad) = tail_epsilons.iter().find(|e| !(e.is_finite() && **e > 0.0)) {
        return Err(ModelError::InvalidParameter {
            name: "tail epsilon",
            value: bad,
            reason: "must be positive and finite",
        });
    }

    let mut arrivals_rng = ChaCha8Rng::seed_from_u64(config.seed);
    arrivals_rng.set_stream(0);
    let mut service_rng = ChaCha8Rng::seed_from_u64(config.seed);
    service_rng.set_stream(1);
    let interarrival = Exp::new(config.lambda).expect("validated rate");
    let service = Exp::new(config.mu).expect("validated rate");

    let samples = config.horizon - config.warmup;
    let batches = (samples as usize).clamp(1, BATCHES);
    let per_batch = samples / batches as u64;
    let mut stats = vec![
        Batch {
            exceed: vec![0; tail_epsilons.len()],
            ..Batch::default()
        };
        batches
    ];

    // A fresh update generated and delivered at time 0 starts the sawtooth.
    let mut prev_arrival = 0.0f64;
    let mut prev_delivery = 0.0f64;
    let mut arrival = 0.0f64;
    let mut window_start = 0.0f64;

    for i in 1..=config.horizon {
        arrival += interarrival.sample(&mut arrivals_rng);
        let delivery = arrival.max(prev_delivery) + service.sample(&mut service_rng);

        if i > config.warmup {
            let k = i - config.warmup - 1;
            if k == 0 {
                window_start = prev_delivery;
            }
            // The last batch absorbs the remainder.
            let b = ((k / per_batch) as usize).min(batches - 1);
            let st = &mut stats[b];
            let peak = delivery - prev_arrival;
            let floor = prev_delivery - prev_arrival;
            st.area += 0.5 * (peak * peak - floor * floor);
            st.time += delivery - prev_delivery;
            st.peak_sum += peak;
            let system = delivery - arrival;
            st.system_sum += system;
            for (hit, &eps) in st.exceed.iter_mut().zip(tail_epsilons) {
                if system > eps {
                    *hit += 1;
                }
            }
            st.count += 1;
        }

        prev_arrival = arrival;
        prev_delivery = delivery;
    }

    let total_area: f64 = stats.iter().map(|b| b.area).sum();
    let total_time: f64 = stats.iter().map(|b| b.time).sum();
    let n = samples as f64;

    let avg = stats.iter().map(|b| b.area / b.time);
    let peak = stats.iter().map(|b| b.peak_sum / b.count as f64);
    let gap = stats
        .iter()
        .map(|b| b.area / b.time - b.peak_sum / b.count as f64);
    let sys = stats.iter().map(|b| b.system_sum / b.count as f64);

    let (_, average_aoi_std_error) = mean_and_se(avg);
    let (_, mean_peak_aoi_std_error) = mean_and_se(peak);
    let (aoi_gap, aoi_gap_std_error) = mean_and_se(gap);
    let (_, system_time_std_error) = mean_and_se(sys);

    let empirical_tail = tail_epsilons
        .iter()
        .enumerate()
        .map(|(j, &epsilon)| {
            let hits: u64 = stats.iter().map(|b| b.exceed[j]).sum();
            let (_, std_error) =
                mean_and_se(stats.iter().map(|b| b.exceed[j] as f64 / b.count as f64));
            TailEstimate {
                epsilon,
                fraction: hits as f64 / n,
                std_error,
            }
        })
        .collect();

    Ok(SimReport {
        config: *config,
        empirical_average_aoi: total_area / total_time,
        average_aoi_std_error,
        empirical_mean_peak_aoi: stats.iter().map(|b| b.peak_sum).sum::<f64>() / n,
        mean_peak_aoi_std_error,
        aoi_gap,
        aoi_gap_std_error,
        mean_system_time: stats.iter().map(|b| b.system_sum).sum::<f64>() / n,
        system_time_std_error,
        empirical_tail,
        samples,
        observed_time: prev_delivery - window_start,
        batches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aoi::{average_aoi, mean_system_time, peak_aoi, QueueOperatingPoint};

    #[test]
    fn rejects_unstable_config() {
        assert!(simulate(&SimConfig::new(1.0, 1.0, 1000, 0), &[]).is_err());
        assert!(simulate(&SimConfig::new(1.2, 1.0, 1000, 0), &[]).is_err());
        let mut c = SimConfig::new(0.5, 1.0, 10, 0);
        c.warmup = 10;
        assert!(simulate(&c, &[]).is_err());
        assert!(simulate(&SimConfig::new(0.5, 1.0, 100, 0), &[0.0]).is_err());
    }

    #[test]
    fn same_seed_same_report() {
        let c = SimConfig::new(0.5, 1.0, 20_000, 7);
        assert_eq!(simulate(&c, &[1.0]).unwrap(), simulate(&c, &[1.0]).unwrap());
        let other = SimConfig { seed: 8, ..c };
        assert_ne!(simulate(&c, &[1.0]).unwrap(), simulate(&other, &[1.0]).unwrap());
    }

    #[test]
    fn small_horizon_has_finite_estimates() {
        let r = simulate(&SimConfig::new(0.5, 1.0, 3, 1), &[0.5]).unwrap();
        assert_eq!(r.samples, 3);
        assert!(r.empirical_average_aoi.is_finite());
        assert!(r.average_aoi_std_error > 0.0);
        assert!(r.mean_peak_aoi_std_error > 0.0);
    }

    #[test]
    fn moderate_run_tracks_closed_forms() {
        let q = QueueOperatingPoint::new(0.5, 1.0).unwrap();
        let r = simulate(&SimConfig::new(0.5, 1.0, 200_000, 3), &[2.0]).unwrap();
        assert!((r.empirical_average_aoi / average_aoi(&q) - 1.0).abs() < 0.03);
        assert!((r.empirical_mean_peak_aoi / peak_aoi(&q) - 1.0).abs() < 0.03);
        assert!((r.mean_system_time - mean_system_time(&q)).abs() < 4.0 * r.system_time_std_error);
        assert!((r.aoi_gap + q.rho() / q.mu()).abs() < 4.0 * r.aoi_gap_std_error);
        assert!((r.empirical_tail[0].fraction - (-1.0f64).exp()).abs() < 0.01);
    }
}
