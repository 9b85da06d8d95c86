mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use aoi_duopoly::market::{consumer_surplus, market_shares};
use aoi_duopoly::Scenario;

/// Fraction of uniform users with `u1 >= u2`, and its standard error.
fn monte_carlo_share(s: &Scenario, dp1: f64, dp2: f64, draws: usize, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = s.quality_weight;
    let hits = (0..draws)
        .filter(|_| {
            let g: f64 = rng.random();
            let u1 = s.intrinsic_value + l * common::inv(dp1) - g - s.price;
            let u2 = s.intrinsic_value + l * common::inv(dp2) - (1.0 - g) - s.price;
            u1 >= u2
        })
        .count();
    let p = hits as f64 / draws as f64;
    (p, (p * (1.0 - p) / draws as f64).sqrt())
}

#[test]
fn share_matches_monte_carlo_reference_case() {
    let s = Scenario::default();
    let (m1, m2) = market_shares(&s, 2.0, 4.0);
    assert!((m1 - 5.625).abs() < 1e-12 && (m2 - 4.375).abs() < 1e-12);
    let (p, _) = monte_carlo_share(&s, 2.0, 4.0, 1_000_000, 11);
    assert!((s.population * p - 5.625).abs() < 0.01, "MC share {}", s.population * p);
}

#[test]
fn shares_match_monte_carlo_on_random_scenarios() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..40 {
        let s = Scenario {
            population: rng.random_range(1.0..50.0),
            quality_weight: rng.random_range(0.05..3.0),
            ..Scenario::default()
        };
        let dp1 = rng.random_range(0.2..10.0);
        let dp2 = rng.random_range(0.2..10.0);
        let (m1, _) = market_shares(&s, dp1, dp2);
        let (p, se) = monte_carlo_share(&s, dp1, dp2, 200_000, 1000 + k);
        let se = se.max(1.0 / 200_000.0);
        // 4 SE rather than 3: forty 3-SE checks would trip by chance ~10% of the time.
        assert!(
            (m1 / s.population - p).abs() <= 4.0 * se,
            "case {k}: closed form {} vs MC {p} (se {se})",
            m1 / s.population
        );
    }
}

#[test]
fn surplus_reference_values_by_quadrature() {
    let s = Scenario::default();
    let (q1, q2) = common::surplus_by_quadrature(&s, 4.0, 4.0);
    assert!((q1 - 0.4375).abs() < 1e-9 && (q2 - 0.4375).abs() < 1e-9);
    let (cs1, cs2) = consumer_surplus(&s, 4.0, 4.0);
    assert!((cs1 - q1).abs() < 1e-9 && (cs2 - q2).abs() < 1e-9);
}

proptest! {
    #[test]
    fn surplus_matches_quadrature(
        dp1 in 0.01f64..50.0,
        dp2 in 0.01f64..50.0,
        l in 0.01f64..5.0,
        nu in -2.0f64..5.0,
        p in 0.0f64..3.0,
    ) {
        let s = Scenario { quality_weight: l, intrinsic_value: nu, price: p, ..Scenario::default() };
        let (cs1, cs2) = consumer_surplus(&s, dp1, dp2);
        let (q1, q2) = common::surplus_by_quadrature(&s, dp1, dp2);
        prop_assert!((cs1 - q1).abs() <= 1e-9);
        prop_assert!((cs2 - q2).abs() <= 1e-9);
    }
}
