mod common;

use proptest::prelude::*;

use aoi_duopoly::equilibrium::{best_response, find_nash, optimal_lambda_given_mu, tol_profit, Role, TOL_STRATEGY};
use aoi_duopoly::{Scenario, ServiceClass};

fn embb_vs_embb(base: Scenario) -> Scenario {
    Scenario { sp1: base.sp2, ..base }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL_STRATEGY * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn best_responses_survive_grid_audit() {
    let s = Scenario::default();
    for rival_dp in [0.5, 1.0, 1.28, 3.0, 20.0, f64::INFINITY] {
        for (role, who) in [(Role::Sp1, 1u8), (Role::Sp2, 2u8)] {
            let br = best_response(&s, role, rival_dp);
            let gain = common::grid_deviation_gain(&s, who, br.mu, rival_dp, 1000);
            assert!(gain <= tol_profit(&s), "{role:?} vs dp={rival_dp}: gain {gain:e}");
        }
    }
}

#[test]
fn converged_equilibrium_is_a_fixed_point() {
    for eps in [0.65, 0.8, 1.2, 2.0] {
        let s = Scenario::default().with("epsilon", eps).unwrap();
        let r = find_nash(&s);
        assert!(r.converged);
        assert!(r.residual <= tol_profit(&s));
        let b1 = best_response(&s, Role::Sp1, r.strategy2.peak_aoi());
        let b2 = best_response(&s, Role::Sp2, r.strategy1.peak_aoi());
        assert!(close(b1.mu, r.strategy1.mu) && close(b2.mu, r.strategy2.mu), "eps={eps}");
        // The stored outcome is the market evaluation of the stored strategies.
        assert_eq!(r.outcome, aoi_duopoly::equilibrium::evaluate(&s, &r.strategy1, &r.strategy2));
    }
}

#[test]
fn urllc_slack_matches_embb_game() {
    for eps in [1.6, 2.0, 5.0] {
        let s = Scenario::default().with("epsilon", eps).unwrap();
        let a = find_nash(&s);
        let b = find_nash(&embb_vs_embb(s));
        assert!(close(a.strategy1.mu, b.strategy1.mu), "eps={eps}");
        assert!(close(a.strategy2.mu, b.strategy2.mu), "eps={eps}");
    }
}

#[test]
fn urllc_provider_wins_at_reference_point() {
    let r = find_nash(&Scenario::default());
    let o = r.outcome;
    assert!(r.strategy1.utilization() < r.strategy2.utilization());
    assert!(o.delta_p1 < o.delta_p2);
    assert!(o.m1 > o.m2);
}

#[test]
fn equilibrium_losses_never_below_exit_payoff() {
    // Running no network is always available, so equilibrium profit cannot
    // fall below what a provider would earn with mu = 0.
    for eps in [0.3, 0.6, 0.65, 0.7, 1.0] {
        let s = Scenario::default().with("epsilon", eps).unwrap();
        let r = find_nash(&s);
        let exit1 = common::profit(&s, 1, 0.0, r.outcome.delta_p2);
        let exit2 = common::profit(&s, 2, 0.0, r.outcome.delta_p1);
        assert!(r.outcome.pi1 >= exit1 - tol_profit(&s), "eps={eps}");
        assert!(r.outcome.pi2 >= exit2 - tol_profit(&s), "eps={eps}");
    }
}

#[test]
fn symmetric_best_response_foc() {
    let s = embb_vs_embb(Scenario::default());
    let br = best_response(&s, Role::Sp1, 1.28);
    assert!((br.mu - 3.125).abs() < 1e-5, "{br:?}");
    let heavy = Scenario { capacity_cost: 1e4, ..s };
    assert!(best_response(&heavy, Role::Sp1, 1.28).mu < 1e-2);
}

#[test]
fn escalation_without_pure_equilibrium_is_reported() {
    // Quality is worth so much relative to capacity that the symmetric
    // candidate pMl/(16c) loses money; best responses cycle.
    let base = Scenario { capacity_cost: 0.05, quality_weight: 1.3, ..Scenario::default() };
    let s = embb_vs_embb(base);
    let r = find_nash(&s);
    assert!(!r.converged);
    assert!(r.residual > tol_profit(&s));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inner_lambda_matches_brute_force(
        use_urllc in any::<bool>(),
        alpha in 1.05f64..6.0,
        eps in 0.2f64..3.0,
        delta in 0.01f64..0.5,
        mu in 0.1f64..10.0,
    ) {
        let class = if use_urllc { ServiceClass::urllc(eps, delta).unwrap() } else { ServiceClass::embb(alpha).unwrap() };
        let cap = class.max_feasible_lambda(mu);
        let got = optimal_lambda_given_mu(&class, mu).unwrap();
        if cap <= 0.0 {
            prop_assert!(got.is_none());
        } else {
            let hi = cap.min(mu * (1.0 - 1e-12));
            let n = 20_000;
            let coarse = (1..=n)
                .map(|k| hi * k as f64 / n as f64)
                .min_by(|a, b| common::peak_aoi(*a, mu).total_cmp(&common::peak_aoi(*b, mu)))
                .unwrap();
            // Polish the grid winner on its two neighbouring cells.
            let step = hi / n as f64;
            let fine = (0..=4000)
                .map(|k| (coarse - step) + 2.0 * step * k as f64 / 4000.0)
                .filter(|x| *x > 0.0 && *x <= hi)
                .min_by(|a, b| common::peak_aoi(*a, mu).total_cmp(&common::peak_aoi(*b, mu)))
                .unwrap();
            let got = got.unwrap();
            // Peak AoI is flat near mu/2, so compare objective values there.
            let rel = (common::peak_aoi(got, mu) - common::peak_aoi(fine, mu)) / common::peak_aoi(fine, mu);
            prop_assert!(rel <= 1e-6, "got {got}, brute {fine}");
            if cap < 0.5 * mu {
                prop_assert!((got - fine).abs() <= 1e-6 * got.max(1e-6) + step * 1e-3);
            }
        }
    }

    #[test]
    fn identical_classes_give_symmetric_equilibrium(
        alpha in 1.5f64..6.0,
        c in 0.1f64..0.5,
        l in 0.1f64..1.0,
    ) {
        // Keeps the candidate pMl/(16c) well inside the profitable range.
        let base = Scenario { capacity_cost: c, quality_weight: l, ..Scenario::default() };
        let s = Scenario { sp1: ServiceClass::embb(alpha).unwrap(), sp2: ServiceClass::embb(alpha).unwrap(), ..base };
        let r = find_nash(&s);
        prop_assert!(r.converged);
        prop_assert!(close(r.strategy1.mu, r.strategy2.mu));
        prop_assert!(close(r.strategy1.lambda, r.strategy2.lambda));
    }
}
