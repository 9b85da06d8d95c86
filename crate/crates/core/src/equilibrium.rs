//! Best responses and Nash equilibrium of the capacity/traffic game.
//!
//! Each provider picks a capacity `mu` and an arrival rate `lambda` within its
//! service-class constraint. Revenue depends on `lambda` only through the peak
//! AoI and is nonincreasing in it, while cost depends only on `mu`; so for any
//! `mu` the profit-maximizing `lambda` is the one minimizing peak AoI, which
//! is `min(mu/2, max_feasible_lambda(mu))`. The remaining one-dimensional
//! problem in `mu` is solved by a grid scan plus golden-section refinement.

use serde::{Deserialize, Serialize};

use crate::aoi::{average_aoi_extended, peak_aoi_extended, ServiceClass};
use crate::error::{ModelError, Result};
use crate::market::{market_shares, profit, MarketOutcome, Scenario};
use crate::optimize::{grid_golden_max, linspace};

/// Points in the coarse capacity scan of a best response.
pub const SEARCH_GRID_POINTS: usize = 512;
/// Points in the deviation audit behind [`EquilibriumResult::residual`].
pub const AUDIT_GRID_POINTS: usize = 1000;
/// Relative tolerance on capacity movement between iterations.
pub const TOL_STRATEGY: f64 = 1e-5;
/// Profit tolerance, scaled by `p M`.
pub const TOL_PROFIT_SCALE: f64 = 1e-6;
pub const MAX_ITER: usize = 200;
/// Points per axis of the fallback fixed-point search.
pub const FALLBACK_GRID_POINTS: usize = 400;

/// Profit-improvement tolerance `1e-6 p M` for a scenario.
pub fn tol_profit(scenario: &Scenario) -> f64 {
    TOL_PROFIT_SCALE * scenario.price * scenario.population
}

// Candidates closer than this (scaled by p M) count as ties in the argmax. It
// is kept far below `tol_profit` so tie-breaking never spends the audit budget.
const TIE_SCALE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    Sp1,
    Sp2,
}

impl Role {
    pub fn label(self) -> &'static str {
        match self {
            Role::Sp1 => "SP1",
            Role::Sp2 => "SP2",
        }
    }

    pub fn constraint(self, scenario: &Scenario) -> ServiceClass {
        match self {
            Role::Sp1 => scenario.sp1,
            Role::Sp2 => scenario.sp2,
        }
    }
}

/// Capacity and arrival rate of one provider. `lambda == 0` means no traffic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Strategy {
    pub mu: f64,
    pub lambda: f64,
}

impl Strategy {
    pub const IDLE: Strategy = Strategy { mu: 0.0, lambda: 0.0 };

    /// Strategy with capacity `mu` and the AoI-minimizing feasible rate.
    pub fn with_capacity(constraint: &ServiceClass, mu: f64) -> Strategy {
        if mu <= 0.0 {
            return Strategy::IDLE;
        }
        let lambda = optimal_lambda_given_mu(constraint, mu)
            .ok()
            .flatten()
            .unwrap_or(0.0);
        Strategy { mu, lambda }
    }

    pub fn peak_aoi(&self) -> f64 {
        peak_aoi_extended(self.lambda, self.mu)
    }

    pub fn average_aoi(&self) -> f64 {
        average_aoi_extended(self.lambda, self.mu)
    }

    pub fn utilization(&self) -> f64 {
        if self.mu > 0.0 {
            self.lambda / self.mu
        } else {
            0.0
        }
    }

    /// Checks the strategy against a provider's constraint.
    ///
    /// A relative slack of `1e-12` on the constraint absorbs rounding in values
    /// that were computed exactly on the boundary.
    pub fn check(&self, role: Role, constraint: &ServiceClass) -> Result<()> {
        let violated = |what: String| ModelError::ConstraintViolated {
            sp: role.label(),
            mu: self.mu,
            lambda: self.lambda,
            constraint: what,
        };
        if !(self.mu.is_finite() && self.mu >= 0.0) {
            return Err(violated("mu >= 0".into()));
        }
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return Err(violated("lambda >= 0".into()));
        }
        if self.mu == 0.0 {
            if self.lambda > 0.0 {
                return Err(violated("lambda = 0 when mu = 0".into()));
            }
            return Ok(());
        }
        if self.lambda >= self.mu {
            return Err(violated("queue stability lambda < mu".into()));
        }
        let cap = constraint.max_feasible_lambda(self.mu);
        if self.lambda > 0.0 && self.lambda > cap + 1e-12 * self.mu {
            return Err(violated(constraint.describe()));
        }
        Ok(())
    }
}

/// AoI-minimizing arrival rate at capacity `mu`, or `None` when the
/// constraint leaves no room for traffic.
pub fn optimal_lambda_given_mu(constraint: &ServiceClass, mu: f64) -> Result<Option<f64>> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(ModelError::InvalidParameter {
            name: "mu",
            value: mu,
            reason: "must be positive and finite",
        });
    }
    let cap = constraint.max_feasible_lambda(mu);
    if cap <= 0.0 {
        return Ok(None);
    }
    Ok(Some((0.5 * mu).min(cap)))
}

/// Profit of `role` when it runs `own` against a rival with peak AoI `rival_delta_p`.
pub fn role_profit(scenario: &Scenario, role: Role, own: &Strategy, rival_delta_p: f64) -> f64 {
    let own_dp = own.peak_aoi();
    let subscribers = match role {
        Role::Sp1 => market_shares(scenario, own_dp, rival_delta_p).0,
        Role::Sp2 => market_shares(scenario, rival_delta_p, own_dp).1,
    };
    profit(scenario, subscribers, own.mu)
}

/// Capacity beyond which profit is negative even with the whole market.
pub fn capacity_upper_bound(scenario: &Scenario) -> f64 {
    (scenario.price * scenario.population / scenario.capacity_cost).sqrt()
}

fn profit_at_capacity(scenario: &Scenario, role: Role, mu: f64, rival_delta_p: f64) -> f64 {
    let s = Strategy::with_capacity(&role.constraint(scenario), mu);
    role_profit(scenario, role, &s, rival_delta_p)
}

/// Profit-maximizing strategy of `role` against a rival with peak AoI
/// `rival_delta_p` (`+inf` for a rival without traffic).
pub fn best_response(scenario: &Scenario, role: Role, rival_delta_p: f64) -> Strategy {
    let ub = capacity_upper_bound(scenario);
    if ub.is_nan() || ub <= 0.0 {
        return Strategy::IDLE;
    }
    let tie = TIE_SCALE * (scenario.price * scenario.population).max(f64::MIN_POSITIVE);
    let (mu, _) = grid_golden_max(
        |mu| profit_at_capacity(scenario, role, mu, rival_delta_p),
        0.0,
        ub,
        SEARCH_GRID_POINTS,
        tie,
    );
    Strategy::with_capacity(&role.constraint(scenario), mu)
}

/// Largest profit gain `role` could get by deviating from `own`, probing
/// `grid_points` capacities on `[0, sqrt(pM/c)]` with the inner optimal rate.
///
/// Returns 0 when no probed deviation helps.
pub fn deviation_gain(
    scenario: &Scenario,
    role: Role,
    own: &Strategy,
    rival_delta_p: f64,
    grid_points: usize,
) -> f64 {
    let current = role_profit(scenario, role, own, rival_delta_p);
    linspace(0.0, capacity_upper_bound(scenario), grid_points)
        .into_iter()
        .map(|mu| profit_at_capacity(scenario, role, mu, rival_delta_p) - current)
        .fold(0.0, f64::max)
}

/// How an equilibrium was located.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    BestResponseIteration,
    GridFixedPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumResult {
    pub strategy1: Strategy,
    pub strategy2: Strategy,
    pub outcome: MarketOutcome,
    pub iterations: usize,
    pub converged: bool,
    /// Largest profit gain either provider finds by audited deviation.
    pub residual: f64,
    /// Set when the fallback search found more than one fixed point.
    pub multiple_equilibria: bool,
    pub method: SolveMethod,
}

/// Market outcome of a strategy pair.
pub fn evaluate(scenario: &Scenario, s1: &Strategy, s2: &Strategy) -> MarketOutcome {
    MarketOutcome::evaluate(scenario, s1.peak_aoi(), s1.mu, s2.peak_aoi(), s2.mu)
}

fn audit(scenario: &Scenario, s1: &Strategy, s2: &Strategy) -> f64 {
    let g1 = deviation_gain(scenario, Role::Sp1, s1, s2.peak_aoi(), AUDIT_GRID_POINTS);
    let g2 = deviation_gain(scenario, Role::Sp2, s2, s1.peak_aoi(), AUDIT_GRID_POINTS);
    g1.max(g2)
}

fn moved(a: &Strategy, b: &Strategy) -> bool {
    (a.mu - b.mu).abs() > TOL_STRATEGY * a.mu.abs().max(b.mu.abs()).max(1.0)
}

/// Nash equilibrium by alternating best responses from the symmetric interior
/// start `mu0 = pMl/(16c)`.
///
/// If the iteration does not settle within [`MAX_ITER`] rounds, a grid search
/// for mutual best responses takes over. Non-convergence is reported through
/// `converged`, never as an error.
pub fn find_nash(scenario: &Scenario) -> EquilibriumResult {
    let tol = tol_profit(scenario);
    let mu0 = scenario.price * scenario.population * scenario.quality_weight
        / (16.0 * scenario.capacity_cost);
    let mut s1 = Strategy::with_capacity(&scenario.sp1, mu0);
    let mut s2 = Strategy::with_capacity(&scenario.sp2, mu0);

    for iteration in 1..=MAX_ITER {
        let n1 = best_response(scenario, Role::Sp1, s2.peak_aoi());
        let n2 = best_response(scenario, Role::Sp2, n1.peak_aoi());
        let settled = !moved(&s1, &n1) && !moved(&s2, &n2);
        s1 = n1;
        s2 = n2;
        if settled {
            let residual = audit(scenario, &s1, &s2);
            if residual <= tol {
                return EquilibriumResult {
                    strategy1: s1,
                    strategy2: s2,
                    outcome: evaluate(scenario, &s1, &s2),
                    iterations: iteration,
                    converged: true,
                    residual,
                    multiple_equilibria: false,
                    method: SolveMethod::BestResponseIteration,
                };
            }
        }
    }

    match grid_fixed_points(scenario) {
        Some((a, b, residual, multiple)) => EquilibriumResult {
            strategy1: a,
            strategy2: b,
            outcome: evaluate(scenario, &a, &b),
            iterations: MAX_ITER,
            converged: residual <= tol,
            residual,
            multiple_equilibria: multiple,
            method: SolveMethod::GridFixedPoint,
        },
        None => EquilibriumResult {
            strategy1: s1,
            strategy2: s2,
            outcome: evaluate(scenario, &s1, &s2),
            iterations: MAX_ITER,
            converged: false,
            residual: audit(scenario, &s1, &s2),
            multiple_equilibria: false,
            method: SolveMethod::BestResponseIteration,
        },
    }
}

/// Exhaustive search for mutual grid best responses, each polished with one
/// continuous best-response round. Returns the welfare-maximizing fixed point
/// with its audit residual and whether several were found.
fn grid_fixed_points(scenario: &Scenario) -> Option<(Strategy, Strategy, f64, bool)> {
    let grid = linspace(0.0, capacity_upper_bound(scenario), FALLBACK_GRID_POINTS);
    let cands1: Vec<Strategy> = grid
        .iter()
        .map(|&mu| Strategy::with_capacity(&scenario.sp1, mu))
        .collect();
    let cands2: Vec<Strategy> = grid
        .iter()
        .map(|&mu| Strategy::with_capacity(&scenario.sp2, mu))
        .collect();

    let grid_argmax = |role: Role, own: &[Strategy], rival: &Strategy| -> usize {
        let rival_dp = rival.peak_aoi();
        let values: Vec<f64> = own
            .iter()
            .map(|s| role_profit(scenario, role, s, rival_dp))
            .collect();
        values
            .iter()
            .enumerate()
            .fold(0, |k, (i, &v)| if v > values[k] { i } else { k })
    };
    let br1: Vec<usize> = cands2
        .iter()
        .map(|s2| grid_argmax(Role::Sp1, &cands1, s2))
        .collect();
    let br2: Vec<usize> = cands1
        .iter()
        .map(|s1| grid_argmax(Role::Sp2, &cands2, s1))
        .collect();

    let tol = tol_profit(scenario);
    let mut found: Vec<(Strategy, Strategy, f64, f64)> = Vec::new();
    for (i, &j) in br2.iter().enumerate() {
        if br1[j] != i {
            continue;
        }
        let a = best_response(scenario, Role::Sp1, cands2[j].peak_aoi());
        let b = best_response(scenario, Role::Sp2, a.peak_aoi());
        let residual = audit(scenario, &a, &b);
        let welfare = evaluate(scenario, &a, &b).social_welfare;
        let duplicate = found
            .iter()
            .any(|(x, y, _, _)| !moved(x, &a) && !moved(y, &b));
        if !duplicate {
            found.push((a, b, residual, welfare));
        }
    }
    let multiple = found.iter().filter(|f| f.2 <= tol).count() > 1;
    found
        .into_iter()
        .min_by(|x, y| {
            // Prefer audited equilibria, then higher welfare.
            (x.2 > tol)
                .cmp(&(y.2 > tol))
                .then(y.3.total_cmp(&x.3))
        })
        .map(|(a, b, r, _)| (a, b, r, multiple))
}
