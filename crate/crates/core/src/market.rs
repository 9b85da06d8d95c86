//! Hotelling subscription model.
//!
//! Users are spread uniformly over `gamma in [0, 1]`; SP1 sits at 0 and SP2
//! at 1. A user at `gamma` gets `u1 = nu + l/dp1 - gamma - p` from SP1 and
//! `u2 = nu + l/dp2 - (1 - gamma) - p` from SP2, where `dp` is the provider's
//! peak AoI. An infinite peak AoI (no traffic) contributes zero quality.

use serde::{Deserialize, Serialize};

use crate::aoi::ServiceClass;
use crate::error::{ModelError, Result};

/// Full parameter set of one game instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    /// Population size `M`.
    pub population: f64,
    /// Intrinsic service value `nu`.
    pub intrinsic_value: f64,
    /// Quality-to-money conversion `l`.
    pub quality_weight: f64,
    /// Subscription price `p`, shared by both providers.
    pub price: f64,
    /// Quadratic capacity cost coefficient `c`.
    pub capacity_cost: f64,
    pub sp1: ServiceClass,
    pub sp2: ServiceClass,
}

impl Default for Scenario {
    /// Reference parameters: M=10, c=0.1, l=0.5, p=1, nu=2, alpha=3,
    /// epsilon=0.8, delta=0.1, with SP1 on URLLC and SP2 on eMBB.
    fn default() -> Self {
        Scenario {
            population: 10.0,
            intrinsic_value: 2.0,
            quality_weight: 0.5,
            price: 1.0,
            capacity_cost: 0.1,
            sp1: ServiceClass::Urllc { epsilon: 0.8, delta: 0.1 },
            sp2: ServiceClass::Embb { alpha: 3.0 },
        }
    }
}

/// Names accepted by [`Scenario::get`] and [`Scenario::set`].
pub const PARAMETER_NAMES: [&str; 8] = ["M", "nu", "l", "p", "c", "alpha", "epsilon", "delta"];

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        let bad = |name, value, reason| Err(ModelError::InvalidParameter { name, value, reason });
        if !(self.population.is_finite() && self.population >= 0.0) {
            return bad("M", self.population, "must be finite and >= 0");
        }
        if !self.intrinsic_value.is_finite() {
            return bad("nu", self.intrinsic_value, "must be finite");
        }
        if !(self.quality_weight.is_finite() && self.quality_weight > 0.0) {
            return bad("l", self.quality_weight, "must be finite and > 0");
        }
        if !(self.price.is_finite() && self.price >= 0.0) {
            return bad("p", self.price, "must be finite and >= 0");
        }
        if !(self.capacity_cost.is_finite() && self.capacity_cost > 0.0) {
            return bad("c", self.capacity_cost, "must be finite and > 0");
        }
        self.sp1.validate()?;
        self.sp2.validate()
    }

    /// Reads a scalar parameter by its short name. `alpha` reads the first
    /// eMBB provider, `epsilon` and `delta` the first URLLC provider.
    pub fn get(&self, name: &str) -> Result<f64> {
        let classes = [self.sp1, self.sp2];
        let missing = || ModelError::UnknownParameter(format!("{name} (no provider uses it)"));
        match name {
            "M" => Ok(self.population),
            "nu" => Ok(self.intrinsic_value),
            "l" => Ok(self.quality_weight),
            "p" => Ok(self.price),
            "c" => Ok(self.capacity_cost),
            "alpha" => classes
                .iter()
                .find_map(|c| match c {
                    ServiceClass::Embb { alpha } => Some(*alpha),
                    _ => None,
                })
                .ok_or_else(missing),
            "epsilon" | "delta" => classes
                .iter()
                .find_map(|c| match c {
                    ServiceClass::Urllc { epsilon, delta } => {
                        Some(if name == "epsilon" { *epsilon } else { *delta })
                    }
                    _ => None,
                })
                .ok_or_else(missing),
            other => Err(ModelError::UnknownParameter(other.to_string())),
        }
    }

    /// Sets a scalar parameter by its short name. Class parameters apply to
    /// every provider of the matching class. Does not validate.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        match name {
            "M" => self.population = value,
            "nu" => self.intrinsic_value = value,
            "l" => self.quality_weight = value,
            "p" => self.price = value,
            "c" => self.capacity_cost = value,
            "alpha" | "epsilon" | "delta" => {
                let mut hit = false;
                for class in [&mut self.sp1, &mut self.sp2] {
                    match (name, class) {
                        ("alpha", ServiceClass::Embb { alpha }) => {
                            *alpha = value;
                            hit = true;
                        }
                        ("epsilon", ServiceClass::Urllc { epsilon, .. }) => {
                            *epsilon = value;
                            hit = true;
                        }
                        ("delta", ServiceClass::Urllc { delta, .. }) => {
                            *delta = value;
                            hit = true;
                        }
                        _ => {}
                    }
                }
                if !hit {
                    return Err(ModelError::UnknownParameter(format!("{name} (no provider uses it)")));
                }
            }
            other => return Err(ModelError::UnknownParameter(other.to_string())),
        }
        Ok(())
    }

    /// Copy with `name` set to `value`, validated.
    pub fn with(&self, name: &str, value: f64) -> Result<Self> {
        let mut s = *self;
        s.set(name, value)?;
        s.validate()?;
        Ok(s)
    }
}

/// Service quality `1/dp`, zero for an infinite peak AoI.
pub fn quality(delta_p: f64) -> f64 {
    if delta_p.is_infinite() {
        0.0
    } else {
        1.0 / delta_p
    }
}

/// Indifference position `1/2 + (l/2)(1/dp1 - 1/dp2)`, unclamped.
pub fn gamma_threshold(delta_p1: f64, delta_p2: f64, l: f64) -> f64 {
    0.5 + 0.5 * l * (quality(delta_p1) - quality(delta_p2))
}

fn covered_fraction(scenario: &Scenario, delta_p1: f64, delta_p2: f64) -> f64 {
    gamma_threshold(delta_p1, delta_p2, scenario.quality_weight).clamp(0.0, 1.0)
}

/// Subscriber counts `(m1, m2)`; users at the threshold go to SP1.
pub fn market_shares(scenario: &Scenario, delta_p1: f64, delta_p2: f64) -> (f64, f64) {
    let m1 = scenario.population * covered_fraction(scenario, delta_p1, delta_p2);
    (m1, scenario.population - m1)
}

/// Aggregate user utility of each provider's subscribers, `(cs1, cs2)`.
pub fn consumer_surplus(scenario: &Scenario, delta_p1: f64, delta_p2: f64) -> (f64, f64) {
    let g = covered_fraction(scenario, delta_p1, delta_p2);
    surplus_at_split(scenario, g, delta_p1, delta_p2)
}

/// Surplus when users on `[0, g]` pick SP1 and users on `(g, 1]` pick SP2.
pub(crate) fn surplus_at_split(scenario: &Scenario, g: f64, delta_p1: f64, delta_p2: f64) -> (f64, f64) {
    let l = scenario.quality_weight;
    let base = scenario.intrinsic_value - scenario.price;
    let cs1 = g * (base + l * quality(delta_p1)) - 0.5 * g * g;
    let h = 1.0 - g;
    let cs2 = h * (base + l * quality(delta_p2)) - 0.5 * h * h;
    (cs1, cs2)
}

/// Revenue minus quadratic capacity cost, `m p - c mu^2`.
pub fn profit(scenario: &Scenario, subscribers: f64, mu: f64) -> f64 {
    subscribers * scenario.price - scenario.capacity_cost * mu * mu
}

/// Whether every user gets nonnegative utility from the provider they pick.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coverage {
    pub covered: bool,
    pub min_utility: f64,
}

/// Both served-utility pieces decrease toward the threshold, so the minimum
/// over `gamma` sits at `g = clamp(Gamma, 0, 1)` on whichever side is served.
pub fn market_coverage_check(scenario: &Scenario, delta_p1: f64, delta_p2: f64) -> Coverage {
    let g = covered_fraction(scenario, delta_p1, delta_p2);
    let l = scenario.quality_weight;
    let base = scenario.intrinsic_value - scenario.price;
    let u1_at_g = base + l * quality(delta_p1) - g;
    let u2_at_g = base + l * quality(delta_p2) - (1.0 - g);
    let min_utility = if g <= 0.0 {
        u2_at_g
    } else if g >= 1.0 {
        u1_at_g
    } else {
        u1_at_g.min(u2_at_g)
    };
    Coverage {
        covered: min_utility >= 0.0,
        min_utility,
    }
}

/// Market quantities for a pair of provider operating points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarketOutcome {
    pub gamma_threshold: f64,
    pub m1: f64,
    pub m2: f64,
    pub cs1: f64,
    pub cs2: f64,
    pub pi1: f64,
    pub pi2: f64,
    pub social_welfare: f64,
    #[serde(with = "crate::serde_ext")]
    pub delta_p1: f64,
    #[serde(with = "crate::serde_ext")]
    pub delta_p2: f64,
    pub coverage: Coverage,
}

impl MarketOutcome {
    /// Evaluates the market given each provider's peak AoI and capacity.
    pub fn evaluate(scenario: &Scenario, delta_p1: f64, mu1: f64, delta_p2: f64, mu2: f64) -> Self {
        let (m1, m2) = market_shares(scenario, delta_p1, delta_p2);
        let (cs1, cs2) = consumer_surplus(scenario, delta_p1, delta_p2);
        let pi1 = profit(scenario, m1, mu1);
        let pi2 = profit(scenario, m2, mu2);
        MarketOutcome {
            gamma_threshold: gamma_threshold(delta_p1, delta_p2, scenario.quality_weight),
            m1,
            m2,
            cs1,
            cs2,
            pi1,
            pi2,
            social_welfare: cs1 + cs2 + pi1 + pi2,
            delta_p1,
            delta_p2,
            coverage: market_coverage_check(scenario, delta_p1, delta_p2),
        }
    }
}
