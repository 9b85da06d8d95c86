//! Age of Information and delay metrics of an M/M/1-FCFS status-update queue,
//! plus the eMBB and URLLC dimensioning rules that bound the arrival rate a
//! given capacity can carry.
//!
//! Rates are dimensionless model units. Outside the stable region the
//! `*_extended` variants return `+inf` instead of an error so that they can be
//! used directly as objectives over closed intervals.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};

/// Arrival rate `lambda` and service capacity `mu` of one provider's network.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QueueOperatingPoint {
    lambda: f64,
    mu: f64,
}

impl QueueOperatingPoint {
    /// Requires `0 < lambda < mu`, both finite.
    pub fn new(lambda: f64, mu: f64) -> Result<Self> {
        let ok = lambda.is_finite() && mu.is_finite() && lambda > 0.0 && mu > 0.0 && lambda < mu;
        if !ok {
            return Err(ModelError::InfeasibleOperatingPoint { lambda, mu });
        }
        Ok(Self { lambda, mu })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Utilization `lambda / mu`, in `(0, 1)`.
    pub fn rho(&self) -> f64 {
        self.lambda / self.mu
    }
}

/// Time-average age `(1/mu)(1 + 1/rho + rho^2/(1 - rho))`.
pub fn average_aoi(q: &QueueOperatingPoint) -> f64 {
    let rho = q.rho();
    (1.0 + 1.0 / rho + rho * rho / (1.0 - rho)) / q.mu
}

/// Expected age just before each delivery, `(1/mu)(1 + 1/rho + rho/(1 - rho))`.
///
/// For fixed `mu` this is minimized at `rho = 1/2`, where it equals `4/mu`.
pub fn peak_aoi(q: &QueueOperatingPoint) -> f64 {
    let rho = q.rho();
    (1.0 + 1.0 / rho + rho / (1.0 - rho)) / q.mu
}

/// [`average_aoi`] extended to `+inf` outside `0 < lambda < mu`.
pub fn average_aoi_extended(lambda: f64, mu: f64) -> f64 {
    QueueOperatingPoint::new(lambda, mu)
        .map(|q| average_aoi(&q))
        .unwrap_or(f64::INFINITY)
}

/// [`peak_aoi`] extended to `+inf` outside `0 < lambda < mu`.
pub fn peak_aoi_extended(lambda: f64, mu: f64) -> f64 {
    QueueOperatingPoint::new(lambda, mu)
        .map(|q| peak_aoi(&q))
        .unwrap_or(f64::INFINITY)
}

/// Probability that an update's system time exceeds `epsilon`, `e^{-epsilon (mu - lambda)}`.
pub fn delay_tail_probability(q: &QueueOperatingPoint, epsilon: f64) -> Result<f64> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(ModelError::InvalidParameter {
            name: "epsilon",
            value: epsilon,
            reason: "must be positive and finite",
        });
    }
    Ok((-epsilon * (q.mu - q.lambda)).exp())
}

/// Mean system time `1/(mu - lambda)`.
pub fn mean_system_time(q: &QueueOperatingPoint) -> f64 {
    1.0 / (q.mu - q.lambda)
}

/// Dimensioning rule tying a provider's arrival rate to its capacity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum ServiceClass {
    /// Mean delay at most `alpha` times the unloaded delay `1/mu`.
    Embb { alpha: f64 },
    /// `Prob{t > epsilon} <= delta`.
    Urllc { epsilon: f64, delta: f64 },
}

impl ServiceClass {
    pub fn embb(alpha: f64) -> Result<Self> {
        let c = ServiceClass::Embb { alpha };
        c.validate()?;
        Ok(c)
    }

    pub fn urllc(epsilon: f64, delta: f64) -> Result<Self> {
        let c = ServiceClass::Urllc { epsilon, delta };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ServiceClass::Embb { alpha } => {
                if !(alpha.is_finite() && alpha > 1.0) {
                    return Err(ModelError::InvalidParameter {
                        name: "alpha",
                        value: alpha,
                        reason: "must be finite and > 1",
                    });
                }
            }
            ServiceClass::Urllc { epsilon, delta } => {
                if !(epsilon.is_finite() && epsilon > 0.0) {
                    return Err(ModelError::InvalidParameter {
                        name: "epsilon",
                        value: epsilon,
                        reason: "must be finite and > 0",
                    });
                }
                if !(delta > 0.0 && delta < 1.0) {
                    return Err(ModelError::InvalidParameter {
                        name: "delta",
                        value: delta,
                        reason: "must lie in (0, 1)",
                    });
                }
            }
        }
        Ok(())
    }

    /// Largest arrival rate the constraint admits at capacity `mu`.
    ///
    /// May be `<= 0` for URLLC, meaning `mu` cannot carry any traffic.
    pub fn max_feasible_lambda(&self, mu: f64) -> f64 {
        match *self {
            ServiceClass::Embb { alpha } => (1.0 - 1.0 / alpha) * mu,
            ServiceClass::Urllc { epsilon, delta } => mu - (1.0 / delta).ln() / epsilon,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ServiceClass::Embb { .. } => "eMBB",
            ServiceClass::Urllc { .. } => "URLLC",
        }
    }

    /// Human-readable statement of the constraint, used in error messages.
    pub fn describe(&self) -> String {
        match *self {
            ServiceClass::Embb { alpha } => format!(
                "the eMBB mean-delay constraint lambda <= (1 - 1/alpha) mu with alpha={alpha}"
            ),
            ServiceClass::Urllc { epsilon, delta } => format!(
                "the URLLC delay-tail constraint lambda + ln(1/delta)/epsilon <= mu with epsilon={epsilon}, delta={delta}"
            ),
        }
    }
}
