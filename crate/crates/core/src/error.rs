use thiserror::Error;

/// Errors raised when model inputs violate their domain.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("infeasible operating point lambda={lambda}, mu={mu}: need 0 < lambda < mu")]
    InfeasibleOperatingPoint { lambda: f64, mu: f64 },

    #[error("invalid value for `{name}`: {value} ({reason})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{sp} strategy (mu={mu}, lambda={lambda}) violates {constraint}")]
    ConstraintViolated {
        sp: &'static str,
        mu: f64,
        lambda: f64,
        constraint: String,
    },

    #[error("unknown scenario parameter `{0}` (expected one of M, nu, l, p, c, alpha, epsilon, delta)")]
    UnknownParameter(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}

pub type Result<T, E = ModelError> = std::result::Result<T, E>;
