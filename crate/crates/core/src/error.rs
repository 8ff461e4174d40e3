//! Error type shared by the analytic model, the optimizer and the
//! simulators. Payloads are `f64` regardless of the working scalar.

use thiserror::Error;

/// Failure modes of the model pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("PU activity rates must be positive: death rate {alpha}, birth rate {beta}")]
    NonPositiveRate { alpha: f64, beta: f64 },

    #[error("{name} = {value} is outside [0, 1]")]
    ProbabilityRange { name: &'static str, value: f64 },

    #[error("inverse tail probability argument {value} is outside (0, 1)")]
    QuantileDomain { value: f64 },

    #[error("{name} = {value} violates the bound {bound}: {detail}")]
    Constraint {
        name: &'static str,
        value: f64,
        bound: f64,
        detail: &'static str,
    },

    #[error("invalid parameter {name} = {value}: {detail}")]
    Parameter {
        name: &'static str,
        value: f64,
        detail: &'static str,
    },

    #[error("slot outcome probabilities sum to {sum}, not 1")]
    Normalization { sum: f64 },

    #[error("successful frame transmission is unreachable (success probability is zero)")]
    SftUnreachable,

    #[error("no feasible point on the optimization grid")]
    InfeasibleGrid,
}

pub type Result<T> = std::result::Result<T, ModelError>;
