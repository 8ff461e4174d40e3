//! Energy-efficiency model of a cognitive radio sensor network.
//!
//! Secondary users sense a licensed channel, transmit opportunistically
//! when both ends of a hop agree the channel is idle, and retry until a
//! frame goes through. This crate provides:
//!
//! - the channel occupancy and sensing-error model, with the
//!   collision-cap coupling between transmission duration and required
//!   sensing time ([`spectrum`]);
//! - per-slot energy components ([`energy`]);
//! - the ten per-slot outcome probabilities and the expected energy and
//!   time until a successful frame transmission ([`link`]);
//! - greedy-forwarding hop geometry ([`geometry`]);
//! - the reward `(goodput x hop progress) / energy` and its
//!   maximization over transmission range and duration, including the
//!   sensitivity table and the path-loss/activity sweep ([`reward`],
//!   [`optimizer`]);
//! - independent event-level Monte Carlo oracles for all of the above
//!   ([`montecarlo`]).
//!
//! Analytic modules are generic over the scalar type ([`real::Real`]);
//! the simulators and the aliases below fix `f64`.

pub mod energy;
pub mod erf;
pub mod error;
pub mod geometry;
pub mod link;
pub mod montecarlo;
pub mod optimizer;
pub mod real;
pub mod reward;
pub mod scenario;
pub mod spectrum;

pub use error::{ModelError, Result};
pub use real::Real;

/// `f64` scenario, as used by the simulators and the CLI.
pub type Scenario64 = scenario::NetworkScenario<f64>;
/// `f32` scenario for reduced-precision studies.
pub type Scenario32 = scenario::NetworkScenario<f32>;
/// `f64` point evaluation.
pub type PointEvaluation64 = reward::PointEvaluation<f64>;
/// `f64` optimization result.
pub type OptimizationResult64 = optimizer::OptimizationResult<f64>;
