//! Event-level Monte Carlo oracles for the analytic model.
//!
//! The simulators draw outcomes only from primitives (channel state,
//! conditional sensing errors, Poisson interferer counts, per-bit
//! errors, node placement) and never from the composed closed forms
//! they are used to validate.
//!
//! Reproducibility: every trial gets its own counter-derived substream
//! (`ChaCha8`, stream = trial index, keyed by the seed), and partial
//! results are reduced in fixed chunk order, so outputs are identical
//! for any worker count.

mod area;
mod forwarding;
mod link_trials;

pub use area::estimate_guardring_area;
pub use forwarding::{simulate_hop_progress, HopSimOutcome};
pub use link_trials::{counts_within_three_sigma, simulate_link_trials, LinkTrialOutcome};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Trials per parallel work item for heavyweight trials.
pub(crate) const TRIAL_CHUNK: u64 = 8_192;

/// Point estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SimulationEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl SimulationEstimate {
    /// Estimate from accumulated first and second moments.
    pub(crate) fn from_moments(sum: f64, sum_sq: f64, n: u64, seed: u64) -> Self {
        let nf = n as f64;
        let mean = if n > 0 { sum / nf } else { f64::NAN };
        let var = if n > 1 {
            ((sum_sq - sum * sum / nf) / (nf - 1.0)).max(0.0)
        } else {
            0.0
        };
        SimulationEstimate {
            mean,
            std_error: (var / nf.max(1.0)).sqrt(),
            n_samples: n,
            seed,
        }
    }

    /// Estimate of a proportion from a hit count.
    pub(crate) fn from_proportion(hits: u64, n: u64, seed: u64) -> Self {
        let p = hits as f64 / n as f64;
        SimulationEstimate {
            mean: p,
            std_error: (p * (1.0 - p) / n as f64).sqrt(),
            n_samples: n,
            seed,
        }
    }
}

/// Substream for one trial: keyed by the seed, positioned by index.
#[inline]
pub(crate) fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Chunk starts covering `0..n`.
pub(crate) fn chunk_starts(n: u64, chunk: u64) -> Vec<u64> {
    (0..n).step_by(chunk as usize).collect()
}
