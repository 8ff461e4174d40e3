//! Hit-or-miss estimate of the guardring union area.

use rand::Rng;
use rayon::prelude::*;

use super::{chunk_starts, trial_rng, SimulationEstimate};
use crate::error::{ModelError, Result};

/// Samples per substream; hit-or-miss samples are cheap, so streams are
/// allocated per chunk rather than per sample.
const SAMPLE_CHUNK: u64 = 65_536;

/// Unbiased area estimate of the union of two disks of radius `r_p`
/// centered `z` apart, by uniform sampling over the bounding rectangle.
pub fn estimate_guardring_area(
    z: f64,
    r_p: f64,
    n_samples: u64,
    seed: u64,
) -> Result<SimulationEstimate> {
    if !(r_p > 0.0) || z < 0.0 {
        return Err(ModelError::Parameter {
            name: "z/r_p",
            value: z,
            detail: "need z >= 0 and r_p > 0",
        });
    }
    if n_samples == 0 {
        return Err(ModelError::Parameter {
            name: "n_samples",
            value: 0.0,
            detail: "at least one sample is required",
        });
    }
    // Disk centers at (0,0) and (z,0).
    let x_lo = -r_p;
    let x_span = z + 2.0 * r_p;
    let y_span = 2.0 * r_p;
    let rect = x_span * y_span;
    let r2 = r_p * r_p;

    let hits: u64 = chunk_starts(n_samples, SAMPLE_CHUNK)
        .par_iter()
        .map(|&start| {
            let end = (start + SAMPLE_CHUNK).min(n_samples);
            let mut rng = trial_rng(seed, start / SAMPLE_CHUNK);
            let mut hits = 0u64;
            for _ in start..end {
                let x = x_lo + x_span * rng.random::<f64>();
                let y = -r_p + y_span * rng.random::<f64>();
                let dx = x - z;
                if x * x + y * y <= r2 || dx * dx + y * y <= r2 {
                    hits += 1;
                }
            }
            hits
        })
        .sum();

    let p = hits as f64 / n_samples as f64;
    Ok(SimulationEstimate {
        mean: rect * p,
        std_error: rect * (p * (1.0 - p) / n_samples as f64).sqrt(),
        n_samples,
        seed,
    })
}
