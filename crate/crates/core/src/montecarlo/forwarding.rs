//! Greedy-forwarding geometry simulator.
//!
//! Per trial: the sink sits at the origin, the source falls uniformly
//! on the disk of the field radius, and its neighbors are a Poisson
//! number of uniform points in the range disk. The least-remaining-
//! distance rule picks the in-range neighbor closest to the sink among
//! those strictly reducing the distance. Trials whose forwarding region
//! is empty are counted separately instead of being folded into the
//! averages.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;

use super::{chunk_starts, trial_rng, SimulationEstimate, TRIAL_CHUNK};
use crate::error::{ModelError, Result};
use crate::geometry::FieldGeometry;

/// Simulated hop statistics.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct HopSimOutcome {
    /// Hop progress toward the sink, m (direct and relayed hops).
    pub progress: SimulationEstimate,
    /// Transmitter-receiver distance, m (relayed hops only).
    pub distance: SimulationEstimate,
    /// Trials where the sink itself was in range.
    pub direct_hops: u64,
    /// Trials with no neighbor closer to the sink; excluded from the
    /// averages and reported so the dense-deployment assumption can be
    /// audited.
    pub empty_region_trials: u64,
    pub n_trials: u64,
}

#[derive(Default, Clone, Copy)]
struct Partial {
    w_sum: f64,
    w_sq: f64,
    w_n: u64,
    z_sum: f64,
    z_sq: f64,
    z_n: u64,
    direct: u64,
    empty: u64,
}

/// Simulate `n_trials` single hops at transmission range `r_s`.
pub fn simulate_hop_progress(
    field: &FieldGeometry<f64>,
    r_s: f64,
    n_trials: u64,
    seed: u64,
) -> Result<HopSimOutcome> {
    FieldGeometry::new(field.radius, field.rho_s)?;
    if !(r_s > 0.0) || r_s > field.radius {
        return Err(ModelError::Constraint {
            name: "r_s",
            value: r_s,
            bound: field.radius,
            detail: "transmission range must lie in (0, field radius]",
        });
    }
    if n_trials == 0 {
        return Err(ModelError::Parameter {
            name: "n_trials",
            value: 0.0,
            detail: "at least one trial is required",
        });
    }

    let mean_neighbors = field.rho_s * std::f64::consts::PI * r_s * r_s;
    let poisson = Poisson::new(mean_neighbors).map_err(|_| ModelError::Parameter {
        name: "rho_s * pi * r_s^2",
        value: mean_neighbors,
        detail: "invalid Poisson mean",
    })?;
    let two_pi = 2.0 * std::f64::consts::PI;

    let partials: Vec<Partial> = chunk_starts(n_trials, TRIAL_CHUNK)
        .par_iter()
        .map(|&start| {
            let end = (start + TRIAL_CHUNK).min(n_trials);
            let mut acc = Partial::default();
            for trial in start..end {
                let mut rng = trial_rng(seed, trial);
                let x = field.radius * rng.random::<f64>().sqrt();
                if x <= r_s {
                    acc.w_sum += x;
                    acc.w_sq += x * x;
                    acc.w_n += 1;
                    acc.direct += 1;
                    continue;
                }
                let neighbors = poisson.sample(&mut rng) as u64;
                // Source at (x, 0); track the neighbor closest to the sink.
                let mut best: Option<(f64, f64)> = None; // (dist to sink, dist to source)
                for _ in 0..neighbors {
                    let radius = r_s * rng.random::<f64>().sqrt();
                    let angle = two_pi * rng.random::<f64>();
                    let px = x + radius * angle.cos();
                    let py = radius * angle.sin();
                    let to_sink = (px * px + py * py).sqrt();
                    if to_sink < x && best.map_or(true, |(b, _)| to_sink < b) {
                        best = Some((to_sink, radius));
                    }
                }
                match best {
                    Some((to_sink, hop_dist)) => {
                        let w = x - to_sink;
                        acc.w_sum += w;
                        acc.w_sq += w * w;
                        acc.w_n += 1;
                        acc.z_sum += hop_dist;
                        acc.z_sq += hop_dist * hop_dist;
                        acc.z_n += 1;
                    }
                    None => acc.empty += 1,
                }
            }
            acc
        })
        .collect();

    let mut t = Partial::default();
    for p in partials {
        t.w_sum += p.w_sum;
        t.w_sq += p.w_sq;
        t.w_n += p.w_n;
        t.z_sum += p.z_sum;
        t.z_sq += p.z_sq;
        t.z_n += p.z_n;
        t.direct += p.direct;
        t.empty += p.empty;
    }

    Ok(HopSimOutcome {
        progress: SimulationEstimate::from_moments(t.w_sum, t.w_sq, t.w_n, seed),
        distance: SimulationEstimate::from_moments(t.z_sum, t.z_sq, t.z_n, seed),
        direct_hops: t.direct,
        empty_region_trials: t.empty,
        n_trials,
    })
}
