//! Slotted link-trial simulator for one transmitter/receiver pair.
//!
//! Each slot draws the channel state, two conditional sensing outcomes,
//! and, when both nodes access an idle channel, a Poisson number of
//! potential interferers (each silent for the transmission with the
//! holding-time probability) plus independent per-bit errors. The
//! episode repeats slots until the successful frame transmission.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;

use super::{chunk_starts, trial_rng, SimulationEstimate, TRIAL_CHUNK};
use crate::energy::slot_energies;
use crate::error::{ModelError, Result};
use crate::link::guardring_area;
use crate::scenario::{GammaMode, NetworkScenario};
use crate::spectrum::SensingDesign;

/// Episodes longer than this abort the run: success is unreachable in
/// practice.
const MAX_SLOTS_PER_EPISODE: u64 = 10_000_000;

/// Aggregated simulation output.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct LinkTrialOutcome {
    /// Slot counts per outcome index (see the link module table).
    pub scenario_counts: [u64; 10],
    pub total_slots: u64,
    pub episodes: u64,
    /// Per-slot probability of the SFT outcome.
    pub p_success: SimulationEstimate,
    /// Pair energy until SFT, J.
    pub sft_energy: SimulationEstimate,
    /// Elapsed time until SFT, s.
    pub sft_time: SimulationEstimate,
    /// Slots until SFT.
    pub sft_trials: SimulationEstimate,
}

#[derive(Default, Clone, Copy)]
struct Partial {
    counts: [u64; 10],
    slots: u64,
    energy_sum: f64,
    energy_sq: f64,
    time_sum: f64,
    time_sq: f64,
    trials_sum: f64,
    trials_sq: f64,
    overflow: bool,
}

/// Run `n_episodes` independent episodes between a pair `z` apart with
/// common transmission range `r_s`, under the given sensing design.
pub fn simulate_link_trials(
    scenario: &NetworkScenario<f64>,
    r_s: f64,
    z: f64,
    sensing: &SensingDesign<f64>,
    n_episodes: u64,
    seed: u64,
) -> Result<LinkTrialOutcome> {
    scenario.validate()?;
    if n_episodes == 0 {
        return Err(ModelError::Parameter {
            name: "n_episodes",
            value: 0.0,
            detail: "at least one episode is required",
        });
    }

    let p_idle = scenario.activity.p_idle();
    let p_busy = scenario.activity.p_busy();
    // Conditional per-node sensing error probabilities.
    let cond_fa = sensing.p_fa / p_idle;
    let cond_md = sensing.p_md / p_busy;

    let (s_area, _) = guardring_area(z, scenario.r_p)?;
    let mean_interferers = scenario.rho_p * s_area;
    let p_silent = (-sensing.tau_t * scenario.activity.beta()).exp();

    let snr = match scenario.gamma_mode {
        GammaMode::Reference => scenario.hardware.gamma_0,
        GammaMode::RangeScaled => {
            scenario.hardware.gamma_0 * (r_s / z).powf(scenario.hardware.kappa)
        }
    };
    let ber = 0.5 * crate::erf::erfc((scenario.k_mod * snr).sqrt());
    let rate = scenario.hardware.bandwidth * (1.0 + snr).log2();
    let frame_bits = (sensing.tau_t * rate).floor() as u64;

    let energies = slot_energies(&scenario.hardware, sensing.tau_s, sensing.tau_t, r_s);
    let energy_idle = 2.0 * energies.e_s;
    let energy_tx = 2.0 * energies.e_s + energies.e_t + energies.e_r;
    let tau_s = sensing.tau_s;
    let tau_f = sensing.tau_s + sensing.tau_t;

    let poisson = if mean_interferers > 0.0 {
        Some(Poisson::new(mean_interferers).map_err(|_| ModelError::Parameter {
            name: "rho_p * s_area",
            value: mean_interferers,
            detail: "invalid Poisson mean",
        })?)
    } else {
        None
    };

    let partials: Vec<Partial> = chunk_starts(n_episodes, TRIAL_CHUNK)
        .par_iter()
        .map(|&start| {
            let end = (start + TRIAL_CHUNK).min(n_episodes);
            let mut acc = Partial::default();
            for episode in start..end {
                let mut rng = trial_rng(seed, episode);
                let mut energy = 0.0;
                let mut time = 0.0;
                let mut slots = 0u64;
                loop {
                    slots += 1;
                    if slots > MAX_SLOTS_PER_EPISODE {
                        acc.overflow = true;
                        break;
                    }
                    let idle = rng.random::<f64>() < p_idle;
                    let outcome = if idle {
                        let tx_fa = rng.random::<f64>() < cond_fa;
                        let rx_fa = rng.random::<f64>() < cond_fa;
                        match (tx_fa, rx_fa) {
                            (true, true) => 0,
                            (true, false) => 1,
                            (false, true) => 2,
                            (false, false) => {
                                let interferers = match &poisson {
                                    Some(p) => p.sample(&mut rng) as u64,
                                    None => 0,
                                };
                                let mut arrival = false;
                                for _ in 0..interferers {
                                    if rng.random::<f64>() >= p_silent {
                                        arrival = true;
                                        // Remaining draws are not needed;
                                        // one arrival already dooms the slot.
                                        break;
                                    }
                                }
                                if arrival {
                                    3
                                } else {
                                    let mut bit_error = false;
                                    if ber > 0.0 {
                                        for _ in 0..frame_bits {
                                            if rng.random::<f64>() < ber {
                                                bit_error = true;
                                                break;
                                            }
                                        }
                                    }
                                    if bit_error {
                                        4
                                    } else {
                                        5
                                    }
                                }
                            }
                        }
                    } else {
                        let tx_md = rng.random::<f64>() < cond_md;
                        let rx_md = rng.random::<f64>() < cond_md;
                        match (tx_md, rx_md) {
                            (false, false) => 6,
                            (false, true) => 7,
                            (true, false) => 8,
                            (true, true) => 9,
                        }
                    };

                    acc.counts[outcome] += 1;
                    let transmitted = matches!(outcome, 3 | 4 | 5 | 9);
                    energy += if transmitted { energy_tx } else { energy_idle };
                    time += if transmitted { tau_f } else { tau_s };
                    if outcome == 5 {
                        break;
                    }
                }
                acc.slots += slots.min(MAX_SLOTS_PER_EPISODE);
                acc.energy_sum += energy;
                acc.energy_sq += energy * energy;
                acc.time_sum += time;
                acc.time_sq += time * time;
                let t = slots as f64;
                acc.trials_sum += t;
                acc.trials_sq += t * t;
            }
            acc
        })
        .collect();

    // Fixed-order reduction.
    let mut total = Partial::default();
    for p in partials {
        for i in 0..10 {
            total.counts[i] += p.counts[i];
        }
        total.slots += p.slots;
        total.energy_sum += p.energy_sum;
        total.energy_sq += p.energy_sq;
        total.time_sum += p.time_sum;
        total.time_sq += p.time_sq;
        total.trials_sum += p.trials_sum;
        total.trials_sq += p.trials_sq;
        total.overflow |= p.overflow;
    }
    if total.overflow {
        return Err(ModelError::SftUnreachable);
    }

    Ok(LinkTrialOutcome {
        scenario_counts: total.counts,
        total_slots: total.slots,
        episodes: n_episodes,
        p_success: SimulationEstimate::from_proportion(total.counts[5], total.slots, seed),
        sft_energy: SimulationEstimate::from_moments(
            total.energy_sum,
            total.energy_sq,
            n_episodes,
            seed,
        ),
        sft_time: SimulationEstimate::from_moments(total.time_sum, total.time_sq, n_episodes, seed),
        sft_trials: SimulationEstimate::from_moments(
            total.trials_sum,
            total.trials_sq,
            n_episodes,
            seed,
        ),
    })
}

/// Convenience check used by validation: `|observed - expected| <= 3 SE`
/// per outcome, with expected counts from the given probabilities.
pub fn counts_within_three_sigma(counts: &[u64; 10], total_slots: u64, probs: &[f64; 10]) -> bool {
    let n = total_slots as f64;
    for i in 0..10 {
        let expect = n * probs[i];
        let se = (n * probs[i] * (1.0 - probs[i])).sqrt();
        if ((counts[i] as f64) - expect).abs() > 3.0 * se + 1e-9 {
            return false;
        }
    }
    true
}
