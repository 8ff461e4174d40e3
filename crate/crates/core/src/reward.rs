//! Reward pipeline: assembles every intermediate quantity for one
//! `(r_s, tau_t)` operating point and evaluates the objective
//! `Lambda = (tau_t R / E{tau_sft}) * E{W} / E{E_sft}` in
//! (bit/s) * m / J.

use crate::energy::{slot_energies, EnergyComponents};
use crate::error::{ModelError, Result};
use crate::geometry::{hop_geometry, HopGeometry};
use crate::link::{
    efficiencies, frame_reliability, guardring_area, no_pu_arrival_prob, scenario_probs,
    expected_to_sft, FrameReliability, ScenarioProbabilities, SftExpectation,
};
use crate::real::{as_f64, Real};
use crate::scenario::{GammaMode, NetworkScenario};
use crate::spectrum::{design_sensing, max_transmission_time, SensingDesign};

/// Every intermediate of the reward pipeline at one operating point.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PointEvaluation<T> {
    pub r_s: T,
    pub tau_t: T,
    /// Collision-cap maximum transmission duration for this scenario.
    pub tau_max: T,
    pub sensing: SensingDesign<T>,
    pub hop: HopGeometry<T>,
    /// Guardring union area at the expected hop distance, m^2.
    pub s_area: T,
    pub p_no_arrival: T,
    pub frame: FrameReliability<T>,
    pub probs: ScenarioProbabilities<T>,
    pub energies: EnergyComponents<T>,
    pub sft: SftExpectation<T>,
    pub sensing_efficiency: T,
    pub sft_efficiency: T,
    /// Objective value, (bit/s) * m / J.
    pub reward: T,
}

/// Evaluate the full pipeline at `(r_s, tau_t)`.
///
/// Stages: collision cap -> admissible false alarm -> sensing duration
/// and threshold -> sensing probabilities -> hop geometry -> guardring
/// exposure -> arrival and reliability -> outcome probabilities ->
/// expected energy/time to SFT -> reward.
pub fn evaluate_point<T: Real>(
    scenario: &NetworkScenario<T>,
    r_s: T,
    tau_t: T,
) -> Result<PointEvaluation<T>> {
    scenario.validate()?;
    let cap = scenario.range_cap();
    if !(r_s > T::zero()) || r_s >= cap {
        return Err(ModelError::Constraint {
            name: "r_s",
            value: as_f64(r_s),
            bound: as_f64(cap),
            detail: "transmission range must lie strictly inside (0, min(r_p, field radius))",
        });
    }
    let tau_max = max_transmission_time(scenario.p_col, &scenario.activity)?;
    if !(tau_t > T::zero()) || tau_t >= tau_max {
        return Err(ModelError::Constraint {
            name: "tau_t",
            value: as_f64(tau_t),
            bound: as_f64(tau_max),
            detail: "transmission duration must lie strictly inside (0, tau_max)",
        });
    }

    let bandwidth = scenario.hardware.bandwidth;
    let sensing = design_sensing(
        scenario.p_col,
        tau_t,
        bandwidth,
        &scenario.noise,
        &scenario.activity,
    )?;

    let hop = hop_geometry(r_s, &scenario.field)?;
    let (s_area, _) = guardring_area(hop.expected_distance, scenario.r_p)?;
    let p_np = no_pu_arrival_prob(scenario.rho_p, s_area, tau_t, scenario.activity.beta())?;

    let snr = match scenario.gamma_mode {
        GammaMode::Reference => scenario.hardware.gamma_0,
        GammaMode::RangeScaled => {
            scenario.hardware.gamma_0 * (r_s / hop.expected_distance).powf(scenario.hardware.kappa)
        }
    };
    let frame = frame_reliability(snr, scenario.k_mod, bandwidth, tau_t)?;

    let probs = scenario_probs(
        &sensing,
        &scenario.activity,
        p_np,
        frame.reliability,
        s_area,
    )?;
    let energies = slot_energies(&scenario.hardware, sensing.tau_s, tau_t, r_s);
    let sft = expected_to_sft(&probs, &energies, sensing.tau_s, tau_t)?;

    let (theta, omega) = efficiencies(sensing.tau_s, tau_t, sft.expected_time);
    let reward = tau_t * frame.rate / sft.expected_time * hop.expected_progress
        / sft.expected_energy;

    Ok(PointEvaluation {
        r_s,
        tau_t,
        tau_max,
        sensing,
        hop,
        s_area,
        p_no_arrival: p_np,
        frame,
        probs,
        energies,
        sft,
        sensing_efficiency: theta,
        sft_efficiency: omega,
        reward,
    })
}

/// Objective value only.
pub fn reward<T: Real>(scenario: &NetworkScenario<T>, r_s: T, tau_t: T) -> Result<T> {
    Ok(evaluate_point(scenario, r_s, tau_t)?.reward)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc() -> NetworkScenario<f64> {
        NetworkScenario::baseline()
    }

    #[test]
    fn reference_point_magnitude() {
        // Published reproduction anchor: the reward near (40 m, 0.1 ms)
        // sits within a factor of two of 6.8e7 (bit/s) m / J.
        let lambda = reward(&sc(), 40.0, 1e-4).unwrap();
        assert!(lambda > 3.4e7 && lambda < 1.36e8, "lambda = {lambda:e}");
    }

    #[test]
    fn reference_point_regression() {
        // Frozen output of this pipeline at the anchor point.
        let p = evaluate_point(&sc(), 40.0, 1e-4).unwrap();
        assert!((p.reward - 1.05044e8).abs() / p.reward < 1e-3, "{}", p.reward);
        assert!((p.sensing.tau_s - 4.4215e-4).abs() / p.sensing.tau_s < 1e-3);
        assert!((p.p_no_arrival - 0.95841).abs() < 1e-4);
        assert!(p.probs.p_c > 0.44 && p.probs.p_c < 0.45);
    }

    #[test]
    fn reward_finite_and_positive_on_domain() {
        let s = sc();
        for &r in &[1.0, 20.0, 80.0, 150.0, 199.0] {
            for &t in &[1e-5, 1e-4, 1e-3, 1e-2] {
                let l = reward(&s, r, t).unwrap();
                assert!(l.is_finite() && l > 0.0, "r={r} t={t}");
            }
        }
    }

    #[test]
    fn reward_vanishes_toward_the_collision_cap() {
        let s = sc();
        let tau_max = max_transmission_time(s.p_col, &s.activity).unwrap();
        let mid = reward(&s, 40.0, 1e-4).unwrap();
        let edge = reward(&s, 40.0, 0.999 * tau_max).unwrap();
        assert!(
            edge < 1e-3 * mid,
            "sensing cost should crush the reward near tau_max: {edge:e} vs {mid:e}"
        );
    }

    #[test]
    fn constraint_violations_are_named() {
        let s = sc();
        let err = reward(&s, 250.0, 1e-4).unwrap_err();
        assert!(matches!(err, ModelError::Constraint { name: "r_s", .. }));
        let err = reward(&s, 40.0, 1.0).unwrap_err();
        assert!(matches!(err, ModelError::Constraint { name: "tau_t", .. }));
    }

    #[test]
    fn doubling_sensing_power_lowers_reward() {
        let mut s = sc();
        let base = reward(&s, 40.0, 1e-4).unwrap();
        s.hardware.p_s *= 2.0;
        let heavier = reward(&s, 40.0, 1e-4).unwrap();
        assert!(heavier < base);
    }

    #[test]
    fn pipeline_balance_across_settings() {
        // After the collision-cap -> sensing-duration -> threshold round
        // trip, false alarm and mis-detection agree to 1e-6 relative.
        for &(al, be) in &[(3.0, 3.0), (10.0, 30.0), (30.0, 10.0)] {
            for &pc in &[0.01, 0.04, 0.07] {
                for &tt in &[1e-4, 5e-4, 1e-3] {
                    let mut s = sc();
                    s.activity = crate::spectrum::PuActivity::new(al, be).unwrap();
                    s.p_col = pc;
                    if s.validate().is_err() {
                        continue;
                    }
                    let tau_max = max_transmission_time(s.p_col, &s.activity).unwrap();
                    if tt >= 0.99 * tau_max {
                        continue;
                    }
                    let p = evaluate_point(&s, 50.0, tt).unwrap();
                    let gap = (p.sensing.p_fa - p.sensing.p_md).abs();
                    assert!(gap < 1e-6 * p.sensing.p_fa, "({al},{be},{pc},{tt}): {gap:e}");
                }
            }
        }
    }

    #[test]
    fn range_scaled_snr_not_below_reference() {
        let mut s = sc();
        s.gamma_mode = GammaMode::RangeScaled;
        let p = evaluate_point(&s, 40.0, 1e-4).unwrap();
        // Expected hop distance is below the range, so the delivered SNR
        // exceeds the reference value.
        assert!(p.frame.snr >= s.hardware.gamma_0);
    }
}
