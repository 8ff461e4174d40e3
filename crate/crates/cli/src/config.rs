//! Declarative JSON configuration.
//!
//! Every key is optional; missing keys take the baseline defaults
//! below. Unknown keys are rejected. Units: rates in 1/s, durations in
//! s, powers in W, lengths in m, densities in nodes/m^2, bandwidth in
//! Hz. The reference SNR is accepted only as `gamma0_db` (decibels) and
//! the PU-signal variance ratio only as `gamma_p_linear`, so the
//! dB-vs-linear ambiguity cannot arise; all internal math is linear.

use serde::{Deserialize, Serialize};

use crsn_core::energy::RadioHardware;
use crsn_core::geometry::FieldGeometry;
use crsn_core::scenario::{GammaMode, NetworkScenario};
use crsn_core::spectrum::{NoiseModel, PuActivity};
use crsn_core::Scenario64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConfigFile {
    /// PU death rate (busy -> idle), 1/s.
    pub alpha: f64,
    /// PU birth rate (idle -> busy), 1/s.
    pub beta: f64,
    /// PU guardring radius, m.
    pub r_p: f64,
    /// Path loss exponent.
    pub kappa: f64,
    /// Reference receiver SNR, dB.
    pub gamma0_db: f64,
    /// PU signal variance over noise variance (linear).
    pub gamma_p_linear: f64,
    /// Noise variance at the detector (normalized units).
    pub sigma_n2: f64,
    /// Receiver noise figure (linear).
    pub noise_figure: f64,
    /// Thermal noise density, W/Hz.
    pub thermal_noise: f64,
    /// Channel bandwidth, Hz.
    pub bandwidth: f64,
    /// Carrier wavelength, m.
    pub wavelength: f64,
    /// Transmit amplifier efficiency, (0, 1].
    pub amplifier_efficiency: f64,
    /// Antenna gain (linear).
    pub antenna_gain: f64,
    /// Transmitter circuit power, W.
    pub p_elec: f64,
    /// Spectrum sensing power, W.
    pub p_s: f64,
    /// Receiver power, W.
    pub p_rx: f64,
    /// Deployment field radius, m.
    pub field_radius: f64,
    /// SU density, nodes/m^2.
    pub rho_s: f64,
    /// PU density, nodes/m^2.
    pub rho_p: f64,
    /// Maximum tolerable SU-PU collision probability.
    pub p_col: f64,
    /// Modulation constant of the bit-error law (1 = BPSK).
    pub k_mod: f64,
    /// Receiver SNR convention: "reference" or "range_scaled".
    pub gamma_mode: GammaMode,
}

impl Default for ConfigFile {
    fn default() -> Self {
        ConfigFile {
            alpha: 3.0,
            beta: 3.0,
            r_p: 200.0,
            kappa: 2.5,
            gamma0_db: 20.0,
            gamma_p_linear: 10.0,
            sigma_n2: 1.0,
            noise_figure: 12.589,
            thermal_noise: 4.17e-21,
            bandwidth: 1.0e4,
            wavelength: 0.125,
            amplifier_efficiency: 0.2,
            antenna_gain: 0.01,
            p_elec: 3.63e-3,
            p_s: 0.7,
            p_rx: 11.13e-3,
            field_radius: 1000.0,
            rho_s: 0.01,
            rho_p: 0.001,
            p_col: 0.04,
            k_mod: 1.0,
            gamma_mode: GammaMode::Reference,
        }
    }
}

impl ConfigFile {
    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("config: {e}"))
    }

    pub fn to_pretty_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Build and validate the scenario; dB converts to linear here.
    pub fn to_scenario(&self) -> Result<Scenario64, String> {
        let scenario = NetworkScenario {
            activity: PuActivity::new(self.alpha, self.beta).map_err(|e| e.to_string())?,
            noise: NoiseModel::new(self.sigma_n2, self.gamma_p_linear)
                .map_err(|e| e.to_string())?,
            hardware: RadioHardware {
                gamma_0: 10f64.powf(self.gamma0_db / 10.0),
                n_rx: self.noise_figure,
                n_0: self.thermal_noise,
                bandwidth: self.bandwidth,
                wavelength: self.wavelength,
                eta_amp: self.amplifier_efficiency,
                g_a: self.antenna_gain,
                p_elec: self.p_elec,
                p_rx: self.p_rx,
                p_s: self.p_s,
                kappa: self.kappa,
            },
            field: FieldGeometry {
                radius: self.field_radius,
                rho_s: self.rho_s,
            },
            rho_p: self.rho_p,
            r_p: self.r_p,
            p_col: self.p_col,
            k_mod: self.k_mod,
            gamma_mode: self.gamma_mode,
        };
        scenario.validate().map_err(|e| e.to_string())?;
        Ok(scenario)
    }
}
