//! Full network scenario: every parameter the reward pipeline needs.

use crate::energy::RadioHardware;
use crate::error::{ModelError, Result};
use crate::geometry::FieldGeometry;
use crate::real::{as_f64, lit, Real};
use crate::spectrum::{NoiseModel, PuActivity};

/// How the receiver SNR entering rate and bit error rate is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaMode {
    /// The transmit power law delivers exactly the reference SNR at the
    /// design range, so the receiver sees `gamma_0`.
    #[default]
    Reference,
    /// Receiver at the expected hop distance sees the power budgeted
    /// for the full range: `gamma_0 (r_s / z)^kappa`.
    RangeScaled,
}

/// All parameters of one deployment under study.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct NetworkScenario<T> {
    pub activity: PuActivity<T>,
    pub noise: NoiseModel<T>,
    pub hardware: RadioHardware<T>,
    pub field: FieldGeometry<T>,
    /// Primary user density, nodes/m^2.
    pub rho_p: T,
    /// Guardring radius around each primary user, m.
    pub r_p: T,
    /// Maximum tolerable SU-PU collision probability.
    pub p_col: T,
    /// Modulation constant in the bit-error law (1 for BPSK).
    pub k_mod: T,
    /// Receiver SNR convention.
    pub gamma_mode: GammaMode,
}

impl<T: Real> NetworkScenario<T> {
    /// Baseline parameter set used throughout the documentation and the
    /// reproduction studies: symmetric PU activity at 3/s, 10 kHz
    /// channel, 20 dB reference SNR (stored linear), 700 mW sensing
    /// power, 200 m guardring, 1 km field.
    pub fn baseline() -> Self {
        NetworkScenario {
            activity: PuActivity::new(lit(3.0), lit(3.0)).unwrap(),
            noise: NoiseModel::new(lit(1.0), lit(10.0)).unwrap(),
            hardware: RadioHardware {
                gamma_0: lit(100.0),
                n_rx: lit(12.589),
                n_0: lit(4.17e-21),
                bandwidth: lit(1.0e4),
                wavelength: lit(0.125),
                eta_amp: lit(0.2),
                g_a: lit(0.01),
                p_elec: lit(3.63e-3),
                p_rx: lit(11.13e-3),
                p_s: lit(0.7),
                kappa: lit(2.5),
            },
            field: FieldGeometry {
                radius: lit(1000.0),
                rho_s: lit(0.01),
            },
            rho_p: lit(0.001),
            r_p: lit(200.0),
            p_col: lit(0.04),
            k_mod: lit(1.0),
            gamma_mode: GammaMode::Reference,
        }
    }

    /// Check every stored invariant.
    pub fn validate(&self) -> Result<()> {
        self.hardware.validate()?;
        FieldGeometry::new(self.field.radius, self.field.rho_s)?;
        if !(self.r_p > T::zero()) {
            return Err(ModelError::Parameter {
                name: "r_p",
                value: as_f64(self.r_p),
                detail: "guardring radius must be positive",
            });
        }
        if self.rho_p < T::zero() {
            return Err(ModelError::Parameter {
                name: "rho_p",
                value: as_f64(self.rho_p),
                detail: "PU density must be non-negative",
            });
        }
        if !(self.k_mod > T::zero()) {
            return Err(ModelError::Parameter {
                name: "k_mod",
                value: as_f64(self.k_mod),
                detail: "modulation constant must be positive",
            });
        }
        let p_idle = self.activity.p_idle();
        if !(self.p_col > T::zero()) || self.p_col >= p_idle {
            return Err(ModelError::Constraint {
                name: "p_col",
                value: as_f64(self.p_col),
                bound: as_f64(p_idle),
                detail: "collision cap must lie in (0, p_idle)",
            });
        }
        Ok(())
    }

    /// Upper bound on the transmission range: the guardring radius,
    /// additionally capped by the field radius.
    pub fn range_cap(&self) -> T {
        self.r_p.min(self.field.radius)
    }
}
