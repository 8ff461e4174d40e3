//! Channel occupancy model and energy-detection sensing probabilities.
//!
//! A licensed channel alternates between idle and busy with exponential
//! holding times (death rate `alpha`: busy -> idle, birth rate `beta`:
//! idle -> busy). Sensing is energy detection with threshold `delta`;
//! the four joint outcome probabilities follow the Gaussian
//! approximation of the detection statistic. The collision cap `p_col`
//! ties the admissible false-alarm rate and the sensing duration to the
//! chosen transmission duration.

use crate::erf::{q_function, q_inverse};
use crate::error::{ModelError, Result};
use crate::real::{as_f64, lit, Real};

/// Slack applied when validating probabilities; values within the slack
/// are clamped into `[0, 1]`, values beyond it are errors.
const PROB_SLACK: f64 = 1e-12;

/// Validate `v` as a probability, clamping round-off within slack.
pub(crate) fn checked_prob<T: Real>(name: &'static str, v: T) -> Result<T> {
    if v < -lit::<T>(PROB_SLACK) || v > T::one() + lit::<T>(PROB_SLACK) {
        return Err(ModelError::ProbabilityRange {
            name,
            value: as_f64(v),
        });
    }
    Ok(v.max(T::zero()).min(T::one()))
}

/// ON/OFF activity of the primary user on one channel.
///
/// Constructed through [`PuActivity::new`] so the stationary
/// probabilities are always derived from the rates and cannot drift out
/// of normalization.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PuActivity<T> {
    alpha: T,
    beta: T,
}

impl<T: Real> PuActivity<T> {
    /// New activity model with death rate `alpha` and birth rate `beta`,
    /// both in 1/s.
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        if !(alpha > T::zero()) || !(beta > T::zero()) {
            return Err(ModelError::NonPositiveRate {
                alpha: as_f64(alpha),
                beta: as_f64(beta),
            });
        }
        Ok(Self { alpha, beta })
    }

    /// Death rate (busy -> idle), 1/s.
    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// Birth rate (idle -> busy), 1/s.
    pub fn beta(&self) -> T {
        self.beta
    }

    /// Stationary probability that the channel is idle.
    pub fn p_idle(&self) -> T {
        self.alpha / (self.alpha + self.beta)
    }

    /// Stationary probability that the channel is busy.
    pub fn p_busy(&self) -> T {
        self.beta / (self.alpha + self.beta)
    }

    /// Dominant rate `max(alpha, beta)` driving the collision bound.
    pub fn dominant_rate(&self) -> T {
        self.alpha.max(self.beta)
    }
}

/// Noise and primary-signal variance at the energy detector.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct NoiseModel<T> {
    sigma_n2: T,
    gamma_p: T,
}

impl<T: Real> NoiseModel<T> {
    /// `sigma_n2` is the noise variance; `gamma_p` the PU-signal to
    /// noise variance ratio.
    pub fn new(sigma_n2: T, gamma_p: T) -> Result<Self> {
        if !(sigma_n2 > T::zero()) {
            return Err(ModelError::Parameter {
                name: "sigma_n2",
                value: as_f64(sigma_n2),
                detail: "noise variance must be positive",
            });
        }
        if !(gamma_p > T::zero()) {
            return Err(ModelError::Parameter {
                name: "gamma_p",
                value: as_f64(gamma_p),
                detail: "variance ratio must be positive",
            });
        }
        Ok(Self { sigma_n2, gamma_p })
    }

    pub fn sigma_n2(&self) -> T {
        self.sigma_n2
    }

    /// PU signal variance `gamma_p * sigma_n2`.
    pub fn sigma_p2(&self) -> T {
        self.gamma_p * self.sigma_n2
    }

    pub fn gamma_p(&self) -> T {
        self.gamma_p
    }
}

/// Joint sensing outcome probabilities for one node.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SensingProbs<T> {
    /// P[decide busy, channel idle]
    pub p_fa: T,
    /// P[decide busy, channel busy]
    pub p_d: T,
    /// P[decide idle, channel idle]
    pub p_v: T,
    /// P[decide idle, channel busy]
    pub p_md: T,
}

/// Per-slot timing and detection design: durations, threshold and the
/// four joint sensing probabilities.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SensingDesign<T> {
    /// Sensing duration, s.
    pub tau_s: T,
    /// Transmission duration, s.
    pub tau_t: T,
    /// Detection threshold on the energy statistic.
    pub delta: T,
    /// Joint probabilities (see [`SensingProbs`]).
    pub p_fa: T,
    pub p_d: T,
    pub p_v: T,
    pub p_md: T,
}

impl<T: Real> SensingDesign<T> {
    /// Slot duration `tau_s + tau_t`.
    pub fn tau_f(&self) -> T {
        self.tau_s + self.tau_t
    }
}

/// Stationary idle/busy probabilities of the channel.
pub fn channel_state_probs<T: Real>(activity: &PuActivity<T>) -> (T, T) {
    (activity.p_idle(), activity.p_busy())
}

/// Largest transmission duration compatible with the collision cap:
/// `tau_max = -ln(1 - p_col/p_idle) / max(alpha, beta)`.
pub fn max_transmission_time<T: Real>(p_col: T, activity: &PuActivity<T>) -> Result<T> {
    let p_idle = activity.p_idle();
    if !(p_col > T::zero()) || p_col >= p_idle {
        return Err(ModelError::Constraint {
            name: "p_col",
            value: as_f64(p_col),
            bound: as_f64(p_idle),
            detail: "collision cap must lie in (0, p_idle)",
        });
    }
    Ok(-(T::one() - p_col / p_idle).ln() / activity.dominant_rate())
}

/// Largest admissible false-alarm probability for transmission duration
/// `tau_t` under collision cap `p_col`:
/// `p_idle p_busy (1 - (1 - p_col/p_idle) e^{mu tau_t})`.
///
/// Decreases from `p_busy * p_col` at `tau_t = 0` to exactly zero at the
/// collision-cap duration from [`max_transmission_time`].
pub fn max_false_alarm<T: Real>(p_col: T, activity: &PuActivity<T>, tau_t: T) -> Result<T> {
    let tau_max = max_transmission_time(p_col, activity)?;
    if tau_t < T::zero() || tau_t > tau_max {
        return Err(ModelError::Constraint {
            name: "tau_t",
            value: as_f64(tau_t),
            bound: as_f64(tau_max),
            detail: "transmission duration exceeds the collision-cap maximum",
        });
    }
    let p_idle = activity.p_idle();
    let p_busy = activity.p_busy();
    let scale = (T::one() - p_col / p_idle) * (activity.dominant_rate() * tau_t).exp();
    checked_prob("p_fa", p_idle * p_busy * (T::one() - scale))
}

/// Sensing duration that balances false alarm and mis-detection at the
/// target `p_fa`:
/// `tau_s = (Qinv(p_fa/p_idle) + (gamma_p + 1) Qinv(p_fa/p_busy))^2 / (B gamma_p^2)`.
pub fn required_sensing_time<T: Real>(
    p_fa: T,
    bandwidth: T,
    noise: &NoiseModel<T>,
    activity: &PuActivity<T>,
) -> Result<T> {
    let a = q_inverse(p_fa / activity.p_idle())?;
    let b = q_inverse(p_fa / activity.p_busy())?;
    let gamma_p = noise.gamma_p();
    let sum = a + (gamma_p + T::one()) * b;
    Ok(sum * sum / (bandwidth * gamma_p * gamma_p))
}

/// Detection threshold that realizes `p_fa` on an idle channel:
/// `delta = 2 tau_s B sigma_n2 + sqrt(4 tau_s B sigma_n2^2) Qinv(p_fa/p_idle)`.
pub fn detection_threshold<T: Real>(
    tau_s: T,
    bandwidth: T,
    noise: &NoiseModel<T>,
    p_fa: T,
    p_idle: T,
) -> Result<T> {
    if !(tau_s > T::zero()) {
        return Err(ModelError::Parameter {
            name: "tau_s",
            value: as_f64(tau_s),
            detail: "sensing duration must be positive",
        });
    }
    let four = lit::<T>(4.0);
    let two = lit::<T>(2.0);
    let tb = tau_s * bandwidth;
    let s2 = noise.sigma_n2();
    let quantile = q_inverse(p_fa / p_idle)?;
    Ok(two * tb * s2 + (four * tb * s2 * s2).sqrt() * quantile)
}

/// Joint sensing probabilities at threshold `delta` and duration `tau_s`.
///
/// The identities `p_fa + p_v = p_idle` and `p_d + p_md = p_busy` hold by
/// construction.
pub fn sensing_probs<T: Real>(
    delta: T,
    tau_s: T,
    bandwidth: T,
    noise: &NoiseModel<T>,
    activity: &PuActivity<T>,
) -> Result<SensingProbs<T>> {
    if !(tau_s > T::zero()) || delta < T::zero() {
        return Err(ModelError::Parameter {
            name: "tau_s/delta",
            value: as_f64(tau_s),
            detail: "sensing duration must be positive and threshold non-negative",
        });
    }
    let two = lit::<T>(2.0);
    let four = lit::<T>(4.0);
    let tb = tau_s * bandwidth;
    let s_n = noise.sigma_n2();
    let s_pn = noise.sigma_p2() + s_n;
    let p_idle = activity.p_idle();
    let p_busy = activity.p_busy();

    let p_fa = p_idle * q_function((delta - two * tb * s_n) / (four * tb * s_n * s_n).sqrt());
    let p_d = p_busy * q_function((delta - two * tb * s_pn) / (four * tb * s_pn * s_pn).sqrt());
    Ok(SensingProbs {
        p_fa,
        p_d,
        p_v: p_idle - p_fa,
        p_md: p_busy - p_d,
    })
}

/// Full sensing design for a transmission duration under the collision
/// cap: admissible false alarm, balancing sensing duration, threshold,
/// and the resulting joint probabilities.
pub fn design_sensing<T: Real>(
    p_col: T,
    tau_t: T,
    bandwidth: T,
    noise: &NoiseModel<T>,
    activity: &PuActivity<T>,
) -> Result<SensingDesign<T>> {
    let p_fa_target = max_false_alarm(p_col, activity, tau_t)?;

    let a = q_inverse(p_fa_target / activity.p_idle())?;
    let b = q_inverse(p_fa_target / activity.p_busy())?;
    let gamma_p = noise.gamma_p();
    let sum = a + (gamma_p + T::one()) * b;
    let tau_s = sum * sum / (bandwidth * gamma_p * gamma_p);

    let two = lit::<T>(2.0);
    let four = lit::<T>(4.0);
    let tb = tau_s * bandwidth;
    let s_n = noise.sigma_n2();
    let delta = two * tb * s_n + (four * tb * s_n * s_n).sqrt() * a;

    let probs = sensing_probs(delta, tau_s, bandwidth, noise, activity)?;
    Ok(SensingDesign {
        tau_s,
        tau_t,
        delta,
        p_fa: probs.p_fa,
        p_d: probs.p_d,
        p_v: probs.p_v,
        p_md: probs.p_md,
    })
}
