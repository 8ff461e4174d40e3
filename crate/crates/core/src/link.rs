//! Link-level model for one transmitter/receiver pair: guardring
//! exposure, frame reliability, the ten per-slot outcome probabilities,
//! and the expected energy/time until a successful frame transmission
//! (SFT).
//!
//! Per-slot outcomes, indexed 0..9 throughout this crate:
//!
//! | idx | channel | tx sense | rx sense | transmission   | set |
//! |-----|---------|----------|----------|----------------|-----|
//! | 0   | idle    | busy(FA) | busy(FA) | none           | A   |
//! | 1   | idle    | busy(FA) | idle     | none           | A   |
//! | 2   | idle    | idle     | busy(FA) | none           | A   |
//! | 3   | idle    | idle     | idle     | PU arrival     | B   |
//! | 4   | idle    | idle     | idle     | bit error      | B   |
//! | 5   | idle    | idle     | idle     | success (SFT)  | C   |
//! | 6   | busy    | busy     | busy     | none           | A   |
//! | 7   | busy    | busy     | idle(MD) | none           | A   |
//! | 8   | busy    | idle(MD) | busy     | none           | A   |
//! | 9   | busy    | idle(MD) | idle(MD) | doomed attempt | B   |
//!
//! Set A slots cost sensing only; set B and C slots additionally pay the
//! transmit and receive energy.

use crate::energy::EnergyComponents;
use crate::erf::erfc;
use crate::error::{ModelError, Result};
use crate::real::{as_f64, lit, Real};
use crate::spectrum::{checked_prob, PuActivity, SensingDesign};

/// Outcome index of the successful frame transmission.
pub const SFT_OUTCOME: usize = 5;

/// Relative tolerance on the outcome-probability normalization check.
const NORMALIZATION_TOL: f64 = 1e-9;

/// Tail mass at which the trial series of the SFT expectations is
/// truncated.
const SERIES_TAIL: f64 = 1e-12;

/// Union area of the two guardring disks of radius `r_p` centered on a
/// pair of nodes `z` apart:
/// `2 pi r_p^2 - 2 r_p^2 acos(z / 2 r_p) + (z/2) sqrt(4 r_p^2 - z^2)`.
///
/// Grows from `pi r_p^2` for coincident nodes to `2 pi r_p^2` when the
/// disks become tangent at `z = 2 r_p`. Beyond that the disks are
/// disjoint; the area stays `2 pi r_p^2` and the returned flag is set.
pub fn guardring_area<T: Real>(z: T, r_p: T) -> Result<(T, bool)> {
    if !(r_p > T::zero()) {
        return Err(ModelError::Parameter {
            name: "r_p",
            value: as_f64(r_p),
            detail: "guardring radius must be positive",
        });
    }
    if z < T::zero() {
        return Err(ModelError::Parameter {
            name: "z",
            value: as_f64(z),
            detail: "pair distance must be non-negative",
        });
    }
    let two = lit::<T>(2.0);
    let two_pi = lit::<T>(2.0 * std::f64::consts::PI);
    let full = two_pi * r_p * r_p;
    if z >= two * r_p {
        return Ok((full, true));
    }
    let half_z = z / two;
    let area = full - two * r_p * r_p * (z / (two * r_p)).acos()
        + half_z * (lit::<T>(4.0) * r_p * r_p - z * z).sqrt();
    Ok((area, false))
}

/// Probability that no primary user appears inside the exposed area
/// during the transmission: `exp(-rho_p S (1 - e^{-tau_t beta}))`.
///
/// The potential interferer count is Poisson with mean `rho_p * s_area`
/// and each one independently stays silent for at least `tau_t`.
pub fn no_pu_arrival_prob<T: Real>(rho_p: T, s_area: T, tau_t: T, beta: T) -> Result<T> {
    for (name, v) in [
        ("rho_p", rho_p),
        ("s_area", s_area),
        ("tau_t", tau_t),
        ("beta", beta),
    ] {
        if v < T::zero() {
            return Err(ModelError::Parameter {
                name,
                value: as_f64(v),
                detail: "must be non-negative",
            });
        }
    }
    Ok((-rho_p * s_area * (T::one() - (-tau_t * beta).exp())).exp())
}

/// Frame-level reliability of one transmission.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FrameReliability<T> {
    /// Receiver SNR (linear).
    pub snr: T,
    /// Modulation constant (1 for BPSK).
    pub k_mod: T,
    /// Achievable rate `B log2(1 + snr)`, bit/s.
    pub rate: T,
    /// Frame size `tau_t * rate` in bits (kept real-valued).
    pub frame_bits: T,
    /// Bit error rate `erfc(sqrt(k_mod snr)) / 2`.
    pub bit_error_rate: T,
    /// Probability that every bit of the frame is received correctly,
    /// `(1 - BER)^frame_bits`.
    pub reliability: T,
}

/// Rate, frame size and all-bits-correct probability at receiver SNR
/// `snr` over an AWGN link.
pub fn frame_reliability<T: Real>(snr: T, k_mod: T, bandwidth: T, tau_t: T) -> Result<FrameReliability<T>> {
    if snr < T::zero() || tau_t < T::zero() {
        return Err(ModelError::Parameter {
            name: "snr/tau_t",
            value: as_f64(snr),
            detail: "snr and transmission duration must be non-negative",
        });
    }
    let ber = lit::<T>(0.5) * erfc((k_mod * snr).sqrt());
    let rate = bandwidth * (T::one() + snr).ln() / lit::<T>(std::f64::consts::LN_2);
    let frame_bits = tau_t * rate;
    let reliability = (T::one() - ber).powf(frame_bits);
    Ok(FrameReliability {
        snr,
        k_mod,
        rate,
        frame_bits,
        bit_error_rate: ber,
        reliability,
    })
}

/// The ten per-slot outcome probabilities and their aggregates.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ScenarioProbabilities<T> {
    /// Outcome probabilities in the index order of the module table.
    pub p: [T; 10],
    /// Sensing-failure slots (no spectrum access): outcomes 0-2, 6-8.
    pub p_a: T,
    /// Failed transmissions: outcomes 3, 4, 9.
    pub p_b: T,
    /// Successful frame transmission: outcome 5.
    pub p_c: T,
    /// No-PU-arrival probability used for the split of outcomes 3-5.
    pub p_no_arrival: T,
    /// Guardring union area behind `p_no_arrival`, m^2.
    pub s_area: T,
}

impl<T: Real> ScenarioProbabilities<T> {
    /// Probability of the SFT outcome.
    pub fn p_success(&self) -> T {
        self.p[SFT_OUTCOME]
    }
}

/// Combine sensing outcomes, PU arrival exposure and frame reliability
/// into the ten slot-outcome probabilities.
///
/// Sensing enters through the conditional probabilities (false alarm
/// and correct-vacant given idle; detection and mis-detection given
/// busy); the idle/busy split comes from the activity model. The rows
/// are exhaustive and disjoint, so the probabilities must sum to 1.
pub fn scenario_probs<T: Real>(
    sensing: &SensingDesign<T>,
    activity: &PuActivity<T>,
    p_no_arrival: T,
    reliability: T,
    s_area: T,
) -> Result<ScenarioProbabilities<T>> {
    let p_idle = activity.p_idle();
    let p_busy = activity.p_busy();
    let p_np = checked_prob("p_no_arrival", p_no_arrival)?;
    let p_rel = checked_prob("reliability", reliability)?;

    // Conditional sensing probabilities per node.
    let fa = checked_prob("p_fa | idle", sensing.p_fa / p_idle)?;
    let cv = checked_prob("p_v | idle", sensing.p_v / p_idle)?;
    let cd = checked_prob("p_d | busy", sensing.p_d / p_busy)?;
    let md = checked_prob("p_md | busy", sensing.p_md / p_busy)?;

    let access = p_idle * cv * cv;
    let p = [
        p_idle * fa * fa,
        p_idle * fa * cv,
        p_idle * cv * fa,
        access * (T::one() - p_np),
        access * p_np * (T::one() - p_rel),
        access * p_np * p_rel,
        p_busy * cd * cd,
        p_busy * cd * md,
        p_busy * md * cd,
        p_busy * md * md,
    ];

    let sum = p.iter().fold(T::zero(), |acc, &x| acc + x);
    if (sum - T::one()).abs() > lit::<T>(NORMALIZATION_TOL) {
        return Err(ModelError::Normalization { sum: as_f64(sum) });
    }

    let p_a = p[0] + p[1] + p[2] + p[6] + p[7] + p[8];
    let p_b = p[3] + p[4] + p[9];
    Ok(ScenarioProbabilities {
        p,
        p_a,
        p_b,
        p_c: p[SFT_OUTCOME],
        p_no_arrival: p_np,
        s_area,
    })
}

/// P(T = t): probability that the SFT happens on exactly the `t`-th
/// slot. The binomial mixture over set-A/set-B failure counts collapses
/// to the geometric form `p_c (p_a + p_b)^(t-1)`.
pub fn trials_pmf<T: Real>(probs: &ScenarioProbabilities<T>, t: u32) -> Result<T> {
    if t < 1 {
        return Err(ModelError::Parameter {
            name: "t",
            value: t as f64,
            detail: "trial index starts at 1",
        });
    }
    if !(probs.p_c > T::zero()) {
        return Err(ModelError::SftUnreachable);
    }
    Ok(probs.p_c * (probs.p_a + probs.p_b).powi(t as i32 - 1))
}

/// Expected effort to reach the successful frame transmission.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SftExpectation<T> {
    /// Expected pair energy until SFT, J.
    pub expected_energy: T,
    /// Expected elapsed time until SFT, s.
    pub expected_time: T,
    /// Expected number of slots until SFT, `1 / p_c`.
    pub expected_trials: T,
}

/// Closed-form expected energy and time until SFT.
///
/// With per-slot costs `E_A = 2 E_s` (sensing only) and
/// `E_B = E_C = 2 E_s + E_t + E_r`:
/// `E{E_sft} = E_C + (p_a/p_c) E_A + (p_b/p_c) E_B` and
/// `E{tau_sft} = (1 + p_b/p_c)(tau_s + tau_t) + (p_a/p_c) tau_s`.
pub fn expected_to_sft<T: Real>(
    probs: &ScenarioProbabilities<T>,
    energies: &EnergyComponents<T>,
    tau_s: T,
    tau_t: T,
) -> Result<SftExpectation<T>> {
    if !(probs.p_c > T::zero()) {
        return Err(ModelError::SftUnreachable);
    }
    let e_a = lit::<T>(2.0) * energies.e_s;
    let e_c = e_a + energies.e_t + energies.e_r;
    let ra = probs.p_a / probs.p_c;
    let rb = probs.p_b / probs.p_c;
    Ok(SftExpectation {
        expected_energy: e_c + ra * e_a + rb * e_c,
        expected_time: (T::one() + rb) * (tau_s + tau_t) + ra * tau_s,
        expected_trials: probs.p_c.recip(),
    })
}

/// Literal double-series route to the SFT expectations, truncated when
/// the trial-count tail mass drops below `1e-12`. Kept as a slow
/// diagnostic twin of [`expected_to_sft`]; the two agree to 1e-9
/// relative.
pub fn expected_to_sft_series<T: Real>(
    probs: &ScenarioProbabilities<T>,
    energies: &EnergyComponents<T>,
    tau_s: T,
    tau_t: T,
) -> Result<SftExpectation<T>> {
    if !(probs.p_c > T::zero()) {
        return Err(ModelError::SftUnreachable);
    }
    let p_a = probs.p_a;
    let p_b = probs.p_b;
    let p_c = probs.p_c;
    let fail = p_a + p_b;
    let e_a = lit::<T>(2.0) * energies.e_s;
    let e_b = e_a + energies.e_t + energies.e_r;
    let e_c = e_b;
    let tau_f = tau_s + tau_t;

    let mut energy = T::zero();
    let mut time = T::zero();
    let mut trials = T::zero();
    let mut tail = T::one(); // P(T >= t) = fail^(t-1)
    let mut t: u32 = 1;
    while tail > lit::<T>(SERIES_TAIL) {
        let t_minus_1 = t - 1;
        // Sum over k = number of set-A slots among the t-1 failures.
        // Terms are computed directly (binomial coefficient times the
        // two powers) rather than by ratio recursion, which would lose
        // everything to underflow of p_b^(t-1) at large t.
        let mut coeff = T::one(); // C(t-1, k)
        for k in 0..=t_minus_1 {
            if k > 0 {
                coeff = coeff * T::from_u32(t - k).unwrap() / T::from_u32(k).unwrap();
            }
            let weight =
                p_c * coeff * p_a.powi(k as i32) * p_b.powi((t_minus_1 - k) as i32);
            if weight == T::zero() {
                continue;
            }
            let kf = T::from_u32(k).unwrap();
            let slots_with_tx = T::from_u32(t).unwrap() - kf;
            energy =
                energy + weight * (e_c + kf * e_a + T::from_u32(t_minus_1 - k).unwrap() * e_b);
            time = time + weight * (slots_with_tx * tau_f + kf * tau_s);
            trials = trials + weight * T::from_u32(t).unwrap();
        }
        tail = tail * fail;
        t += 1;
        // C(t-1, k) stays within f64 range for the tail thresholds this
        // truncation admits; guard against pathological success floors.
        if t > 100_000 {
            return Err(ModelError::SftUnreachable);
        }
    }
    Ok(SftExpectation {
        expected_energy: energy,
        expected_time: time,
        expected_trials: trials,
    })
}

/// Per-slot sensing share `tau_s / (tau_s + tau_t)`.
pub fn sensing_efficiency<T: Real>(tau_s: T, tau_t: T) -> T {
    tau_s / (tau_s + tau_t)
}

/// Share of the slot intended for communication,
/// `tau_t / (tau_s + tau_t)` (complement of [`sensing_efficiency`]).
pub fn communication_share<T: Real>(tau_s: T, tau_t: T) -> T {
    tau_t / (tau_s + tau_t)
}

/// SFT efficiency `tau_t / E{tau_sft}`: the fraction of the expected
/// time-to-success actually spent on the successful transmission.
pub fn sft_efficiency<T: Real>(tau_t: T, expected_time: T) -> T {
    tau_t / expected_time
}

/// Both time-allocation efficiencies as a pair.
pub fn efficiencies<T: Real>(tau_s: T, tau_t: T, expected_time: T) -> (T, T) {
    (
        sensing_efficiency(tau_s, tau_t),
        sft_efficiency(tau_t, expected_time),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{design_sensing, NoiseModel, PuActivity};

    fn act() -> PuActivity<f64> {
        PuActivity::new(3.0, 3.0).unwrap()
    }

    fn sensing(tau_t: f64) -> SensingDesign<f64> {
        design_sensing(0.04, tau_t, 1e4, &NoiseModel::new(1.0, 10.0).unwrap(), &act()).unwrap()
    }

    /// Hand-built design with exact sensing outcome probabilities.
    fn synthetic(p_fa: f64, p_md: f64) -> SensingDesign<f64> {
        SensingDesign {
            tau_s: 1e-4,
            tau_t: 1e-4,
            delta: 1.0,
            p_fa,
            p_d: 0.5 - p_md,
            p_v: 0.5 - p_fa,
            p_md,
        }
    }

    #[test]
    fn guardring_endpoints() {
        let rp = 100.0;
        let (a0, d0) = guardring_area(0.0, rp).unwrap();
        assert!((a0 - std::f64::consts::PI * rp * rp).abs() < 1e-9);
        assert!(!d0);
        let (a2, d2) = guardring_area(2.0 * rp, rp).unwrap();
        assert!((a2 - 2.0 * std::f64::consts::PI * rp * rp).abs() < 1e-9);
        assert!(d2);
        let (a3, d3) = guardring_area(3.0 * rp, rp).unwrap();
        assert_eq!(a3, a2);
        assert!(d3);
    }

    #[test]
    fn guardring_known_value_and_monotonicity() {
        let (a, _): (f64, bool) = guardring_area(100.0, 100.0).unwrap();
        assert!((a - 50548.156085708295).abs() < 1e-8);
        let mut prev = 0.0;
        for i in 0..=50 {
            let z = 200.0 * i as f64 / 50.0;
            let (area, _) = guardring_area(z, 100.0).unwrap();
            assert!(area >= prev);
            prev = area;
        }
        assert!(guardring_area(-1.0, 100.0).is_err());
        assert!(guardring_area(10.0, 0.0).is_err());
    }

    #[test]
    fn no_arrival_boundaries() {
        assert_eq!(no_pu_arrival_prob(1e-3, 5e4, 0.0, 3.0).unwrap(), 1.0);
        assert_eq!(no_pu_arrival_prob(0.0, 5e4, 1e-3, 3.0).unwrap(), 1.0);
        let p = no_pu_arrival_prob(1e-3, 5e4, 1e-3, 3.0).unwrap();
        assert!(p > 0.0 && p < 1.0);
        assert!(no_pu_arrival_prob(-1e-3, 5e4, 1e-3, 3.0).is_err());
    }

    #[test]
    fn frame_reliability_limits() {
        // Zero SNR: coin-flip bits, zero rate, empty frame.
        let f = frame_reliability(0.0, 1.0, 1e4, 1e-3).unwrap();
        assert_eq!(f.bit_error_rate, 0.5);
        assert_eq!(f.rate, 0.0);
        assert_eq!(f.reliability, 1.0);
        // Zero duration: empty frame is always delivered.
        let f = frame_reliability(100.0, 1.0, 1e4, 0.0).unwrap();
        assert_eq!(f.frame_bits, 0.0);
        assert_eq!(f.reliability, 1.0);
        // 20 dB: astronomically reliable at short frames.
        let f = frame_reliability(100.0, 1.0, 1e4, 1e-3).unwrap();
        assert!(f.bit_error_rate < 3e-45);
        assert!(f.reliability > 1.0 - 1e-12);
        assert!((f.rate - 1e4 * 101f64.log2()).abs() < 1e-6);
    }

    #[test]
    fn outcome_probs_error_free_limit() {
        let probs = scenario_probs(&synthetic(0.0, 0.0), &act(), 1.0, 1.0, 0.0).unwrap();
        assert!((probs.p_c - 0.5).abs() < 1e-15);
        assert!((probs.p_a - 0.5).abs() < 1e-15);
        assert!(probs.p_b.abs() < 1e-15);
    }

    #[test]
    fn outcome_probs_certain_arrival() {
        let s = synthetic(0.02, 0.02);
        let probs = scenario_probs(&s, &act(), 0.0, 1.0, 0.0).unwrap();
        assert_eq!(probs.p[SFT_OUTCOME], 0.0);
        let cv = s.p_v / 0.5;
        assert!((probs.p[3] - 0.5 * cv * cv).abs() < 1e-15);
    }

    #[test]
    fn outcome_probs_sum_to_one() {
        let s = sensing(5e-4);
        let probs = scenario_probs(&s, &act(), 0.93, 0.999, 1.4e5).unwrap();
        let sum: f64 = probs.p.iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
        assert!((probs.p_a + probs.p_b + probs.p_c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pmf_closed_form_and_normalization() {
        let s = sensing(5e-4);
        let probs = scenario_probs(&s, &act(), 0.93, 0.999, 1.4e5).unwrap();
        assert!((trials_pmf(&probs, 1).unwrap() - probs.p_c).abs() < 1e-15);
        assert!(
            (trials_pmf(&probs, 2).unwrap() - probs.p_c * (probs.p_a + probs.p_b)).abs() < 1e-15
        );
        // Geometric normalization, summed until the tail is negligible.
        let mut total = 0.0;
        let mut t = 1;
        loop {
            let p = trials_pmf(&probs, t).unwrap();
            total += p;
            if p < 1e-13 * probs.p_c || t > 10_000 {
                break;
            }
            t += 1;
        }
        assert!((total - 1.0).abs() < 1e-10);
        assert!(trials_pmf(&probs, 0).is_err());
    }

    #[test]
    fn pmf_binomial_mixture_collapses() {
        // Independent route with explicit binomial coefficients.
        let mixes: [(f64, f64, f64); 3] = [(0.3, 0.2, 0.5), (0.6, 0.05, 0.35), (0.09, 0.9, 0.01)];
        for &(pa, pb, pc) in &mixes {
            let probs = ScenarioProbabilities {
                p: [0.0; 10],
                p_a: pa,
                p_b: pb,
                p_c: pc,
                p_no_arrival: 1.0,
                s_area: 0.0,
            };
            let mut probs = probs;
            probs.p[SFT_OUTCOME] = pc;
            for t in [1u32, 2, 5, 17, 60, 200] {
                let mut sum = 0.0;
                let mut coeff = 1.0f64;
                for k in 0..t {
                    if k > 0 {
                        coeff = coeff * (t - k) as f64 / k as f64;
                    }
                    sum += coeff * pa.powi(k as i32) * pb.powi((t - 1 - k) as i32);
                }
                let collapsed = trials_pmf(&probs, t).unwrap();
                assert!(
                    (pc * sum - collapsed).abs() <= 1e-12 * collapsed,
                    "t={t}: {sum} vs {collapsed}"
                );
            }
        }
    }

    fn degenerate(pa: f64, pb: f64, pc: f64) -> ScenarioProbabilities<f64> {
        let mut p = [0.0; 10];
        p[0] = pa;
        p[3] = pb;
        p[SFT_OUTCOME] = pc;
        ScenarioProbabilities {
            p,
            p_a: pa,
            p_b: pb,
            p_c: pc,
            p_no_arrival: 1.0,
            s_area: 0.0,
        }
    }

    fn energies() -> EnergyComponents<f64> {
        EnergyComponents {
            e_s: 3e-4,
            e_t: 8e-4,
            e_r: 1e-6,
        }
    }

    #[test]
    fn sft_first_try_success() {
        let e = energies();
        let x = expected_to_sft(&degenerate(0.0, 0.0, 1.0), &e, 4e-4, 1e-4).unwrap();
        assert!((x.expected_energy - (2.0 * e.e_s + e.e_t + e.e_r)).abs() < 1e-15);
        assert!((x.expected_time - 5e-4).abs() < 1e-15);
        assert_eq!(x.expected_trials, 1.0);
    }

    #[test]
    fn sft_geometric_sensing_failures() {
        let e = energies();
        let x = expected_to_sft(&degenerate(0.5, 0.0, 0.5), &e, 4e-4, 1e-4).unwrap();
        let e_c = 2.0 * e.e_s + e.e_t + e.e_r;
        assert!((x.expected_energy - (e_c + 2.0 * e.e_s)).abs() < 1e-15);
        assert_eq!(x.expected_trials, 2.0);
    }

    #[test]
    fn sft_series_matches_closed_form() {
        let e = energies();
        for &(pa, pb, pc) in &[
            (0.54, 0.02, 0.44),
            (0.2, 0.3, 0.5),
            (0.85, 0.05, 0.1),
            (0.0, 0.9, 0.1),
            (0.9, 0.0, 0.1),
        ] {
            let probs = degenerate(pa, pb, pc);
            let closed = expected_to_sft(&probs, &e, 4e-4, 1e-4).unwrap();
            let series = expected_to_sft_series(&probs, &e, 4e-4, 1e-4).unwrap();
            let rel_e =
                (closed.expected_energy - series.expected_energy).abs() / closed.expected_energy;
            let rel_t = (closed.expected_time - series.expected_time).abs() / closed.expected_time;
            let rel_n =
                (closed.expected_trials - series.expected_trials).abs() / closed.expected_trials;
            assert!(rel_e < 1e-9, "energy mismatch at ({pa},{pb},{pc}): {rel_e}");
            assert!(rel_t < 1e-9, "time mismatch at ({pa},{pb},{pc}): {rel_t}");
            assert!(rel_n < 1e-9, "trials mismatch at ({pa},{pb},{pc}): {rel_n}");
        }
    }

    #[test]
    fn sft_unreachable_when_success_impossible() {
        let e = energies();
        assert!(matches!(
            expected_to_sft(&degenerate(0.6, 0.4, 0.0), &e, 4e-4, 1e-4),
            Err(ModelError::SftUnreachable)
        ));
    }

    #[test]
    fn efficiency_definitions() {
        let (theta, _) = efficiencies(2e-4, 2e-4, 1e-3);
        assert_eq!(theta, 0.5);
        assert_eq!(communication_share(2e-4, 2e-4), 0.5);
        // Single-slot SFT: omega collapses to tau_t / (tau_s + tau_t).
        let e = energies();
        let x = expected_to_sft(&degenerate(0.0, 0.0, 1.0), &e, 4e-4, 1e-4).unwrap();
        let (_, omega) = efficiencies(4e-4, 1e-4, x.expected_time);
        assert!((omega - 0.2).abs() < 1e-12);
    }

    #[test]
    fn success_prob_non_increasing_in_tau_t() {
        let zr = 100.0;
        let mut prev = f64::INFINITY;
        for i in 1..=20 {
            let tau_t = 2e-3 * i as f64 / 20.0;
            let s = sensing(tau_t);
            let (area, _) = guardring_area(zr, 200.0).unwrap();
            let p_np = no_pu_arrival_prob(1e-3, area, tau_t, 3.0).unwrap();
            let f = frame_reliability(100.0, 1.0, 1e4, tau_t).unwrap();
            let probs = scenario_probs(&s, &act(), p_np, f.reliability, area).unwrap();
            assert!(probs.p_success() <= prev + 1e-12);
            prev = probs.p_success();
        }
    }
}
