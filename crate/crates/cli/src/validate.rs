//! The analytic-vs-Monte-Carlo validation suite behind `crsn validate`.
//!
//! Each check compares a closed form against an independent route
//! (event-level simulation, quadrature, or a second algebraic form) and
//! reports one line. The process exits nonzero if any check fails.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crsn_core::energy::EnergyComponents;
use crsn_core::geometry::{expected_hop_distance, expected_hop_progress, FieldGeometry};
use crsn_core::link::{
    expected_to_sft, expected_to_sft_series, guardring_area, no_pu_arrival_prob,
    scenario_probs, ScenarioProbabilities,
};
use crsn_core::montecarlo::{
    counts_within_three_sigma, estimate_guardring_area, simulate_hop_progress,
    simulate_link_trials,
};
use crsn_core::reward::evaluate_point;
use crsn_core::scenario::NetworkScenario;
use crsn_core::spectrum::{
    design_sensing, max_transmission_time, sensing_probs, NoiseModel, PuActivity, SensingDesign,
};
use crsn_core::Scenario64;

use crate::config::ConfigFile;

pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

/// Five parameter sets exercising distinct regimes: the baseline at a
/// long and a short slot, asymmetric activity with a tight guardring,
/// low SNR (bit errors materialize), and dense interferers with a
/// relaxed collision cap (arrivals dominate).
pub fn representative_sets() -> Vec<(Scenario64, f64, f64)> {
    let baseline = ConfigFile::default();
    let mut sets = Vec::new();
    sets.push((baseline.to_scenario().unwrap(), 100.0, 1e-3));
    sets.push((baseline.to_scenario().unwrap(), 40.0, 1e-4));
    let asym = ConfigFile {
        alpha: 10.0,
        beta: 30.0,
        r_p: 100.0,
        ..Default::default()
    };
    sets.push((asym.to_scenario().unwrap(), 50.0, 5e-4));
    let low_snr = ConfigFile {
        gamma0_db: 10.0,
        ..Default::default()
    };
    sets.push((low_snr.to_scenario().unwrap(), 100.0, 2e-3));
    let busy = ConfigFile {
        rho_p: 0.003,
        p_col: 0.07,
        ..Default::default()
    };
    sets.push((busy.to_scenario().unwrap(), 60.0, 5e-4));
    sets
}

fn random_outcome_probs(rng: &mut ChaCha8Rng) -> ScenarioProbabilities<f64> {
    let a: f64 = rng.random();
    let b: f64 = rng.random();
    let c: f64 = rng.random::<f64>().max(0.08);
    let sum = a + b + c;
    let mut p = [0.0; 10];
    p[0] = a / sum;
    p[3] = b / sum;
    p[5] = c / sum;
    ScenarioProbabilities {
        p,
        p_a: p[0],
        p_b: p[3],
        p_c: p[5],
        p_no_arrival: 1.0,
        s_area: 0.0,
    }
}

/// Outcome probabilities sum to 1 over randomized sensing draws.
fn check_normalization(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let activity =
            PuActivity::new(0.2 + 40.0 * rng.random::<f64>(), 0.2 + 40.0 * rng.random::<f64>())
                .unwrap();
        let noise = NoiseModel::new(1.0, 1.0 + 20.0 * rng.random::<f64>()).unwrap();
        let tau_s = 1e-5 + 2e-3 * rng.random::<f64>();
        let delta = 60.0 * rng.random::<f64>();
        let probs = sensing_probs(delta, tau_s, 1e4, &noise, &activity).unwrap();
        let design = SensingDesign {
            tau_s,
            tau_t: 1e-4,
            delta,
            p_fa: probs.p_fa,
            p_d: probs.p_d,
            p_v: probs.p_v,
            p_md: probs.p_md,
        };
        let out = scenario_probs(
            &design,
            &activity,
            rng.random::<f64>(),
            rng.random::<f64>(),
            0.0,
        )
        .unwrap();
        let sum: f64 = out.p.iter().sum();
        worst = worst.max((sum - 1.0).abs());
    }
    Check {
        name: "outcome_normalization",
        ok: worst < 1e-9,
        detail: format!("worst |sum - 1| = {worst:e} over 10000 draws (tol 1e-9)"),
    }
}

/// Double-series route against the closed forms.
fn check_series_consistency(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(2);
    let mut worst = 0.0f64;
    for _ in 0..1_000 {
        let probs = random_outcome_probs(&mut rng);
        let energies = EnergyComponents {
            e_s: rng.random::<f64>() * 1e-3 + 1e-6,
            e_t: rng.random::<f64>() * 1e-3 + 1e-6,
            e_r: rng.random::<f64>() * 1e-4 + 1e-7,
        };
        let tau_s = rng.random::<f64>() * 1e-3 + 1e-5;
        let tau_t = rng.random::<f64>() * 1e-3 + 1e-5;
        let closed = expected_to_sft(&probs, &energies, tau_s, tau_t).unwrap();
        let series = expected_to_sft_series(&probs, &energies, tau_s, tau_t).unwrap();
        worst = worst
            .max(((series.expected_energy - closed.expected_energy) / closed.expected_energy).abs())
            .max(((series.expected_time - closed.expected_time) / closed.expected_time).abs());
    }
    Check {
        name: "sft_series_consistency",
        ok: worst < 1e-9,
        detail: format!("worst relative gap = {worst:e} over 1000 draws (tol 1e-9)"),
    }
}

/// Event-level episodes against the closed-form expectations.
fn check_sft_simulation(trials: u64, seed: u64) -> Check {
    let scenario = ConfigFile::default().to_scenario().unwrap();
    let (r_s, tau_t) = (100.0, 1e-3);
    let point = evaluate_point(&scenario, r_s, tau_t).unwrap();
    let out = simulate_link_trials(
        &scenario,
        r_s,
        point.hop.expected_distance,
        &point.sensing,
        trials,
        seed,
    )
    .unwrap();
    let rel_energy = ((out.sft_energy.mean - point.sft.expected_energy)
        / point.sft.expected_energy)
        .abs();
    let rel_time = ((out.sft_time.mean - point.sft.expected_time) / point.sft.expected_time).abs();
    // 1% at a million episodes; at smaller counts fall back to a
    // 4-standard-error band so the check stays honest.
    let tol_energy = (4.0 * out.sft_energy.std_error / point.sft.expected_energy).max(0.01);
    let tol_time = (4.0 * out.sft_time.std_error / point.sft.expected_time).max(0.01);
    Check {
        name: "sft_simulation",
        ok: rel_energy < tol_energy && rel_time < tol_time,
        detail: format!(
            "energy gap {rel_energy:e} (tol {tol_energy:e}), time gap {rel_time:e} (tol {tol_time:e}), {trials} episodes"
        ),
    }
}

/// All ten outcome frequencies within three standard errors, for the
/// five representative sets.
fn check_outcome_frequencies(trials: u64, seed: u64) -> Check {
    let episodes = (trials / 2).max(10_000);
    let mut all_ok = true;
    let mut details = Vec::new();
    for (i, (scenario, r_s, tau_t)) in representative_sets().into_iter().enumerate() {
        let point = evaluate_point(&scenario, r_s, tau_t).unwrap();
        let out = simulate_link_trials(
            &scenario,
            r_s,
            point.hop.expected_distance,
            &point.sensing,
            episodes,
            seed + i as u64,
        )
        .unwrap();
        let ok = counts_within_three_sigma(&out.scenario_counts, out.total_slots, &point.probs.p);
        all_ok &= ok;
        details.push(format!("set{i}:{}", if ok { "ok" } else { "FAIL" }));
    }
    Check {
        name: "outcome_frequencies",
        ok: all_ok,
        detail: format!("{} ({episodes} episodes per set, 3 SE)", details.join(" ")),
    }
}

/// Hit-or-miss area against the closed form, plus exact endpoints.
fn check_guardring_area(trials: u64, seed: u64) -> Check {
    let samples = (10 * trials).max(10_000);
    let r_p = 100.0;
    let pi_r2 = std::f64::consts::PI * r_p * r_p;
    let (end0, _) = guardring_area(0.0, r_p).unwrap();
    let (end2, _) = guardring_area(2.0 * r_p, r_p).unwrap();
    let endpoints_ok =
        ((end0 - pi_r2) / pi_r2).abs() < 1e-12 && ((end2 - 2.0 * pi_r2) / pi_r2).abs() < 1e-12;

    let mut worst = 0.0f64;
    for &frac in &[0.0, 0.3, 0.6, 1.0, 2.0] {
        let z = frac * r_p;
        let (analytic, _) = guardring_area(z, r_p).unwrap();
        let est = estimate_guardring_area(z, r_p, samples, seed).unwrap();
        worst = worst.max(((est.mean - analytic) / analytic).abs());
    }
    Check {
        name: "guardring_area",
        ok: endpoints_ok && worst < 0.005,
        detail: format!(
            "worst relative gap = {worst:e} at {samples} samples (tol 5e-3), endpoints {}",
            if endpoints_ok { "exact" } else { "FAIL" }
        ),
    }
}

/// Forwarding simulation against the dense-deployment closed forms.
fn check_hop_progress(trials: u64, seed: u64) -> Check {
    let n = (trials / 10).max(5_000);
    let field = FieldGeometry {
        radius: 1000.0,
        rho_s: 0.1,
    };
    let out = simulate_hop_progress(&field, 100.0, n, seed).unwrap();
    let w_closed = expected_hop_progress(100.0, 1000.0).unwrap();
    let w_gap = ((out.progress.mean - w_closed) / w_closed).abs();
    let z_closed = expected_hop_distance(out.progress.mean, 100.0).unwrap();
    let z_gap = ((out.distance.mean - z_closed) / z_closed).abs();
    Check {
        name: "hop_progress",
        ok: w_gap < 0.02 && z_gap < 0.05,
        detail: format!(
            "progress gap {w_gap:e} (tol 2e-2), distance gap {z_gap:e} (tol 5e-2), {n} trials, {} empty-region",
            out.empty_region_trials
        ),
    }
}

/// Hop-distance closed form against adaptive Simpson quadrature.
fn check_hop_distance_quadrature() -> Check {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        fn rec(
            f: &dyn Fn(f64) -> f64,
            a: f64,
            b: f64,
            fa: f64,
            fm: f64,
            fb: f64,
            tol: f64,
            depth: u32,
        ) -> f64 {
            let m = 0.5 * (a + b);
            let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
            let (flm, frm) = (f(lm), f(rm));
            let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
            let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
                left + right + (left + right - whole) / 15.0
            } else {
                rec(f, a, m, fa, flm, fm, tol / 2.0, depth - 1)
                    + rec(f, m, b, fm, frm, fb, tol / 2.0, depth - 1)
            }
        }
        let m = 0.5 * (a + b);
        rec(f, a, b, f(a), f(m), f(b), tol, depth)
    }

    let r_s = 100.0;
    let mut worst = 0.0f64;
    for i in 0..50 {
        let frac = 0.01 + (0.999 - 0.01) * i as f64 / 49.0;
        let w = frac * r_s;
        let phi_max = (w / r_s).acos();
        let numeric = simpson(
            &|phi: f64| w / (2.0 * phi_max * phi.cos()),
            -phi_max,
            phi_max,
            1e-12,
            40,
        );
        let closed = expected_hop_distance(w, r_s).unwrap();
        worst = worst.max(((closed - numeric) / numeric).abs());
    }
    Check {
        name: "hop_distance_quadrature",
        ok: worst < 1e-6,
        detail: format!("worst relative gap = {worst:e} on a 50-point grid (tol 1e-6)"),
    }
}

/// No-arrival probability against direct event sampling.
fn check_arrival_probability(trials: u64, seed: u64) -> Check {
    let scenario: NetworkScenario<f64> = ConfigFile::default().to_scenario().unwrap();
    let w = expected_hop_progress(100.0, scenario.field.radius).unwrap();
    let z = expected_hop_distance(w, 100.0).unwrap();
    let (area, _) = guardring_area(z, scenario.r_p).unwrap();
    let tau_t = 1e-3;
    let analytic = no_pu_arrival_prob(scenario.rho_p, area, tau_t, scenario.activity.beta())
        .unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(3);
    let poisson = Poisson::new(scenario.rho_p * area).unwrap();
    let p_silent = (-tau_t * scenario.activity.beta()).exp();
    let n = trials.max(10_000);
    let mut clear = 0u64;
    for _ in 0..n {
        let k = poisson.sample(&mut rng) as u64;
        let mut all_silent = true;
        for _ in 0..k {
            if rng.random::<f64>() >= p_silent {
                all_silent = false;
                break;
            }
        }
        clear += all_silent as u64;
    }
    let p_hat = clear as f64 / n as f64;
    let se = (p_hat * (1.0 - p_hat) / n as f64).sqrt();
    Check {
        name: "arrival_probability",
        ok: (p_hat - analytic).abs() < 3.0 * se,
        detail: format!("analytic {analytic}, simulated {p_hat} +- {se} ({n} draws, 3 SE)"),
    }
}

/// False alarm equals mis-detection after the design round trip.
fn check_sensing_balance() -> Check {
    let mut worst = 0.0f64;
    for &(alpha, beta) in &[(3.0, 3.0), (10.0, 30.0), (30.0, 10.0)] {
        let activity = PuActivity::new(alpha, beta).unwrap();
        let noise = NoiseModel::new(1.0, 10.0).unwrap();
        for &p_col in &[0.01, 0.04, 0.07] {
            if p_col >= activity.p_idle() {
                continue;
            }
            let tau_max = max_transmission_time(p_col, &activity).unwrap();
            for &tau_t in &[1e-4f64, 5e-4, 1e-3] {
                if tau_t >= 0.99 * tau_max {
                    continue;
                }
                let d = design_sensing(p_col, tau_t, 1e4, &noise, &activity).unwrap();
                worst = worst.max((d.p_fa - d.p_md).abs() / d.p_fa);
            }
        }
    }
    Check {
        name: "sensing_balance",
        ok: worst < 1e-6,
        detail: format!("worst |p_fa - p_md|/p_fa = {worst:e} over the grid (tol 1e-6)"),
    }
}

/// Run every check; returns the report text and overall success.
pub fn run_validate(trials: u64, seed: u64) -> (String, bool) {
    let checks = vec![
        check_normalization(seed),
        check_series_consistency(seed),
        check_sft_simulation(trials, seed),
        check_outcome_frequencies(trials, seed),
        check_guardring_area(trials, seed),
        check_hop_progress(trials, seed),
        check_hop_distance_quadrature(),
        check_arrival_probability(trials, seed),
        check_sensing_balance(),
    ];
    let mut out = String::new();
    let mut all_ok = true;
    for c in &checks {
        all_ok &= c.ok;
        out.push_str(&format!(
            "{} {}: {}\n",
            if c.ok { "ok  " } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    out.push_str(&format!(
        "validate: {} of {} checks passed\n",
        checks.iter().filter(|c| c.ok).count(),
        checks.len()
    ));
    (out, all_ok)
}
