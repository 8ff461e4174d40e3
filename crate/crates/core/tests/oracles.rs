//! Independent oracles for the closed forms: adaptive quadrature for
//! the hop-distance integral, an event-level check of the no-arrival
//! probability, and randomized identities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crsn_core::energy::EnergyComponents;
use crsn_core::geometry::{expected_hop_distance, expected_hop_progress};
use crsn_core::link::{
    expected_to_sft, expected_to_sft_series, guardring_area, no_pu_arrival_prob,
    scenario_probs, ScenarioProbabilities,
};
use crsn_core::scenario::NetworkScenario;
use crsn_core::spectrum::{sensing_probs, NoiseModel, PuActivity, SensingDesign};

/// Adaptive Simpson quadrature, independent of any crate code.
fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let split = left + right;
    if depth == 0 || (split - whole).abs() < 15.0 * tol {
        split + (split - whole) / 15.0
    } else {
        simpson(f, a, m, fa, flm, fm, tol / 2.0, depth - 1)
            + simpson(f, m, b, fm, frm, fb, tol / 2.0, depth - 1)
    }
}

fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    simpson(&f, a, b, fa, fm, fb, tol, 40)
}

#[test]
fn hop_distance_matches_quadrature_on_a_grid() {
    // E{Z|w} = integral of w / (2 phi_max cos(phi)) over [-phi_max, phi_max].
    let r_s = 100.0;
    for i in 0..50 {
        let frac = 0.01 + (0.999 - 0.01) * i as f64 / 49.0;
        let w = frac * r_s;
        let phi_max = (w / r_s).acos();
        let numeric = integrate(
            |phi: f64| w / (2.0 * phi_max * phi.cos()),
            -phi_max,
            phi_max,
            1e-12,
        );
        let closed = expected_hop_distance(w, r_s).unwrap();
        let rel = ((closed - numeric) / numeric).abs();
        assert!(rel < 1e-6, "w/r_s={frac}: closed={closed}, quad={numeric}");
    }
}

#[test]
fn hop_progress_formula_is_the_disk_average() {
    // E{W} = (1 - (r/G)^2) r + (r/G)^2 (2/3) r restated as the closed
    // form; verify against direct quadrature of the source-position
    // average: direct hops contribute x on [0, r], boundary hops r.
    let gamma = 1000.0f64;
    let ranges: [f64; 4] = [30.0, 100.0, 400.0, 1000.0];
    for &r_s in &ranges {
        let density = |x: f64| 2.0 * x / (gamma * gamma);
        let direct = integrate(|x| x * density(x), 0.0, r_s.min(gamma), 1e-13);
        let relayed = integrate(&density, r_s.min(gamma), gamma, 1e-13) * r_s;
        let expect = direct + relayed;
        let got = expected_hop_progress(r_s, gamma).unwrap();
        assert!(
            ((got - expect) / expect).abs() < 1e-9,
            "r_s={r_s}: {got} vs {expect}"
        );
    }
}

#[test]
fn no_arrival_probability_matches_event_level_sampling() {
    // K ~ Poisson(rho_p S), each interferer silent with e^{-tau_t beta}.
    let sc: NetworkScenario<f64> = NetworkScenario::baseline();
    let w = expected_hop_progress(100.0, sc.field.radius).unwrap();
    let z = expected_hop_distance(w, 100.0).unwrap();
    let (area, _) = guardring_area(z, sc.r_p).unwrap();
    let tau_t = 1e-3;
    let analytic = no_pu_arrival_prob(sc.rho_p, area, tau_t, sc.activity.beta()).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let poisson = Poisson::new(sc.rho_p * area).unwrap();
    let p_silent = (-tau_t * sc.activity.beta()).exp();
    let n = 1_000_000u64;
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
        if all_silent {
            clear += 1;
        }
    }
    let p_hat = clear as f64 / n as f64;
    let se = (p_hat * (1.0 - p_hat) / n as f64).sqrt();
    assert!(
        (p_hat - analytic).abs() < 3.0 * se,
        "p_hat={p_hat}, analytic={analytic}, se={se}"
    );
}

fn random_probs(rng: &mut ChaCha8Rng) -> ScenarioProbabilities<f64> {
    // Random positive mix with a floor on the success share so the
    // series stays tractable.
    let a: f64 = rng.random::<f64>();
    let b: f64 = rng.random::<f64>();
    let c: f64 = rng.random::<f64>().max(0.08);
    let sum = a + b + c;
    let (pa, pb, pc) = (a / sum, b / sum, c / sum);
    let mut p = [0.0; 10];
    p[0] = pa;
    p[3] = pb;
    p[5] = pc;
    ScenarioProbabilities {
        p,
        p_a: pa,
        p_b: pb,
        p_c: pc,
        p_no_arrival: 1.0,
        s_area: 0.0,
    }
}

#[test]
fn sft_series_equals_closed_form_over_random_mixes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let probs = random_probs(&mut rng);
        let energies = EnergyComponents {
            e_s: rng.random::<f64>() * 1e-3,
            e_t: rng.random::<f64>() * 1e-3,
            e_r: rng.random::<f64>() * 1e-4,
        };
        let tau_s = rng.random::<f64>() * 1e-3 + 1e-5;
        let tau_t = rng.random::<f64>() * 1e-3 + 1e-5;
        let closed = expected_to_sft(&probs, &energies, tau_s, tau_t).unwrap();
        let series = expected_to_sft_series(&probs, &energies, tau_s, tau_t).unwrap();
        let rel = |a: f64, b: f64| ((a - b) / b).abs();
        assert!(rel(series.expected_energy, closed.expected_energy) < 1e-9);
        assert!(rel(series.expected_time, closed.expected_time) < 1e-9);
        assert!(rel(series.expected_trials, closed.expected_trials) < 1e-9);
    }
}

#[test]
fn outcome_probabilities_normalize_over_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..2_000 {
        let alpha = 0.2 + 40.0 * rng.random::<f64>();
        let beta = 0.2 + 40.0 * rng.random::<f64>();
        let activity = PuActivity::new(alpha, beta).unwrap();
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
        let outcome = scenario_probs(
            &design,
            &activity,
            rng.random::<f64>(),
            rng.random::<f64>(),
            0.0,
        )
        .unwrap();
        let sum: f64 = outcome.p.iter().sum();
        assert!((sum - 1.0).abs() < 1e-9, "sum={sum}");
    }
}
