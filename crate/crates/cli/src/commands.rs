//! Record builders for the CLI commands.

use crsn_core::link::communication_share;
use crsn_core::montecarlo::{
    estimate_guardring_area, simulate_hop_progress, simulate_link_trials,
};
use crsn_core::optimizer::{
    optimize, parameter_sweep, sensitivity_analysis, GridSpec, OptimizationResult,
    ScenarioParameter,
};
use crsn_core::reward::evaluate_point;
use crsn_core::spectrum::design_sensing;
use crsn_core::{PointEvaluation64, Scenario64};

use crate::output::Record;

/// The single-row report of every intermediate quantity at one point.
pub fn evaluate_record(p: &PointEvaluation64) -> Record {
    Record::new()
        .f("r_s", p.r_s)
        .f("tau_t", p.tau_t)
        .f("tau_max", p.tau_max)
        .f("tau_s", p.sensing.tau_s)
        .f("tau_f", p.sensing.tau_f())
        .f("delta", p.sensing.delta)
        .f("p_fa", p.sensing.p_fa)
        .f("p_d", p.sensing.p_d)
        .f("p_v", p.sensing.p_v)
        .f("p_md", p.sensing.p_md)
        .f("hop_progress", p.hop.expected_progress)
        .f("hop_distance", p.hop.expected_distance)
        .f("phi_max", p.hop.phi_max)
        .f("s_area", p.s_area)
        .f("p_no_arrival", p.p_no_arrival)
        .f("snr", p.frame.snr)
        .f("rate", p.frame.rate)
        .f("frame_bits", p.frame.frame_bits)
        .f("bit_error_rate", p.frame.bit_error_rate)
        .f("reliability", p.frame.reliability)
        .f("p_idle_fa_fa", p.probs.p[0])
        .f("p_idle_fa_cv", p.probs.p[1])
        .f("p_idle_cv_fa", p.probs.p[2])
        .f("p_access_arrival", p.probs.p[3])
        .f("p_access_biterr", p.probs.p[4])
        .f("p_success", p.probs.p[5])
        .f("p_busy_d_d", p.probs.p[6])
        .f("p_busy_d_md", p.probs.p[7])
        .f("p_busy_md_d", p.probs.p[8])
        .f("p_busy_md_md", p.probs.p[9])
        .f("p_set_a", p.probs.p_a)
        .f("p_set_b", p.probs.p_b)
        .f("p_set_c", p.probs.p_c)
        .f("e_s", p.energies.e_s)
        .f("e_t", p.energies.e_t)
        .f("e_r", p.energies.e_r)
        .f("sft_energy", p.sft.expected_energy)
        .f("sft_time", p.sft.expected_time)
        .f("sft_trials", p.sft.expected_trials)
        .f("sensing_efficiency", p.sensing_efficiency)
        .f("communication_share", communication_share(p.sensing.tau_s, p.tau_t))
        .f("sft_efficiency", p.sft_efficiency)
        .f("reward", p.reward)
}

pub fn optimize_record(r: &OptimizationResult<f64>) -> Record {
    Record::new()
        .f("r_s", r.r_s)
        .f("tau_t", r.tau_t)
        .f("reward", r.reward)
        .f("tau_s", r.tau_s)
        .b("converged", r.converged)
        .b("rs_lower_bound", r.boundary.rs_lower)
        .b("rs_upper_bound", r.boundary.rs_upper)
        .b("taut_lower_bound", r.boundary.taut_lower)
        .b("taut_upper_bound", r.boundary.taut_upper)
        .u("surface_samples", r.surface.len() as u64)
}

/// Full reward surface (one row per grid cell).
pub fn surface_records(r: &OptimizationResult<f64>) -> Vec<Record> {
    r.surface
        .iter()
        .map(|s| {
            Record::new()
                .f("r_s", s.r_s)
                .f("tau_t", s.tau_t)
                .f("reward", s.reward.unwrap_or(f64::NAN))
        })
        .collect()
}

/// Sensitivity matrix rows.
pub fn sensitivity_records(scenario: &Scenario64, grid: &GridSpec) -> Result<Vec<Record>, String> {
    let perturbations = [-0.50, -0.25, -0.10, -0.05, 0.05, 0.10, 0.25, 0.50];
    let report =
        sensitivity_analysis(scenario, &ScenarioParameter::ALL, &perturbations, grid)
            .map_err(|e| e.to_string())?;
    let mut rows = Vec::with_capacity(report.cells.len());
    for cell in &report.cells {
        let mut rec = Record::new()
            .s("parameter", cell.parameter)
            .f("perturbation_pct", cell.perturbation * 100.0)
            .f("base_r_s", report.base_r_s)
            .f("base_tau_t", report.base_tau_t)
            .f("base_reward", report.base_reward);
        rec = match &cell.outcome {
            Some(d) => rec
                .s("status", "ok")
                .f("d_r_s_pct", d.d_r_s_pct)
                .f("d_tau_t_pct", d.d_tau_t_pct)
                .f("d_reward_pct", d.d_reward_pct),
            None => rec
                .s("status", "infeasible")
                .f("d_r_s_pct", f64::NAN)
                .f("d_tau_t_pct", f64::NAN)
                .f("d_reward_pct", f64::NAN),
        };
        rows.push(rec);
    }
    Ok(rows)
}

/// Sweep rows over (alpha, beta) in {10,20,30}^2 and kappa in 2.0..=3.4.
pub fn sweep_records(base: &Scenario64, grid: &GridSpec) -> Vec<Record> {
    let kappas: Vec<f64> = (0..15).map(|i| 2.0 + 0.1 * i as f64).collect();
    let rates = [10.0, 20.0, 30.0];
    let cells = parameter_sweep(base, &kappas, &rates, &rates, grid);
    cells
        .iter()
        .map(|c| {
            let mut rec = Record::new()
                .f("alpha", c.alpha)
                .f("beta", c.beta)
                .f("kappa", c.kappa);
            rec = match &c.optimum {
                Some(o) => rec
                    .s("status", "ok")
                    .f("r_s", o.r_s)
                    .f("tau_t", o.tau_t)
                    .f("reward", o.reward)
                    .b("range_capped", o.range_capped)
                    .s("error", ""),
                None => rec
                    .s("status", "error")
                    .f("r_s", f64::NAN)
                    .f("tau_t", f64::NAN)
                    .f("reward", f64::NAN)
                    .b("range_capped", false)
                    .s("error", c.error.as_deref().unwrap_or("")),
            };
            rec
        })
        .collect()
}

pub fn run_evaluate(scenario: &Scenario64, r_s: f64, tau_t: f64) -> Result<Record, String> {
    let p = evaluate_point(scenario, r_s, tau_t).map_err(|e| e.to_string())?;
    Ok(evaluate_record(&p))
}

pub fn run_optimize(
    scenario: &Scenario64,
    grid: &GridSpec,
) -> Result<(Record, OptimizationResult<f64>), String> {
    let res = optimize(scenario, grid).map_err(|e| e.to_string())?;
    Ok((optimize_record(&res), res))
}

/// Which simulator `simulate` runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SimKind {
    /// Slotted link trials until successful frame transmission.
    Link,
    /// Greedy-forwarding hop geometry.
    Hop,
    /// Hit-or-miss guardring area.
    Area,
}

pub fn run_simulate(
    scenario: &Scenario64,
    kind: SimKind,
    r_s: Option<f64>,
    tau_t: Option<f64>,
    z: Option<f64>,
    trials: u64,
    seed: u64,
) -> Result<Vec<Record>, String> {
    match kind {
        SimKind::Link => {
            let r_s = r_s.ok_or("simulate --sim link requires --rs")?;
            let tau_t = tau_t.ok_or("simulate --sim link requires --taut")?;
            // Evaluate the pipeline once to place the receiver at the
            // expected hop distance (unless --z overrides it) and to
            // reuse the designed sensing slot.
            let point = evaluate_point(scenario, r_s, tau_t).map_err(|e| e.to_string())?;
            let z = z.unwrap_or(point.hop.expected_distance);
            let sensing = design_sensing(
                scenario.p_col,
                tau_t,
                scenario.hardware.bandwidth,
                &scenario.noise,
                &scenario.activity,
            )
            .map_err(|e| e.to_string())?;
            let out = simulate_link_trials(scenario, r_s, z, &sensing, trials, seed)
                .map_err(|e| e.to_string())?;
            let mut rec = Record::new()
                .s("sim", "link")
                .u("seed", seed)
                .u("episodes", out.episodes)
                .u("total_slots", out.total_slots)
                .f("r_s", r_s)
                .f("tau_t", tau_t)
                .f("z", z);
            let names = [
                "n_idle_fa_fa",
                "n_idle_fa_cv",
                "n_idle_cv_fa",
                "n_access_arrival",
                "n_access_biterr",
                "n_success",
                "n_busy_d_d",
                "n_busy_d_md",
                "n_busy_md_d",
                "n_busy_md_md",
            ];
            for (i, name) in names.iter().enumerate() {
                rec = rec.u(name, out.scenario_counts[i]);
            }
            rec = rec
                .f("p_success_mean", out.p_success.mean)
                .f("p_success_se", out.p_success.std_error)
                .f("sft_energy_mean", out.sft_energy.mean)
                .f("sft_energy_se", out.sft_energy.std_error)
                .f("sft_time_mean", out.sft_time.mean)
                .f("sft_time_se", out.sft_time.std_error)
                .f("sft_trials_mean", out.sft_trials.mean)
                .f("sft_trials_se", out.sft_trials.std_error);
            Ok(vec![rec])
        }
        SimKind::Hop => {
            let r_s = r_s.ok_or("simulate --sim hop requires --rs")?;
            let out = simulate_hop_progress(&scenario.field, r_s, trials, seed)
                .map_err(|e| e.to_string())?;
            Ok(vec![Record::new()
                .s("sim", "hop")
                .u("seed", seed)
                .u("n_trials", out.n_trials)
                .f("r_s", r_s)
                .f("progress_mean", out.progress.mean)
                .f("progress_se", out.progress.std_error)
                .f("distance_mean", out.distance.mean)
                .f("distance_se", out.distance.std_error)
                .u("direct_hops", out.direct_hops)
                .u("empty_region_trials", out.empty_region_trials)])
        }
        SimKind::Area => {
            let z = z.ok_or("simulate --sim area requires --z")?;
            let out = estimate_guardring_area(z, scenario.r_p, trials, seed)
                .map_err(|e| e.to_string())?;
            Ok(vec![Record::new()
                .s("sim", "area")
                .u("seed", seed)
                .u("n_samples", out.n_samples)
                .f("z", z)
                .f("r_p", scenario.r_p)
                .f("area_mean", out.mean)
                .f("area_se", out.std_error)])
        }
    }
}
