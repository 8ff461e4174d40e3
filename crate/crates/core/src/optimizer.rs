//! Maximization of the reward over `(r_s, tau_t)`: coarse grid scan
//! followed by a deterministic coordinate pattern search, plus the
//! parameter sensitivity table and the path-loss/activity sweep built
//! on top of it.
//!
//! The surface is smooth with a single visible optimum, so a
//! derivative-free scheme is robust and exactly reproducible: grid
//! cells are evaluated in parallel but merged by index, and the
//! refinement is sequential, so results do not depend on the worker
//! count.

use rayon::prelude::*;

use crate::error::{ModelError, Result};
use crate::real::{lit, Real};
use crate::reward::{evaluate_point, reward};
use crate::scenario::NetworkScenario;
use crate::spectrum::{max_transmission_time, NoiseModel, PuActivity};

/// Smallest transmission duration on the search grid, s.
const TAU_T_FLOOR: f64 = 1e-5;
/// Smallest transmission range on the search grid, m.
const R_S_FLOOR: f64 = 1.0;
/// Fraction of the open interval upper bounds used as closed search
/// bounds.
const BOUND_SHRINK: f64 = 0.999;
/// Pattern search stops when the step is below this fraction of the
/// search range on both axes.
const STEP_TOL: f64 = 1e-4;
/// Step shrink factor when no axis move improves.
const SHRINK: f64 = 0.5;
/// Hard cap on refinement iterations.
const MAX_REFINE_ITERS: usize = 20_000;

/// Grid resolution per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct GridSpec {
    pub rs_points: usize,
    pub taut_points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            rs_points: 64,
            taut_points: 64,
        }
    }
}

/// Which search-box bounds the optimum touches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct BoundaryFlags {
    pub rs_lower: bool,
    pub rs_upper: bool,
    pub taut_lower: bool,
    pub taut_upper: bool,
}

impl BoundaryFlags {
    pub fn any(&self) -> bool {
        self.rs_lower || self.rs_upper || self.taut_lower || self.taut_upper
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SurfaceSample<T> {
    pub r_s: T,
    pub tau_t: T,
    /// Reward, or `None` where the point was infeasible.
    pub reward: Option<T>,
}

/// Result of one maximization run.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct OptimizationResult<T> {
    pub r_s: T,
    pub tau_t: T,
    pub reward: T,
    /// Sensing duration the design rule assigns at the optimum.
    pub tau_s: T,
    /// All grid samples (row-major over r_s, then tau_t).
    pub surface: Vec<SurfaceSample<T>>,
    /// False when the grid was too small to refine.
    pub converged: bool,
    pub boundary: BoundaryFlags,
}

fn linear_grid<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    if n <= 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * T::from_usize(i).unwrap() / T::from_usize(n - 1).unwrap())
        .collect()
}

/// Maximize the reward over the box
/// `(0, min(r_p, field radius)) x (0, tau_max)`.
///
/// The grid is linear in `r_s` and log-spaced in `tau_t` (the objective
/// varies fastest at short durations); the pattern search runs in
/// `(r_s, ln tau_t)` with shrink factor 0.5 until the step falls below
/// `1e-4` of the range on both axes.
pub fn optimize<T: Real>(
    scenario: &NetworkScenario<T>,
    grid: &GridSpec,
) -> Result<OptimizationResult<T>> {
    scenario.validate()?;
    let tau_max = max_transmission_time(scenario.p_col, &scenario.activity)?;
    let r_lo = lit::<T>(R_S_FLOOR);
    let r_hi = lit::<T>(BOUND_SHRINK) * scenario.range_cap();
    let u_lo = lit::<T>(TAU_T_FLOOR).ln();
    let u_hi = (lit::<T>(BOUND_SHRINK) * tau_max).ln();
    if r_hi <= r_lo || u_hi <= u_lo {
        return Err(ModelError::InfeasibleGrid);
    }

    let rs_axis = linear_grid(r_lo, r_hi, grid.rs_points);
    let us_axis = linear_grid(u_lo, u_hi, grid.taut_points);

    // Parallel evaluation, merged by cell index.
    let cells: Vec<SurfaceSample<T>> = (0..rs_axis.len() * us_axis.len())
        .into_par_iter()
        .map(|idx| {
            let r = rs_axis[idx / us_axis.len()];
            let t = us_axis[idx % us_axis.len()].exp();
            SurfaceSample {
                r_s: r,
                tau_t: t,
                reward: reward(scenario, r, t).ok(),
            }
        })
        .collect();

    let mut best: Option<(T, T, T)> = None;
    for c in &cells {
        if let Some(v) = c.reward {
            if best.map_or(true, |(b, _, _)| v > b) {
                best = Some((v, c.r_s, c.tau_t));
            }
        }
    }
    let (grid_best, mut r, tau) = best.ok_or(ModelError::InfeasibleGrid)?;
    let mut u = tau.ln();
    let mut value = grid_best;

    let degenerate = grid.rs_points < 2 || grid.taut_points < 2;
    let mut step_r = if degenerate {
        T::zero()
    } else {
        (r_hi - r_lo) / T::from_usize(grid.rs_points - 1).unwrap()
    };
    let mut step_u = if degenerate {
        T::zero()
    } else {
        (u_hi - u_lo) / T::from_usize(grid.taut_points - 1).unwrap()
    };
    let tol_r = lit::<T>(STEP_TOL) * (r_hi - r_lo);
    let tol_u = lit::<T>(STEP_TOL) * (u_hi - u_lo);

    let mut converged = false;
    if !degenerate {
        let mut iters = 0;
        loop {
            if step_r < tol_r && step_u < tol_u {
                converged = true;
                break;
            }
            if iters >= MAX_REFINE_ITERS {
                break;
            }
            iters += 1;
            let candidates = [
                (r + step_r, u),
                (r - step_r, u),
                (r, u + step_u),
                (r, u - step_u),
            ];
            let mut moved = false;
            let mut best_move = (value, r, u);
            for &(cr, cu) in &candidates {
                let cr = cr.max(r_lo).min(r_hi);
                let cu = cu.max(u_lo).min(u_hi);
                if let Ok(v) = reward(scenario, cr, cu.exp()) {
                    if v > best_move.0 {
                        best_move = (v, cr, cu);
                        moved = true;
                    }
                }
            }
            if moved {
                value = best_move.0;
                r = best_move.1;
                u = best_move.2;
            } else {
                step_r = step_r * lit::<T>(SHRINK);
                step_u = step_u * lit::<T>(SHRINK);
            }
        }
    }

    let tau_t = u.exp();
    let boundary = BoundaryFlags {
        rs_lower: r - r_lo <= step_r.max(tol_r),
        rs_upper: r_hi - r <= step_r.max(tol_r),
        taut_lower: u - u_lo <= step_u.max(tol_u),
        taut_upper: u_hi - u <= step_u.max(tol_u),
    };
    let at_opt = evaluate_point(scenario, r, tau_t)?;

    Ok(OptimizationResult {
        r_s: r,
        tau_t,
        reward: value,
        tau_s: at_opt.sensing.tau_s,
        surface: cells,
        converged,
        boundary,
    })
}

/// The nine scenario parameters of the sensitivity study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioParameter {
    PathLossExponent,
    BirthRate,
    DeathRate,
    PuDensity,
    GuardringRadius,
    ReferenceSnr,
    SensingPower,
    CollisionCap,
    VarianceRatio,
}

impl ScenarioParameter {
    /// All nine, in the canonical reporting order.
    pub const ALL: [ScenarioParameter; 9] = [
        ScenarioParameter::PathLossExponent,
        ScenarioParameter::BirthRate,
        ScenarioParameter::DeathRate,
        ScenarioParameter::PuDensity,
        ScenarioParameter::GuardringRadius,
        ScenarioParameter::ReferenceSnr,
        ScenarioParameter::SensingPower,
        ScenarioParameter::CollisionCap,
        ScenarioParameter::VarianceRatio,
    ];

    /// Config-style name of the parameter.
    pub fn label(&self) -> &'static str {
        match self {
            ScenarioParameter::PathLossExponent => "kappa",
            ScenarioParameter::BirthRate => "beta",
            ScenarioParameter::DeathRate => "alpha",
            ScenarioParameter::PuDensity => "rho_p",
            ScenarioParameter::GuardringRadius => "r_p",
            ScenarioParameter::ReferenceSnr => "gamma_0",
            ScenarioParameter::SensingPower => "p_s",
            ScenarioParameter::CollisionCap => "p_col",
            ScenarioParameter::VarianceRatio => "gamma_p",
        }
    }

    /// Scenario with this parameter multiplied by `factor`. SNR and
    /// variance-ratio perturbations act on the linear values.
    pub fn scaled<T: Real>(
        &self,
        base: &NetworkScenario<T>,
        factor: T,
    ) -> Result<NetworkScenario<T>> {
        let mut sc = *base;
        match self {
            ScenarioParameter::PathLossExponent => sc.hardware.kappa = sc.hardware.kappa * factor,
            ScenarioParameter::BirthRate => {
                sc.activity =
                    PuActivity::new(sc.activity.alpha(), sc.activity.beta() * factor)?;
            }
            ScenarioParameter::DeathRate => {
                sc.activity =
                    PuActivity::new(sc.activity.alpha() * factor, sc.activity.beta())?;
            }
            ScenarioParameter::PuDensity => sc.rho_p = sc.rho_p * factor,
            ScenarioParameter::GuardringRadius => sc.r_p = sc.r_p * factor,
            ScenarioParameter::ReferenceSnr => sc.hardware.gamma_0 = sc.hardware.gamma_0 * factor,
            ScenarioParameter::SensingPower => sc.hardware.p_s = sc.hardware.p_s * factor,
            ScenarioParameter::CollisionCap => sc.p_col = sc.p_col * factor,
            ScenarioParameter::VarianceRatio => {
                sc.noise = NoiseModel::new(sc.noise.sigma_n2(), sc.noise.gamma_p() * factor)?;
            }
        }
        sc.validate()?;
        Ok(sc)
    }
}

/// Percent responses of the optimum to one perturbed parameter.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SensitivityDeltas<T> {
    pub d_r_s_pct: T,
    pub d_tau_t_pct: T,
    pub d_reward_pct: T,
}

/// One (parameter, perturbation) cell; `None` when the perturbed
/// scenario is infeasible.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SensitivityCell<T> {
    pub parameter: &'static str,
    /// Relative perturbation, e.g. -0.25 for -25%.
    pub perturbation: f64,
    pub outcome: Option<SensitivityDeltas<T>>,
}

/// Sensitivity of the optimum to individual parameter changes.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SensitivityReport<T> {
    pub base_r_s: T,
    pub base_tau_t: T,
    pub base_reward: T,
    pub cells: Vec<SensitivityCell<T>>,
}

/// Re-optimize for every (parameter, perturbation) pair and report
/// percent deltas against a freshly computed base optimum, so grid
/// resolution biases cancel.
pub fn sensitivity_analysis<T: Real>(
    scenario: &NetworkScenario<T>,
    parameters: &[ScenarioParameter],
    perturbations: &[f64],
    grid: &GridSpec,
) -> Result<SensitivityReport<T>> {
    let base = optimize(scenario, grid)?;
    let jobs: Vec<(ScenarioParameter, f64)> = parameters
        .iter()
        .flat_map(|&p| perturbations.iter().map(move |&f| (p, f)))
        .collect();

    let pct = lit::<T>(100.0);
    let cells: Vec<SensitivityCell<T>> = jobs
        .par_iter()
        .map(|&(param, pert)| {
            let outcome = param
                .scaled(scenario, lit::<T>(1.0 + pert))
                .and_then(|sc| optimize(&sc, grid))
                .ok()
                .map(|res| SensitivityDeltas {
                    d_r_s_pct: (res.r_s - base.r_s) / base.r_s * pct,
                    d_tau_t_pct: (res.tau_t - base.tau_t) / base.tau_t * pct,
                    d_reward_pct: (res.reward - base.reward) / base.reward * pct,
                });
            SensitivityCell {
                parameter: param.label(),
                perturbation: pert,
                outcome,
            }
        })
        .collect();

    Ok(SensitivityReport {
        base_r_s: base.r_s,
        base_tau_t: base.tau_t,
        base_reward: base.reward,
        cells,
    })
}

/// Optimum of one sweep cell.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SweepOptimum<T> {
    pub r_s: T,
    pub tau_t: T,
    pub reward: T,
    /// True when the range cap binds at this cell.
    pub range_capped: bool,
}

/// One (alpha, beta, kappa) cell of the sweep.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SweepCell<T> {
    pub alpha: T,
    pub beta: T,
    pub kappa: T,
    pub optimum: Option<SweepOptimum<T>>,
    pub error: Option<String>,
}

/// Optimum trios over the cross product of activity rates and path loss
/// exponents. Per-cell failures are recorded and the sweep continues.
pub fn parameter_sweep<T: Real>(
    base: &NetworkScenario<T>,
    kappas: &[T],
    alphas: &[T],
    betas: &[T],
    grid: &GridSpec,
) -> Vec<SweepCell<T>> {
    let jobs: Vec<(T, T, T)> = alphas
        .iter()
        .flat_map(|&a| {
            betas
                .iter()
                .flat_map(move |&b| kappas.iter().map(move |&k| (a, b, k)))
        })
        .collect();

    jobs.par_iter()
        .map(|&(alpha, beta, kappa)| {
            let built = PuActivity::new(alpha, beta).and_then(|activity| {
                let mut sc = *base;
                sc.activity = activity;
                sc.hardware.kappa = kappa;
                sc.validate()?;
                optimize(&sc, grid)
            });
            match built {
                Ok(res) => SweepCell {
                    alpha,
                    beta,
                    kappa,
                    optimum: Some(SweepOptimum {
                        r_s: res.r_s,
                        tau_t: res.tau_t,
                        reward: res.reward,
                        range_capped: res.boundary.rs_upper,
                    }),
                    error: None,
                },
                Err(e) => SweepCell {
                    alpha,
                    beta,
                    kappa,
                    optimum: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}
