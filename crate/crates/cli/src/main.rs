//! `crsn`: evaluate, optimize and validate the CRSN energy model.
//!
//! Exit codes: 0 success, 2 configuration or constraint error,
//! 3 validation failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crsn_cli::commands::{
    run_evaluate, run_optimize, run_simulate, sensitivity_records, surface_records,
    sweep_records, SimKind,
};
use crsn_cli::config::ConfigFile;
use crsn_cli::output::{render, Format, Record};
use crsn_cli::validate::run_validate;
use crsn_core::optimizer::GridSpec;

const EXIT_CONFIG: u8 = 2;
const EXIT_VALIDATION: u8 = 3;

/// Accept plain integers and scientific notation ("1e6") for counts.
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.parse().map_err(|_| format!("not a count: {s}"))?;
    if !f.is_finite() || f < 0.0 || f.fract() != 0.0 || f > 2f64.powi(53) {
        return Err(format!("not a non-negative integer: {s}"));
    }
    Ok(f as u64)
}

#[derive(Parser)]
#[command(
    name = "crsn",
    version,
    about = "Energy-efficiency model of a cognitive radio sensor network",
    after_help = "Exit codes: 0 success, 2 config/constraint error, 3 validation failure."
)]
struct Cli {
    /// JSON configuration file; missing keys take baseline defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// RNG seed (required by `simulate` and `validate`).
    #[arg(long, global = true, value_parser = parse_count)]
    seed: Option<u64>,
    /// Trial/sample count (required by `simulate` and `validate`).
    #[arg(long, global = true, value_parser = parse_count)]
    trials: Option<u64>,
    /// Bound the worker-thread count (results do not depend on it).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Grid resolution along the range axis.
    #[arg(long, global = true, default_value_t = 64)]
    grid_rs: usize,
    /// Grid resolution along the duration axis.
    #[arg(long, global = true, default_value_t = 64)]
    grid_taut: usize,
    /// Print the fully resolved configuration and exit.
    #[arg(long, global = true)]
    dump_config: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Report every intermediate quantity at one (r_s, tau_t) point.
    Evaluate {
        /// Transmission range, m.
        #[arg(long)]
        rs: f64,
        /// Transmission duration, s.
        #[arg(long)]
        taut: f64,
    },
    /// Maximize the reward over (r_s, tau_t).
    Optimize {
        /// Also write the full reward surface to this file.
        #[arg(long)]
        surface: Option<PathBuf>,
    },
    /// Re-optimize under perturbations of the nine scenario parameters.
    /// Without --config, runs on the study baseline (r_p = 100 m).
    Sensitivity,
    /// Optimum trios over (alpha, beta) in {10,20,30}^2 and kappa in
    /// 2.0..=3.4. Without --config, runs on the study baseline
    /// (r_p = 100 m).
    Sweep,
    /// Run one of the event-level simulators.
    Simulate {
        #[arg(long, value_enum, default_value = "link")]
        sim: SimKind,
        /// Transmission range, m (link, hop).
        #[arg(long)]
        rs: Option<f64>,
        /// Transmission duration, s (link).
        #[arg(long)]
        taut: Option<f64>,
        /// Pair distance, m (area; optional for link).
        #[arg(long)]
        z: Option<f64>,
    },
    /// Run the analytic-vs-Monte-Carlo suite; nonzero exit on breach.
    Validate,
}

fn emit(out: Option<&PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(workers) = cli.workers {
        if workers == 0 {
            return fail(EXIT_CONFIG, "--workers must be at least 1");
        }
        // Results are worker-count independent by construction; this
        // only bounds parallelism.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }

    let config = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match ConfigFile::from_json(&text) {
                Ok(cfg) => cfg,
                Err(e) => return fail(EXIT_CONFIG, &e),
            },
            Err(e) => return fail(EXIT_CONFIG, &format!("{}: {e}", path.display())),
        },
        None => ConfigFile::default(),
    };

    if cli.dump_config {
        let text = format!("{}\n", config.to_pretty_json());
        return match emit(cli.out.as_ref(), &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(EXIT_CONFIG, &e),
        };
    }

    let Some(command) = cli.command else {
        return fail(EXIT_CONFIG, "a command is required (see --help)");
    };

    let grid = GridSpec {
        rs_points: cli.grid_rs,
        taut_points: cli.grid_taut,
    };

    // `sensitivity` and `sweep` reproduce the reference studies, whose
    // base uses a 100 m guardring; apply it when no config is given.
    let study_default = |mut cfg: ConfigFile| {
        if cli.config.is_none() {
            cfg.r_p = 100.0;
        }
        cfg
    };

    let result: Result<String, String> = match command {
        Command::Evaluate { rs, taut } => config
            .to_scenario()
            .and_then(|sc| run_evaluate(&sc, rs, taut))
            .map(|rec| render(&[rec], cli.format)),
        Command::Optimize { surface } => config.to_scenario().and_then(|sc| {
            let (rec, res) = run_optimize(&sc, &grid)?;
            if let Some(path) = surface {
                let dump = render(&surface_records(&res), cli.format);
                std::fs::write(&path, dump).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(render(&[rec], cli.format))
        }),
        Command::Sensitivity => study_default(config)
            .to_scenario()
            .and_then(|sc| sensitivity_records(&sc, &grid))
            .map(|rows| render(&rows, cli.format)),
        Command::Sweep => study_default(config)
            .to_scenario()
            .map(|sc| render(&sweep_records(&sc, &grid), cli.format)),
        Command::Simulate { sim, rs, taut, z } => {
            let (Some(seed), Some(trials)) = (cli.seed, cli.trials) else {
                return fail(EXIT_CONFIG, "simulate requires --seed and --trials");
            };
            config
                .to_scenario()
                .and_then(|sc| run_simulate(&sc, sim, rs, taut, z, trials, seed))
                .map(|rows| render(&rows, cli.format))
        }
        Command::Validate => {
            let (Some(seed), Some(trials)) = (cli.seed, cli.trials) else {
                return fail(EXIT_CONFIG, "validate requires --seed and --trials");
            };
            let (report, all_ok) = run_validate(trials, seed);
            return match emit(cli.out.as_ref(), &report) {
                Ok(()) if all_ok => ExitCode::SUCCESS,
                Ok(()) => ExitCode::from(EXIT_VALIDATION),
                Err(e) => fail(EXIT_CONFIG, &e),
            };
        }
    };

    match result {
        Ok(content) => match emit(cli.out.as_ref(), &content) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(EXIT_CONFIG, &e),
        },
        Err(e) => fail(EXIT_CONFIG, &e),
    }
}
