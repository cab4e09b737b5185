//! Config-driven command front end.
//!
//! Five commands cover the analysis workflow: `analyze` (H2 by every
//! applicable route, cross-checked), `optimize` (gain tuning report),
//! `delay` (delay robustness, closed form and bisection), `simulate`
//! (Monte Carlo validation), and `sweep` (closed-form curves along one
//! parameter). Each writes `<out>/<command>.csv`, an optional
//! `<out>/<command>.svg`, and a machine-readable `<out>/run.json`, and
//! returns summary lines for the terminal.

pub mod config;
pub mod report;
pub mod svg;

use std::path::{Path, PathBuf};

use serde_json::json;

use crate::closedform::{self, h2_closed_form, h2_droop};
use crate::delay::{
    tau_rob_bisection, tau_rob_closed, BisectionOptions, ClosedFormRegime, DelayReport,
};
use crate::error::{Error, Result};
use crate::lyap::{h2_numeric_for_config, h2_numeric_full, h2_numeric_modal};
use crate::netmodel::{assemble_state_space, ControllerConfig};
use crate::sim::{simulate_sde, simulate_sde_trace};
use crate::spectral::{eigendecompose, modal_subsystems_with_tolerance};
use crate::tuning::{self, TuningOptions};

pub use config::{parse_config, RunConfig, ValidatedInputs};
use report::{fmt_float, Cell, CsvTable};

/// The five analysis commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Optimize,
    Delay,
    Simulate,
    Sweep,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Optimize => "optimize",
            Command::Delay => "delay",
            Command::Simulate => "simulate",
            Command::Sweep => "sweep",
        }
    }
}

/// Invocation options beyond the config file.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    pub plot: bool,
    /// Overrides `sim.seed` from the config when present.
    pub seed: Option<u64>,
}

/// Where a command wrote its reports, plus the terminal summary.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub csv_path: PathBuf,
    pub svg_path: Option<PathBuf>,
    pub json_path: PathBuf,
    pub summary_lines: Vec<String>,
}

/// Exit code for an error: 2 for config/validation problems, 3 for
/// computational failures.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Parse { .. }
        | Error::Validation { .. }
        | Error::Construction(_)
        | Error::Homogeneity(_)
        | Error::Input(_) => 2,
        Error::Domain(_)
        | Error::UnboundedNoise
        | Error::Stability { .. }
        | Error::UnboundedOptimum(_)
        | Error::MarginalStability { .. }
        | Error::Numerical(_)
        | Error::Io(_) => 3,
    }
}

/// Short machine-readable tag for an error variant.
pub fn error_kind(error: &Error) -> &'static str {
    match error {
        Error::Parse { .. } => "parse",
        Error::Validation { .. } => "validation",
        Error::Construction(_) => "construction",
        Error::Homogeneity(_) => "homogeneity",
        Error::Input(_) => "input",
        Error::Domain(_) => "domain",
        Error::UnboundedNoise => "unbounded_noise",
        Error::Stability { .. } => "stability",
        Error::UnboundedOptimum(_) => "unbounded_optimum",
        Error::MarginalStability { .. } => "marginal_stability",
        Error::Numerical(_) => "numerical",
        Error::Io(_) => "io",
    }
}

/// Write the machine-readable record for a failed run.
pub fn write_error_record(out_dir: &Path, command: &str, error: &Error) -> std::io::Result<()> {
    std::fs::create_dir_all(out_dir)?;
    let record = json!({
        "command": command,
        "status": "error",
        "error_kind": error_kind(error),
        "message": error.to_string(),
        "exit_code": exit_code(error),
    });
    std::fs::write(
        out_dir.join("run.json"),
        serde_json::to_string_pretty(&record).expect("json") + "\n",
    )
}

/// Run one command against a parsed config, writing reports into
/// `opts.out_dir`.
pub fn run_command(
    command: Command,
    run_config: &RunConfig,
    opts: &RunOptions,
) -> Result<CommandOutput> {
    let mut inputs = run_config.build_inputs()?;
    if let Some(seed) = opts.seed {
        inputs.sim.seed = seed;
    }
    std::fs::create_dir_all(&opts.out_dir)?;
    let artifacts = match command {
        Command::Analyze => analyze(&inputs, opts)?,
        Command::Optimize => optimize(&inputs, opts)?,
        Command::Delay => delay(&inputs, opts)?,
        Command::Simulate => simulate(&inputs, opts)?,
        Command::Sweep => sweep(&inputs, opts)?,
    };

    let csv_path = opts.out_dir.join(format!("{}.csv", command.name()));
    std::fs::write(&csv_path, artifacts.csv.render())?;

    let svg_path = if let Some(svg_text) = artifacts.svg {
        let path = opts.out_dir.join(format!("{}.svg", command.name()));
        std::fs::write(&path, svg_text)?;
        Some(path)
    } else {
        None
    };

    let json_path = opts.out_dir.join("run.json");
    let record = json!({
        "command": command.name(),
        "status": "ok",
        "exit_code": 0,
        "outputs": {
            "csv": csv_path.file_name().unwrap().to_str(),
            "svg": svg_path.as_ref().map(|p| p.file_name().unwrap().to_str().unwrap()),
        },
        "summary": artifacts.json_summary,
    });
    std::fs::write(
        &json_path,
        serde_json::to_string_pretty(&record).expect("json") + "\n",
    )?;

    Ok(CommandOutput {
        csv_path,
        svg_path,
        json_path,
        summary_lines: artifacts.summary_lines,
    })
}

struct Artifacts {
    csv: CsvTable,
    svg: Option<String>,
    json_summary: serde_json::Value,
    summary_lines: Vec<String>,
}

fn describe_controller(config: &ControllerConfig) -> String {
    match *config {
        ControllerConfig::Droop { r_r_inv } => format!("droop (r_r_inv = {r_r_inv})"),
        ControllerConfig::VirtualInertia { nu, r_r_inv } => {
            format!("virtual_inertia (nu = {nu}, r_r_inv = {r_r_inv})")
        }
        ControllerConfig::IDroop { nu, delta, r_r_inv } => {
            format!("idroop (nu = {nu}, delta = {delta}, r_r_inv = {r_r_inv})")
        }
    }
}

fn rel_diff(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        return f64::NAN;
    }
    if a.is_infinite() || b.is_infinite() {
        return if a == b { 0.0 } else { f64::INFINITY };
    }
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn analyze(inputs: &ValidatedInputs, opts: &RunOptions) -> Result<Artifacts> {
    let decomp = eigendecompose(&inputs.topology.laplacian())?;
    let lambdas: Vec<f64> = decomp.lambdas().iter().cloned().collect();
    let n = inputs.topology.n_buses();
    let homogeneous = inputs.params.is_homogeneous();
    let controller = &inputs.controller;

    let closed = if homogeneous {
        let hp = inputs.params.homogeneous()?;
        Some(h2_closed_form(&lambdas, &hp, controller)?)
    } else {
        None
    };

    let modal = if homogeneous {
        match controller {
            ControllerConfig::IDroop { delta, .. } if *delta > 0.0 => {
                let subs = modal_subsystems_with_tolerance(
                    &decomp,
                    &inputs.params,
                    controller,
                    inputs.analysis.zero_mode_tolerance,
                )?;
                Some(h2_numeric_modal(&subs)?)
            }
            _ => None,
        }
    } else {
        None
    };

    let full = match controller {
        ControllerConfig::IDroop { delta, .. } if *delta == 0.0 => None,
        _ => Some(h2_numeric_for_config(&inputs.topology, &inputs.params, controller)?),
    };

    let droop_reference = if homogeneous {
        let hp = inputs.params.homogeneous()?;
        h2_droop(n, &hp, controller.r_r_inv())
    } else {
        f64::NAN
    };

    let closed_v = closed.unwrap_or(f64::NAN);
    let modal_v = modal.as_ref().map_or(f64::NAN, |r| r.squared_norm);
    let full_v = full.as_ref().map_or(f64::NAN, |r| r.squared_norm);
    let n_states = full.as_ref().map_or(0, |_| match controller {
        ControllerConfig::IDroop { .. } => 3 * n,
        _ => 2 * n,
    });
    let diff_modal = rel_diff(closed_v, modal_v);
    let diff_full = rel_diff(closed_v, full_v);

    let mut csv = CsvTable::new(vec![
        "controller",
        "n_buses",
        "n_states",
        "h2_squared_closed_form",
        "h2_squared_lyapunov_modal",
        "h2_squared_lyapunov_full",
        "rel_diff_closed_modal",
        "rel_diff_closed_full",
        "h2_squared_droop",
    ]);
    csv.push_row(vec![
        Cell::Text(controller.kind_name().into()),
        Cell::Int(n as i64),
        Cell::Int(n_states as i64),
        Cell::Float(closed_v),
        Cell::Float(modal_v),
        Cell::Float(full_v),
        Cell::Float(diff_modal),
        Cell::Float(diff_full),
        Cell::Float(droop_reference),
    ]);

    let svg = if opts.plot {
        modal.as_ref().and_then(|r| r.per_mode.as_ref()).map(|per_mode| {
            let points: Vec<(f64, f64)> = lambdas
                .iter()
                .zip(per_mode)
                .map(|(&l, &c)| (l, c))
                .collect();
            svg::line_plot(
                "Per-mode H2 contributions",
                "Laplacian eigenvalue",
                "squared H2 contribution",
                false,
                &[svg::Series {
                    label: "per-mode",
                    points: &points,
                }],
            )
        })
    } else {
        None
    };

    let tol = inputs.analysis.rel_tolerance;
    let mut summary_lines = vec![
        format!("controller:              {}", describe_controller(controller)),
        format!("network:                 {n} buses, {} lines", inputs.topology.lines().len()),
        format!("h2^2 closed form:        {}", fmt_float(closed_v)),
        format!("h2^2 Lyapunov (modal):   {}", fmt_float(modal_v)),
        format!("h2^2 Lyapunov (full):    {}", fmt_float(full_v)),
    ];
    for (label, diff) in [("closed vs modal", diff_modal), ("closed vs full", diff_full)] {
        if !diff.is_nan() {
            let verdict = if diff <= tol { "OK" } else { "DISAGREE" };
            summary_lines.push(format!(
                "rel diff {label}:  {} [tol {tol:.1e}: {verdict}]",
                fmt_float(diff)
            ));
        }
    }

    Ok(Artifacts {
        csv,
        svg,
        json_summary: json!({
            "h2_squared_closed_form": fmt_float(closed_v),
            "h2_squared_lyapunov_modal": fmt_float(modal_v),
            "h2_squared_lyapunov_full": fmt_float(full_v),
            "rel_diff_closed_modal": fmt_float(diff_modal),
            "rel_diff_closed_full": fmt_float(diff_full),
            "h2_squared_droop": fmt_float(droop_reference),
        }),
        summary_lines,
    })
}

fn optimize(inputs: &ValidatedInputs, opts: &RunOptions) -> Result<Artifacts> {
    let hp = inputs.params.homogeneous()?;
    let decomp = eigendecompose(&inputs.topology.laplacian())?;
    let lambdas: Vec<f64> = decomp.lambdas().iter().cloned().collect();
    let r_r_inv = inputs.controller.r_r_inv();
    let tuning_opts = TuningOptions {
        delta_rec: inputs.analysis.delta_rec,
        nu_max: inputs.analysis.nu_max,
    };
    let report = tuning::tuning_report(&lambdas, &hp, r_r_inv, &tuning_opts)?;

    let improvement_percent = if report.h2_droop.is_finite() && report.h2_droop > 0.0 {
        100.0 * (1.0 - report.h2_at_optimum / report.h2_droop)
    } else {
        f64::NAN
    };
    let (lo, hi, lo_inclusive) = if report.interval.is_empty() {
        (f64::NAN, f64::NAN, false)
    } else {
        (
            report.interval.lo,
            report.interval.hi,
            report.interval.lo_inclusive,
        )
    };

    let mut csv = CsvTable::new(vec![
        "regime",
        "nu_star",
        "nu_star_capped",
        "threshold_gap",
        "interval_empty",
        "interval_lo",
        "interval_lo_inclusive",
        "interval_hi",
        "h2_squared_droop",
        "h2_squared_at_optimum",
        "h2_squared_at_delta_rec",
        "delta_rec",
        "improvement_percent",
    ]);
    csv.push_row(vec![
        Cell::Text(report.regime.name().into()),
        Cell::Float(report.nu_star),
        Cell::Bool(report.nu_star_capped),
        Cell::Float(report.threshold_gap),
        Cell::Bool(report.interval.is_empty()),
        Cell::Float(lo),
        Cell::Bool(lo_inclusive),
        Cell::Float(hi),
        Cell::Float(report.h2_droop),
        Cell::Float(report.h2_at_optimum),
        Cell::Float(report.h2_at_delta_rec),
        Cell::Float(report.delta_rec),
        Cell::Float(improvement_percent),
    ]);

    let svg = opts.plot.then(|| {
        let span = (2.0 * report.nu_star.max(r_r_inv)).max(1.0);
        let n_curve = inputs.topology.n_buses();
        let curve: Vec<(f64, f64)> = (0..400)
            .map(|i| {
                let nu = span * i as f64 / 399.0;
                (nu, closedform::g_of_nu(n_curve, &hp, nu))
            })
            .collect();
        let reference: Vec<(f64, f64)> = vec![(0.0, report.h2_droop), (span, report.h2_droop)];
        svg::line_plot(
            "H2 vs high-frequency gain (small filter pole)",
            "nu",
            "squared H2 norm",
            false,
            &[
                svg::Series {
                    label: "lead-lag",
                    points: &curve,
                },
                svg::Series {
                    label: "droop",
                    points: &reference,
                },
            ],
        )
    });

    let interval_text = if report.interval.is_empty() {
        "empty".to_string()
    } else {
        format!(
            "{}{}, {})",
            if lo_inclusive { "[" } else { "(" },
            fmt_float(lo),
            fmt_float(hi)
        )
    };
    let summary_lines = vec![
        format!("regime:                  {}", report.regime.name()),
        format!(
            "nu_star:                 {}{}",
            fmt_float(report.nu_star),
            if report.nu_star_capped { " (capped)" } else { "" }
        ),
        format!("improvement interval:    {interval_text}"),
        format!("h2^2 droop:              {}", fmt_float(report.h2_droop)),
        format!("h2^2 at optimum:         {}", fmt_float(report.h2_at_optimum)),
        format!(
            "h2^2 at delta_rec={:.0e}: {}",
            report.delta_rec,
            fmt_float(report.h2_at_delta_rec)
        ),
        format!("improvement:             {improvement_percent:.4}%"),
    ];

    Ok(Artifacts {
        csv,
        svg,
        json_summary: json!({
            "regime": report.regime.name(),
            "nu_star": fmt_float(report.nu_star),
            "nu_star_capped": report.nu_star_capped,
            "threshold_gap": fmt_float(report.threshold_gap),
            "interval_empty": report.interval.is_empty(),
            "h2_squared_droop": fmt_float(report.h2_droop),
            "h2_squared_at_optimum": fmt_float(report.h2_at_optimum),
            "improvement_percent": fmt_float(improvement_percent),
        }),
        summary_lines,
    })
}

fn delay_row(report: &DelayReport, gain: f64, lambda_n: f64) -> Vec<Cell> {
    vec![
        Cell::Text(report.method.name().into()),
        Cell::Float(gain),
        Cell::Float(report.tau_rob),
        Cell::Float(report.crossover_frequency.unwrap_or(f64::NAN)),
        Cell::Float(report.lower_bound),
        Cell::Float(lambda_n),
    ]
}

fn delay(inputs: &ValidatedInputs, opts: &RunOptions) -> Result<Artifacts> {
    let hp = inputs.params.homogeneous()?;
    let decomp = eigendecompose(&inputs.topology.laplacian())?;
    let lambdas: Vec<f64> = decomp.lambdas().iter().cloned().collect();
    let lambda_n = decomp.lambda_max();
    let controller = &inputs.controller;

    let regimes: Vec<ClosedFormRegime> = match *controller {
        ControllerConfig::Droop { r_r_inv } => vec![ClosedFormRegime::DeltaInf { r_r_inv }],
        ControllerConfig::IDroop { nu, delta, r_r_inv } => {
            if delta == 0.0 {
                vec![ClosedFormRegime::DeltaZero { nu }]
            } else {
                vec![
                    ClosedFormRegime::DeltaZero { nu },
                    ClosedFormRegime::DeltaInf { r_r_inv },
                ]
            }
        }
        ControllerConfig::VirtualInertia { .. } => {
            return Err(Error::Input(
                "delay analysis supports droop and the lead-lag controller".into(),
            ))
        }
    };

    let mut csv = CsvTable::new(vec![
        "method",
        "effective_gain",
        "tau_rob_seconds",
        "crossover_frequency_rad_s",
        "lower_bound_seconds",
        "lambda_n",
    ]);
    let mut summary_lines = vec![
        format!("controller:              {}", describe_controller(controller)),
        format!("lambda_n:                {}", fmt_float(lambda_n)),
    ];

    for regime in &regimes {
        let report = tau_rob_closed(lambda_n, hp.m, hp.d, *regime)?;
        summary_lines.push(format!(
            "tau_rob ({}):   {} s",
            report.method.name(),
            fmt_float(report.tau_rob)
        ));
        csv.push_row(delay_row(&report, regime.gain(), lambda_n));
    }

    let bisection_opts = BisectionOptions {
        tau_max: inputs.analysis.tau_max,
        tolerance: inputs.analysis.tau_tolerance,
    };
    let numeric = tau_rob_bisection(&lambdas, hp.m, hp.d, controller, &bisection_opts)?;
    summary_lines.push(format!(
        "tau_rob (bisection):     {} s",
        fmt_float(numeric.tau_rob)
    ));
    summary_lines.push(format!(
        "lower bound:             {} s",
        fmt_float(numeric.lower_bound)
    ));
    let numeric_gain = controller.sup_gain();
    csv.push_row(delay_row(&numeric, numeric_gain, lambda_n));

    let svg = opts.plot.then(|| -> String {
        let tau = if numeric.tau_rob.is_finite() {
            numeric.tau_rob
        } else {
            0.0
        };
        let omega_hi = numeric.crossover_frequency.unwrap_or(1.0) * 4.0;
        let points: Vec<(f64, f64)> = (0..2000)
            .filter_map(|i| {
                let omega = omega_hi * (i as f64 + 1.0) / 2000.0;
                crate::delay::loop_transfer(lambda_n, hp.m, hp.d, controller, tau, omega)
                    .ok()
                    .map(|l| (l.re, l.im))
            })
            .collect();
        let cross_h = vec![(-1.05, 0.0), (-0.95, 0.0)];
        let cross_v = vec![(-1.0, -0.05), (-1.0, 0.05)];
        svg::line_plot(
            "Nyquist locus of the binding mode at tau_rob",
            "Re",
            "Im",
            false,
            &[
                svg::Series {
                    label: "locus",
                    points: &points,
                },
                svg::Series {
                    label: "-1",
                    points: &cross_h,
                },
                svg::Series {
                    label: "",
                    points: &cross_v,
                },
            ],
        )
    });

    Ok(Artifacts {
        csv,
        svg,
        json_summary: json!({
            "tau_rob_bisection_seconds": fmt_float(numeric.tau_rob),
            "lower_bound_seconds": fmt_float(numeric.lower_bound),
            "lambda_n": fmt_float(lambda_n),
        }),
        summary_lines,
    })
}

fn simulate(inputs: &ValidatedInputs, opts: &RunOptions) -> Result<Artifacts> {
    let model = assemble_state_space(&inputs.topology, &inputs.params, &inputs.controller)?;
    let sim_config = inputs.sim;
    let result = simulate_sde(&model, &sim_config)?;

    let (analytic, analytic_method) = if inputs.params.is_homogeneous() {
        let hp = inputs.params.homogeneous()?;
        let decomp = eigendecompose(&inputs.topology.laplacian())?;
        let lambdas: Vec<f64> = decomp.lambdas().iter().cloned().collect();
        (
            h2_closed_form(&lambdas, &hp, &inputs.controller)?,
            "closed_form",
        )
    } else {
        (h2_numeric_full(&model)?.squared_norm, "lyapunov_full")
    };

    let empirical = result.empirical_h2_squared.unwrap_or(f64::NAN);
    let std_error = result.std_error.unwrap_or(f64::NAN);
    let abs_error = (empirical - analytic).abs();
    let rel_error = abs_error / analytic.abs().max(1e-300);
    let z_score = abs_error / std_error;

    let mut csv = CsvTable::new(vec![
        "empirical_h2_squared",
        "std_error",
        "analytic_h2_squared",
        "analytic_method",
        "abs_error",
        "rel_error",
        "z_score",
        "diverged",
        "n_trajectories",
        "dt",
        "horizon",
        "burn_in",
        "seed",
    ]);
    csv.push_row(vec![
        Cell::Float(empirical),
        Cell::Float(std_error),
        Cell::Float(analytic),
        Cell::Text(analytic_method.into()),
        Cell::Float(abs_error),
        Cell::Float(rel_error),
        Cell::Float(z_score),
        Cell::Bool(result.diverged),
        Cell::Int(sim_config.n_trajectories as i64),
        Cell::Float(sim_config.dt),
        Cell::Float(sim_config.horizon),
        Cell::Float(sim_config.burn_in),
        Cell::Int(sim_config.seed as i64),
    ]);

    let svg = if opts.plot {
        let stride = ((sim_config.horizon / sim_config.dt) as usize / 2000).max(1);
        let trace = simulate_sde_trace(&model, &sim_config, 0, stride)?;
        Some(svg::line_plot(
            "Output energy along trajectory 0",
            "time (s)",
            "y^T y",
            false,
            &[svg::Series {
                label: "y^T y",
                points: &trace,
            }],
        ))
    } else {
        None
    };

    let summary_lines = vec![
        format!("empirical h2^2:          {}", fmt_float(empirical)),
        format!("std error:               {}", fmt_float(std_error)),
        format!("analytic h2^2:           {} ({analytic_method})", fmt_float(analytic)),
        format!("|z|:                     {z_score:.3}"),
        format!("relative error:          {rel_error:.5}"),
        format!("diverged:                {}", result.diverged),
    ];

    Ok(Artifacts {
        csv,
        svg,
        json_summary: json!({
            "empirical_h2_squared": fmt_float(empirical),
            "std_error": fmt_float(std_error),
            "analytic_h2_squared": fmt_float(analytic),
            "analytic_method": analytic_method,
            "z_score": fmt_float(z_score),
            "diverged": result.diverged,
            "seed": sim_config.seed,
        }),
        summary_lines,
    })
}

fn sweep(inputs: &ValidatedInputs, opts: &RunOptions) -> Result<Artifacts> {
    let Some(plan) = &inputs.sweep else {
        return Err(Error::Validation {
            violations: vec!["sweep: the sweep command needs a [sweep] section".into()],
        });
    };
    let hp = inputs.params.homogeneous()?;
    let ControllerConfig::IDroop { nu, delta, r_r_inv } = inputs.controller else {
        return Err(Error::Validation {
            violations: vec![
                "controller.kind: the sweep command compares the lead-lag controller \
                 against droop; set kind = \"idroop\""
                    .into(),
            ],
        });
    };
    let decomp = eigendecompose(&inputs.topology.laplacian())?;
    let lambdas: Vec<f64> = decomp.lambdas().iter().cloned().collect();
    let rows = tuning::sweep(plan.axis, &plan.grid, &lambdas, &hp, nu, delta, r_r_inv)?;

    let mut csv = CsvTable::new(vec![
        "axis",
        "value",
        "h2_squared_idroop",
        "h2_squared_droop",
        "tau_rob_lower_bound",
    ]);
    for row in &rows {
        csv.push_row(vec![
            Cell::Text(plan.axis.name().into()),
            Cell::Float(row.value),
            Cell::Float(row.h2_idroop),
            Cell::Float(row.h2_droop),
            Cell::Float(row.tau_rob_lower_bound),
        ]);
    }

    let svg = opts.plot.then(|| {
        let idroop_curve: Vec<(f64, f64)> =
            rows.iter().map(|r| (r.value, r.h2_idroop)).collect();
        let droop_curve: Vec<(f64, f64)> =
            rows.iter().map(|r| (r.value, r.h2_droop)).collect();
        svg::line_plot(
            &format!("H2 sweep over {}", plan.axis.name()),
            plan.axis.name(),
            "squared H2 norm",
            plan.log_scale,
            &[
                svg::Series {
                    label: "lead-lag",
                    points: &idroop_curve,
                },
                svg::Series {
                    label: "droop",
                    points: &droop_curve,
                },
            ],
        )
    });

    let first = rows.first().expect("grid validated nonempty");
    let last = rows.last().expect("grid validated nonempty");
    let summary_lines = vec![
        format!("axis:                    {}", plan.axis.name()),
        format!("grid:                    {} points in [{}, {}]", rows.len(), first.value, last.value),
        format!(
            "h2^2 idroop range:       [{}, {}]",
            fmt_float(rows.iter().map(|r| r.h2_idroop).fold(f64::INFINITY, f64::min)),
            fmt_float(rows.iter().map(|r| r.h2_idroop).fold(f64::NEG_INFINITY, f64::max))
        ),
        format!("h2^2 droop (fixed):      {}", fmt_float(first.h2_droop)),
    ];

    Ok(Artifacts {
        csv,
        svg,
        json_summary: json!({
            "axis": plan.axis.name(),
            "points": rows.len(),
            "h2_squared_droop": fmt_float(first.h2_droop),
        }),
        summary_lines,
    })
}
