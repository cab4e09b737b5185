//! Config file schema and validation.
//!
//! Configs are TOML with four required-or-optional sections: `[network]`,
//! `[params]`, `[controller]`, and the optional `[analysis]`, `[sweep]`,
//! `[sim]`. Unknown keys are rejected at parse time with a line/column
//! position; semantic violations are collected all at once, each naming
//! the offending field. The full schema is documented in
//! `docs/config.md`.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::netmodel::{ControllerConfig, Line, NetworkTopology, Param, SystemParams};
use crate::sim::SimConfig;
use crate::tuning::SweepAxis;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub network: NetworkSection,
    pub params: ParamsSection,
    pub controller: ControllerSection,
    #[serde(default)]
    pub analysis: AnalysisSection,
    #[serde(default)]
    pub sweep: Option<SweepSection>,
    #[serde(default)]
    pub sim: SimSection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSection {
    /// One of `single`, `path`, `ring`, `complete`, `custom`.
    pub kind: String,
    #[serde(default)]
    pub n_buses: Option<usize>,
    /// Uniform line susceptance for the generated kinds.
    #[serde(default)]
    pub susceptance: Option<f64>,
    /// Explicit line list for `kind = "custom"`.
    #[serde(default)]
    pub lines: Option<Vec<LineSpec>>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineSpec {
    pub i: usize,
    pub j: usize,
    pub b: f64,
}

/// A parameter that is either one number for all buses or a per-bus list.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ParamSpec {
    Uniform(f64),
    PerBus(Vec<f64>),
}

impl From<&ParamSpec> for Param {
    fn from(spec: &ParamSpec) -> Param {
        match spec {
            ParamSpec::Uniform(x) => Param::Uniform(*x),
            ParamSpec::PerBus(v) => Param::PerBus(v.clone()),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    pub m: ParamSpec,
    pub d: ParamSpec,
    pub k_p: ParamSpec,
    pub k_omega: ParamSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControllerSection {
    /// One of `droop`, `virtual_inertia`, `idroop`.
    pub kind: String,
    pub r_r_inv: f64,
    #[serde(default)]
    pub nu: Option<f64>,
    #[serde(default)]
    pub delta: Option<f64>,
}

/// Tolerances and knobs with library defaults; every value here is also a
/// config key so acceptance runs can pin them explicitly.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AnalysisSection {
    /// Laplacian eigenvalues below this are the structural zero mode.
    pub zero_mode_tolerance: f64,
    /// Cross-method relative agreement reported by `analyze`.
    pub rel_tolerance: f64,
    /// Deployable filter pole reported by `optimize`.
    pub delta_rec: f64,
    /// Gain cap when zero measurement noise leaves the optimum unbounded.
    pub nu_max: f64,
    /// Bisection bracket cap for `delay` (s).
    pub tau_max: f64,
    /// Absolute bisection tolerance for `delay` (s).
    pub tau_tolerance: f64,
}

impl Default for AnalysisSection {
    fn default() -> Self {
        AnalysisSection {
            zero_mode_tolerance: crate::ZERO_MODE_TOL,
            rel_tolerance: 1e-8,
            delta_rec: 1e-3,
            nu_max: 1e3,
            tau_max: 1e3,
            tau_tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    /// One of `nu`, `delta`, `kp_over_komega`, `lambda_n`.
    pub axis: String,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    /// `linear` (default) or `log`.
    #[serde(default = "default_scale")]
    pub scale: String,
}

fn default_scale() -> String {
    "linear".into()
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimSection {
    pub dt: f64,
    pub horizon: f64,
    pub burn_in: f64,
    pub n_trajectories: usize,
    pub seed: u64,
}

impl Default for SimSection {
    fn default() -> Self {
        let d = SimConfig::default();
        SimSection {
            dt: d.dt,
            horizon: d.horizon,
            burn_in: d.burn_in,
            n_trajectories: d.n_trajectories,
            seed: d.seed,
        }
    }
}

/// Parse config text, reporting syntax problems with their line/column.
/// The result still needs [`RunConfig::build_inputs`] before use.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    toml::from_str::<RunConfig>(text).map_err(|e| {
        let (line, column) = e
            .span()
            .map(|span| position_of(text, span.start))
            .unwrap_or((0, 0));
        Error::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })
}

fn position_of(text: &str, byte: usize) -> (usize, usize) {
    let clamped = byte.min(text.len());
    let mut line = 1;
    let mut col = 1;
    for (i, ch) in text.char_indices() {
        if i >= clamped {
            break;
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

/// Everything the commands need, built and validated.
#[derive(Debug, Clone)]
pub struct ValidatedInputs {
    pub topology: NetworkTopology,
    pub params: SystemParams,
    pub controller: ControllerConfig,
    pub analysis: AnalysisSection,
    pub sweep: Option<SweepPlan>,
    pub sim: SimConfig,
}

#[derive(Debug, Clone)]
pub struct SweepPlan {
    pub axis: SweepAxis,
    pub grid: Vec<f64>,
    pub log_scale: bool,
}

impl RunConfig {
    /// Validate every field and construct the domain objects, collecting
    /// all violations rather than stopping at the first.
    pub fn build_inputs(&self) -> Result<ValidatedInputs> {
        let mut violations: Vec<String> = Vec::new();

        let topology = self.build_topology(&mut violations);
        let params = self.build_params(&mut violations);
        if let Some(t) = &topology {
            let n = t.n_buses();
            for (name, spec) in [
                ("m", &self.params.m),
                ("d", &self.params.d),
                ("k_p", &self.params.k_p),
                ("k_omega", &self.params.k_omega),
            ] {
                if let ParamSpec::PerBus(v) = spec {
                    if v.len() != n {
                        violations.push(format!(
                            "params.{name}: has {} entries but the network has {n} buses",
                            v.len()
                        ));
                    }
                }
            }
        }
        let controller = self.build_controller(&mut violations);
        let sweep = self.build_sweep(&mut violations);

        let a = &self.analysis;
        for (field, value, needs_positive) in [
            ("analysis.zero_mode_tolerance", a.zero_mode_tolerance, true),
            ("analysis.rel_tolerance", a.rel_tolerance, true),
            ("analysis.delta_rec", a.delta_rec, true),
            ("analysis.nu_max", a.nu_max, true),
            ("analysis.tau_max", a.tau_max, true),
            ("analysis.tau_tolerance", a.tau_tolerance, true),
        ] {
            if needs_positive && !(value > 0.0) {
                violations.push(format!("{field}: must be positive, got {value}"));
            }
        }

        let s = &self.sim;
        if !(s.dt > 0.0) {
            violations.push(format!("sim.dt: must be positive, got {}", s.dt));
        }
        if !(s.burn_in >= 0.0) || s.burn_in >= s.horizon {
            violations.push(format!(
                "sim.burn_in: must satisfy 0 <= burn_in < horizon, got {} vs {}",
                s.burn_in, s.horizon
            ));
        }
        if s.n_trajectories == 0 {
            violations.push("sim.n_trajectories: must be positive".into());
        }

        if !violations.is_empty() {
            return Err(Error::Validation { violations });
        }
        Ok(ValidatedInputs {
            topology: topology.unwrap(),
            params: params.unwrap(),
            controller: controller.unwrap(),
            analysis: self.analysis,
            sweep,
            sim: SimConfig {
                dt: s.dt,
                horizon: s.horizon,
                burn_in: s.burn_in,
                n_trajectories: s.n_trajectories,
                seed: s.seed,
            },
        })
    }

    fn build_topology(&self, violations: &mut Vec<String>) -> Option<NetworkTopology> {
        let net = &self.network;
        let result = match net.kind.as_str() {
            "single" => NetworkTopology::new(1, Vec::new()),
            "path" | "ring" | "complete" => {
                let mut local = Vec::new();
                let n = net.n_buses.unwrap_or_else(|| {
                    local.push("network.n_buses: required for generated topologies".to_string());
                    0
                });
                let b = net.susceptance.unwrap_or_else(|| {
                    local.push("network.susceptance: required for generated topologies".to_string());
                    0.0
                });
                if net.lines.is_some() {
                    local.push(format!(
                        "network.lines: not applicable to kind \"{}\"",
                        net.kind
                    ));
                }
                if !local.is_empty() {
                    violations.extend(local);
                    return None;
                }
                match net.kind.as_str() {
                    "path" => NetworkTopology::path(n, b),
                    "ring" => NetworkTopology::ring(n, b),
                    _ => NetworkTopology::complete(n, b),
                }
            }
            "custom" => {
                let Some(lines) = &net.lines else {
                    violations.push("network.lines: required for kind \"custom\"".into());
                    return None;
                };
                let Some(n) = net.n_buses else {
                    violations.push("network.n_buses: required for kind \"custom\"".into());
                    return None;
                };
                NetworkTopology::new(
                    n,
                    lines.iter().map(|l| Line::new(l.i, l.j, l.b)).collect(),
                )
            }
            other => {
                violations.push(format!(
                    "network.kind: unknown kind {other:?}; expected single, path, ring, \
                     complete, or custom"
                ));
                return None;
            }
        };
        match result {
            Ok(t) => Some(t),
            Err(e) => {
                violations.push(format!("network: {e}"));
                None
            }
        }
    }

    fn build_params(&self, violations: &mut Vec<String>) -> Option<SystemParams> {
        let p = &self.params;
        let mut ok = true;
        let mut check = |name: &str, spec: &ParamSpec, strict: bool| {
            let values: Vec<f64> = match spec {
                ParamSpec::Uniform(x) => vec![*x],
                ParamSpec::PerBus(v) => {
                    if v.is_empty() {
                        violations.push(format!("params.{name}: per-bus list is empty"));
                        ok = false;
                    }
                    v.clone()
                }
            };
            for x in values {
                if strict && !(x > 0.0) {
                    violations.push(format!("params.{name}: must be positive, got {x}"));
                    ok = false;
                    break;
                }
                if !strict && !(x >= 0.0) {
                    violations.push(format!("params.{name}: must be nonnegative, got {x}"));
                    ok = false;
                    break;
                }
            }
        };
        check("m", &p.m, true);
        check("d", &p.d, true);
        check("k_p", &p.k_p, false);
        check("k_omega", &p.k_omega, false);
        if !ok {
            return None;
        }
        match SystemParams::new((&p.m).into(), (&p.d).into(), (&p.k_p).into(), (&p.k_omega).into())
        {
            Ok(params) => Some(params),
            Err(e) => {
                violations.push(format!("params: {e}"));
                None
            }
        }
    }

    fn build_controller(&self, violations: &mut Vec<String>) -> Option<ControllerConfig> {
        let c = &self.controller;
        if !(c.r_r_inv > 0.0) {
            violations.push(format!(
                "controller.r_r_inv: must be positive, got {}",
                c.r_r_inv
            ));
            return None;
        }
        let reject_extra = |name: &str, present: bool, violations: &mut Vec<String>| {
            if present {
                violations.push(format!(
                    "controller.{name}: not applicable to controller kind \"{}\"",
                    c.kind
                ));
            }
        };
        match c.kind.as_str() {
            "droop" => {
                let before = violations.len();
                reject_extra("nu", c.nu.is_some(), violations);
                reject_extra("delta", c.delta.is_some(), violations);
                (violations.len() == before).then_some(ControllerConfig::Droop {
                    r_r_inv: c.r_r_inv,
                })
            }
            "virtual_inertia" => {
                let before = violations.len();
                reject_extra("delta", c.delta.is_some(), violations);
                let Some(nu) = c.nu else {
                    violations.push("controller.nu: required for virtual_inertia".into());
                    return None;
                };
                if !(nu >= 0.0) {
                    violations.push(format!("controller.nu: must be nonnegative, got {nu}"));
                    return None;
                }
                (violations.len() == before).then_some(ControllerConfig::VirtualInertia {
                    nu,
                    r_r_inv: c.r_r_inv,
                })
            }
            "idroop" => {
                let mut ok = true;
                let nu = c.nu.unwrap_or_else(|| {
                    violations.push("controller.nu: required for idroop".into());
                    ok = false;
                    0.0
                });
                let delta = c.delta.unwrap_or_else(|| {
                    violations.push("controller.delta: required for idroop".into());
                    ok = false;
                    0.0
                });
                if ok && !(nu >= 0.0) {
                    violations.push(format!("controller.nu: must be nonnegative, got {nu}"));
                    ok = false;
                }
                if ok && !(delta >= 0.0) {
                    violations.push(format!("controller.delta: must be nonnegative, got {delta}"));
                    ok = false;
                }
                ok.then_some(ControllerConfig::IDroop {
                    nu,
                    delta,
                    r_r_inv: c.r_r_inv,
                })
            }
            other => {
                violations.push(format!(
                    "controller.kind: unknown kind {other:?}; expected droop, \
                     virtual_inertia, or idroop"
                ));
                None
            }
        }
    }

    fn build_sweep(&self, violations: &mut Vec<String>) -> Option<SweepPlan> {
        let section = self.sweep.as_ref()?;
        let axis = match SweepAxis::parse(&section.axis) {
            Ok(axis) => Some(axis),
            Err(_) => {
                violations.push(format!(
                    "sweep.axis: unknown axis {:?}; expected nu, delta, kp_over_komega, \
                     or lambda_n",
                    section.axis
                ));
                None
            }
        };
        if section.points < 2 {
            violations.push(format!(
                "sweep.points: need at least 2 grid points, got {}",
                section.points
            ));
        }
        if !(section.stop > section.start) {
            violations.push(format!(
                "sweep.stop: must exceed sweep.start, got [{}, {}]",
                section.start, section.stop
            ));
        }
        let log_scale = match section.scale.as_str() {
            "linear" => false,
            "log" => true,
            other => {
                violations.push(format!(
                    "sweep.scale: unknown scale {other:?}; expected linear or log"
                ));
                false
            }
        };
        if log_scale && !(section.start > 0.0) {
            violations.push(format!(
                "sweep.start: log scale needs a positive start, got {}",
                section.start
            ));
        }
        let axis = axis?;
        if section.points < 2 || !(section.stop > section.start) || (log_scale && section.start <= 0.0)
        {
            return None;
        }
        let n = section.points;
        let grid = (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                if log_scale {
                    section.start * (section.stop / section.start).powf(t)
                } else {
                    section.start + (section.stop - section.start) * t
                }
            })
            .collect();
        Some(SweepPlan {
            axis,
            grid,
            log_scale,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[network]
kind = "single"

[params]
m = 1.0
d = 1.0
k_p = 1.0
k_omega = 1.0

[controller]
kind = "droop"
r_r_inv = 1.0
"#;

    #[test]
    fn minimal_config_fills_defaults() {
        let cfg = parse_config(MINIMAL).unwrap();
        let inputs = cfg.build_inputs().unwrap();
        assert_eq!(inputs.topology.n_buses(), 1);
        assert_eq!(inputs.sim.n_trajectories, 64);
        assert_eq!(inputs.analysis.tau_max, 1e3);
        assert!(inputs.sweep.is_none());
    }

    #[test]
    fn negative_inertia_names_the_field() {
        let text = MINIMAL.replace("m = 1.0", "m = -2.0");
        let cfg = parse_config(&text).unwrap();
        match cfg.build_inputs() {
            Err(Error::Validation { violations }) => {
                assert!(violations.iter().any(|v| v.starts_with("params.m")));
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn idroop_missing_delta_names_the_field() {
        let text = MINIMAL.replace(
            "kind = \"droop\"\nr_r_inv = 1.0",
            "kind = \"idroop\"\nr_r_inv = 1.0\nnu = 2.0",
        );
        let cfg = parse_config(&text).unwrap();
        match cfg.build_inputs() {
            Err(Error::Validation { violations }) => {
                assert!(violations.iter().any(|v| v.starts_with("controller.delta")));
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_key_is_a_parse_error_with_position() {
        let text = format!("{MINIMAL}\n[analysis]\nbogus_key = 1.0\n");
        match parse_config(&text) {
            Err(Error::Parse { line, column, message }) => {
                assert!(line > 0 && column > 0, "({line}, {column})");
                assert!(message.contains("bogus_key") || message.contains("unknown"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_syntax_is_a_parse_error() {
        assert!(matches!(
            parse_config("[network\nkind = "),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn violations_are_collected_together() {
        let text = MINIMAL
            .replace("m = 1.0", "m = -2.0")
            .replace("d = 1.0", "d = 0.0")
            .replace("r_r_inv = 1.0", "r_r_inv = -1.0");
        let cfg = parse_config(&text).unwrap();
        match cfg.build_inputs() {
            Err(Error::Validation { violations }) => {
                assert!(violations.len() >= 3, "violations: {violations:?}");
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn per_bus_length_mismatch_names_the_field() {
        let text = MINIMAL.replace("d = 1.0", "d = [1.0, 2.0, 3.0]");
        let cfg = parse_config(&text).unwrap();
        match cfg.build_inputs() {
            Err(Error::Validation { violations }) => {
                assert!(violations.iter().any(|v| v.starts_with("params.d")));
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn per_bus_params_parse() {
        let text = MINIMAL
            .replace("kind = \"single\"", "kind = \"path\"\nn_buses = 2\nsusceptance = 1.0")
            .replace("m = 1.0", "m = [1.0, 2.0]");
        let inputs = parse_config(&text).unwrap().build_inputs().unwrap();
        assert!(!inputs.params.is_homogeneous());
    }

    #[test]
    fn sweep_grid_is_built() {
        let text = format!(
            "{MINIMAL}\n[sweep]\naxis = \"delta\"\nstart = 0.1\nstop = 10.0\npoints = 3\nscale = \"log\"\n"
        );
        let inputs = parse_config(&text).unwrap().build_inputs().unwrap();
        let plan = inputs.sweep.unwrap();
        assert_eq!(plan.axis, SweepAxis::Delta);
        assert_eq!(plan.grid.len(), 3);
        assert!((plan.grid[1] - 1.0).abs() < 1e-12);
    }
}
