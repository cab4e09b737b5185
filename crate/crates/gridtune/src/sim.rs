//! Monte Carlo and delayed-feedback simulation.
//!
//! `simulate_sde` integrates `dx = A x dt + B dW` by Euler-Maruyama and
//! estimates the steady-state output energy `lim E[y^T y]` — the
//! empirical counterpart of the squared H2 norm — with a standard error
//! taken across independent trajectories. Trajectory RNG streams are
//! derived from `(seed, trajectory index)`, so results are bit-identical
//! regardless of how the work is scheduled.
//!
//! `simulate_delayed` runs a deterministic impulse response of one modal
//! loop with the controller reading the frequency through a ring buffer
//! of length `tau`, to confirm stability verdicts near the delay margin.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::netmodel::{ControllerConfig, StateSpaceModel};
use crate::HURWITZ_TOL;

/// State norm above which a run is declared diverged.
const DIVERGENCE_NORM: f64 = 1e12;

/// Monte Carlo configuration. Defaults hit a few percent relative error
/// on the desk-scale reference cases in seconds of runtime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    /// Integration step (s).
    pub dt: f64,
    /// Total simulated time per trajectory (s).
    pub horizon: f64,
    /// Initial stretch discarded before averaging (s).
    pub burn_in: f64,
    pub n_trajectories: usize,
    pub seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            dt: 1e-3,
            horizon: 200.0,
            burn_in: 50.0,
            n_trajectories: 64,
            seed: 0,
        }
    }
}

impl SimConfig {
    fn validate(&self, model: &StateSpaceModel) -> Result<()> {
        if !(self.dt > 0.0) {
            return Err(Error::Input(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.burn_in >= 0.0) || self.burn_in >= self.horizon {
            return Err(Error::Input(format!(
                "burn_in must satisfy 0 <= burn_in < horizon, got burn_in = {}, horizon = {}",
                self.burn_in, self.horizon
            )));
        }
        if self.n_trajectories == 0 {
            return Err(Error::Input("n_trajectories must be positive".into()));
        }
        // Stability of the model up to its single marginal angle mode,
        // and dt at most a tenth of the fastest time constant.
        let eigs = model.a().complex_eigenvalues();
        let mut zero_modes = 0;
        let mut fastest = 0.0_f64;
        for e in eigs.iter() {
            if e.norm() < HURWITZ_TOL {
                zero_modes += 1;
            } else if e.re >= -HURWITZ_TOL {
                return Err(Error::unstable_eigenvalue(*e));
            }
            fastest = fastest.max(e.re.abs());
        }
        if zero_modes > 1 {
            return Err(Error::unstable(format!(
                "{zero_modes} marginal modes; only the single angle mode is expected"
            )));
        }
        if self.dt * fastest > 0.1 {
            return Err(Error::Input(format!(
                "dt = {} exceeds a tenth of the fastest time constant 1/{fastest:.3}",
                self.dt
            )));
        }
        Ok(())
    }
}

/// Empirical squared-H2 estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimResult {
    /// Mean of `y^T y` over post-burn-in samples and trajectories;
    /// absent when the run diverged.
    pub empirical_h2_squared: Option<f64>,
    /// Standard error across trajectory means; absent when diverged or
    /// with a single trajectory.
    pub std_error: Option<f64>,
    pub diverged: bool,
}

fn trajectory_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    bytes[0..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&index.to_le_bytes());
    bytes[16..24].copy_from_slice(&0x9E37_79B9_7F4A_7C15u64.to_le_bytes());
    ChaCha8Rng::from_seed(bytes)
}

/// Euler-Maruyama estimate of the steady-state output energy of a stable
/// network model driven by unit white noise.
pub fn simulate_sde(model: &StateSpaceModel, config: &SimConfig) -> Result<SimResult> {
    config.validate(model)?;
    let a = model.a();
    let b = model.b();
    let n_states = model.n_states();
    let n_inputs = b.ncols();
    let omega_range = model.omega_range();

    let steps = (config.horizon / config.dt).round() as usize;
    let burn_steps = (config.burn_in / config.dt).round() as usize;
    let sqrt_dt = config.dt.sqrt();

    let mut trajectory_means = Vec::with_capacity(config.n_trajectories);
    let mut x = DVector::<f64>::zeros(n_states);
    let mut drift = DVector::<f64>::zeros(n_states);
    let mut kick = DVector::<f64>::zeros(n_states);
    let mut noise = DVector::<f64>::zeros(n_inputs);

    for k in 0..config.n_trajectories {
        let mut rng = trajectory_rng(config.seed, k as u64);
        x.fill(0.0);
        let mut acc = 0.0;
        let mut samples = 0usize;
        for step in 0..steps {
            for v in noise.iter_mut() {
                *v = rng.sample::<f64, _>(StandardNormal) * sqrt_dt;
            }
            drift.gemv(config.dt, a, &x, 0.0);
            kick.gemv(1.0, b, &noise, 0.0);
            x += &drift;
            x += &kick;
            if x.amax() > DIVERGENCE_NORM {
                return Ok(SimResult {
                    empirical_h2_squared: None,
                    std_error: None,
                    diverged: true,
                });
            }
            if step >= burn_steps {
                let mut yty = 0.0;
                for i in omega_range.clone() {
                    yty += x[i] * x[i];
                }
                acc += yty;
                samples += 1;
            }
        }
        trajectory_means.push(acc / samples as f64);
    }

    let k = trajectory_means.len() as f64;
    let mean = trajectory_means.iter().sum::<f64>() / k;
    let std_error = if trajectory_means.len() > 1 {
        let var = trajectory_means
            .iter()
            .map(|m| (m - mean) * (m - mean))
            .sum::<f64>()
            / (k - 1.0);
        Some((var / k).sqrt())
    } else {
        None
    };
    Ok(SimResult {
        empirical_h2_squared: Some(mean),
        std_error,
        diverged: false,
    })
}

/// Re-run one trajectory of [`simulate_sde`] (same RNG stream, so the
/// path is identical) and record `(t, y^T y)` every `stride` steps; used
/// for plotting.
pub fn simulate_sde_trace(
    model: &StateSpaceModel,
    config: &SimConfig,
    trajectory_index: u64,
    stride: usize,
) -> Result<Vec<(f64, f64)>> {
    config.validate(model)?;
    let a = model.a();
    let b = model.b();
    let omega_range = model.omega_range();
    let steps = (config.horizon / config.dt).round() as usize;
    let sqrt_dt = config.dt.sqrt();
    let stride = stride.max(1);

    let mut rng = trajectory_rng(config.seed, trajectory_index);
    let mut x = DVector::<f64>::zeros(model.n_states());
    let mut drift = DVector::<f64>::zeros(model.n_states());
    let mut kick = DVector::<f64>::zeros(model.n_states());
    let mut noise = DVector::<f64>::zeros(b.ncols());
    let mut trace = Vec::with_capacity(steps / stride + 1);
    for step in 0..steps {
        for v in noise.iter_mut() {
            *v = rng.sample::<f64, _>(StandardNormal) * sqrt_dt;
        }
        drift.gemv(config.dt, a, &x, 0.0);
        kick.gemv(1.0, b, &noise, 0.0);
        x += &drift;
        x += &kick;
        if x.amax() > DIVERGENCE_NORM {
            break;
        }
        if step % stride == 0 {
            let mut yty = 0.0;
            for i in omega_range.clone() {
                yty += x[i] * x[i];
            }
            trace.push(((step + 1) as f64 * config.dt, yty));
        }
    }
    Ok(trace)
}

/// Outcome of a deterministic delayed impulse-response run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelayedSimResult {
    pub diverged: bool,
    /// Largest `|omega|` seen across modes and time.
    pub peak_abs_y: f64,
    /// Step actually used; `dt` is shrunk so the delay is a whole number
    /// of steps.
    pub dt_used: f64,
}

/// Modal right-hand side with delayed frequency feedback.
struct DelayedMode {
    lambda: f64,
    m: f64,
    d: f64,
    controller: ControllerConfig,
}

impl DelayedMode {
    /// State is `(theta, omega, z)`; droop keeps `z` identically zero.
    fn derivative(&self, state: [f64; 3], omega_delayed: f64) -> [f64; 3] {
        let [theta, omega, z] = state;
        match self.controller {
            ControllerConfig::Droop { r_r_inv } => {
                let inverter = -r_r_inv * omega_delayed;
                [
                    omega,
                    (-self.d * omega - self.lambda * theta + inverter) / self.m,
                    0.0,
                ]
            }
            ControllerConfig::IDroop { nu, delta, r_r_inv } => {
                let inverter = z - nu * omega_delayed;
                [
                    omega,
                    (-self.d * omega - self.lambda * theta + inverter) / self.m,
                    delta * (nu - r_r_inv) * omega_delayed - delta * z,
                ]
            }
            ControllerConfig::VirtualInertia { .. } => unreachable!("rejected on entry"),
        }
    }
}

/// Deterministic impulse response of each modal loop with the frequency
/// measurement delayed by `tau` through a ring buffer (`dt` is adjusted
/// down so the delay is an integer number of steps). The run starts from
/// a unit frequency perturbation with zero pre-history, integrates with
/// Heun's method, and flags divergence when the peak `|omega|` grows
/// monotonically across the last fifth of the horizon (or the state
/// blows past 1e12).
pub fn simulate_delayed(
    lambdas: &[f64],
    m: f64,
    d: f64,
    config: &ControllerConfig,
    tau: f64,
    dt: f64,
    horizon: f64,
) -> Result<DelayedSimResult> {
    config.validate()?;
    if matches!(config, ControllerConfig::VirtualInertia { .. }) {
        return Err(Error::Input(
            "delayed simulation supports droop and the lead-lag controller".into(),
        ));
    }
    if lambdas.is_empty() {
        return Err(Error::Input("no eigenvalues supplied".into()));
    }
    if !(m > 0.0) || !(d >= 0.0) || !(tau >= 0.0) || !(dt > 0.0) || !(horizon > dt) {
        return Err(Error::Input(format!(
            "need m > 0, d >= 0, tau >= 0, dt > 0, horizon > dt; got m = {m}, d = {d}, \
             tau = {tau}, dt = {dt}, horizon = {horizon}"
        )));
    }

    // Shrink dt so tau sits on the step grid.
    let (dt_used, delay_steps) = if tau > 0.0 {
        let k = (tau / dt).ceil().max(1.0);
        (tau / k, k as usize)
    } else {
        (dt, 0)
    };
    let steps = (horizon / dt_used).round() as usize;
    if steps > 100_000_000 {
        return Err(Error::Input(format!(
            "horizon/dt = {steps} steps is beyond the supported budget"
        )));
    }

    let mut peak_all = 0.0_f64;
    let mut any_diverged = false;

    let mut sorted = lambdas.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut last = f64::NEG_INFINITY;
    for &lambda in &sorted {
        if (lambda - last).abs() <= 1e-12 * lambda.abs().max(1.0) {
            continue;
        }
        last = lambda;
        if lambda < -crate::ZERO_MODE_TOL {
            return Err(Error::Input(format!("negative eigenvalue {lambda}")));
        }
        let mode = DelayedMode {
            lambda: lambda.max(0.0),
            m,
            d,
            controller: *config,
        };
        let mut state = [0.0, 1.0, 0.0];
        let mut omega_history = vec![0.0_f64; steps + 2];
        omega_history[0] = state[1];
        let mut abs_omega = Vec::with_capacity(steps + 1);
        abs_omega.push(1.0);
        peak_all = peak_all.max(1.0);
        let mut blew_up = false;

        for step in 0..steps {
            let delayed_now = if step >= delay_steps {
                omega_history[step - delay_steps]
            } else {
                0.0
            };
            let k1 = mode.derivative(state, delayed_now);
            let predictor = [
                state[0] + dt_used * k1[0],
                state[1] + dt_used * k1[1],
                state[2] + dt_used * k1[2],
            ];
            let delayed_next = if delay_steps == 0 {
                predictor[1]
            } else if step + 1 >= delay_steps {
                omega_history[step + 1 - delay_steps]
            } else {
                0.0
            };
            let k2 = mode.derivative(predictor, delayed_next);
            for i in 0..3 {
                state[i] += 0.5 * dt_used * (k1[i] + k2[i]);
            }
            omega_history[step + 1] = state[1];
            let mag = state[1].abs();
            abs_omega.push(mag);
            peak_all = peak_all.max(mag);
            if !mag.is_finite()
                || state.iter().any(|v| v.abs() > DIVERGENCE_NORM)
            {
                blew_up = true;
                break;
            }
        }

        if blew_up {
            any_diverged = true;
            continue;
        }

        // Windowed trend on the last fifth: strictly increasing
        // sub-window peaks mean the envelope is growing.
        let tail_start = abs_omega.len() - abs_omega.len() / 5;
        let tail = &abs_omega[tail_start..];
        let windows = 5;
        let w = tail.len() / windows;
        if w > 0 {
            let peaks: Vec<f64> = (0..windows)
                .map(|i| {
                    tail[i * w..(i + 1) * w]
                        .iter()
                        .cloned()
                        .fold(0.0, f64::max)
                })
                .collect();
            if peaks.windows(2).all(|p| p[1] > p[0]) {
                any_diverged = true;
            }
        }
    }

    Ok(DelayedSimResult {
        diverged: any_diverged,
        peak_abs_y: peak_all,
        dt_used,
    })
}
