//! Delay robustness of the inverter feedback loop.
//!
//! With a uniform measurement delay `tau`, the homogeneous network is
//! stable iff the Nyquist locus of
//!
//! ```text
//! L_i(s) = s c(s) e^(-s tau) / (m s^2 + d s + lambda_i)
//! ```
//!
//! has zero winding number about `-1` for every Laplacian eigenvalue
//! `lambda_i`. The delay robustness `tau_rob` is the largest delay that
//! keeps every winding number zero; it is found numerically by bisection
//! on the winding-number test, and in the two constant-gain regimes of
//! the lead-lag controller (`delta = 0`, gain `nu`; `delta -> inf`, gain
//! `r_r_inv`) it has a closed form: `arccos(-d/a) / omega_n` with
//! `omega_n` the largest unit-gain frequency of the `lambda_n` mode. When
//! the effective gain does not exceed the damping (`a <= d`) the loop
//! gain never reaches one and any delay is tolerated.
//!
//! Winding numbers are computed by accumulating unwrapped phase
//! increments of `L + 1` over an adaptively refined frequency grid; the
//! grid refines wherever the phase step exceeds 0.1 rad or the loop gain
//! sits in the unit-circle band, because coarse grids fail silently near
//! `-1`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::netmodel::ControllerConfig;

/// Damping substituted for `d = 0` in numeric winding numbers; the closed
/// forms remain valid at `d = 0` itself.
const D_FLOOR: f64 = 1e-9;

/// Distance to `-1` below which the locus is declared marginal.
const MARGINAL_DISTANCE: f64 = 1e-9;

const PHASE_STEP: f64 = 0.1;
const GAIN_BAND: (f64, f64) = (0.5, 2.0);
const MAX_DEPTH: u32 = 64;

/// Numeric eigendecompositions leave the structural zero eigenvalue a hair
/// negative; clamp within tolerance, reject anything genuinely negative.
fn clamp_lambda(lambda: f64) -> Result<f64> {
    if lambda < -crate::ZERO_MODE_TOL {
        return Err(Error::Input(format!(
            "Laplacian eigenvalue must be nonnegative, got {lambda}"
        )));
    }
    Ok(lambda.max(0.0))
}

/// How a delay-robustness number was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DelayMethod {
    ClosedFormDeltaZero,
    ClosedFormDeltaInf,
    Bisection,
}

impl DelayMethod {
    pub fn name(&self) -> &'static str {
        match self {
            DelayMethod::ClosedFormDeltaZero => "closed_form_delta0",
            DelayMethod::ClosedFormDeltaInf => "closed_form_delta_inf",
            DelayMethod::Bisection => "bisection",
        }
    }
}

/// Delay robustness result.
#[derive(Debug, Clone)]
pub struct DelayReport {
    /// Largest tolerated uniform delay in seconds; `+inf` when the
    /// effective gain does not exceed the damping.
    pub tau_rob: f64,
    pub method: DelayMethod,
    /// Largest unit-gain frequency of the binding mode, when the loop
    /// gain reaches one at all.
    pub crossover_frequency: Option<f64>,
    /// `m pi / (2 sqrt(a^2 + 2 m lambda_n))`, a closed-form floor under
    /// `tau_rob`.
    pub lower_bound: f64,
}

/// The two constant-gain regimes with closed-form delay robustness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedFormRegime {
    /// Lead-lag with `delta = 0`: the controller is the constant `nu`.
    DeltaZero { nu: f64 },
    /// `delta -> inf` (equivalently static droop): constant `r_r_inv`.
    DeltaInf { r_r_inv: f64 },
}

impl ClosedFormRegime {
    pub fn gain(&self) -> f64 {
        match *self {
            ClosedFormRegime::DeltaZero { nu } => nu,
            ClosedFormRegime::DeltaInf { r_r_inv } => r_r_inv,
        }
    }

    fn method(&self) -> DelayMethod {
        match self {
            ClosedFormRegime::DeltaZero { .. } => DelayMethod::ClosedFormDeltaZero,
            ClosedFormRegime::DeltaInf { .. } => DelayMethod::ClosedFormDeltaInf,
        }
    }
}

/// Largest frequency at which a constant-gain loop `a omega / |den|` has
/// unit gain: `omega_n(x) = sqrt(sqrt(x^2 + 2 x lambda/m) + x + lambda/m)`
/// with `x = (a^2 - d^2) / (2 m^2)`.
pub fn unit_gain_frequency(x: f64, lambda: f64, m: f64) -> f64 {
    let ratio = lambda / m;
    ((x * x + 2.0 * x * ratio).sqrt() + x + ratio).sqrt()
}

/// Closed-form floor under the delay robustness,
/// `m pi / (2 sqrt(a^2 + 2 m lambda_n))`.
pub fn tau_rob_lower_bound(lambda_n: f64, m: f64, a: f64) -> f64 {
    m * std::f64::consts::PI / (2.0 * (a * a + 2.0 * m * lambda_n).sqrt())
}

/// Evaluate the delayed loop transfer function
/// `s c(s) e^(-s tau) / (m s^2 + d s + lambda)` at `s = j omega`.
///
/// Needs `d > 0` so the rational part has no imaginary-axis poles; at
/// `lambda = 0` the pole at the origin cancels against the numerator `s`
/// and the `omega = 0` value is the finite limit `c(0)/d`.
pub fn loop_transfer(
    lambda: f64,
    m: f64,
    d: f64,
    config: &ControllerConfig,
    tau: f64,
    omega: f64,
) -> Result<Complex64> {
    if !(d > 0.0) {
        return Err(Error::Domain(format!(
            "loop transfer needs d > 0 (got d = {d}); the winding-number \
             routines substitute d = 1e-9 for d = 0"
        )));
    }
    if !(m > 0.0) {
        return Err(Error::Domain(format!("loop transfer needs m > 0, got m = {m}")));
    }
    let lambda = clamp_lambda(lambda)?;
    let s = Complex64::new(0.0, omega);
    let c = crate::netmodel::controller_transfer(config, s)?;
    if omega == 0.0 && lambda == 0.0 {
        return Ok(c / d);
    }
    let delay = Complex64::from_polar(1.0, -omega * tau);
    let den = Complex64::new(lambda - m * omega * omega, d * omega);
    Ok(s * c * delay / den)
}

/// Reject controllers the winding-number machinery cannot handle: the
/// virtual-inertia gain grows without bound, so its locus never rolls off.
fn check_windable(config: &ControllerConfig) -> Result<()> {
    config.validate()?;
    if matches!(config, ControllerConfig::VirtualInertia { .. }) {
        return Err(Error::Input(
            "virtual inertia has unbounded loop gain; winding-number delay \
             analysis supports droop and the lead-lag controller"
                .into(),
        ));
    }
    Ok(())
}

struct LoopEvaluator {
    lambda: f64,
    m: f64,
    d: f64,
    config: ControllerConfig,
    tau: f64,
}

impl LoopEvaluator {
    /// `L(j omega) + 1`, guarding the marginal band around -1.
    fn shifted(&self, omega: f64) -> Result<Complex64> {
        let l = loop_transfer(self.lambda, self.m, self.d, &self.config, self.tau, omega)?;
        let shifted = l + 1.0;
        let distance = shifted.norm();
        if distance < MARGINAL_DISTANCE {
            return Err(Error::MarginalStability { distance });
        }
        Ok(shifted)
    }

    fn accumulate(
        &self,
        a: f64,
        la: Complex64,
        b: f64,
        lb: Complex64,
        depth: u32,
    ) -> Result<f64> {
        let increment = (lb / la).arg();
        let gain_a = (la - 1.0).norm();
        let gain_b = (lb - 1.0).norm();
        let in_band = (GAIN_BAND.0..=GAIN_BAND.1).contains(&gain_a)
            || (GAIN_BAND.0..=GAIN_BAND.1).contains(&gain_b);
        let needs_split =
            increment.abs() > PHASE_STEP || (in_band && (b - a) > 1e-3 * a);
        if needs_split && depth < MAX_DEPTH {
            let mid = (a * b).sqrt();
            if mid <= a || mid >= b {
                return Ok(increment);
            }
            let lm = self.shifted(mid)?;
            return Ok(self.accumulate(a, la, mid, lm, depth + 1)?
                + self.accumulate(mid, lm, b, lb, depth + 1)?);
        }
        Ok(increment)
    }
}

/// Net clockwise encirclements of `-1` by the Nyquist locus of the
/// delayed loop for one Laplacian eigenvalue. Zero means the mode is
/// stable under delay `tau`.
pub fn winding_number(
    lambda: f64,
    m: f64,
    d: f64,
    config: &ControllerConfig,
    tau: f64,
) -> Result<i32> {
    check_windable(config)?;
    let lambda = clamp_lambda(lambda)?;
    if !(m > 0.0) || !(tau >= 0.0) {
        return Err(Error::Input(format!(
            "winding number needs m > 0 and tau >= 0; got m = {m}, tau = {tau}"
        )));
    }
    if !(d >= 0.0) {
        return Err(Error::Domain(format!("damping must be nonnegative, got {d}")));
    }
    let d_eff = if d == 0.0 { D_FLOOR } else { d };
    let eval = LoopEvaluator {
        lambda,
        m,
        d: d_eff,
        config: *config,
        tau,
    };

    // Upper end of the active band: beyond this, a loop with gain bounded
    // by c_max has |L| <= c_max w / (m w^2 - lambda) < 0.4, monotonically
    // decreasing, so the tail cannot wind.
    let c_max = config.sup_gain();
    let omega_hi = 1.5 * (c_max + (c_max * c_max + 0.64 * m * lambda).sqrt()) / (0.8 * m);
    let omega_min = (1e-4 / (1.0 + tau)).min(omega_hi / 1e3);

    // Log-spaced base grid, subdivided so the delay phase advances at
    // most 0.4 rad per segment.
    let decades = (omega_hi / omega_min).log10();
    let n_base = ((decades * 128.0).ceil() as usize).max(8);
    let mut grid = Vec::with_capacity(n_base + 1);
    for i in 0..=n_base {
        grid.push(omega_min * 10f64.powf(decades * i as f64 / n_base as f64));
    }

    let mut total = 0.0;
    let mut prev_omega = grid[0];
    let mut prev_val = eval.shifted(prev_omega)?;
    // Anchor: the continuous phase at omega -> 0 is zero (the locus
    // starts on the positive real axis), so the principal argument at
    // omega_min is the exact phase change over (0, omega_min].
    total += prev_val.arg();
    for &omega in grid.iter().skip(1) {
        let mut segment_start = prev_omega;
        let mut start_val = prev_val;
        let delay_steps = ((omega - segment_start) * tau / 0.4).ceil().max(1.0) as usize;
        for k in 1..=delay_steps {
            let target =
                segment_start + (omega - segment_start) * k as f64 / delay_steps as f64;
            let val = eval.shifted(target)?;
            total += eval.accumulate(segment_start, start_val, target, val, 0)?;
            segment_start = target;
            start_val = val;
        }
        prev_omega = omega;
        prev_val = start_val;
    }
    // Tail: |L| < 0.4 keeps the phase of L + 1 inside (-pi/2, pi/2) all
    // the way out, where it tends to zero.
    total -= prev_val.arg();

    let turns = total / std::f64::consts::PI;
    let rounded = turns.round();
    if (turns - rounded).abs() > 0.15 {
        return Err(Error::Numerical(format!(
            "winding number did not resolve: accumulated {turns} half-turns"
        )));
    }
    Ok(-(rounded as i32))
}

/// True iff every mode of the homogeneous network has zero winding number
/// under uniform delay `tau`. Duplicate eigenvalues are tested once.
pub fn is_stable_with_delay(
    lambdas: &[f64],
    m: f64,
    d: f64,
    config: &ControllerConfig,
    tau: f64,
) -> Result<bool> {
    if lambdas.is_empty() {
        return Err(Error::Input("no eigenvalues supplied".into()));
    }
    let mut sorted = lambdas.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut last = f64::NEG_INFINITY;
    for &lambda in &sorted {
        if (lambda - last).abs() <= 1e-12 * lambda.abs().max(1.0) {
            continue;
        }
        last = lambda;
        if winding_number(lambda, m, d, config, tau)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Closed-form delay robustness in a constant-gain regime:
/// `tau_rob = arccos(-d/a) / omega_n((a^2 - d^2)/(2 m^2))`, or `+inf`
/// when the gain does not exceed the damping.
pub fn tau_rob_closed(lambda_n: f64, m: f64, d: f64, regime: ClosedFormRegime) -> Result<DelayReport> {
    let a = regime.gain();
    let lambda_n = clamp_lambda(lambda_n)?;
    if !(m > 0.0) || !(d >= 0.0) || !(a > 0.0) {
        return Err(Error::Input(format!(
            "closed-form delay robustness needs m > 0, d >= 0, gain > 0; \
             got m = {m}, d = {d}, gain = {a}"
        )));
    }
    let lower_bound = tau_rob_lower_bound(lambda_n, m, a);
    if a <= d {
        return Ok(DelayReport {
            tau_rob: f64::INFINITY,
            method: regime.method(),
            crossover_frequency: None,
            lower_bound,
        });
    }
    let x = (a * a - d * d) / (2.0 * m * m);
    let omega_n = unit_gain_frequency(x, lambda_n, m);
    Ok(DelayReport {
        tau_rob: (-d / a).acos() / omega_n,
        method: regime.method(),
        crossover_frequency: Some(omega_n),
        lower_bound,
    })
}

/// Options for [`tau_rob_bisection`].
#[derive(Debug, Clone, Copy)]
pub struct BisectionOptions {
    /// Largest delay probed before declaring the loop robust to any
    /// delay; the bracket doubles from 1 s up to this cap.
    pub tau_max: f64,
    /// Absolute bisection tolerance in seconds.
    pub tolerance: f64,
}

impl Default for BisectionOptions {
    fn default() -> Self {
        BisectionOptions {
            tau_max: 1e3,
            tolerance: 1e-6,
        }
    }
}

/// Is the network stable at this delay, counting a marginal locus as
/// unstable so bisection shrinks onto the boundary.
fn stable_probe(
    lambdas: &[f64],
    m: f64,
    d: f64,
    config: &ControllerConfig,
    tau: f64,
) -> Result<bool> {
    match is_stable_with_delay(lambdas, m, d, config, tau) {
        Ok(b) => Ok(b),
        Err(Error::MarginalStability { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Numeric delay robustness by bisection on the winding-number stability
/// test over all modes.
///
/// When the controller's peak gain stays at or below the damping the loop
/// gain never reaches one and the result is `+inf` without probing. A
/// loop still stable at `tau_max` with peak gain above the damping
/// reports `tau_max` itself (a conservative finite answer).
pub fn tau_rob_bisection(
    lambdas: &[f64],
    m: f64,
    d: f64,
    config: &ControllerConfig,
    opts: &BisectionOptions,
) -> Result<DelayReport> {
    check_windable(config)?;
    if lambdas.is_empty() {
        return Err(Error::Input("no eigenvalues supplied".into()));
    }
    let lambda_n = lambdas.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let a_eff = config.sup_gain();
    let lower_bound = tau_rob_lower_bound(lambda_n, m, a_eff);
    if a_eff <= d {
        return Ok(DelayReport {
            tau_rob: f64::INFINITY,
            method: DelayMethod::Bisection,
            crossover_frequency: None,
            lower_bound,
        });
    }
    if !stable_probe(lambdas, m, d, config, 0.0)? {
        return Err(Error::unstable(
            "network is unstable at zero delay; no delay margin exists",
        ));
    }

    let mut lo = 0.0;
    let mut hi = 1.0_f64.min(opts.tau_max);
    loop {
        if !stable_probe(lambdas, m, d, config, hi)? {
            break;
        }
        lo = hi;
        if hi >= opts.tau_max {
            return Ok(DelayReport {
                tau_rob: opts.tau_max,
                method: DelayMethod::Bisection,
                crossover_frequency: crossover_frequency(lambdas, m, d, config),
                lower_bound,
            });
        }
        hi = (hi * 2.0).min(opts.tau_max);
    }

    while hi - lo > opts.tolerance {
        let mid = 0.5 * (lo + hi);
        if stable_probe(lambdas, m, d, config, mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(DelayReport {
        tau_rob: 0.5 * (lo + hi),
        method: DelayMethod::Bisection,
        crossover_frequency: crossover_frequency(lambdas, m, d, config),
        lower_bound,
    })
}

/// Largest unit-gain frequency of the delay-free loop over all modes
/// (delay is all-pass, so the gain profile does not depend on tau).
/// `None` when the gain never reaches one.
fn crossover_frequency(
    lambdas: &[f64],
    m: f64,
    d: f64,
    config: &ControllerConfig,
) -> Option<f64> {
    let d_eff = if d == 0.0 { D_FLOOR } else { d };
    let gain = |lambda: f64, omega: f64| -> f64 {
        loop_transfer(lambda, m, d_eff, config, 0.0, omega)
            .map(|l| l.norm())
            .unwrap_or(0.0)
    };
    let c_max = config.sup_gain();
    let mut best: Option<f64> = None;
    for &lambda in lambdas {
        let omega_hi = 1.5 * (c_max + (c_max * c_max + 0.64 * m * lambda).sqrt()) / (0.8 * m);
        let omega_min = omega_hi / 1e8;
        let n = 4096;
        let mut bracket = None;
        // Scan downward so the first unit crossing found is the largest.
        for i in (0..n).rev() {
            let w0 = omega_min * (omega_hi / omega_min).powf(i as f64 / n as f64);
            let w1 = omega_min * (omega_hi / omega_min).powf((i + 1) as f64 / n as f64);
            let (g0, g1) = (gain(lambda, w0), gain(lambda, w1));
            if (g0 - 1.0) * (g1 - 1.0) <= 0.0 && (g0 != g1) {
                bracket = Some((w0, w1));
                break;
            }
        }
        if let Some((mut w0, mut w1)) = bracket {
            for _ in 0..100 {
                let mid = (w0 * w1).sqrt();
                if (gain(lambda, w0) - 1.0) * (gain(lambda, mid) - 1.0) <= 0.0 {
                    w1 = mid;
                } else {
                    w0 = mid;
                }
            }
            let w = (w0 * w1).sqrt();
            best = Some(best.map_or(w, |b: f64| b.max(w)));
        }
    }
    best
}
