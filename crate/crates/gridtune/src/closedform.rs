//! Exact closed-form H2 evaluation for homogeneous networks.
//!
//! Two independent expressions are kept deliberately distinct in code:
//! the mode-sum form used by [`h2_idroop`] and the rational-in-delta form
//! [`f_of_delta`] built from the alpha coefficients. They are algebraically
//! identical, so their agreement is a meaningful numeric cross-check, and
//! both must match the Lyapunov route on every homogeneous instance.
//!
//! All mode sums use compensated (Kahan) summation.

use crate::error::{Error, Result};
use crate::netmodel::{ControllerConfig, HomogeneousParams};

/// Compensated sum; mode counts stay small but this keeps the
/// closed-form-vs-closed-form equivalence tests meaningful at 1e-12.
pub(crate) fn kahan_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for x in values {
        let y = x - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Squared H2 norm of the droop-controlled network:
/// `n (k_p^2 + (r_r_inv k_omega)^2) / (2 m (d + r_r_inv))`.
pub fn h2_droop(n: usize, hp: &HomogeneousParams, r_r_inv: f64) -> f64 {
    let num = hp.k_p * hp.k_p + r_r_inv * r_r_inv * hp.k_omega * hp.k_omega;
    n as f64 * num / (2.0 * hp.m * (hp.d + r_r_inv))
}

/// Squared H2 norm of the lead-lag controller in the `delta = 0` limit:
/// `g(nu) = n (k_p^2 + nu^2 k_omega^2) / (2 m (d + nu))`.
pub fn g_of_nu(n: usize, hp: &HomogeneousParams, nu: f64) -> f64 {
    let num = hp.k_p * hp.k_p + nu * nu * hp.k_omega * hp.k_omega;
    n as f64 * num / (2.0 * hp.m * (hp.d + nu))
}

/// Squared H2 norm of the lead-lag controller, summed over the Laplacian
/// eigenvalues.
///
/// At `delta = 0` this is exactly `g(nu)`; the mode-dependent correction
/// vanishes identically there.
pub fn h2_idroop(
    lambdas: &[f64],
    hp: &HomogeneousParams,
    nu: f64,
    delta: f64,
    r_r_inv: f64,
) -> f64 {
    let n = lambdas.len();
    if delta == 0.0 {
        return g_of_nu(n, hp, nu);
    }
    let (m, d) = (hp.m, hp.d);
    let noise2 = hp.k_p * hp.k_p + nu * nu * hp.k_omega * hp.k_omega;
    let bracket = noise2 / (d + nu) - (nu + r_r_inv) * hp.k_omega * hp.k_omega;
    let numerator = delta * delta * (nu - r_r_inv) * bracket;
    let correction = kahan_sum(lambdas.iter().map(|&lambda| {
        numerator / (2.0 * ((d + nu + m * delta) * delta * (d + r_r_inv) + (d + nu) * lambda))
    }));
    n as f64 * noise2 / (2.0 * m * (d + nu)) + correction
}

/// Coefficients of the rational-in-`delta` form of the lead-lag H2 norm:
/// `f(delta) = n alpha5 + sum_i alpha1 delta^2 / (alpha2 delta^2 + alpha3
/// delta + alpha4(lambda_i))`.
///
/// The sign of `alpha1` decides whether `f` increases or decreases with
/// `delta`; `alpha2`, `alpha3`, `alpha5` are positive and
/// `alpha4(lambda) >= 0` for every Laplacian eigenvalue.
#[derive(Debug, Clone, Copy)]
pub struct AlphaCoefficients {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub alpha5: f64,
    alpha4_slope: f64,
}

impl AlphaCoefficients {
    pub fn alpha4(&self, lambda: f64) -> f64 {
        self.alpha4_slope * lambda
    }

    /// One mode's contribution to `f(delta) - n alpha5`.
    pub fn mode_term(&self, lambda: f64, delta: f64) -> f64 {
        if delta == 0.0 {
            return 0.0;
        }
        self.alpha1 * delta * delta
            / (self.alpha2 * delta * delta + self.alpha3 * delta + self.alpha4(lambda))
    }
}

/// Compute the alpha coefficients for a parameter set and lead-lag gain.
pub fn alpha_coefficients(hp: &HomogeneousParams, nu: f64, r_r_inv: f64) -> AlphaCoefficients {
    let (m, d) = (hp.m, hp.d);
    let noise2 = hp.k_p * hp.k_p + nu * nu * hp.k_omega * hp.k_omega;
    AlphaCoefficients {
        alpha1: (nu - r_r_inv) * (noise2 / (d + nu) - (nu + r_r_inv) * hp.k_omega * hp.k_omega),
        alpha2: 2.0 * m * (d + r_r_inv),
        alpha3: 2.0 * (d + nu) * (d + r_r_inv),
        alpha5: noise2 / (2.0 * m * (d + nu)),
        alpha4_slope: 2.0 * (d + nu),
    }
}

/// The lead-lag H2 norm as an explicit function of `delta`, via the alpha
/// coefficients. Equals [`h2_idroop`] for all inputs.
pub fn f_of_delta(
    lambdas: &[f64],
    hp: &HomogeneousParams,
    nu: f64,
    r_r_inv: f64,
    delta: f64,
) -> f64 {
    let alpha = alpha_coefficients(hp, nu, r_r_inv);
    let n = lambdas.len() as f64;
    n * alpha.alpha5 + kahan_sum(lambdas.iter().map(|&l| alpha.mode_term(l, delta)))
}

/// Direction of the H2 norm as `delta` grows, decided by the sign of
/// `alpha1`; `|alpha1| <= 1e-12` is reported as flat rather than broken
/// arbitrarily.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaTrend {
    Increasing,
    Decreasing,
    Flat,
}

pub fn delta_trend(alpha: &AlphaCoefficients) -> DeltaTrend {
    if alpha.alpha1.abs() <= 1e-12 {
        DeltaTrend::Flat
    } else if alpha.alpha1 > 0.0 {
        DeltaTrend::Increasing
    } else {
        DeltaTrend::Decreasing
    }
}

/// Closed-form squared H2 norm for any controller on a homogeneous
/// network with the given Laplacian eigenvalues.
///
/// Virtual inertia with frequency noise is `+inf`; without noise it is the
/// droop expression with inertia `m + nu`.
pub fn h2_closed_form(
    lambdas: &[f64],
    hp: &HomogeneousParams,
    config: &ControllerConfig,
) -> Result<f64> {
    config.validate()?;
    let n = lambdas.len();
    match *config {
        ControllerConfig::Droop { r_r_inv } => Ok(h2_droop(n, hp, r_r_inv)),
        ControllerConfig::VirtualInertia { nu, r_r_inv } => {
            if hp.k_omega > 0.0 {
                Ok(f64::INFINITY)
            } else {
                let added = HomogeneousParams { m: hp.m + nu, ..*hp };
                Ok(h2_droop(n, &added, r_r_inv))
            }
        }
        ControllerConfig::IDroop { nu, delta, r_r_inv } => {
            Ok(h2_idroop(lambdas, hp, nu, delta, r_r_inv))
        }
    }
}

/// Convenience guard used by the analysis front ends.
pub fn require_nonnegative(name: &str, value: f64) -> Result<()> {
    if value < 0.0 {
        Err(Error::Input(format!("{name} must be nonnegative, got {value}")))
    } else {
        Ok(())
    }
}
