//! Lead-lag controller tuning: the optimal high-frequency gain, the
//! interval of gains that strictly beat static droop, regime
//! classification, and parameter sweeps.
//!
//! With the filter pole `delta` taken as small as deployable, the H2 norm
//! reduces to `g(nu)`, minimized at `nu* = -d + sqrt(d^2 + (k_p/k_omega)^2)`.
//! Gains strictly between the matched gain `r_r_inv` and the second root
//! `((k_p/k_omega)^2 - r_r_inv d) / (d + r_r_inv)` improve on droop for
//! every `delta >= 0`; the two roots coincide exactly on the threshold
//! `(k_p/k_omega)^2 = 2 r_r_inv d + r_r_inv^2`, where droop can only be
//! matched, never beaten.

use crate::closedform::{g_of_nu, h2_droop, h2_idroop};
use crate::delay::tau_rob_lower_bound;
use crate::error::{Error, Result};
use crate::netmodel::HomogeneousParams;

/// Optimal lead-lag high-frequency gain `nu*` for the `delta -> 0` design.
///
/// With `k_omega = 0` the H2 norm keeps decreasing in `nu` and no finite
/// minimizer exists; the error tells the caller to pick `nu` as large as
/// other constraints allow.
pub fn optimal_nu(d: f64, k_p: f64, k_omega: f64) -> Result<f64> {
    if !(d >= 0.0) || !(k_p >= 0.0) || !(k_omega >= 0.0) {
        return Err(Error::Input(
            "optimal_nu needs d >= 0, k_p >= 0, k_omega >= 0".into(),
        ));
    }
    if k_omega == 0.0 {
        return Err(Error::UnboundedOptimum(
            "with k_omega = 0 the H2 norm decreases toward its power-disturbance \
             asymptote; pick nu as large as other constraints allow"
                .into(),
        ));
    }
    let ratio = k_p / k_omega;
    Ok(-d + (d * d + ratio * ratio).sqrt())
}

/// Interval of lead-lag gains that strictly improve on droop, open at both
/// roots and clipped to `nu >= 0` (the clipped endpoint is closed).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuInterval {
    pub lo: f64,
    pub hi: f64,
    pub lo_inclusive: bool,
    empty: bool,
}

impl NuInterval {
    pub fn empty() -> Self {
        NuInterval {
            lo: f64::NAN,
            hi: f64::NAN,
            lo_inclusive: false,
            empty: true,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    /// Membership with strict inequalities at open endpoints, using a
    /// 1e-12 relative slack; endpoint equality gives parity with droop,
    /// not improvement.
    pub fn contains(&self, nu: f64) -> bool {
        if self.empty {
            return false;
        }
        let slack = |x: f64| 1e-12 * x.abs().max(1.0);
        let above = if self.lo_inclusive {
            nu >= self.lo
        } else {
            nu > self.lo + slack(self.lo)
        };
        let below = if self.hi.is_infinite() {
            true
        } else {
            nu < self.hi - slack(self.hi)
        };
        above && below
    }
}

/// Improvement interval for the lead-lag gain `nu`.
///
/// The roots are `nu1 = r_r_inv` and
/// `nu2 = ((k_p/k_omega)^2 - r_r_inv d) / (d + r_r_inv)`; the interval is
/// the open span between them intersected with `[0, inf)`, empty when they
/// coincide (to 1e-12). `nu*` always lies inside a nonempty interval.
pub fn improvement_interval(d: f64, r_r_inv: f64, k_p: f64, k_omega: f64) -> Result<NuInterval> {
    if !(d > 0.0) && !(d == 0.0) {
        return Err(Error::Input(format!("damping d must be nonnegative, got {d}")));
    }
    if !(r_r_inv > 0.0) {
        return Err(Error::Input(format!(
            "droop gain r_r_inv must be positive, got {r_r_inv}"
        )));
    }
    if k_p == 0.0 && k_omega == 0.0 {
        // No disturbances at all: every controller gives zero norm.
        return Ok(NuInterval::empty());
    }
    let nu1 = r_r_inv;
    let ratio2 = if k_omega == 0.0 {
        f64::INFINITY
    } else {
        (k_p / k_omega) * (k_p / k_omega)
    };
    let nu2 = (ratio2 - r_r_inv * d) / (d + r_r_inv);
    if (nu1 - nu2).abs() <= 1e-12 * nu1.abs().max(1.0) {
        return Ok(NuInterval::empty());
    }
    let (raw_lo, raw_hi) = if nu1 < nu2 { (nu1, nu2) } else { (nu2, nu1) };
    if raw_lo < 0.0 {
        Ok(NuInterval {
            lo: 0.0,
            hi: raw_hi,
            lo_inclusive: true,
            empty: false,
        })
    } else {
        Ok(NuInterval {
            lo: raw_lo,
            hi: raw_hi,
            lo_inclusive: false,
            empty: false,
        })
    }
}

/// Compensation regime of the optimally tuned controller.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `nu* > r_r_inv`: power disturbances dominate, phase lead helps.
    Lead,
    /// `nu* < r_r_inv`: measurement noise dominates, phase lag helps.
    Lag,
    /// On the threshold `(k_p/k_omega)^2 = 2 r_r_inv d + r_r_inv^2`:
    /// droop can be matched but not beaten.
    Degenerate,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::Lead => "lead",
            Regime::Lag => "lag",
            Regime::Degenerate => "degenerate",
        }
    }
}

/// Gap between the squared noise ratio and the degeneracy threshold:
/// `(k_p/k_omega)^2 - (2 r_r_inv d + r_r_inv^2)`. Positive means lead.
pub fn threshold_gap(d: f64, r_r_inv: f64, k_p: f64, k_omega: f64) -> f64 {
    let ratio2 = (k_p / k_omega) * (k_p / k_omega);
    ratio2 - (2.0 * r_r_inv * d + r_r_inv * r_r_inv)
}

/// Classify lead vs lag from the threshold gap; `|gap| <= 1e-12` (relative
/// to the threshold scale) is degenerate.
pub fn classify_regime(d: f64, r_r_inv: f64, k_p: f64, k_omega: f64) -> Result<Regime> {
    if k_omega == 0.0 && k_p == 0.0 {
        return Err(Error::Input(
            "regime classification needs at least one nonzero noise intensity".into(),
        ));
    }
    if k_omega == 0.0 {
        return Ok(Regime::Lead);
    }
    let gap = threshold_gap(d, r_r_inv, k_p, k_omega);
    let scale = (2.0 * r_r_inv * d + r_r_inv * r_r_inv).abs().max(1.0);
    if gap.abs() <= 1e-12 * scale {
        Ok(Regime::Degenerate)
    } else if gap > 0.0 {
        Ok(Regime::Lead)
    } else {
        Ok(Regime::Lag)
    }
}

/// Knobs for [`tuning_report`].
#[derive(Debug, Clone, Copy)]
pub struct TuningOptions {
    /// Deployable filter pole reported alongside the `delta -> 0` optimum;
    /// the state-space realization needs `delta > 0`.
    pub delta_rec: f64,
    /// Cap on the recommended gain when `k_omega = 0` leaves the optimum
    /// unbounded.
    pub nu_max: f64,
}

impl Default for TuningOptions {
    fn default() -> Self {
        TuningOptions {
            delta_rec: 1e-3,
            nu_max: 1e3,
        }
    }
}

/// Full tuning summary for a homogeneous network.
#[derive(Debug, Clone)]
pub struct TuningReport {
    pub nu_star: f64,
    /// True when `k_omega = 0` forced the `nu_max` cap.
    pub nu_star_capped: bool,
    pub interval: NuInterval,
    pub regime: Regime,
    /// Squared norm at `(nu*, delta = 0)`.
    pub h2_at_optimum: f64,
    /// Squared norm at `(nu*, delta_rec)`, the deployable setting.
    pub h2_at_delta_rec: f64,
    pub delta_rec: f64,
    pub h2_droop: f64,
    pub threshold_gap: f64,
}

/// Compute the tuning report: optimal gain, improvement interval, regime,
/// and the droop reference value.
pub fn tuning_report(
    lambdas: &[f64],
    hp: &HomogeneousParams,
    r_r_inv: f64,
    opts: &TuningOptions,
) -> Result<TuningReport> {
    if lambdas.is_empty() {
        return Err(Error::Input("tuning needs at least one eigenvalue".into()));
    }
    let n = lambdas.len();
    let (nu_star, capped) = match optimal_nu(hp.d, hp.k_p, hp.k_omega) {
        Ok(nu) => (nu, false),
        Err(Error::UnboundedOptimum(_)) => (opts.nu_max, true),
        Err(e) => return Err(e),
    };
    let regime = classify_regime(hp.d, r_r_inv, hp.k_p, hp.k_omega)?;
    let interval = improvement_interval(hp.d, r_r_inv, hp.k_p, hp.k_omega)?;
    let gap = if hp.k_omega == 0.0 {
        f64::INFINITY
    } else {
        threshold_gap(hp.d, r_r_inv, hp.k_p, hp.k_omega)
    };
    Ok(TuningReport {
        nu_star,
        nu_star_capped: capped,
        interval,
        regime,
        h2_at_optimum: g_of_nu(n, hp, nu_star),
        h2_at_delta_rec: h2_idroop(lambdas, hp, nu_star, opts.delta_rec, r_r_inv),
        delta_rec: opts.delta_rec,
        h2_droop: h2_droop(n, hp, r_r_inv),
        threshold_gap: gap,
    })
}

/// Which parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Nu,
    Delta,
    KpOverKomega,
    LambdaMax,
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::Nu => "nu",
            SweepAxis::Delta => "delta",
            SweepAxis::KpOverKomega => "kp_over_komega",
            SweepAxis::LambdaMax => "lambda_n",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "nu" => Ok(SweepAxis::Nu),
            "delta" => Ok(SweepAxis::Delta),
            "kp_over_komega" => Ok(SweepAxis::KpOverKomega),
            "lambda_n" => Ok(SweepAxis::LambdaMax),
            other => Err(Error::Input(format!(
                "unknown sweep axis {other:?}; expected nu, delta, kp_over_komega, or lambda_n"
            ))),
        }
    }
}

/// One sweep sample: the parameter value, the lead-lag and droop squared
/// norms, and a delay-robustness lower bound `m pi / (2 sqrt(a^2 + 2 m
/// lambda_n))` evaluated at the conservative gain `a = max(nu, r_r_inv)`.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub value: f64,
    pub h2_idroop: f64,
    pub h2_droop: f64,
    pub tau_rob_lower_bound: f64,
}

/// Evaluate the closed forms along a monotone grid of one parameter,
/// holding everything else fixed.
pub fn sweep(
    axis: SweepAxis,
    grid: &[f64],
    lambdas: &[f64],
    hp: &HomogeneousParams,
    nu: f64,
    delta: f64,
    r_r_inv: f64,
) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(Error::Input("sweep grid is empty".into()));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Input("sweep grid must be strictly increasing".into()));
    }
    if lambdas.is_empty() {
        return Err(Error::Input("sweep needs at least one eigenvalue".into()));
    }
    let n = lambdas.len();
    let lambda_max = lambdas[n - 1];
    match axis {
        SweepAxis::KpOverKomega if hp.k_omega == 0.0 => {
            return Err(Error::Input(
                "kp_over_komega sweep requires k_omega > 0".into(),
            ));
        }
        SweepAxis::LambdaMax if n < 2 => {
            return Err(Error::Input(
                "lambda_n sweep needs a network with at least two buses".into(),
            ));
        }
        _ => {}
    }

    let rows = grid
        .iter()
        .map(|&value| {
            let (h2_i, h2_d, a, l_max) = match axis {
                SweepAxis::Nu => (
                    h2_idroop(lambdas, hp, value, delta, r_r_inv),
                    h2_droop(n, hp, r_r_inv),
                    value.max(r_r_inv),
                    lambda_max,
                ),
                SweepAxis::Delta => (
                    h2_idroop(lambdas, hp, nu, value, r_r_inv),
                    h2_droop(n, hp, r_r_inv),
                    nu.max(r_r_inv),
                    lambda_max,
                ),
                SweepAxis::KpOverKomega => {
                    let scaled = HomogeneousParams {
                        k_p: value * hp.k_omega,
                        ..*hp
                    };
                    (
                        h2_idroop(lambdas, &scaled, nu, delta, r_r_inv),
                        h2_droop(n, &scaled, r_r_inv),
                        nu.max(r_r_inv),
                        lambda_max,
                    )
                }
                SweepAxis::LambdaMax => {
                    let mut swept = lambdas.to_vec();
                    swept[n - 1] = value;
                    (
                        h2_idroop(&swept, hp, nu, delta, r_r_inv),
                        h2_droop(n, hp, r_r_inv),
                        nu.max(r_r_inv),
                        value,
                    )
                }
            };
            SweepRow {
                value,
                h2_idroop: h2_i,
                h2_droop: h2_d,
                tau_rob_lower_bound: tau_rob_lower_bound(l_max, hp.m, a),
            }
        })
        .collect();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::alpha_coefficients;
    use approx::assert_relative_eq;
    use rand::Rng;

    fn hp(m: f64, d: f64, k_p: f64, k_omega: f64) -> HomogeneousParams {
        HomogeneousParams { m, d, k_p, k_omega }
    }

    #[test]
    fn optimal_nu_reference_values() {
        assert_relative_eq!(optimal_nu(1.0, 3f64.sqrt(), 1.0).unwrap(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(optimal_nu(0.0, 1.0, 1.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(
            optimal_nu(1.0, 10.0, 1.0).unwrap(),
            101f64.sqrt() - 1.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn zero_noise_optimum_is_unbounded() {
        assert!(matches!(
            optimal_nu(1.0, 1.0, 0.0),
            Err(Error::UnboundedOptimum(_))
        ));
    }

    #[test]
    fn optimal_nu_minimizes_g_on_a_grid() {
        let p = hp(1.0, 1.0, 10.0, 1.0);
        let nu_star = optimal_nu(p.d, p.k_p, p.k_omega).unwrap();
        let g_star = g_of_nu(1, &p, nu_star);
        for k in 0..1000 {
            let nu = 10.0 * nu_star * k as f64 / 999.0;
            let g = g_of_nu(1, &p, nu);
            assert!(g_star <= g + 1e-12);
            if (nu - nu_star).abs() > 1e-6 {
                assert!(g_star < g, "not strict at nu = {nu}");
            }
        }
    }

    #[test]
    fn interval_lead_case() {
        let interval = improvement_interval(1.0, 1.0, 10.0, 1.0).unwrap();
        assert!(!interval.is_empty());
        assert_relative_eq!(interval.lo, 1.0, max_relative = 1e-15);
        assert_relative_eq!(interval.hi, 49.5, max_relative = 1e-14);
        assert!(!interval.lo_inclusive);
        let nu_star = optimal_nu(1.0, 10.0, 1.0).unwrap();
        assert!(interval.contains(nu_star));
        assert!(!interval.contains(1.0));
        assert!(!interval.contains(49.5));
    }

    #[test]
    fn interval_degenerate_case() {
        let interval = improvement_interval(1.0, 1.0, 3f64.sqrt(), 1.0).unwrap();
        assert!(interval.is_empty());
        assert!(!interval.contains(1.0));
    }

    #[test]
    fn interval_lag_case_clips_to_zero() {
        let interval = improvement_interval(1.0, 1.0, 0.1, 1.0).unwrap();
        assert!(!interval.is_empty());
        assert_eq!(interval.lo, 0.0);
        assert!(interval.lo_inclusive);
        assert_relative_eq!(interval.hi, 1.0, max_relative = 1e-15);
        let nu_star = optimal_nu(1.0, 0.1, 1.0).unwrap();
        assert!(interval.contains(nu_star));
        assert!(interval.contains(0.0));
    }

    #[test]
    fn regime_classification() {
        assert_eq!(classify_regime(1.0, 1.0, 10.0, 1.0).unwrap(), Regime::Lead);
        assert_eq!(classify_regime(1.0, 1.0, 0.1, 1.0).unwrap(), Regime::Lag);
        assert_eq!(
            classify_regime(1.0, 1.0, 3f64.sqrt(), 1.0).unwrap(),
            Regime::Degenerate
        );
        assert_eq!(classify_regime(1.0, 1.0, 1.0, 0.0).unwrap(), Regime::Lead);
    }

    #[test]
    fn improvement_holds_inside_interval() {
        let mut rng = crate::test_rng(41);
        let mut tested = 0;
        while tested < 20 {
            let d = rng.random_range(0.1..5.0);
            let r = rng.random_range(0.1..5.0);
            let k_p = rng.random_range(0.0..5.0);
            let k_omega = rng.random_range(0.1..5.0);
            let interval = improvement_interval(d, r, k_p, k_omega).unwrap();
            if interval.is_empty() {
                continue;
            }
            tested += 1;
            let p = hp(rng.random_range(0.1..5.0), d, k_p, k_omega);
            let lambdas = [0.0, rng.random_range(0.1..20.0)];
            let reference = h2_droop(2, &p, r);
            let hi = if interval.hi.is_finite() {
                interval.hi
            } else {
                interval.lo.max(1.0) * 10.0
            };
            for i in 0..10 {
                let frac = (i as f64 + 0.5) / 10.0;
                let nu = interval.lo + frac * (hi - interval.lo);
                if !interval.contains(nu) {
                    continue;
                }
                for j in 0..10 {
                    let delta = 10.0 * j as f64 / 9.0;
                    let v = h2_idroop(&lambdas, &p, nu, delta, r);
                    assert!(
                        v < reference,
                        "no improvement at nu = {nu}, delta = {delta}: {v} vs {reference}"
                    );
                }
            }
        }
    }

    #[test]
    fn bracket_between_nu_star_and_matched_gain_improves() {
        // The improvement condition stated via nu* also holds: any nu in
        // [nu*, r) or (r, nu*] beats droop whenever off the threshold.
        let cases = [(1.0, 1.0, 10.0, 1.0), (1.0, 1.0, 0.1, 1.0), (0.5, 2.0, 4.0, 0.7)];
        for (d, r, k_p, k_omega) in cases {
            let p = hp(1.0, d, k_p, k_omega);
            let nu_star = optimal_nu(d, k_p, k_omega).unwrap();
            let reference = h2_droop(2, &p, r);
            let lambdas = [0.0, 3.0];
            let (lo, hi) = if nu_star < r { (nu_star, r) } else { (r, nu_star) };
            for i in 0..10 {
                // Sample the half-open bracket including nu*, excluding r.
                let frac = i as f64 / 10.0;
                let nu = if nu_star < r {
                    lo + frac * (hi - lo)
                } else {
                    hi - frac * (hi - lo)
                };
                if nu == r {
                    continue;
                }
                for delta in [0.0, 0.5, 3.0] {
                    assert!(h2_idroop(&lambdas, &p, nu, delta, r) < reference);
                }
            }
        }
    }

    #[test]
    fn global_minimum_at_nu_star_delta_zero() {
        let p = hp(1.0, 1.0, 10.0, 1.0);
        let r = 1.0;
        let lambdas = [0.0, 2.0, 6.0];
        let nu_star = optimal_nu(p.d, p.k_p, p.k_omega).unwrap();
        let best = h2_idroop(&lambdas, &p, nu_star, 0.0, r);
        for i in 0..40 {
            let nu = 3.0 * nu_star * i as f64 / 39.0;
            for j in 0..40 {
                let delta = 10.0 * j as f64 / 39.0;
                assert!(best <= h2_idroop(&lambdas, &p, nu, delta, r) + 1e-12);
            }
        }
    }

    #[test]
    fn matched_gain_is_exact_parity_for_all_delta() {
        let p = hp(1.4, 0.8, 2.0, 1.1);
        let r = 1.7;
        let lambdas = [0.0, 0.9, 4.2];
        let reference = h2_droop(3, &p, r);
        for delta in [0.0, 1e-3, 0.1, 1.0, 10.0, 1e6] {
            let v = h2_idroop(&lambdas, &p, r, delta, r);
            assert_relative_eq!(v, reference, max_relative = 1e-12);
        }
    }

    #[test]
    fn report_fields_are_consistent() {
        let p = hp(1.0, 1.0, 10.0, 1.0);
        let report = tuning_report(&[0.0, 2.0], &p, 1.0, &TuningOptions::default()).unwrap();
        assert_eq!(report.regime, Regime::Lead);
        assert!(!report.nu_star_capped);
        assert!(report.interval.contains(report.nu_star));
        assert!(report.h2_at_optimum < report.h2_droop);
        assert!(report.h2_at_delta_rec < report.h2_droop);
        assert!(report.h2_at_optimum <= report.h2_at_delta_rec);
        assert!(report.threshold_gap > 0.0);

        let zero_noise = hp(1.0, 1.0, 10.0, 0.0);
        let capped = tuning_report(&[0.0, 2.0], &zero_noise, 1.0, &TuningOptions::default())
            .unwrap();
        assert!(capped.nu_star_capped);
        assert_eq!(capped.nu_star, 1e3);
        assert_eq!(capped.regime, Regime::Lead);
    }

    #[test]
    fn delta_sweep_direction_follows_alpha1() {
        let lambdas = [0.0, 2.0];
        let grid: Vec<f64> = (0..30).map(|i| 0.05 * 1.3f64.powi(i)).collect();

        // Decreasing H2 when alpha1 < 0.
        let p = hp(1.0, 1.0, 1.0, 1.0);
        let alpha = alpha_coefficients(&p, 2.0, 1.0);
        assert!(alpha.alpha1 < 0.0);
        let rows = sweep(SweepAxis::Delta, &grid, &lambdas, &p, 2.0, 1.0, 1.0).unwrap();
        assert!(rows.windows(2).all(|w| w[1].h2_idroop < w[0].h2_idroop));

        // Increasing H2 when alpha1 > 0.
        let p2 = hp(1.0, 1.0, 10.0, 1.0);
        let alpha2 = alpha_coefficients(&p2, 3.0, 1.0);
        assert!(alpha2.alpha1 > 0.0);
        let rows2 = sweep(SweepAxis::Delta, &grid, &lambdas, &p2, 3.0, 1.0, 1.0).unwrap();
        assert!(rows2.windows(2).all(|w| w[1].h2_idroop > w[0].h2_idroop));
    }

    #[test]
    fn nu_sweep_minimum_sits_at_grid_point_nearest_nu_star() {
        let p = hp(1.0, 1.0, 10.0, 1.0);
        let nu_star = optimal_nu(p.d, p.k_p, p.k_omega).unwrap();
        let grid: Vec<f64> = (0..200).map(|i| 20.0 * i as f64 / 199.0).collect();
        let rows = sweep(SweepAxis::Nu, &grid, &[0.0, 2.0], &p, 0.0, 0.0, 1.0).unwrap();
        let argmin = rows
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.h2_idroop.total_cmp(&b.1.h2_idroop))
            .unwrap()
            .0;
        let nearest = grid
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - nu_star).abs().total_cmp(&(b.1 - nu_star).abs()))
            .unwrap()
            .0;
        assert_eq!(argmin, nearest);
    }

    #[test]
    fn sweep_rejects_bad_grids() {
        let p = hp(1.0, 1.0, 1.0, 1.0);
        assert!(matches!(
            sweep(SweepAxis::Nu, &[], &[0.0], &p, 1.0, 1.0, 1.0),
            Err(Error::Input(_))
        ));
        assert!(sweep(SweepAxis::Nu, &[1.0, 1.0], &[0.0], &p, 1.0, 1.0, 1.0).is_err());
        assert!(sweep(SweepAxis::LambdaMax, &[1.0, 2.0], &[0.0], &p, 1.0, 1.0, 1.0).is_err());
    }
}
