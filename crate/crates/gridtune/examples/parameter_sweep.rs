//! Closed-form sweeps: the H2 norm as a function of the filter pole
//! delta (monotone toward the droop value, direction set by the sign of
//! alpha1) and of the high-frequency gain nu (minimum at nu*).
//!
//! ```bash
//! cargo run --example parameter_sweep
//! ```

use gridtune::closedform::alpha_coefficients;
use gridtune::tuning::{optimal_nu, sweep, SweepAxis};
use gridtune::{eigendecompose, HomogeneousParams, NetworkTopology};

fn main() {
    let topology = NetworkTopology::path(2, 1.0).unwrap();
    let decomp = eigendecompose(&topology.laplacian()).unwrap();
    let lambdas: Vec<f64> = decomp.lambdas().iter().cloned().collect();
    let hp = HomogeneousParams {
        m: 1.0,
        d: 1.0,
        k_p: 1.0,
        k_omega: 1.0,
    };
    let r_r_inv = 1.0;

    // Pole sweep at nu = 2: alpha1 < 0, so the norm decreases toward the
    // droop value as the pole recedes.
    let nu = 2.0;
    let alpha = alpha_coefficients(&hp, nu, r_r_inv);
    println!("delta sweep at nu = {nu} (alpha1 = {:.4}):", alpha.alpha1);
    let grid: Vec<f64> = (0..13).map(|i| 1e-2 * 10f64.powf(i as f64 / 2.0)).collect();
    let rows = sweep(SweepAxis::Delta, &grid, &lambdas, &hp, nu, 1.0, r_r_inv).unwrap();
    println!("  {:>12} {:>14} {:>14} {:>14}", "delta", "h2^2 lead-lag", "h2^2 droop", "tau_lb (s)");
    for row in &rows {
        println!(
            "  {:>12.4e} {:>14.8} {:>14.8} {:>14.6}",
            row.value, row.h2_idroop, row.h2_droop, row.tau_rob_lower_bound
        );
    }

    // Gain sweep at a small pole: the minimum sits at nu*.
    let nu_star = optimal_nu(hp.d, hp.k_p, hp.k_omega).unwrap();
    println!("\nnu sweep at delta = 1e-3 (nu* = {nu_star:.6}):");
    let grid: Vec<f64> = (0..=20).map(|i| 1.5 * nu_star * i as f64 / 20.0).collect();
    let rows = sweep(SweepAxis::Nu, &grid, &lambdas, &hp, nu, 1e-3, r_r_inv).unwrap();
    let best = rows
        .iter()
        .min_by(|a, b| a.h2_idroop.total_cmp(&b.h2_idroop))
        .unwrap();
    for row in &rows {
        let marker = if row.value == best.value { "  <- minimum" } else { "" };
        println!("  nu = {:7.4}: h2^2 = {:.8}{marker}", row.value, row.h2_idroop);
    }
    println!("\ngrid minimum at nu = {:.4}, nearest to nu* = {nu_star:.4}", best.value);
}
