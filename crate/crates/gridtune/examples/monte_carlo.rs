//! Monte Carlo validation of the analytic H2 values: integrate the
//! stochastic closed loop and compare the steady-state output energy
//! against the closed form.
//!
//! ```bash
//! cargo run --example monte_carlo
//! ```

use gridtune::closedform::{h2_droop, h2_idroop};
use gridtune::sim::{simulate_sde, SimConfig};
use gridtune::{
    assemble_state_space, ControllerConfig, HomogeneousParams, NetworkTopology, SystemParams,
};

fn main() {
    let config = SimConfig {
        seed: 42,
        ..SimConfig::default()
    };
    println!(
        "Euler-Maruyama, dt = {}, horizon = {} s, burn-in = {} s, {} trajectories, seed = {}\n",
        config.dt, config.horizon, config.burn_in, config.n_trajectories, config.seed
    );

    let hp = HomogeneousParams {
        m: 1.0,
        d: 1.0,
        k_p: 1.0,
        k_omega: 1.0,
    };
    let params = SystemParams::uniform(hp.m, hp.d, hp.k_p, hp.k_omega).unwrap();

    // Single bus under droop: exact value 1/2.
    let topo = NetworkTopology::single_bus();
    let droop = ControllerConfig::Droop { r_r_inv: 1.0 };
    let model = assemble_state_space(&topo, &params, &droop).unwrap();
    let result = simulate_sde(&model, &config).unwrap();
    print_case(
        "single bus, droop",
        result.empirical_h2_squared.unwrap(),
        result.std_error.unwrap(),
        h2_droop(1, &hp, 1.0),
    );

    // Two buses under the lead-lag controller: exact value 43/28.
    let topo2 = NetworkTopology::path(2, 1.0).unwrap();
    let idroop = ControllerConfig::IDroop {
        nu: 2.0,
        delta: 1.0,
        r_r_inv: 1.0,
    };
    let model2 = assemble_state_space(&topo2, &params, &idroop).unwrap();
    let result2 = simulate_sde(&model2, &config).unwrap();
    print_case(
        "two buses, lead-lag",
        result2.empirical_h2_squared.unwrap(),
        result2.std_error.unwrap(),
        h2_idroop(&[0.0, 2.0], &hp, 2.0, 1.0, 1.0),
    );

    // Same seed, same answer: the estimator is deterministic.
    let again = simulate_sde(&model2, &config).unwrap();
    println!(
        "determinism: rerun gives bit-identical estimate: {}",
        again == result2
    );
}

fn print_case(label: &str, estimate: f64, std_error: f64, analytic: f64) {
    let z = (estimate - analytic).abs() / std_error;
    println!("{label}");
    println!("  empirical: {estimate:.6} +- {std_error:.6}");
    println!("  analytic:  {analytic:.6}");
    println!(
        "  |z| = {z:.2}, relative error = {:.3}%\n",
        100.0 * (estimate - analytic).abs() / analytic
    );
}
