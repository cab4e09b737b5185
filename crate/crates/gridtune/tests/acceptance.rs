//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (run with `cargo test --test acceptance -- --nocapture` to see
//! them). Every tolerance is pinned in code.

use std::time::Instant;

use gridtune::closedform::{alpha_coefficients, f_of_delta, g_of_nu, h2_droop, h2_idroop};
use gridtune::delay::{
    is_stable_with_delay, tau_rob_bisection, tau_rob_closed, BisectionOptions, ClosedFormRegime,
};
use gridtune::lyap::{h2_numeric_full, h2_numeric_modal};
use gridtune::sim::{simulate_delayed, simulate_sde, SimConfig};
use gridtune::tuning::{improvement_interval, optimal_nu};
use gridtune::{
    assemble_state_space, eigendecompose, modal_subsystems, ControllerConfig, HomogeneousParams,
    NetworkTopology, SystemParams,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

fn report(number: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("acceptance {number:02} [{name}]: {verdict} ({detail})");
    assert!(pass, "criterion {number:02} {name}: {detail}");
}

fn random_topology(rng: &mut ChaCha8Rng, n_max: usize) -> NetworkTopology {
    let n = rng.random_range(1..=n_max);
    if n == 1 {
        NetworkTopology::single_bus()
    } else {
        NetworkTopology::random_connected(n, 0.3, (0.1, 5.0), rng).unwrap()
    }
}

fn lambdas_of(topology: &NetworkTopology) -> Vec<f64> {
    eigendecompose(&topology.laplacian())
        .unwrap()
        .lambdas()
        .iter()
        .cloned()
        .collect()
}

#[test]
fn criterion_01_closed_form_vs_lyapunov_equivalence() {
    let start = Instant::now();
    let mut r = rng(101);
    let mut max_rel: f64 = 0.0;
    for _ in 0..50 {
        let topology = random_topology(&mut r, 20);
        let lambdas = lambdas_of(&topology);
        let hp = HomogeneousParams {
            m: r.random_range(0.1..=10.0),
            d: r.random_range(0.1..=10.0),
            k_p: r.random_range(0.0..=5.0),
            k_omega: r.random_range(0.0..=5.0),
        };
        let params = SystemParams::uniform(hp.m, hp.d, hp.k_p, hp.k_omega).unwrap();
        let r_r_inv = r.random_range(0.1..=10.0);
        let nu = r.random_range(0.0..=10.0);
        let delta = r.random_range(1e-6..=10.0);
        let config = ControllerConfig::IDroop { nu, delta, r_r_inv };

        let closed = h2_idroop(&lambdas, &hp, nu, delta, r_r_inv);
        let decomp = eigendecompose(&topology.laplacian()).unwrap();
        let subs = modal_subsystems(&decomp, &params, &config).unwrap();
        let numeric = h2_numeric_modal(&subs).unwrap().squared_norm;
        let rel = (closed - numeric).abs() / closed.abs().max(1e-300);
        max_rel = max_rel.max(rel);
    }
    // Reference point: the two-bus network is exactly 43/28.
    let reference = h2_idroop(
        &[0.0, 2.0],
        &HomogeneousParams { m: 1.0, d: 1.0, k_p: 1.0, k_omega: 1.0 },
        2.0,
        1.0,
        1.0,
    );
    let ref_ok = (reference - 43.0 / 28.0).abs() <= 1e-12;
    let elapsed = start.elapsed().as_secs_f64();
    report(
        1,
        "closed form vs modal Lyapunov",
        max_rel <= 1e-8 && ref_ok && elapsed <= 5.0,
        &format!("max rel diff {max_rel:.2e} over 50 instances, reference 43/28 ok, {elapsed:.2} s"),
    );
}

#[test]
fn criterion_02_droop_formula_vs_lyapunov() {
    let start = Instant::now();
    let mut r = rng(102);
    let mut max_rel: f64 = 0.0;
    for _ in 0..20 {
        let topology = random_topology(&mut r, 20);
        let n = topology.n_buses();
        let hp = HomogeneousParams {
            m: r.random_range(0.1..=10.0),
            d: r.random_range(0.1..=10.0),
            k_p: r.random_range(0.0..=5.0),
            k_omega: r.random_range(0.0..=5.0),
        };
        let params = SystemParams::uniform(hp.m, hp.d, hp.k_p, hp.k_omega).unwrap();
        let r_r_inv = r.random_range(0.1..=10.0);
        let config = ControllerConfig::Droop { r_r_inv };
        let closed = h2_droop(n, &hp, r_r_inv);
        let model = assemble_state_space(&topology, &params, &config).unwrap();
        let numeric = h2_numeric_full(&model).unwrap().squared_norm;
        let rel = (closed - numeric).abs() / closed.abs().max(1e-300);
        max_rel = max_rel.max(rel);
    }
    let hp = HomogeneousParams { m: 1.0, d: 1.0, k_p: 1.0, k_omega: 1.0 };
    let ref_ok = (h2_droop(2, &hp, 1.0) - 1.0).abs() <= 1e-15;
    let elapsed = start.elapsed().as_secs_f64();
    report(
        2,
        "droop closed form vs Lyapunov",
        max_rel <= 1e-8 && ref_ok && elapsed <= 2.0,
        &format!("max rel diff {max_rel:.2e} over 20 instances, reference 1 ok, {elapsed:.2} s"),
    );
}

#[test]
fn criterion_03_huge_delta_recovers_droop() {
    let start = Instant::now();
    let mut r = rng(103);
    let mut max_rel: f64 = 0.0;
    for _ in 0..20 {
        let topology = random_topology(&mut r, 20);
        let lambdas = lambdas_of(&topology);
        let hp = HomogeneousParams {
            m: r.random_range(0.1..=10.0),
            d: r.random_range(0.1..=10.0),
            k_p: r.random_range(0.0..=5.0),
            k_omega: r.random_range(0.0..=5.0),
        };
        let r_r_inv = r.random_range(0.1..=10.0);
        let nu = r.random_range(0.0..=10.0);
        let reference = h2_droop(lambdas.len(), &hp, r_r_inv);
        let far = f_of_delta(&lambdas, &hp, nu, r_r_inv, 1e9);
        let rel = (far - reference).abs() / reference.abs().max(1e-300);
        max_rel = max_rel.max(rel);
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        3,
        "delta -> inf limit equals droop",
        max_rel <= 1e-6 && elapsed <= 1.0,
        &format!("max rel diff {max_rel:.2e} at delta = 1e9 over 20 instances, {elapsed:.2} s"),
    );
}

#[test]
fn criterion_04_monotonicity_sign_matches_alpha1() {
    let start = Instant::now();
    let mut r = rng(104);
    let mut checked = 0;
    let mut mismatches = 0;
    for _ in 0..50 {
        let topology = random_topology(&mut r, 20);
        let lambdas = lambdas_of(&topology);
        let hp = HomogeneousParams {
            m: r.random_range(0.1..=10.0),
            d: r.random_range(0.1..=10.0),
            k_p: r.random_range(0.0..=5.0),
            k_omega: r.random_range(0.0..=5.0),
        };
        let r_r_inv = r.random_range(0.1..=10.0);
        let nu = r.random_range(0.0..=10.0);
        let alpha = alpha_coefficients(&hp, nu, r_r_inv);
        if alpha.alpha1.abs() <= 1e-6 {
            continue;
        }
        // Ten log-spaced deltas in (0, 100]; the centered difference of
        // the delta-dependent mode sum carries the derivative's sign
        // without the cancellation of the full value.
        for i in 0..10 {
            let delta = 0.01 * (100.0f64 / 0.01).powf(i as f64 / 9.0);
            let h = 0.05 * delta;
            let sum = |d: f64| -> f64 {
                lambdas.iter().map(|&l| alpha.mode_term(l, d)).sum::<f64>()
            };
            let diff = sum(delta + h) - sum(delta - h);
            checked += 1;
            if (diff > 0.0) != (alpha.alpha1 > 0.0) {
                mismatches += 1;
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        4,
        "H2 direction in delta follows alpha1",
        mismatches == 0 && checked > 0 && elapsed <= 1.0,
        &format!("{checked} finite differences, {mismatches} sign mismatches, {elapsed:.2} s"),
    );
}

#[test]
fn criterion_05_optimal_gain_and_improvement_interval() {
    let start = Instant::now();
    let mut r = rng(105);

    // nu* beats a 1000-point grid of g.
    let mut grid_ok = true;
    for _ in 0..10 {
        let hp = HomogeneousParams {
            m: r.random_range(0.1..=10.0),
            d: r.random_range(0.1..=10.0),
            k_p: r.random_range(0.1..=5.0),
            k_omega: r.random_range(0.1..=5.0),
        };
        let nu_star = optimal_nu(hp.d, hp.k_p, hp.k_omega).unwrap();
        let best = g_of_nu(1, &hp, nu_star);
        for i in 0..1000 {
            let nu = 10.0 * nu_star.max(0.1) * i as f64 / 999.0;
            if g_of_nu(1, &hp, nu) < best - 1e-12 {
                grid_ok = false;
            }
        }
    }

    // Strict improvement over droop inside the interval, across delta.
    let mut improvement_ok = true;
    let mut tested = 0;
    while tested < 20 {
        let hp = HomogeneousParams {
            m: r.random_range(0.1..=10.0),
            d: r.random_range(0.1..=10.0),
            k_p: r.random_range(0.0..=5.0),
            k_omega: r.random_range(0.1..=5.0),
        };
        let r_r_inv = r.random_range(0.1..=10.0);
        let interval = improvement_interval(hp.d, r_r_inv, hp.k_p, hp.k_omega).unwrap();
        if interval.is_empty() {
            continue;
        }
        tested += 1;
        let topology = random_topology(&mut r, 10);
        let lambdas = lambdas_of(&topology);
        let reference = h2_droop(lambdas.len(), &hp, r_r_inv);
        let hi = if interval.hi.is_finite() { interval.hi } else { interval.lo + 10.0 };
        for i in 0..10 {
            let nu = interval.lo + (hi - interval.lo) * (i as f64 + 0.5) / 10.0;
            if !interval.contains(nu) {
                continue;
            }
            for j in 0..10 {
                let delta = 10.0 * j as f64 / 9.0;
                if h2_idroop(&lambdas, &hp, nu, delta, r_r_inv) >= reference {
                    improvement_ok = false;
                }
            }
        }
    }

    // Threshold parameters give exact parity at the matched gain.
    let mut parity: f64 = 0.0;
    for _ in 0..5 {
        let d: f64 = r.random_range(0.1..=10.0);
        let r_r_inv: f64 = r.random_range(0.1..=10.0);
        let k_omega: f64 = r.random_range(0.1..=5.0);
        let k_p = k_omega * (2.0 * r_r_inv * d + r_r_inv * r_r_inv).sqrt();
        let hp = HomogeneousParams { m: r.random_range(0.1..=10.0), d, k_p, k_omega };
        let lambdas = [0.0, r.random_range(0.1..=20.0)];
        let reference = h2_droop(2, &hp, r_r_inv);
        for delta in [0.0, 0.3, 2.0, 30.0] {
            let v = h2_idroop(&lambdas, &hp, r_r_inv, delta, r_r_inv);
            parity = parity.max((v - reference).abs() / reference);
        }
    }

    let elapsed = start.elapsed().as_secs_f64();
    report(
        5,
        "optimal gain and improvement interval",
        grid_ok && improvement_ok && parity <= 1e-12 && elapsed <= 2.0,
        &format!(
            "grid minimum ok = {grid_ok}, strict improvement ok = {improvement_ok}, \
             threshold parity {parity:.2e}, {elapsed:.2} s"
        ),
    );
}

#[test]
fn criterion_06_closed_form_vs_bisection_delay() {
    let start = Instant::now();
    let mut r = rng(106);
    let mut max_abs: f64 = 0.0;
    for trial in 0..20 {
        let topology = random_topology(&mut r, 8);
        let lambdas = lambdas_of(&topology);
        let lambda_n = lambdas.iter().cloned().fold(0.0, f64::max);
        let m = r.random_range(0.1..=3.0);
        let d = r.random_range(0.1..=1.5);
        let a = d + r.random_range(0.2..=4.0);
        let (config, regime) = if trial % 2 == 0 {
            (
                ControllerConfig::IDroop { nu: a, delta: 0.0, r_r_inv: 1.0 },
                ClosedFormRegime::DeltaZero { nu: a },
            )
        } else {
            (
                ControllerConfig::Droop { r_r_inv: a },
                ClosedFormRegime::DeltaInf { r_r_inv: a },
            )
        };
        let closed = tau_rob_closed(lambda_n, m, d, regime).unwrap().tau_rob;
        let numeric = tau_rob_bisection(&lambdas, m, d, &config, &BisectionOptions::default())
            .unwrap()
            .tau_rob;
        max_abs = max_abs.max((closed - numeric).abs());
    }

    // Reference values, with the bisection oracle confirming each.
    let single = tau_rob_closed(0.0, 1.0, 0.0, ClosedFormRegime::DeltaZero { nu: 1.0 })
        .unwrap()
        .tau_rob;
    let single_numeric = tau_rob_bisection(
        &[0.0],
        1.0,
        0.0,
        &ControllerConfig::IDroop { nu: 1.0, delta: 0.0, r_r_inv: 1.0 },
        &BisectionOptions::default(),
    )
    .unwrap()
    .tau_rob;
    let ref1 = (single - std::f64::consts::FRAC_PI_2).abs() <= 1e-12
        && (single_numeric - 1.5708).abs() <= 1e-4;
    let two_bus = tau_rob_closed(2.0, 1.0, 1.0, ClosedFormRegime::DeltaZero { nu: 2.0 })
        .unwrap()
        .tau_rob;
    let two_bus_numeric = tau_rob_bisection(
        &[0.0, 2.0],
        1.0,
        1.0,
        &ControllerConfig::IDroop { nu: 2.0, delta: 0.0, r_r_inv: 1.0 },
        &BisectionOptions::default(),
    )
    .unwrap()
    .tau_rob;
    let ref2 = (two_bus - 0.8296).abs() <= 1e-4 * 0.82966
        && (two_bus_numeric - two_bus).abs() <= 1e-4;

    // Gain at or below damping reports infinite robustness.
    let mut inf_ok = true;
    for _ in 0..5 {
        let d = r.random_range(0.5..=2.0);
        let a = d * r.random_range(0.2..=1.0);
        let closed = tau_rob_closed(1.0, 1.0, d, ClosedFormRegime::DeltaZero { nu: a }).unwrap();
        let numeric = tau_rob_bisection(
            &[0.0, 1.0],
            1.0,
            d,
            &ControllerConfig::IDroop { nu: a, delta: 0.0, r_r_inv: a },
            &BisectionOptions::default(),
        )
        .unwrap();
        inf_ok &= closed.tau_rob.is_infinite() && numeric.tau_rob.is_infinite();
    }

    let elapsed = start.elapsed().as_secs_f64();
    report(
        6,
        "delay closed form vs bisection",
        max_abs <= 1e-4 && ref1 && ref2 && inf_ok && elapsed <= 30.0,
        &format!(
            "max |closed - bisection| = {max_abs:.2e} s over 20 instances, references ok, \
             infinite cases ok, {elapsed:.2} s"
        ),
    );
}

#[test]
fn criterion_07_lower_bound_at_zero_damping() {
    let start = Instant::now();
    let mut r = rng(107);
    let mut ok = true;
    let mut min_margin = f64::INFINITY;
    for trial in 0..20 {
        let m = r.random_range(0.1..=10.0);
        let a = r.random_range(0.1..=10.0);
        let lambda_n = r.random_range(0.0..=40.0);
        let regime = if trial % 2 == 0 {
            ClosedFormRegime::DeltaZero { nu: a }
        } else {
            ClosedFormRegime::DeltaInf { r_r_inv: a }
        };
        let rep = tau_rob_closed(lambda_n, m, 0.0, regime).unwrap();
        ok &= rep.tau_rob >= rep.lower_bound;
        min_margin = min_margin.min(rep.tau_rob / rep.lower_bound);
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        7,
        "closed-form lower bound",
        ok && elapsed <= 5.0,
        &format!("tau_rob/bound >= {min_margin:.4} over 20 undamped instances, {elapsed:.2} s"),
    );
}

#[test]
fn criterion_08_monte_carlo_matches_analytic() {
    let start = Instant::now();
    let seed = 2024;

    // Droop single bus: exact value 1/2.
    let topo = NetworkTopology::single_bus();
    let params = SystemParams::uniform(1.0, 1.0, 1.0, 1.0).unwrap();
    let droop = ControllerConfig::Droop { r_r_inv: 1.0 };
    let model = assemble_state_space(&topo, &params, &droop).unwrap();
    let cfg = SimConfig { seed, ..SimConfig::default() };
    let res_a = simulate_sde(&model, &cfg).unwrap();
    let (est_a, se_a) = (res_a.empirical_h2_squared.unwrap(), res_a.std_error.unwrap());
    let ok_a = (est_a - 0.5).abs() <= 3.0 * se_a && (est_a - 0.5).abs() / 0.5 <= 0.05;

    // Lead-lag two-bus: exact value 43/28.
    let topo2 = NetworkTopology::path(2, 1.0).unwrap();
    let idroop = ControllerConfig::IDroop { nu: 2.0, delta: 1.0, r_r_inv: 1.0 };
    let model2 = assemble_state_space(&topo2, &params, &idroop).unwrap();
    let res_b = simulate_sde(&model2, &cfg).unwrap();
    let target = 43.0 / 28.0;
    let (est_b, se_b) = (res_b.empirical_h2_squared.unwrap(), res_b.std_error.unwrap());
    let ok_b = (est_b - target).abs() <= 3.0 * se_b && (est_b - target).abs() / target <= 0.05;

    // Zero noise intensities: exactly zero, no divergence.
    let quiet = SystemParams::uniform(1.0, 1.0, 0.0, 0.0).unwrap();
    let model3 = assemble_state_space(&topo2, &quiet, &idroop).unwrap();
    let res_c = simulate_sde(&model3, &cfg).unwrap();
    let ok_c = res_c.empirical_h2_squared == Some(0.0) && !res_c.diverged;

    let elapsed = start.elapsed().as_secs_f64();
    report(
        8,
        "Monte Carlo vs analytic",
        ok_a && ok_b && ok_c && elapsed <= 60.0,
        &format!(
            "droop {est_a:.4} +- {se_a:.4} vs 0.5; lead-lag {est_b:.4} +- {se_b:.4} vs \
             {target:.4}; zero-noise exact; {elapsed:.2} s"
        ),
    );
}

#[test]
fn criterion_09_delayed_simulation_verdicts() {
    let start = Instant::now();
    let mut ok = true;
    let mut details = Vec::new();

    // Constant-gain lead-lag regime and the droop regime.
    let cases: [(&str, ControllerConfig, f64, f64); 2] = [
        (
            "delta0",
            ControllerConfig::IDroop { nu: 2.0, delta: 0.0, r_r_inv: 1.0 },
            1.0,
            tau_rob_closed(2.0, 1.0, 1.0, ClosedFormRegime::DeltaZero { nu: 2.0 })
                .unwrap()
                .tau_rob,
        ),
        (
            "delta_inf",
            ControllerConfig::Droop { r_r_inv: 1.0 },
            0.5,
            tau_rob_closed(2.0, 1.0, 0.5, ClosedFormRegime::DeltaInf { r_r_inv: 1.0 })
                .unwrap()
                .tau_rob,
        ),
    ];
    let lambdas = [0.0, 2.0];
    for (name, config, d, tau_rob) in cases {
        for (factor, expect_stable) in [(0.8, true), (1.2, false)] {
            let tau = factor * tau_rob;
            let wn = is_stable_with_delay(&lambdas, 1.0, d, &config, tau).unwrap();
            let sim = simulate_delayed(&lambdas, 1.0, d, &config, tau, 1e-3, 150.0).unwrap();
            let agree = wn == !sim.diverged && wn == expect_stable;
            ok &= agree;
            details.push(format!(
                "{name} x{factor}: winding {}, sim {}",
                if wn { "stable" } else { "unstable" },
                if sim.diverged { "diverged" } else { "settled" }
            ));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        9,
        "delayed simulation agrees with winding test",
        ok && elapsed <= 30.0,
        &format!("{}; {elapsed:.2} s", details.join("; ")),
    );
}

#[test]
fn criterion_10_cli_determinism() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_gridtune");
    let config_dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let cases = [
        ("analyze", "two_bus_idroop.toml"),
        ("optimize", "lead_tuning.toml"),
        ("delay", "delay_two_bus.toml"),
        ("simulate", "droop_single_bus.toml"),
        ("sweep", "sweep_delta.toml"),
    ];
    let tmp = tempfile::tempdir().unwrap();
    let mut ok = true;
    let mut details = Vec::new();
    for (command, config) in cases {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let out_dir = tmp.path().join(format!("{command}_{run}"));
            let status = std::process::Command::new(bin)
                .args([
                    command,
                    "--config",
                    config_dir.join(config).to_str().unwrap(),
                    "--out",
                    out_dir.to_str().unwrap(),
                    "--seed",
                    "7",
                ])
                .output()
                .expect("spawn gridtune");
            assert!(
                status.status.success(),
                "{command} failed: {}",
                String::from_utf8_lossy(&status.stderr)
            );
            outputs.push(std::fs::read(out_dir.join(format!("{command}.csv"))).unwrap());
        }
        let identical = outputs[0] == outputs[1];
        ok &= identical;
        details.push(format!("{command}: {}", if identical { "byte-identical" } else { "DIFFERS" }));
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        10,
        "CLI determinism",
        ok,
        &format!("{}; {elapsed:.2} s", details.join(", ")),
    );
}
