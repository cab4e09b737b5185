use gridtune::delay::{tau_rob_bisection, tau_rob_closed, BisectionOptions, ClosedFormRegime};
use gridtune::lyap::h2_numeric_full;
use gridtune::{assemble_state_space, eigendecompose, ControllerConfig, NetworkTopology, SystemParams};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

fn main() {
    // 1. Wide-parameter delay agreement.
    let mut r = ChaCha8Rng::seed_from_u64(999);
    let mut worst = 0.0f64;
    for trial in 0..60 {
        let n = r.random_range(2..=20usize);
        let topo = NetworkTopology::random_connected(n, 0.3, (0.1, 10.0), &mut r).unwrap();
        let lambdas: Vec<f64> = eigendecompose(&topo.laplacian()).unwrap().lambdas().iter().cloned().collect();
        let lambda_n = lambdas.iter().cloned().fold(0.0, f64::max);
        let m = r.random_range(0.1..=10.0);
        let d = r.random_range(0.1..=10.0);
        let a = d + r.random_range(0.1..=10.0);
        let (config, regime) = if trial % 2 == 0 {
            (ControllerConfig::IDroop { nu: a, delta: 0.0, r_r_inv: 1.0 },
             ClosedFormRegime::DeltaZero { nu: a })
        } else {
            (ControllerConfig::Droop { r_r_inv: a }, ClosedFormRegime::DeltaInf { r_r_inv: a })
        };
        let closed = tau_rob_closed(lambda_n, m, d, regime).unwrap().tau_rob;
        match tau_rob_bisection(&lambdas, m, d, &config, &BisectionOptions::default()) {
            Ok(rep) => {
                let diff = (closed - rep.tau_rob).abs();
                if diff > worst { worst = diff; }
                if diff > 1e-4 {
                    println!("DISAGREE trial {trial}: n={n} m={m:.3} d={d:.3} a={a:.3} lam={lambda_n:.2} closed={closed:.7} bis={:.7}", rep.tau_rob);
                }
            }
            Err(e) => println!("ERROR trial {trial}: n={n} m={m:.3} d={d:.3} a={a:.3} lam={lambda_n:.2} closed={closed:.7}: {e}"),
        }
    }
    println!("delay stress: worst |closed - bisection| = {worst:.3e}");

    // 2. Intermediate-delta sanity across draws.
    let mut r = ChaCha8Rng::seed_from_u64(1000);
    for _ in 0..8 {
        let topo = NetworkTopology::random_connected(4, 0.4, (0.2, 4.0), &mut r).unwrap();
        let lambdas: Vec<f64> = eigendecompose(&topo.laplacian()).unwrap().lambdas().iter().cloned().collect();
        let m = r.random_range(0.2..=3.0);
        let d = r.random_range(0.1..=1.0);
        let nu = d + r.random_range(0.3..=3.0);
        let rr = d + r.random_range(0.3..=3.0);
        let delta = r.random_range(0.05..=20.0);
        let config = ControllerConfig::IDroop { nu, delta, r_r_inv: rr };
        match tau_rob_bisection(&lambdas, m, d, &config, &BisectionOptions::default()) {
            Ok(rep) => {
                use gridtune::delay::is_stable_with_delay;
                let below = is_stable_with_delay(&lambdas, m, d, &config, 0.95 * rep.tau_rob).unwrap();
                let above = is_stable_with_delay(&lambdas, m, d, &config, 1.05 * rep.tau_rob).unwrap();
                println!("intermediate delta={delta:.3}: tau={:.5} below_stable={below} above_stable={above}", rep.tau_rob);
            }
            Err(e) => println!("intermediate delta={delta:.3}: ERROR {e}"),
        }
    }

    // 3. Large-model Lyapunov timing at the size cap.
    for n in [60usize, 120, 200] {
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        let topo = NetworkTopology::random_connected(n, 0.05, (0.1, 5.0), &mut r2).unwrap();
        let params = SystemParams::uniform(1.3, 0.7, 1.0, 0.6).unwrap();
        let config = ControllerConfig::IDroop { nu: 1.8, delta: 0.9, r_r_inv: 1.1 };
        let model = assemble_state_space(&topo, &params, &config).unwrap();
        let t0 = std::time::Instant::now();
        let rep = h2_numeric_full(&model).unwrap();
        println!("full Lyapunov n={n} ({} states): h2^2={:.6} in {:.2} s", model.n_states(), rep.squared_norm, t0.elapsed().as_secs_f64());
    }
}
