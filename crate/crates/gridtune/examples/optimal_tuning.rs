//! Tuning the lead-lag controller: the optimal high-frequency gain, the
//! interval of gains that strictly beat droop, and how the answer flips
//! between lead and lag as the noise mix changes.
//!
//! ```bash
//! cargo run --example optimal_tuning
//! ```

use gridtune::tuning::{tuning_report, TuningOptions};
use gridtune::{eigendecompose, HomogeneousParams, NetworkTopology};

fn main() {
    let topology = NetworkTopology::path(2, 1.0).unwrap();
    let decomp = eigendecompose(&topology.laplacian()).unwrap();
    let lambdas: Vec<f64> = decomp.lambdas().iter().cloned().collect();
    let r_r_inv = 1.0;
    let opts = TuningOptions::default();

    // Three noise mixes around the threshold (k_p/k_omega)^2 = 2 d r + r^2.
    let cases = [
        ("power disturbances dominate (k_p/k_omega = 10)", 10.0, 1.0),
        ("measurement noise dominates (k_p/k_omega = 0.1)", 0.1, 1.0),
        ("threshold mix (k_p/k_omega = sqrt(3))", 3f64.sqrt(), 1.0),
    ];

    for (label, k_p, k_omega) in cases {
        let hp = HomogeneousParams {
            m: 1.0,
            d: 1.0,
            k_p,
            k_omega,
        };
        let report = tuning_report(&lambdas, &hp, r_r_inv, &opts).unwrap();
        println!("{label}");
        println!("  regime:            {}", report.regime.name());
        println!("  nu_star:           {:.6}", report.nu_star);
        if report.interval.is_empty() {
            println!("  improvement:       none (droop can only be matched)");
        } else {
            println!(
                "  improvement for nu in {}{:.6}, {:.6})",
                if report.interval.lo_inclusive { "[" } else { "(" },
                report.interval.lo,
                report.interval.hi
            );
            println!(
                "  h2^2: droop {:.6} -> optimum {:.6} ({:.2}% better)",
                report.h2_droop,
                report.h2_at_optimum,
                100.0 * (1.0 - report.h2_at_optimum / report.h2_droop)
            );
            println!(
                "  at the deployable pole delta = {:.0e}: {:.6}",
                report.delta_rec, report.h2_at_delta_rec
            );
        }
        println!();
    }

    // Zero measurement noise: the optimum is unbounded, the report caps
    // the recommended gain instead.
    let hp = HomogeneousParams {
        m: 1.0,
        d: 1.0,
        k_p: 1.0,
        k_omega: 0.0,
    };
    let report = tuning_report(&lambdas, &hp, r_r_inv, &opts).unwrap();
    println!("no measurement noise at all (k_omega = 0)");
    println!(
        "  nu_star capped at {} (capped = {})",
        report.nu_star, report.nu_star_capped
    );
}
