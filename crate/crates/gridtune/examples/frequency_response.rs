//! Transfer-function views of the model: controller gain curves, the
//! closed-loop bus response, and the lead-lag controller collapsing onto
//! droop as its pole recedes.
//!
//! ```bash
//! cargo run --example frequency_response
//! ```

use gridtune::{bus_transfer, controller_transfer, ControllerConfig};
use num_complex::Complex64;

fn main() {
    let droop = ControllerConfig::Droop { r_r_inv: 1.0 };
    let idroop = ControllerConfig::IDroop {
        nu: 2.0,
        delta: 1.0,
        r_r_inv: 1.0,
    };

    println!("controller gain |c(j omega)| (DC gain 1 decoupled from high-frequency gain 2):");
    println!("  {:>10} {:>10} {:>10}", "omega", "droop", "lead-lag");
    for omega in [0.0, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0] {
        let s = Complex64::new(0.0, omega);
        let c_droop = controller_transfer(&droop, s).unwrap();
        let c_idroop = controller_transfer(&idroop, s).unwrap();
        println!(
            "  {omega:>10.2} {:>10.4} {:>10.4}",
            c_droop.norm(),
            c_idroop.norm()
        );
    }

    println!("\nclosed-loop bus response |p(j omega)| (m = 1, d = 1):");
    println!("  {:>10} {:>10} {:>10}", "omega", "droop", "lead-lag");
    for omega in [0.0, 0.2, 0.5, 1.0, 2.0, 5.0] {
        let s = Complex64::new(0.0, omega);
        let p_droop = bus_transfer(1.0, 1.0, &droop, s).unwrap();
        let p_idroop = bus_transfer(1.0, 1.0, &idroop, s).unwrap();
        println!(
            "  {omega:>10.2} {:>10.4} {:>10.4}",
            p_droop.norm(),
            p_idroop.norm()
        );
    }

    println!("\nstiff pole limit: |c_leadlag(j) - c_droop(j)| as delta grows");
    for delta in [1.0, 1e2, 1e4, 1e6, 1e9] {
        let stiff = ControllerConfig::IDroop {
            nu: 2.0,
            delta,
            r_r_inv: 1.0,
        };
        let s = Complex64::new(0.0, 1.0);
        let gap = (controller_transfer(&stiff, s).unwrap()
            - controller_transfer(&droop, s).unwrap())
        .norm();
        println!("  delta = {delta:>6.0e}: gap = {gap:.3e}");
    }
}
