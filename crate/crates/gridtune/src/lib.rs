//! Linear power-network models with inverter frequency control, and the
//! analysis toolkit for evaluating controller designs on three axes:
//!
//! * **H2 performance** under stochastic power disturbances and frequency
//!   measurement noise, via exact closed forms, Lyapunov (observability
//!   Gramian) solves, and Monte Carlo simulation — independent routes that
//!   must agree.
//! * **Optimal tuning** of the lead-lag inverter controller: the optimal
//!   high-frequency gain, the interval of gains that strictly beat static
//!   droop, and the lead/lag regime classification.
//! * **Delay robustness**: the largest frequency-measurement delay that
//!   preserves closed-loop stability, by Nyquist winding numbers with
//!   bisection and by closed forms in the two constant-gain regimes.
//!
//! The model is a network of buses with swing dynamics coupled through a
//! susceptance-weighted graph Laplacian; each bus hosts a grid-connected
//! inverter running droop, virtual inertia, or the first-order lead-lag
//! controller. See the `examples/` directory for one runnable example per
//! capability, or use the `gridtune` binary for config-driven runs.

// Validation deliberately writes `!(x > 0.0)` so NaN fails the check too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod closedform;
pub mod delay;
pub mod error;
pub mod lyap;
pub mod netmodel;
pub mod sim;
pub mod spectral;
pub mod tuning;

pub use error::{Error, Result};
pub use netmodel::{
    assemble_state_space, build_laplacian, bus_transfer, controller_transfer, ControllerConfig,
    HomogeneousParams, Line, NetworkTopology, Param, StateSpaceModel, SystemParams,
};
pub use spectral::{eigendecompose, modal_subsystems, ModalDecomposition, ModalSubsystem};

/// Absolute tolerance below which a Laplacian eigenvalue is treated as the
/// structural zero mode.
pub const ZERO_MODE_TOL: f64 = 1e-9;

/// Required spectral abscissa margin: a matrix is accepted as Hurwitz only
/// if every eigenvalue has real part below the negative of this tolerance.
pub const HURWITZ_TOL: f64 = 1e-9;

#[cfg(test)]
pub(crate) fn test_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
