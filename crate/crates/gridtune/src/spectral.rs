//! Laplacian diagonalization and the decoupled modal subsystems.
//!
//! For homogeneous per-bus parameters, rotating the closed loop by the
//! orthonormal eigenbasis of the Laplacian splits the full model into `n`
//! independent three-state systems, one per eigenvalue. The rotation is
//! orthonormal so it leaves the H2 norm untouched: full-model quantities
//! equal sums over modes. Both the closed-form and the numeric H2 paths
//! consume these subsystems.

use nalgebra::{DMatrix, DVector, Matrix2, Matrix3, Matrix3x2, RowVector2, RowVector3};

use crate::error::{Error, Result};
use crate::netmodel::{ControllerConfig, SystemParams};
use crate::ZERO_MODE_TOL;

/// Orthonormal eigendecomposition `L = U diag(lambdas) U^T` with the
/// eigenvalues sorted ascending (`lambdas[0]` is the structural zero mode
/// of a connected network).
#[derive(Debug, Clone)]
pub struct ModalDecomposition {
    lambdas: DVector<f64>,
    u: DMatrix<f64>,
}

impl ModalDecomposition {
    pub fn lambdas(&self) -> &DVector<f64> {
        &self.lambdas
    }

    /// Largest Laplacian eigenvalue.
    pub fn lambda_max(&self) -> f64 {
        self.lambdas[self.lambdas.len() - 1]
    }

    pub fn u(&self) -> &DMatrix<f64> {
        &self.u
    }

    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    /// Number of eigenvalues within `tol` of zero; exactly one for a
    /// connected network.
    pub fn count_zero_modes(&self, tol: f64) -> usize {
        self.lambdas.iter().filter(|l| l.abs() < tol).count()
    }
}

/// Diagonalize a symmetric positive semidefinite Laplacian.
///
/// Eigenvalues come back sorted ascending; each eigenvector is sign-fixed
/// so its first nonzero component is positive, making the output (and any
/// CSV derived from it) reproducible across runs.
pub fn eigendecompose(l: &DMatrix<f64>) -> Result<ModalDecomposition> {
    if l.nrows() != l.ncols() {
        return Err(Error::Input(format!(
            "Laplacian must be square, got {}x{}",
            l.nrows(),
            l.ncols()
        )));
    }
    let scale = l.amax().max(1.0);
    let asym = (l - l.transpose()).amax();
    if asym > 1e-9 * scale {
        return Err(Error::Input(format!(
            "matrix is not symmetric: max |L - L^T| = {asym:e}"
        )));
    }
    let eig = l.clone().symmetric_eigen();
    let n = l.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let mut lambdas = DVector::zeros(n);
    let mut u = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        lambdas[dst] = eig.eigenvalues[src];
        let mut col = eig.eigenvectors.column(src).clone_owned();
        let max_abs = col.amax();
        let first_nonzero = col.iter().find(|x| x.abs() > 1e-8 * max_abs);
        if let Some(&x) = first_nonzero {
            if x < 0.0 {
                col.neg_mut();
            }
        }
        u.set_column(dst, &col);
    }
    Ok(ModalDecomposition { lambdas, u })
}

/// One decoupled mode of the homogeneous lead-lag closed loop: states
/// `(theta_i', omega_i', z_i')`, inputs `(w_p_i', w_omega_i')`, output
/// `omega_i'`.
#[derive(Debug, Clone, Copy)]
pub struct ModalSubsystem {
    pub lambda: f64,
    pub a: Matrix3<f64>,
    pub b: Matrix3x2<f64>,
    pub c: RowVector3<f64>,
    /// Marks the structural zero mode, whose angle state is unobservable
    /// and must be deflated before any Lyapunov solve.
    pub is_zero_mode: bool,
}

impl ModalSubsystem {
    /// Drop the unobservable angle state of the zero mode, leaving the
    /// stable `(omega', z')` pair.
    pub fn deflated(&self) -> (Matrix2<f64>, Matrix2<f64>, RowVector2<f64>) {
        let a = Matrix2::new(
            self.a[(1, 1)],
            self.a[(1, 2)],
            self.a[(2, 1)],
            self.a[(2, 2)],
        );
        let b = Matrix2::new(
            self.b[(1, 0)],
            self.b[(1, 1)],
            self.b[(2, 0)],
            self.b[(2, 1)],
        );
        let c = RowVector2::new(self.c[1], self.c[2]);
        (a, b, c)
    }
}

/// Build the `n` modal subsystems of a homogeneous network under the
/// lead-lag controller, flagging the zero mode for deflation with the
/// default tolerance.
pub fn modal_subsystems(
    decomp: &ModalDecomposition,
    params: &SystemParams,
    config: &ControllerConfig,
) -> Result<Vec<ModalSubsystem>> {
    modal_subsystems_with_tolerance(decomp, params, config, ZERO_MODE_TOL)
}

/// [`modal_subsystems`] with an explicit zero-mode tolerance.
pub fn modal_subsystems_with_tolerance(
    decomp: &ModalDecomposition,
    params: &SystemParams,
    config: &ControllerConfig,
    zero_tol: f64,
) -> Result<Vec<ModalSubsystem>> {
    let hp = params.homogeneous()?;
    config.validate()?;
    let &ControllerConfig::IDroop { nu, delta, r_r_inv } = config else {
        return Err(Error::Input(format!(
            "modal subsystems are defined for the lead-lag controller, got {}",
            config.kind_name()
        )));
    };
    let (m, d) = (hp.m, hp.d);
    Ok(decomp
        .lambdas()
        .iter()
        .map(|&lambda| ModalSubsystem {
            lambda,
            a: Matrix3::new(
                0.0,
                1.0,
                0.0,
                -lambda / m,
                -(d + nu) / m,
                1.0 / m,
                0.0,
                delta * (nu - r_r_inv),
                -delta,
            ),
            b: Matrix3x2::new(
                0.0,
                0.0,
                hp.k_p / m,
                -nu * hp.k_omega / m,
                0.0,
                delta * (nu - r_r_inv) * hp.k_omega,
            ),
            c: RowVector3::new(0.0, 1.0, 0.0),
            is_zero_mode: lambda.abs() < zero_tol,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netmodel::NetworkTopology;
    use approx::assert_relative_eq;

    #[test]
    fn two_bus_spectrum() {
        let l = NetworkTopology::path(2, 1.0).unwrap().laplacian();
        let decomp = eigendecompose(&l).unwrap();
        assert_relative_eq!(decomp.lambdas()[0], 0.0, epsilon = 1e-12);
        assert_relative_eq!(decomp.lambdas()[1], 2.0, max_relative = 1e-12);
    }

    #[test]
    fn triangle_spectrum() {
        let l = NetworkTopology::complete(3, 1.0).unwrap().laplacian();
        let decomp = eigendecompose(&l).unwrap();
        assert_relative_eq!(decomp.lambdas()[0], 0.0, epsilon = 1e-12);
        assert_relative_eq!(decomp.lambdas()[1], 3.0, max_relative = 1e-12);
        assert_relative_eq!(decomp.lambdas()[2], 3.0, max_relative = 1e-12);
    }

    #[test]
    fn ring_spectrum_matches_circulant_formula() {
        let n = 10;
        let l = NetworkTopology::ring(n, 1.0).unwrap().laplacian();
        let decomp = eigendecompose(&l).unwrap();
        let mut expected: Vec<f64> = (0..n)
            .map(|k| 2.0 - 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
            .collect();
        expected.sort_by(f64::total_cmp);
        for (got, want) in decomp.lambdas().iter().zip(expected) {
            assert_relative_eq!(*got, want, epsilon = 1e-10);
        }
    }

    #[test]
    fn orthonormality_and_reconstruction() {
        let mut rng = crate::test_rng(11);
        for _ in 0..10 {
            let n = rand::Rng::random_range(&mut rng, 2..=15);
            let topo = NetworkTopology::random_connected(n, 0.4, (0.1, 10.0), &mut rng).unwrap();
            let l = topo.laplacian();
            let decomp = eigendecompose(&l).unwrap();
            let u = decomp.u();
            let id_err = (u.transpose() * u - DMatrix::identity(n, n)).amax();
            assert!(id_err <= 1e-10, "U^T U deviates from I by {id_err:e}");
            let rebuilt = u * DMatrix::from_diagonal(decomp.lambdas()) * u.transpose();
            let rel = (&rebuilt - &l).norm() / l.norm();
            assert!(rel <= 1e-9, "reconstruction error {rel:e}");
            assert!(decomp.lambdas()[0].abs() <= 1e-10);
            assert!(decomp.lambdas().iter().all(|&x| x >= -1e-10));
            assert_eq!(decomp.count_zero_modes(1e-9), 1);
        }
    }

    #[test]
    fn sign_convention_is_deterministic() {
        let l = NetworkTopology::ring(6, 1.5).unwrap().laplacian();
        let a = eigendecompose(&l).unwrap();
        let b = eigendecompose(&l).unwrap();
        assert_eq!(a.u(), b.u());
        for j in 0..6 {
            let col = a.u().column(j);
            let max_abs = col.amax();
            let first = col.iter().find(|x| x.abs() > 1e-8 * max_abs).unwrap();
            assert!(*first > 0.0);
        }
    }

    #[test]
    fn asymmetric_input_rejected() {
        let mut l = NetworkTopology::path(3, 1.0).unwrap().laplacian();
        l[(0, 1)] += 1e-6;
        assert!(matches!(eigendecompose(&l), Err(Error::Input(_))));
    }

    #[test]
    fn modal_matrices_match_parameterization() {
        let l = NetworkTopology::path(2, 1.0).unwrap().laplacian();
        let decomp = eigendecompose(&l).unwrap();
        let params = SystemParams::uniform(1.0, 1.0, 1.0, 1.0).unwrap();
        let config = ControllerConfig::IDroop {
            nu: 2.0,
            delta: 1.0,
            r_r_inv: 1.0,
        };
        let subs = modal_subsystems(&decomp, &params, &config).unwrap();
        assert_eq!(subs.len(), 2);
        assert!(subs[0].is_zero_mode);
        assert!(!subs[1].is_zero_mode);
        let a1 = Matrix3::new(0.0, 1.0, 0.0, -2.0, -3.0, 1.0, 0.0, 1.0, -1.0);
        assert_relative_eq!(subs[1].a, a1, epsilon = 1e-12);
        // Noise column: [0, -nu k_omega / m, delta (nu - r_r_inv) k_omega].
        assert_eq!(subs[1].b.column(1).as_slice(), &[0.0, -2.0, 1.0]);
    }

    #[test]
    fn zero_mode_deflation_drops_angle_state() {
        let l = NetworkTopology::path(2, 1.0).unwrap().laplacian();
        let decomp = eigendecompose(&l).unwrap();
        let params = SystemParams::uniform(1.0, 1.0, 1.0, 1.0).unwrap();
        let config = ControllerConfig::IDroop {
            nu: 2.0,
            delta: 1.0,
            r_r_inv: 1.0,
        };
        let subs = modal_subsystems(&decomp, &params, &config).unwrap();
        let (a, b, c) = subs[0].deflated();
        assert_eq!(a, Matrix2::new(-3.0, 1.0, 1.0, -1.0));
        assert_eq!(b, Matrix2::new(1.0, -2.0, 0.0, 1.0));
        assert_eq!(c, RowVector2::new(1.0, 0.0));
    }

    #[test]
    fn heterogeneous_params_rejected() {
        let l = NetworkTopology::path(2, 1.0).unwrap().laplacian();
        let decomp = eigendecompose(&l).unwrap();
        let params = SystemParams::new(
            crate::Param::PerBus(vec![1.0, 2.0]),
            1.0.into(),
            1.0.into(),
            1.0.into(),
        )
        .unwrap();
        let config = ControllerConfig::IDroop {
            nu: 2.0,
            delta: 1.0,
            r_r_inv: 1.0,
        };
        assert!(matches!(
            modal_subsystems(&decomp, &params, &config),
            Err(Error::Homogeneity(_))
        ));
    }

    #[test]
    fn droop_config_rejected_for_modal_subsystems() {
        let l = NetworkTopology::path(2, 1.0).unwrap().laplacian();
        let decomp = eigendecompose(&l).unwrap();
        let params = SystemParams::uniform(1.0, 1.0, 1.0, 1.0).unwrap();
        let config = ControllerConfig::Droop { r_r_inv: 1.0 };
        assert!(matches!(
            modal_subsystems(&decomp, &params, &config),
            Err(Error::Input(_))
        ));
    }
}
