//! Numeric H2 computation via Lyapunov equations.
//!
//! The squared H2 norm of `x' = Ax + Bw`, `y = Cx` with unit white noise
//! `w` is `trace(B^T X B)` where `X` is the observability Gramian solving
//! `A^T X + X A = -C^T C`. The solver is Bartels-Stewart: one real Schur
//! decomposition, then block back-substitution on the quasi-triangular
//! factor. A dense Kronecker-product linear solve lives in the test code
//! as the independent oracle.
//!
//! Network models carry one structurally marginal state (the absolute
//! angle), which is unobservable from the frequency output; both H2 paths
//! deflate it before solving and refuse anything else that is not Hurwitz.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::netmodel::{
    assemble_state_space, ControllerConfig, NetworkTopology, StateSpaceModel, SystemParams,
};
use crate::spectral::ModalSubsystem;
use crate::HURWITZ_TOL;

/// How a squared H2 norm was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H2Method {
    ClosedForm,
    LyapunovModal,
    LyapunovFull,
    MonteCarlo,
}

impl H2Method {
    pub fn name(&self) -> &'static str {
        match self {
            H2Method::ClosedForm => "closed_form",
            H2Method::LyapunovModal => "lyapunov_modal",
            H2Method::LyapunovFull => "lyapunov_full",
            H2Method::MonteCarlo => "monte_carlo",
        }
    }
}

/// A squared H2 norm and the route that produced it.
#[derive(Debug, Clone)]
pub struct H2Report {
    /// Squared norm; `+inf` for virtual inertia with frequency noise.
    pub squared_norm: f64,
    /// Per-mode contributions in ascending-eigenvalue order, when the
    /// computation was modal.
    pub per_mode: Option<Vec<f64>>,
    pub method: H2Method,
    /// Number of marginal modes removed before solving.
    pub deflated_modes: usize,
}

/// Eigenvalues of a quasi-upper-triangular (real Schur) matrix, read off
/// its 1x1 and 2x2 diagonal blocks.
fn quasi_triangular_eigenvalues(t: &DMatrix<f64>) -> Vec<Complex64> {
    let n = t.nrows();
    let mut eigs = Vec::with_capacity(n);
    let mut k = 0;
    while k < n {
        if k + 1 < n && t[(k + 1, k)] != 0.0 {
            let (a, b, c, d) = (t[(k, k)], t[(k, k + 1)], t[(k + 1, k)], t[(k + 1, k + 1)]);
            let mean = 0.5 * (a + d);
            let disc = 0.25 * (a - d) * (a - d) + b * c;
            if disc >= 0.0 {
                let sq = disc.sqrt();
                eigs.push(Complex64::new(mean + sq, 0.0));
                eigs.push(Complex64::new(mean - sq, 0.0));
            } else {
                let sq = (-disc).sqrt();
                eigs.push(Complex64::new(mean, sq));
                eigs.push(Complex64::new(mean, -sq));
            }
            k += 2;
        } else {
            eigs.push(Complex64::new(t[(k, k)], 0.0));
            k += 1;
        }
    }
    eigs
}

/// Solve `A^T X + X A = -RHS` for symmetric `X`, requiring `A` Hurwitz
/// (spectral abscissa below `-1e-9`).
///
/// The returned solution is symmetrized and verified against the residual
/// bound `||A^T X + X A + RHS||_F <= 1e-8 (1 + ||RHS||_F)`.
pub fn solve_lyapunov(a: &DMatrix<f64>, rhs: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    if a.ncols() != n || rhs.nrows() != n || rhs.ncols() != n {
        return Err(Error::Input(format!(
            "Lyapunov solve needs square matching matrices, got A {}x{}, RHS {}x{}",
            a.nrows(),
            a.ncols(),
            rhs.nrows(),
            rhs.ncols()
        )));
    }
    let schur = a.clone().try_schur(1e-14, 10_000).ok_or_else(|| {
        Error::Numerical("Schur decomposition did not converge".into())
    })?;
    let (q, t) = schur.unpack();

    let eigs = quasi_triangular_eigenvalues(&t);
    if let Some(bad) = eigs
        .iter()
        .filter(|e| e.re >= -HURWITZ_TOL)
        .max_by(|x, y| x.re.total_cmp(&y.re))
    {
        return Err(Error::unstable_eigenvalue(*bad));
    }

    // Rotate into Schur coordinates, solve T^T Y + Y T = -Q^T RHS Q.
    let c = -(q.transpose() * rhs * &q);
    let y = solve_schur_transposed_lyapunov(&t, &c)?;
    let mut x = &q * y * q.transpose();

    // Symmetrize; the exact solution is symmetric.
    let xt = x.transpose();
    x = (x + xt) * 0.5;

    let residual = (a.transpose() * &x + &x * a + rhs).norm();
    let bound = 1e-8 * (1.0 + rhs.norm());
    if residual > bound {
        return Err(Error::Numerical(format!(
            "Lyapunov residual {residual:e} exceeds bound {bound:e}"
        )));
    }
    Ok(x)
}

/// Back-substitution for `T^T Y + Y T = C` with `T` quasi-upper-triangular.
///
/// Blocks are processed with column blocks outer and row blocks inner, so
/// every subtracted term is already known; each unknown block solves a
/// small (at most 4x4) Kronecker system.
fn solve_schur_transposed_lyapunov(t: &DMatrix<f64>, c: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = t.nrows();
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut k = 0;
    while k < n {
        let size = if k + 1 < n && t[(k + 1, k)] != 0.0 { 2 } else { 1 };
        blocks.push((k, size));
        k += size;
    }

    let mut y = DMatrix::zeros(n, n);
    for &(j0, js) in &blocks {
        for &(i0, is) in &blocks {
            let mut rhs = c.view((i0, j0), (is, js)).clone_owned();
            // Subtract T_ki^T Y_kj over earlier row blocks k < i.
            for &(k0, ks) in blocks.iter().take_while(|&&(k0, _)| k0 < i0) {
                let t_ki = t.view((k0, i0), (ks, is));
                let y_kj = y.view((k0, j0), (ks, js));
                rhs -= t_ki.transpose() * y_kj;
            }
            // Subtract Y_il T_lj over earlier column blocks l < j.
            for &(l0, ls) in blocks.iter().take_while(|&&(l0, _)| l0 < j0) {
                let y_il = y.view((i0, l0), (is, ls));
                let t_lj = t.view((l0, j0), (ls, js));
                rhs -= y_il * t_lj;
            }

            let t_ii = t.view((i0, i0), (is, is));
            let t_jj = t.view((j0, j0), (js, js));
            let dim = is * js;
            let mut small = DMatrix::zeros(dim, dim);
            for p in 0..is {
                for qq in 0..js {
                    let row = p + qq * is;
                    for pp in 0..is {
                        small[(row, pp + qq * is)] += t_ii[(pp, p)];
                    }
                    for qp in 0..js {
                        small[(row, p + qp * is)] += t_jj[(qp, qq)];
                    }
                }
            }
            let rhs_vec = DVector::from_column_slice(rhs.as_slice());
            let sol = small.lu().solve(&rhs_vec).ok_or_else(|| {
                Error::Numerical("singular block in Lyapunov back-substitution".into())
            })?;
            for qq in 0..js {
                for p in 0..is {
                    y[(i0 + p, j0 + qq)] = sol[p + qq * is];
                }
            }
        }
    }
    Ok(y)
}

fn trace_btxb(b: &DMatrix<f64>, x: &DMatrix<f64>) -> f64 {
    (b.transpose() * x * b).trace()
}

/// Squared H2 norm of a set of modal subsystems, solved mode by mode.
///
/// The zero mode is solved on its deflated two-state form; contributions
/// are summed in ascending-eigenvalue order for bit-stable output.
pub fn h2_numeric_modal(subsystems: &[ModalSubsystem]) -> Result<H2Report> {
    let mut per_mode = Vec::with_capacity(subsystems.len());
    let mut deflated = 0;
    for sub in subsystems {
        let contribution = if sub.is_zero_mode {
            deflated += 1;
            let (a2, b2, c2) = sub.deflated();
            let a = DMatrix::from_column_slice(2, 2, a2.as_slice());
            let b = DMatrix::from_column_slice(2, 2, b2.as_slice());
            let c = DMatrix::from_column_slice(1, 2, &[c2[0], c2[1]]);
            let x = solve_lyapunov(&a, &(c.transpose() * &c))?;
            trace_btxb(&b, &x)
        } else {
            let a = DMatrix::from_column_slice(3, 3, sub.a.as_slice());
            let b = DMatrix::from_column_slice(3, 2, sub.b.as_slice());
            let c = DMatrix::from_column_slice(1, 3, &[sub.c[0], sub.c[1], sub.c[2]]);
            let x = solve_lyapunov(&a, &(c.transpose() * &c))?;
            trace_btxb(&b, &x)
        };
        per_mode.push(contribution);
    }
    let squared_norm = per_mode.iter().sum();
    Ok(H2Report {
        squared_norm,
        per_mode: Some(per_mode),
        method: H2Method::LyapunovModal,
        deflated_modes: deflated,
    })
}

/// Squared H2 norm of a full state-space model, heterogeneous parameters
/// included.
///
/// The absolute-angle state is removed exactly before solving: the angle
/// block is rotated by an orthonormal basis whose first direction is the
/// uniform angle shift (which neither feeds the dynamics, since the
/// Laplacian annihilates it, nor reaches the output), and that coordinate
/// is dropped.
pub fn h2_numeric_full(model: &StateSpaceModel) -> Result<H2Report> {
    let n = model.n_buses();
    let n_states = model.n_states();

    // Householder reflector mapping e_1 to the normalized all-ones vector.
    let u = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    let mut v = -u;
    v[0] += 1.0;
    let vnorm2 = v.norm_squared();
    let h = if vnorm2 < 1e-30 {
        DMatrix::identity(n, n)
    } else {
        DMatrix::identity(n, n) - (&v * v.transpose()) * (2.0 / vnorm2)
    };

    let mut transform = DMatrix::identity(n_states, n_states);
    transform.view_mut((0, 0), (n, n)).copy_from(&h);

    let a_rot = transform.transpose() * model.a() * &transform;
    let b_rot = transform.transpose() * model.b();
    let c_rot = model.c() * &transform;

    let keep: Vec<usize> = (1..n_states).collect();
    let a_defl = a_rot.select_rows(&keep).select_columns(&keep);
    let b_defl = b_rot.select_rows(&keep);
    let c_defl = c_rot.select_columns(&keep);

    let x = solve_lyapunov(&a_defl, &(c_defl.transpose() * &c_defl))?;
    Ok(H2Report {
        squared_norm: trace_btxb(&b_defl, &x),
        per_mode: None,
        method: H2Method::LyapunovFull,
        deflated_modes: 1,
    })
}

/// Numeric H2 report for a topology/parameter/controller triple.
///
/// Virtual inertia with any frequency noise short-circuits to `+inf`
/// without solving; everything else assembles the model and runs the full
/// Lyapunov path.
pub fn h2_numeric_for_config(
    topology: &NetworkTopology,
    params: &SystemParams,
    config: &ControllerConfig,
) -> Result<H2Report> {
    if matches!(config, ControllerConfig::VirtualInertia { .. }) && params.max_k_omega() > 0.0 {
        return Ok(H2Report {
            squared_norm: f64::INFINITY,
            per_mode: None,
            method: H2Method::LyapunovFull,
            deflated_modes: 0,
        });
    }
    let model = assemble_state_space(topology, params, config)?;
    h2_numeric_full(&model)
}
