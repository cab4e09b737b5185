//! Network topologies, bus/inverter transfer functions, and the closed-loop
//! state-space model.
//!
//! A network is a set of buses coupled by susceptance-weighted lines. Each
//! bus carries swing dynamics `1/(M s + D)` and an inverter controller
//! `c(s)` acting on the locally measured frequency. Two exogenous inputs
//! drive every bus: a power disturbance of intensity `k_p` and frequency
//! measurement noise of intensity `k_omega`. The closed loop in the angle,
//! frequency, and (for the lead-lag controller) filtered-feedback
//! coordinates is linear, and this module assembles its `(A, B, C)`
//! matrices with the frequency deviations as output.
//!
//! Units: per-unit power on a common base, frequency in rad/s, time in
//! seconds. No unit conversion happens inside the library.

use nalgebra::{Complex, DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Buses above this count are rejected; everything here is dense,
/// desk-scale linear algebra.
pub const MAX_BUSES: usize = 200;

/// A transmission line between two buses with positive susceptance
/// (per-unit power per radian).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub from: usize,
    pub to: usize,
    pub susceptance: f64,
}

impl Line {
    pub fn new(from: usize, to: usize, susceptance: f64) -> Self {
        Line {
            from,
            to,
            susceptance,
        }
    }
}

/// A connected, undirected network of buses and susceptance-weighted lines.
///
/// Construction validates the line list (no self-loops, no duplicate
/// unordered pairs, positive susceptances) and checks connectivity;
/// a disconnected graph is a hard error.
#[derive(Debug, Clone)]
pub struct NetworkTopology {
    n_buses: usize,
    lines: Vec<Line>,
}

impl NetworkTopology {
    pub fn new(n_buses: usize, lines: Vec<Line>) -> Result<Self> {
        if n_buses == 0 {
            return Err(Error::Construction("network must have at least one bus".into()));
        }
        if n_buses > MAX_BUSES {
            return Err(Error::Construction(format!(
                "network has {n_buses} buses; at most {MAX_BUSES} supported"
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for line in &lines {
            if line.from >= n_buses || line.to >= n_buses {
                return Err(Error::Construction(format!(
                    "line ({}, {}) references a bus >= {n_buses}",
                    line.from, line.to
                )));
            }
            if line.from == line.to {
                return Err(Error::Construction(format!(
                    "self-loop at bus {}",
                    line.from
                )));
            }
            if !(line.susceptance > 0.0) {
                return Err(Error::Construction(format!(
                    "line ({}, {}) must have positive susceptance, got {}",
                    line.from, line.to, line.susceptance
                )));
            }
            let key = (line.from.min(line.to), line.from.max(line.to));
            if !seen.insert(key) {
                return Err(Error::Construction(format!(
                    "duplicate line between buses {} and {}",
                    key.0, key.1
                )));
            }
        }
        let topology = NetworkTopology { n_buses, lines };
        if !topology.is_connected() {
            return Err(Error::Construction("network graph is disconnected".into()));
        }
        Ok(topology)
    }

    /// Single isolated bus (the trivial connected network).
    pub fn single_bus() -> Self {
        NetworkTopology {
            n_buses: 1,
            lines: Vec::new(),
        }
    }

    /// Path graph 0 - 1 - ... - (n-1) with uniform susceptance.
    pub fn path(n_buses: usize, susceptance: f64) -> Result<Self> {
        let lines = (1..n_buses)
            .map(|i| Line::new(i - 1, i, susceptance))
            .collect();
        Self::new(n_buses, lines)
    }

    /// Ring graph with uniform susceptance.
    pub fn ring(n_buses: usize, susceptance: f64) -> Result<Self> {
        if n_buses < 3 {
            return Err(Error::Construction("ring needs at least 3 buses".into()));
        }
        let lines = (0..n_buses)
            .map(|i| Line::new(i, (i + 1) % n_buses, susceptance))
            .collect();
        Self::new(n_buses, lines)
    }

    /// Complete graph with uniform susceptance.
    pub fn complete(n_buses: usize, susceptance: f64) -> Result<Self> {
        let mut lines = Vec::new();
        for i in 0..n_buses {
            for j in (i + 1)..n_buses {
                lines.push(Line::new(i, j, susceptance));
            }
        }
        Self::new(n_buses, lines)
    }

    /// Random connected graph: a uniformly random spanning tree plus each
    /// remaining pair independently with probability `extra_edge_prob`,
    /// susceptances uniform in `b_range`.
    pub fn random_connected<R: Rng>(
        n_buses: usize,
        extra_edge_prob: f64,
        b_range: (f64, f64),
        rng: &mut R,
    ) -> Result<Self> {
        let mut lines = Vec::new();
        let mut in_tree: Vec<usize> = vec![0];
        let mut out_tree: Vec<usize> = (1..n_buses).collect();
        while let Some(&bus) = out_tree.last() {
            let anchor = in_tree[rng.random_range(0..in_tree.len())];
            lines.push(Line::new(anchor, bus, rng.random_range(b_range.0..=b_range.1)));
            in_tree.push(bus);
            out_tree.pop();
        }
        let tree_edges: std::collections::HashSet<(usize, usize)> = lines
            .iter()
            .map(|l| (l.from.min(l.to), l.from.max(l.to)))
            .collect();
        for i in 0..n_buses {
            for j in (i + 1)..n_buses {
                if !tree_edges.contains(&(i, j)) && rng.random_bool(extra_edge_prob) {
                    lines.push(Line::new(i, j, rng.random_range(b_range.0..=b_range.1)));
                }
            }
        }
        Self::new(n_buses, lines)
    }

    pub fn n_buses(&self) -> usize {
        self.n_buses
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n_buses).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let root = find(parent, parent[i]);
                parent[i] = root;
            }
            parent[i]
        }
        for line in &self.lines {
            let (a, b) = (find(&mut parent, line.from), find(&mut parent, line.to));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..self.n_buses).all(|i| find(&mut parent, i) == root)
    }

    /// Susceptance-weighted graph Laplacian: `L[i][j] = -b_ij` off-diagonal,
    /// row sums exactly zero, symmetric positive semidefinite.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let mut l = DMatrix::zeros(self.n_buses, self.n_buses);
        for line in &self.lines {
            let (i, j, b) = (line.from, line.to, line.susceptance);
            l[(i, j)] -= b;
            l[(j, i)] -= b;
            l[(i, i)] += b;
            l[(j, j)] += b;
        }
        l
    }
}

/// Build the susceptance-weighted Laplacian of a topology.
pub fn build_laplacian(topology: &NetworkTopology) -> DMatrix<f64> {
    topology.laplacian()
}

/// A per-bus parameter: one value for all buses, or an explicit vector.
#[derive(Debug, Clone, PartialEq)]
pub enum Param {
    Uniform(f64),
    PerBus(Vec<f64>),
}

impl Param {
    /// True when the parameter takes a single value on every bus.
    pub fn is_uniform_valued(&self) -> bool {
        match self {
            Param::Uniform(_) => true,
            Param::PerBus(v) => v.windows(2).all(|w| w[0] == w[1]),
        }
    }

    /// Expand to an n-vector; errors if an explicit vector has the wrong length.
    pub fn expand(&self, n: usize, name: &str) -> Result<DVector<f64>> {
        match self {
            Param::Uniform(x) => Ok(DVector::from_element(n, *x)),
            Param::PerBus(v) => {
                if v.len() != n {
                    Err(Error::Construction(format!(
                        "{name} has {} entries but the network has {n} buses",
                        v.len()
                    )))
                } else {
                    Ok(DVector::from_column_slice(v))
                }
            }
        }
    }

    fn first(&self) -> f64 {
        match self {
            Param::Uniform(x) => *x,
            Param::PerBus(v) => v[0],
        }
    }

    fn for_each(&self, mut f: impl FnMut(f64) -> bool) -> bool {
        match self {
            Param::Uniform(x) => f(*x),
            Param::PerBus(v) => v.iter().all(|&x| f(x)),
        }
    }
}

impl From<f64> for Param {
    fn from(x: f64) -> Self {
        Param::Uniform(x)
    }
}

/// Per-bus generator and disturbance parameters: inertia `m` (s^2 pu),
/// damping / load-frequency coefficient `d` (s pu), power-disturbance
/// intensity `k_p` (pu), and frequency-noise intensity `k_omega` (rad/s).
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    pub m: Param,
    pub d: Param,
    pub k_p: Param,
    pub k_omega: Param,
}

impl SystemParams {
    pub fn new(m: Param, d: Param, k_p: Param, k_omega: Param) -> Result<Self> {
        if !m.for_each(|x| x > 0.0) {
            return Err(Error::Construction("inertia m must be positive".into()));
        }
        if !d.for_each(|x| x > 0.0) {
            return Err(Error::Construction("damping d must be positive".into()));
        }
        if !k_p.for_each(|x| x >= 0.0) {
            return Err(Error::Construction("noise intensity k_p must be nonnegative".into()));
        }
        if !k_omega.for_each(|x| x >= 0.0) {
            return Err(Error::Construction("noise intensity k_omega must be nonnegative".into()));
        }
        Ok(SystemParams { m, d, k_p, k_omega })
    }

    /// Uniform parameters on every bus.
    pub fn uniform(m: f64, d: f64, k_p: f64, k_omega: f64) -> Result<Self> {
        Self::new(m.into(), d.into(), k_p.into(), k_omega.into())
    }

    /// True when all four parameters take a single value across buses.
    pub fn is_homogeneous(&self) -> bool {
        self.m.is_uniform_valued()
            && self.d.is_uniform_valued()
            && self.k_p.is_uniform_valued()
            && self.k_omega.is_uniform_valued()
    }

    /// Extract the scalar parameter set, or fail on heterogeneous input.
    pub fn homogeneous(&self) -> Result<HomogeneousParams> {
        if !self.is_homogeneous() {
            return Err(Error::Homogeneity(
                "operation requires homogeneous per-bus parameters".into(),
            ));
        }
        Ok(HomogeneousParams {
            m: self.m.first(),
            d: self.d.first(),
            k_p: self.k_p.first(),
            k_omega: self.k_omega.first(),
        })
    }

    pub fn max_k_omega(&self) -> f64 {
        match &self.k_omega {
            Param::Uniform(x) => *x,
            Param::PerBus(v) => v.iter().cloned().fold(0.0, f64::max),
        }
    }
}

/// Scalar parameter set for the homogeneous-network analysis paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousParams {
    pub m: f64,
    pub d: f64,
    pub k_p: f64,
    pub k_omega: f64,
}

impl HomogeneousParams {
    pub fn new(m: f64, d: f64, k_p: f64, k_omega: f64) -> Result<Self> {
        let params = SystemParams::uniform(m, d, k_p, k_omega)?;
        params.homogeneous()
    }
}

/// Inverter controller: static droop `c(s) = r_r_inv`, virtual inertia
/// `c(s) = nu s + r_r_inv`, or the first-order lead-lag
/// `c(s) = (nu s + delta r_r_inv) / (s + delta)` whose DC gain `r_r_inv`
/// is decoupled from its high-frequency gain `nu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ControllerConfig {
    Droop { r_r_inv: f64 },
    VirtualInertia { nu: f64, r_r_inv: f64 },
    IDroop { nu: f64, delta: f64, r_r_inv: f64 },
}

impl ControllerConfig {
    pub fn validate(&self) -> Result<()> {
        let r = self.r_r_inv();
        if !(r > 0.0) {
            return Err(Error::Construction(format!(
                "droop gain r_r_inv must be positive, got {r}"
            )));
        }
        match *self {
            ControllerConfig::Droop { .. } => {}
            ControllerConfig::VirtualInertia { nu, .. } => {
                if !(nu >= 0.0) {
                    return Err(Error::Construction(format!(
                        "virtual inertia gain nu must be nonnegative, got {nu}"
                    )));
                }
            }
            ControllerConfig::IDroop { nu, delta, .. } => {
                if !(nu >= 0.0) {
                    return Err(Error::Construction(format!(
                        "lead-lag gain nu must be nonnegative, got {nu}"
                    )));
                }
                if !(delta >= 0.0) {
                    return Err(Error::Construction(format!(
                        "lead-lag pole delta must be nonnegative, got {delta}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn r_r_inv(&self) -> f64 {
        match *self {
            ControllerConfig::Droop { r_r_inv }
            | ControllerConfig::VirtualInertia { r_r_inv, .. }
            | ControllerConfig::IDroop { r_r_inv, .. } => r_r_inv,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ControllerConfig::Droop { .. } => "droop",
            ControllerConfig::VirtualInertia { .. } => "virtual_inertia",
            ControllerConfig::IDroop { .. } => "idroop",
        }
    }

    /// Largest gain `|c(j omega)|` over all frequencies, used by the
    /// delay-robustness analysis. Unbounded for virtual inertia.
    pub fn sup_gain(&self) -> f64 {
        match *self {
            ControllerConfig::Droop { r_r_inv } => r_r_inv,
            ControllerConfig::VirtualInertia { .. } => f64::INFINITY,
            // |c(j w)| is monotone between the DC gain and nu.
            ControllerConfig::IDroop { nu, r_r_inv, .. } => nu.max(r_r_inv),
        }
    }
}

/// Evaluate the controller transfer function `c(s)`.
///
/// For the lead-lag controller with `delta = 0` the function collapses to
/// the constant `nu` (the pole and the DC zero cancel); with `delta > 0`,
/// evaluation exactly at the pole `s = -delta` is a domain error.
pub fn controller_transfer(config: &ControllerConfig, s: Complex64) -> Result<Complex64> {
    config.validate()?;
    match *config {
        ControllerConfig::Droop { r_r_inv } => Ok(Complex64::new(r_r_inv, 0.0)),
        ControllerConfig::VirtualInertia { nu, r_r_inv } => Ok(s * nu + r_r_inv),
        ControllerConfig::IDroop { nu, delta, r_r_inv } => {
            if delta == 0.0 {
                return Ok(Complex64::new(nu, 0.0));
            }
            if s == Complex64::ZERO {
                // DC gain is r_r_inv exactly; (delta r_r_inv) / delta rounds.
                return Ok(Complex64::new(r_r_inv, 0.0));
            }
            let den = s + delta;
            if den == Complex64::ZERO {
                return Err(Error::Domain(format!(
                    "controller transfer function evaluated at its pole s = {s}"
                )));
            }
            Ok((s * nu + delta * r_r_inv) / den)
        }
    }
}

/// Closed-loop bus transfer function from power imbalance to frequency
/// deviation, `p(s) = 1/(M s + D) * (1 + c(s)/(M s + D))^-1`, evaluated in
/// the algebraically equivalent form `1 / (M s + D + c(s))`.
pub fn bus_transfer(m: f64, d: f64, config: &ControllerConfig, s: Complex64) -> Result<Complex64> {
    if !(m > 0.0) || !(d > 0.0) {
        return Err(Error::Construction(format!(
            "bus transfer needs m > 0 and d > 0, got m = {m}, d = {d}"
        )));
    }
    let c = controller_transfer(config, s)?;
    let den = s * m + d + c;
    if den == Complex64::ZERO {
        return Err(Error::Domain(format!(
            "bus transfer function evaluated at a pole, s = {s}"
        )));
    }
    Ok(den.inv())
}

/// Which coordinates a contiguous block of the state vector holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateBlock {
    /// Bus voltage angles.
    Theta,
    /// Bus frequency deviations (the model output).
    Omega,
    /// Controller feedback state `z = x + K_nu omega`; measuring the
    /// frequency derivative is avoided by this realization.
    Z,
}

impl StateBlock {
    pub fn label(&self) -> &'static str {
        match self {
            StateBlock::Theta => "theta",
            StateBlock::Omega => "omega",
            StateBlock::Z => "z",
        }
    }
}

/// Input block labels: per-bus power disturbances, then per-bus frequency
/// measurement noise.
pub const INPUT_BLOCKS: [&str; 2] = ["w_p", "w_omega"];

/// Dense closed-loop state-space model `x' = A x + B w`, `y = C x`, with
/// `y` the vector of bus frequency deviations.
///
/// Controllers with the `z` state use `3n` states in blocks
/// `(theta, omega, z)`; droop and noise-free virtual inertia reduce to
/// `2n` states `(theta, omega)`. For a connected network `A` has exactly
/// one zero eigenvalue, the unobservable absolute-angle mode.
#[derive(Debug, Clone)]
pub struct StateSpaceModel {
    a: DMatrix<f64>,
    b: DMatrix<f64>,
    c: DMatrix<f64>,
    n_buses: usize,
    state_blocks: Vec<StateBlock>,
}

impl StateSpaceModel {
    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<f64> {
        &self.b
    }

    pub fn c(&self) -> &DMatrix<f64> {
        &self.c
    }

    pub fn n_buses(&self) -> usize {
        self.n_buses
    }

    pub fn n_states(&self) -> usize {
        self.a.nrows()
    }

    pub fn state_blocks(&self) -> &[StateBlock] {
        &self.state_blocks
    }

    /// Index range of the frequency block in the state vector.
    pub fn omega_range(&self) -> std::ops::Range<usize> {
        self.n_buses..2 * self.n_buses
    }

    /// One label per state, e.g. `omega[3]`.
    pub fn state_labels(&self) -> Vec<String> {
        let mut labels = Vec::with_capacity(self.n_states());
        for block in &self.state_blocks {
            for i in 0..self.n_buses {
                labels.push(format!("{}[{i}]", block.label()));
            }
        }
        labels
    }

    /// Frequency response matrix `C (s I - A)^-1 B` at `s = j omega`.
    pub fn frequency_response(&self, omega: f64) -> Result<DMatrix<Complex64>> {
        let n = self.n_states();
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = Complex::new(-self.a[(i, j)], 0.0);
            }
            m[(i, i)] += Complex::new(0.0, omega);
        }
        let b = self.b.map(|x| Complex64::new(x, 0.0));
        let c = self.c.map(|x| Complex64::new(x, 0.0));
        let lu = m.lu();
        let solved = lu
            .solve(&b)
            .ok_or_else(|| Error::Domain(format!("frequency response singular at omega = {omega}")))?;
        Ok(c * solved)
    }
}

/// Assemble the closed-loop model for a topology, parameter set, and
/// controller.
///
/// The lead-lag controller requires `delta > 0`: at `delta = 0` the `z`
/// state is marginally stable and the realization changes character (the
/// closed-form analysis handles that limit exactly instead). Virtual
/// inertia with any `k_omega > 0` is refused because its H2 norm is
/// unbounded; with `k_omega = 0` it is assembled as added inertia.
pub fn assemble_state_space(
    topology: &NetworkTopology,
    params: &SystemParams,
    config: &ControllerConfig,
) -> Result<StateSpaceModel> {
    config.validate()?;
    let n = topology.n_buses();
    let m = params.m.expand(n, "params.m")?;
    let d = params.d.expand(n, "params.d")?;
    let k_p = params.k_p.expand(n, "params.k_p")?;
    let k_omega = params.k_omega.expand(n, "params.k_omega")?;
    let laplacian = topology.laplacian();
    let r_r_inv = config.r_r_inv();

    match *config {
        ControllerConfig::IDroop { nu, delta, .. } => {
            if !(delta > 0.0) {
                return Err(Error::Construction(
                    "state-space assembly requires delta > 0; \
                     use the closed-form path for the delta = 0 limit"
                        .into(),
                ));
            }
            let mut a = DMatrix::zeros(3 * n, 3 * n);
            let mut b = DMatrix::zeros(3 * n, 2 * n);
            let mut c = DMatrix::zeros(n, 3 * n);
            for i in 0..n {
                a[(i, n + i)] = 1.0;
                for j in 0..n {
                    a[(n + i, j)] = -laplacian[(i, j)] / m[i];
                }
                a[(n + i, n + i)] = -(d[i] + nu) / m[i];
                a[(n + i, 2 * n + i)] = 1.0 / m[i];
                a[(2 * n + i, n + i)] = delta * (nu - r_r_inv);
                a[(2 * n + i, 2 * n + i)] = -delta;

                b[(n + i, i)] = k_p[i] / m[i];
                b[(n + i, n + i)] = -nu * k_omega[i] / m[i];
                b[(2 * n + i, n + i)] = delta * (nu - r_r_inv) * k_omega[i];

                c[(i, n + i)] = 1.0;
            }
            Ok(StateSpaceModel {
                a,
                b,
                c,
                n_buses: n,
                state_blocks: vec![StateBlock::Theta, StateBlock::Omega, StateBlock::Z],
            })
        }
        ControllerConfig::Droop { .. } => Ok(assemble_second_order(
            n, &laplacian, &m, &d, &k_p, &k_omega, r_r_inv, false,
        )),
        ControllerConfig::VirtualInertia { nu, .. } => {
            if params.max_k_omega() > 0.0 {
                return Err(Error::UnboundedNoise);
            }
            let m_eff = DVector::from_fn(n, |i, _| m[i] + nu);
            Ok(assemble_second_order(
                n, &laplacian, &m_eff, &d, &k_p, &k_omega, r_r_inv, true,
            ))
        }
    }
}

/// Shared 2n-state assembly for droop and noise-free virtual inertia.
#[allow(clippy::too_many_arguments)]
fn assemble_second_order(
    n: usize,
    laplacian: &DMatrix<f64>,
    m: &DVector<f64>,
    d: &DVector<f64>,
    k_p: &DVector<f64>,
    k_omega: &DVector<f64>,
    r_r_inv: f64,
    noise_free: bool,
) -> StateSpaceModel {
    let mut a = DMatrix::zeros(2 * n, 2 * n);
    let mut b = DMatrix::zeros(2 * n, 2 * n);
    let mut c = DMatrix::zeros(n, 2 * n);
    for i in 0..n {
        a[(i, n + i)] = 1.0;
        for j in 0..n {
            a[(n + i, j)] = -laplacian[(i, j)] / m[i];
        }
        a[(n + i, n + i)] = -(d[i] + r_r_inv) / m[i];
        b[(n + i, i)] = k_p[i] / m[i];
        if !noise_free {
            b[(n + i, n + i)] = -r_r_inv * k_omega[i] / m[i];
        }
        c[(i, n + i)] = 1.0;
    }
    StateSpaceModel {
        a,
        b,
        c,
        n_buses: n,
        state_blocks: vec![StateBlock::Theta, StateBlock::Omega],
    }
}
