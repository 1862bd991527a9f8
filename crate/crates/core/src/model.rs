//! SEIR (humans) + ASEI (mosquitoes) dengue transmission model with an
//! adulticide control, integrated by classical fourth-order Runge-Kutta.
//!
//! All compartments are normalized: human classes by the total population,
//! the aquatic class by `k * N_h` and the adult mosquito classes by `m * N_h`.

use std::io::Write;

use crate::error::{Error, Result};
use crate::moea::{ObjectiveVector, Problem};

/// Epidemiological constants of the Cape Verde 2009 outbreak.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParameters {
    /// Total human population.
    pub n_h: f64,
    /// Average daily bites per mosquito.
    pub bites: f64,
    /// Transmission probability from an infected mosquito, per bite.
    pub beta_mh: f64,
    /// Transmission probability from an infected human, per bite.
    pub beta_hm: f64,
    /// Human natural mortality (1 / lifespan in days).
    pub mu_h: f64,
    /// Recovery rate (1 / viremic period).
    pub eta_h: f64,
    /// Adult mosquito mortality.
    pub mu_m: f64,
    /// Eggs per deposit per capita per day.
    pub phi: f64,
    /// Larval mortality.
    pub mu_a: f64,
    /// Maturation rate from larva to adult.
    pub eta_a: f64,
    /// Extrinsic incubation rate.
    pub eta_m: f64,
    /// Intrinsic incubation rate.
    pub nu_h: f64,
    /// Female mosquitoes per human.
    pub m: f64,
    /// Larvae per human.
    pub k: f64,
}

impl Default for ModelParameters {
    fn default() -> Self {
        Self {
            n_h: 480_000.0,
            bites: 1.0,
            beta_mh: 0.375,
            beta_hm: 0.375,
            mu_h: 1.0 / (71.0 * 365.0),
            eta_h: 1.0 / 3.0,
            mu_m: 1.0 / 11.0,
            phi: 6.0,
            mu_a: 1.0 / 4.0,
            eta_a: 0.08,
            eta_m: 1.0 / 11.0,
            nu_h: 1.0 / 4.0,
            m: 6.0,
            k: 3.0,
        }
    }
}

impl ModelParameters {
    pub const NAMES: [&'static str; 14] = [
        "N_h", "B", "beta_mh", "beta_hm", "mu_h", "eta_h", "mu_m", "phi", "mu_A", "eta_A", "eta_m", "nu_h", "m", "k",
    ];

    fn fields(&self) -> [f64; 14] {
        [
            self.n_h,
            self.bites,
            self.beta_mh,
            self.beta_hm,
            self.mu_h,
            self.eta_h,
            self.mu_m,
            self.phi,
            self.mu_a,
            self.eta_a,
            self.eta_m,
            self.nu_h,
            self.m,
            self.k,
        ]
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in Self::NAMES.iter().zip(self.fields()) {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        Ok(())
    }

    /// Overrides one parameter by its conventional symbol (e.g. `beta_mh`).
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let slot = match name {
            "N_h" => &mut self.n_h,
            "B" => &mut self.bites,
            "beta_mh" => &mut self.beta_mh,
            "beta_hm" => &mut self.beta_hm,
            "mu_h" => &mut self.mu_h,
            "eta_h" => &mut self.eta_h,
            "mu_m" => &mut self.mu_m,
            "phi" => &mut self.phi,
            "mu_A" => &mut self.mu_a,
            "eta_A" => &mut self.eta_a,
            "eta_m" => &mut self.eta_m,
            "nu_h" => &mut self.nu_h,
            "m" => &mut self.m,
            "k" => &mut self.k,
            other => return Err(Error::Config(format!("unknown model parameter `{other}`"))),
        };
        *slot = value;
        self.validate()
    }
}

/// The eight normalized compartments.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EpidemicState {
    pub s_h: f64,
    pub e_h: f64,
    pub i_h: f64,
    pub r_h: f64,
    pub a_m: f64,
    pub s_m: f64,
    pub e_m: f64,
    pub i_m: f64,
}

impl EpidemicState {
    /// Outbreak onset used for every simulation.
    pub const INITIAL: EpidemicState = EpidemicState {
        s_h: 0.99865,
        e_h: 0.00035,
        i_h: 0.001,
        r_h: 0.0,
        a_m: 1.0,
        s_m: 1.0,
        e_m: 0.0,
        i_m: 0.0,
    };

    pub fn to_array(self) -> [f64; 8] {
        [
            self.s_h, self.e_h, self.i_h, self.r_h, self.a_m, self.s_m, self.e_m, self.i_m,
        ]
    }

    pub fn from_array(a: [f64; 8]) -> Self {
        let [s_h, e_h, i_h, r_h, a_m, s_m, e_m, i_m] = a;
        Self {
            s_h,
            e_h,
            i_h,
            r_h,
            a_m,
            s_m,
            e_m,
            i_m,
        }
    }

    pub fn human_total(&self) -> f64 {
        self.s_h + self.e_h + self.i_h + self.r_h
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

/// Right-hand side of the state equations at control level `c`.
#[inline]
pub fn derivative(y: &EpidemicState, p: &ModelParameters, c: f64) -> EpidemicState {
    let infect_h = p.bites * p.beta_mh * p.m * y.i_m;
    let infect_m = p.bites * p.beta_hm * y.i_h;
    EpidemicState {
        s_h: p.mu_h - (infect_h + p.mu_h) * y.s_h,
        e_h: infect_h * y.s_h - (p.nu_h + p.mu_h) * y.e_h,
        i_h: p.nu_h * y.e_h - (p.eta_h + p.mu_h) * y.i_h,
        r_h: p.eta_h * y.i_h - p.mu_h * y.r_h,
        a_m: p.phi * (p.m / p.k) * (1.0 - y.a_m) * (y.s_m + y.e_m + y.i_m) - (p.eta_a + p.mu_a) * y.a_m,
        s_m: p.eta_a * (p.k / p.m) * y.a_m - (infect_m + p.mu_m) * y.s_m - c * y.s_m,
        e_m: infect_m * y.s_m - (p.mu_m + p.eta_m) * y.e_m - c * y.e_m,
        i_m: p.eta_m * y.e_m - p.mu_m * y.i_m - c * y.i_m,
    }
}

/// One classical RK4 step of size `h` from `y`.
///
/// `f(θ, y)` evaluates the vector field at the fraction `θ ∈ {0, ½, 1}` of
/// the step, which lets callers interpolate time-dependent inputs.
#[inline]
pub fn rk4_step<const N: usize>(y: &[f64; N], h: f64, mut f: impl FnMut(f64, &[f64; N]) -> [f64; N]) -> [f64; N] {
    let axpy = |a: &[f64; N], s: f64, b: &[f64; N]| -> [f64; N] { std::array::from_fn(|i| a[i] + s * b[i]) };
    let k1 = f(0.0, y);
    let k2 = f(0.5, &axpy(y, 0.5 * h, &k1));
    let k3 = f(0.5, &axpy(y, 0.5 * h, &k2));
    let k4 = f(1.0, &axpy(y, h, &k3));
    std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

/// Uniform time grid shared by the integrator and the control discretization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub horizon: f64,
    pub steps: usize,
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self {
            horizon: 84.0,
            steps: 1000,
        }
    }
}

impl TimeGrid {
    pub fn new(horizon: f64, steps: usize) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::Config(format!("horizon must be positive, got {horizon}")));
        }
        if steps == 0 {
            return Err(Error::Config("at least one integration step is required".into()));
        }
        Ok(Self { horizon, steps })
    }

    pub fn nodes(&self) -> usize {
        self.steps + 1
    }

    pub fn step(&self) -> f64 {
        self.horizon / self.steps as f64
    }

    pub fn time(&self, node: usize) -> f64 {
        node as f64 * self.step()
    }

    fn check(&self, control: &[f64]) -> Result<()> {
        if control.len() != self.nodes() {
            return Err(Error::GridMismatch {
                expected: self.nodes(),
                got: control.len(),
            });
        }
        Ok(())
    }
}

/// Insecticide levels at the grid nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlSignal(Vec<f64>);

impl ControlSignal {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !(0.0..=1.0).contains(*v)) {
            return Err(Error::ControlOutOfRange { index, value });
        }
        Ok(Self(values))
    }

    pub fn constant(grid: &TimeGrid, level: f64) -> Result<Self> {
        Self::new(vec![level; grid.nodes()])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// States at every grid node.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<EpidemicState>,
}

impl Trajectory {
    pub fn max_human_drift(&self) -> f64 {
        self.states
            .iter()
            .map(|s| (s.human_total() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Node index and value of the infected-human maximum.
    pub fn infected_peak(&self) -> (usize, f64) {
        self.states.iter().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |best, (i, s)| {
                if s.i_h > best.1 {
                    (i, s.i_h)
                } else {
                    best
                }
            },
        )
    }

    /// CSV with header `t,s_h,e_h,i_h,r_h,a_m,s_m,e_m,i_m,c`.
    pub fn write_csv<W: Write>(&self, mut out: W, control: &[f64]) -> std::io::Result<()> {
        writeln!(out, "t,s_h,e_h,i_h,r_h,a_m,s_m,e_m,i_m,c")?;
        for ((t, s), c) in self.times.iter().zip(&self.states).zip(control) {
            write!(out, "{t}")?;
            for v in s.to_array() {
                write!(out, ",{v}")?;
            }
            writeln!(out, ",{c}")?;
        }
        Ok(())
    }
}

/// Integrates from `initial` and hands every node state to `visit`.
///
/// One RK4 step per control interval; the control is linear between nodes,
/// so the half-step stages see the midpoint average.
pub fn simulate(
    initial: EpidemicState,
    params: &ModelParameters,
    control: &[f64],
    grid: &TimeGrid,
    mut visit: impl FnMut(usize, &EpidemicState),
) -> Result<()> {
    grid.check(control)?;
    let h = grid.step();
    let mut y = initial.to_array();
    visit(0, &initial);
    for (node, pair) in control.windows(2).enumerate() {
        let (c0, c1) = (pair[0], pair[1]);
        y = rk4_step(&y, h, |theta, y| {
            let c = c0 + theta * (c1 - c0);
            derivative(&EpidemicState::from_array(*y), params, c).to_array()
        });
        visit(node + 1, &EpidemicState::from_array(y));
    }
    Ok(())
}

pub fn integrate_rk4(params: &ModelParameters, control: &[f64], grid: &TimeGrid) -> Result<Trajectory> {
    integrate_rk4_from(EpidemicState::INITIAL, params, control, grid)
}

pub fn integrate_rk4_from(
    initial: EpidemicState,
    params: &ModelParameters,
    control: &[f64],
    grid: &TimeGrid,
) -> Result<Trajectory> {
    let mut states = Vec::with_capacity(grid.nodes());
    simulate(initial, params, control, grid, |_, s| states.push(*s))?;
    Ok(Trajectory {
        times: (0..grid.nodes()).map(|i| grid.time(i)).collect(),
        states,
    })
}

/// Composite trapezoidal rule on a uniform grid of spacing `h`.
pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values {
        [] | [_] => 0.0,
        [first, inner @ .., last] => h * (0.5 * (first + last) + inner.iter().sum::<f64>()),
    }
}

/// Running trapezoidal accumulator fed one node at a time.
#[derive(Debug, Default)]
struct Trapezoid {
    sum: f64,
    first: Option<f64>,
    last: f64,
}

impl Trapezoid {
    fn push(&mut self, v: f64) {
        if self.first.is_none() {
            self.first = Some(v);
        } else {
            self.sum += self.last;
        }
        self.last = v;
    }

    fn finish(&self, h: f64) -> f64 {
        match self.first {
            None => 0.0,
            Some(first) => h * (self.sum - 0.5 * first + 0.5 * self.last),
        }
    }
}

/// `f1 = ∫ i_h dt` and `f2 = ∫ c dt`, both by the trapezoidal rule on the grid.
pub fn evaluate_objectives(params: &ModelParameters, control: &[f64], grid: &TimeGrid) -> Result<ObjectiveVector> {
    let mut infected = Trapezoid::default();
    simulate(EpidemicState::INITIAL, params, control, grid, |_, s| {
        infected.push(s.i_h.max(0.0))
    })?;
    let h = grid.step();
    Ok(ObjectiveVector::new(infected.finish(h), trapezoid(control, h)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarCostWeights {
    pub gamma_d: f64,
    pub gamma_s: f64,
}

impl ScalarCostWeights {
    pub fn new(gamma_d: f64, gamma_s: f64) -> Result<Self> {
        for (name, value) in [("gamma_D", gamma_d), ("gamma_S", gamma_s)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        Ok(Self { gamma_d, gamma_s })
    }
}

/// `J = ∫ γ_D i_h² + γ_S c² dt` over the grid.
pub fn scalar_cost(
    params: &ModelParameters,
    control: &[f64],
    weights: &ScalarCostWeights,
    grid: &TimeGrid,
) -> Result<f64> {
    scalar_cost_from(EpidemicState::INITIAL, params, control, weights, grid)
}

pub fn scalar_cost_from(
    initial: EpidemicState,
    params: &ModelParameters,
    control: &[f64],
    weights: &ScalarCostWeights,
    grid: &TimeGrid,
) -> Result<f64> {
    let mut integrand = Trapezoid::default();
    simulate(initial, params, control, grid, |node, s| {
        let i_h = s.i_h.max(0.0);
        let c = control[node];
        integrand.push(weights.gamma_d * i_h * i_h + weights.gamma_s * c * c);
    })?;
    Ok(integrand.finish(grid.step()))
}

/// The biobjective control problem over `[0, 1]^(steps + 1)`.
#[derive(Debug, Clone, Default)]
pub struct DengueProblem {
    pub params: ModelParameters,
    pub grid: TimeGrid,
}

impl DengueProblem {
    pub fn new(params: ModelParameters, grid: TimeGrid) -> Result<Self> {
        params.validate()?;
        Ok(Self { params, grid })
    }
}

impl Problem for DengueProblem {
    fn dimension(&self) -> usize {
        self.grid.nodes()
    }

    fn evaluate(&self, x: &[f64]) -> ObjectiveVector {
        evaluate_objectives(&self.params, x, &self.grid).expect("decision vector length matches the problem dimension")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disease_free() -> EpidemicState {
        EpidemicState {
            s_h: 0.7,
            e_h: 0.0,
            i_h: 0.0,
            r_h: 0.3,
            a_m: 0.4,
            s_m: 0.9,
            e_m: 0.0,
            i_m: 0.0,
        }
    }

    #[test]
    fn table_defaults() {
        let p = ModelParameters::default();
        assert_eq!(p.mu_h, 1.0 / 25915.0);
        assert_eq!((p.m, p.k, p.bites, p.phi), (6.0, 3.0, 1.0, 6.0));
        assert_eq!(p.eta_a, 0.08);
        p.validate().unwrap();
    }

    #[test]
    fn rejects_nonpositive_parameters() {
        let mut p = ModelParameters::default();
        assert!(p.set("beta_mh", 0.0).is_err());
        let mut p = ModelParameters::default();
        assert!(p.set("nope", 1.0).is_err());
        p.set("k", 4.0).unwrap();
        assert_eq!(p.k, 4.0);
    }

    #[test]
    fn no_infection_sources_without_infection() {
        let p = ModelParameters::default();
        for c in [0.0, 0.3, 1.0] {
            let d = derivative(&disease_free(), &p, c);
            assert_eq!((d.e_h, d.i_h, d.e_m, d.i_m), (0.0, 0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn control_enters_linearly() {
        let p = ModelParameters::default();
        let y = EpidemicState {
            e_m: 0.02,
            i_m: 0.01,
            ..EpidemicState::INITIAL
        };
        let d0 = derivative(&y, &p, 0.0);
        let d1 = derivative(&y, &p, 1.0);
        assert!((d1.s_m - d0.s_m + y.s_m).abs() < 1e-15);
        assert!((d1.e_m - d0.e_m + y.e_m).abs() < 1e-15);
        assert!((d1.i_m - d0.i_m + y.i_m).abs() < 1e-15);
        assert_eq!(d1.s_h, d0.s_h);
    }

    #[test]
    fn derivative_at_initial_condition() {
        let p = ModelParameters::default();
        let d = derivative(&EpidemicState::INITIAL, &p, 0.0);
        // Hand substitution: i_m = 0, e_m = 0, a_m = s_m = 1.
        let mu_h = 1.0 / 25915.0;
        assert!((d.s_h - mu_h * (1.0 - 0.99865)).abs() < 1e-20);
        assert!((d.s_h - 5.2093e-8).abs() < 1e-11);
        assert!((d.e_h - (-(0.25 + mu_h) * 0.00035)).abs() < 1e-18);
        assert!((d.i_h - (0.25 * 0.00035 - (1.0 / 3.0 + mu_h) * 0.001)).abs() < 1e-18);
        assert!((d.r_h - (0.001 / 3.0)).abs() < 1e-18);
        assert!((d.a_m - (-(0.08 + 0.25))).abs() < 1e-15);
        assert!((d.s_m - (0.08 * 0.5 - (0.375 * 0.001 + 1.0 / 11.0))).abs() < 1e-15);
        assert!((d.e_m - 0.375 * 0.001).abs() < 1e-18);
        assert_eq!(d.i_m, 0.0);
        let human = d.s_h + d.e_h + d.i_h + d.r_h;
        assert!((human - mu_h * (1.0 - EpidemicState::INITIAL.human_total())).abs() < 1e-18);
    }

    #[test]
    fn rk4_core_on_exponential_decay() {
        let mut y = [1.0];
        for _ in 0..10 {
            y = rk4_step(&y, 0.1, |_, y| [-y[0]]);
        }
        assert!((y[0] - (-1.0f64).exp()).abs() < 1e-6);
    }

    #[test]
    fn grid_mismatch_is_reported() {
        let grid = TimeGrid::default();
        let err = integrate_rk4(&ModelParameters::default(), &[0.0; 10], &grid).unwrap_err();
        assert!(matches!(
            err,
            Error::GridMismatch {
                expected: 1001,
                got: 10
            }
        ));
    }

    #[test]
    fn control_signal_validation() {
        assert!(ControlSignal::new(vec![0.0, 1.0, 0.5]).is_ok());
        assert!(matches!(
            ControlSignal::new(vec![0.0, 1.5]),
            Err(Error::ControlOutOfRange { index: 1, .. })
        ));
        assert!(ControlSignal::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn infection_free_subspace_is_invariant() {
        let p = ModelParameters::default();
        let grid = TimeGrid::default();
        let start = EpidemicState {
            s_h: 1.0,
            e_h: 0.0,
            i_h: 0.0,
            ..EpidemicState::INITIAL
        };
        for level in [0.0, 1.0] {
            let c = vec![level; grid.nodes()];
            let traj = integrate_rk4_from(start, &p, &c, &grid).unwrap();
            assert!(traj.states.iter().all(|s| s.i_h == 0.0 && s.e_m == 0.0));
        }
    }

    #[test]
    fn constant_control_effort() {
        let p = ModelParameters::default();
        let grid = TimeGrid::default();
        assert_eq!(evaluate_objectives(&p, &vec![0.0; 1001], &grid).unwrap().f2(), 0.0);
        assert_eq!(evaluate_objectives(&p, &vec![1.0; 1001], &grid).unwrap().f2(), 84.0);
    }

    #[test]
    fn scalar_cost_on_infection_free_trajectory() {
        let p = ModelParameters::default();
        let grid = TimeGrid::default();
        let start = EpidemicState {
            s_h: 1.0,
            e_h: 0.0,
            i_h: 0.0,
            ..EpidemicState::INITIAL
        };
        let w = ScalarCostWeights::new(1.0, 1.0).unwrap();
        let zero = scalar_cost_from(start, &p, &vec![0.0; 1001], &w, &grid).unwrap();
        let one = scalar_cost_from(start, &p, &vec![1.0; 1001], &w, &grid).unwrap();
        assert_eq!(zero, 0.0);
        assert!((one - 84.0).abs() < 1e-12);
        assert!(ScalarCostWeights::new(0.0, 1.0).is_err());
    }

    #[test]
    fn trapezoid_rule() {
        assert_eq!(trapezoid(&[], 1.0), 0.0);
        assert_eq!(trapezoid(&[3.0], 1.0), 0.0);
        assert_eq!(trapezoid(&[0.0, 1.0, 2.0], 0.5), 1.0);
        let mut acc = Trapezoid::default();
        for v in [0.0, 1.0, 2.0] {
            acc.push(v);
        }
        assert_eq!(acc.finish(0.5), 1.0);
    }

    #[test]
    fn trajectory_csv_header_and_rows() {
        let p = ModelParameters::default();
        let grid = TimeGrid::new(1.0, 2).unwrap();
        let c = [0.0, 0.5, 1.0];
        let traj = integrate_rk4(&p, &c, &grid).unwrap();
        let mut buf = Vec::new();
        traj.write_csv(&mut buf, &c).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "t,s_h,e_h,i_h,r_h,a_m,s_m,e_m,i_m,c");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("0,0.99865,0.00035,0.001,0,1,1,0,0,0"));
        let last: Vec<f64> = lines[3].split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(last[0], 1.0);
        assert_eq!(last[9], 1.0);
        assert_eq!(last[3], traj.states[2].i_h);
    }
}
