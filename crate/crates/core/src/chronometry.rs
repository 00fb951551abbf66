//! Mean-time estimators at a detector and along a time-function map.
//!
//! Five definitions are implemented side by side so they can be compared on
//! one scenario:
//!
//! | tag               | definition                                                  | verdict   |
//! |-------------------|-------------------------------------------------------------|-----------|
//! | `omega-average`   | `Σ t_j P_j(Ω) / Σ P_j(Ω)` over snapshots                    | critiqued |
//! | `presence`        | `∫ t ψ†ψ(x_d,t) dt / ∫ ψ†ψ(x_d,t) dt`                       | critiqued |
//! | `surface-mean`    | `∫ t(x) ρ_surface(x) dx` for a continuous time function      | endorsed  |
//! | `flux-density`    | `∫ t f_T(t) dt`, `f_T = ρ_surface(x(t)) |dx/dt|`            | endorsed  |
//! | `current-arrival` | `∫ t J(x_d,t) dt / ∫ J(x_d,t) dt`                           | critiqued |
//!
//! The critiqued estimators weight `t` by a density over position, which is
//! not a probability density over time. The endorsed ones push a position
//! density forward through a time function `t(x)`.
//!
//! How the surface density `ρ_surface(x) = |ψ(x, t(x))|²` is produced is left
//! to the caller. [`surface_from_state`] and [`ballistic_time_map`] give one
//! choice: the lattice density of the prepared state together with the
//! classical arrival map `t(x) = t₀ + (x_d − x)·M/p₀`.
//!
//! Integrals use the composite trapezoid rule throughout.

use crate::format::{csv_table, sci};
use crate::lattice::{density_and_current_at, evolve, probability_density, to_position, Model, SpinorGrid};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChronometryError {
    #[error("denominator {raw_mass:e} is too small for a mean")]
    ZeroMass { raw_mass: f64 },
    #[error("integrated current {raw_mass:e} is negative (left-movers dominate)")]
    NegativeMass { raw_mass: f64 },
    #[error("surface density integrates to {mass}, not 1")]
    NotNormalized { mass: f64 },
    #[error("mean time integral does not converge")]
    NonFiniteMean,
    #[error("time function is not strictly monotonic at sample {index}")]
    NonMonotonic { index: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("energy {energy} is off shell for momentum {momentum}")]
    OffShell { momentum: f64, energy: f64 },
    #[error("momentum is zero")]
    ZeroMomentum,
}

/// Denominators at or below this are treated as zero.
pub const MASS_FLOOR: f64 = 1e-14;
/// Allowed deviation of the surface mass from 1.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    OmegaAverage,
    Presence,
    SurfaceMean,
    FluxDensity,
    CurrentArrival,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::OmegaAverage,
        Method::Presence,
        Method::SurfaceMean,
        Method::FluxDensity,
        Method::CurrentArrival,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Method::OmegaAverage => "omega-average",
            Method::Presence => "presence",
            Method::SurfaceMean => "surface-mean",
            Method::FluxDensity => "flux-density",
            Method::CurrentArrival => "current-arrival",
        }
    }

    pub fn validity(&self) -> Validity {
        match self {
            Method::SurfaceMean | Method::FluxDensity => Validity::Endorsed,
            _ => Validity::Critiqued,
        }
    }
}

impl std::str::FromStr for Method {
    type Err = ChronometryError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or_else(|| ChronometryError::InvalidInput(format!("unknown estimator `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validity {
    Endorsed,
    Critiqued,
}

impl Validity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Validity::Endorsed => "endorsed",
            Validity::Critiqued => "critiqued",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EstimatorResult {
    pub method: Method,
    pub mean_time: f64,
    /// Un-normalized denominator (or total mass fed in).
    pub raw_mass: f64,
    pub window: (f64, f64),
    pub validity: Validity,
    /// `∫ max(−J, 0) dt / ∫ |J| dt`, where a signed current enters.
    pub negative_current_fraction: Option<f64>,
}

impl EstimatorResult {
    fn new(method: Method, mean_time: f64, raw_mass: f64, window: (f64, f64)) -> Self {
        Self {
            method,
            mean_time,
            raw_mass,
            window,
            validity: method.validity(),
            negative_current_fraction: None,
        }
    }

    pub const CSV_HEADER: [&'static str; 6] =
        ["method", "mean_time", "raw_mass", "window_lo", "window_hi", "validity_note"];

    pub fn csv_row(&self) -> Vec<String> {
        vec![
            self.method.tag().to_string(),
            sci(self.mean_time),
            sci(self.raw_mass),
            sci(self.window.0),
            sci(self.window.1),
            self.validity.as_str().to_string(),
        ]
    }
}

/// Comparison table, one row per result.
pub fn results_csv(results: &[EstimatorResult]) -> String {
    csv_table(&EstimatorResult::CSV_HEADER, results.iter().map(EstimatorResult::csv_row))
}

/// Composite trapezoid on a uniform grid.
pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => h * (values[1..n - 1].iter().sum::<f64>() + 0.5 * (values[0] + values[n - 1])),
    }
}

/// Composite trapezoid on arbitrary abscissae.
pub fn trapezoid_nonuniform(xs: &[f64], values: &[f64]) -> f64 {
    xs.windows(2)
        .zip(values.windows(2))
        .map(|(x, v)| 0.5 * (x[1] - x[0]) * (v[0] + v[1]))
        .sum()
}

/// Density and current sampled at a fixed detector on a uniform time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeriesAtPoint {
    pub x_detect: f64,
    pub t_start: f64,
    pub dt: f64,
    pub density: Vec<f64>,
    pub current: Vec<f64>,
}

impl TimeSeriesAtPoint {
    pub fn new(x_detect: f64, t_start: f64, dt: f64, density: Vec<f64>, current: Vec<f64>) -> Result<Self, ChronometryError> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(ChronometryError::InvalidInput(format!("time step {dt} must be positive")));
        }
        if density.is_empty() || density.len() != current.len() {
            return Err(ChronometryError::InvalidInput(
                "density and current need the same non-zero length".into(),
            ));
        }
        Ok(Self {
            x_detect,
            t_start,
            dt,
            density,
            current,
        })
    }

    /// Samples `ψ†ψ` and `J` at `x_detect` for `t = t_start + k·dt`, `k < count`.
    pub fn from_state(
        state: &SpinorGrid,
        x_detect: f64,
        t_start: f64,
        dt: f64,
        count: usize,
    ) -> Result<Self, ChronometryError> {
        Self::from_state_shifted(state, x_detect, t_start, dt, count, 0.0)
    }

    /// As [`TimeSeriesAtPoint::from_state`] with evolution under `H − α`.
    pub fn from_state_shifted(
        state: &SpinorGrid,
        x_detect: f64,
        t_start: f64,
        dt: f64,
        count: usize,
        alpha: f64,
    ) -> Result<Self, ChronometryError> {
        let (density, current) = (0..count)
            .map(|k| {
                let t = t_start + k as f64 * dt;
                density_and_current_at(&crate::lattice::evolve_shifted(state, t, alpha), x_detect)
            })
            .unzip();
        Self::new(x_detect, t_start, dt, density, current)
    }

    pub fn len(&self) -> usize {
        self.density.len()
    }

    pub fn is_empty(&self) -> bool {
        self.density.is_empty()
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t_start + k as f64 * self.dt
    }

    pub fn window(&self) -> (f64, f64) {
        (self.t_start, self.time(self.len() - 1))
    }

    /// Largest endpoint value relative to the peak, for density and current.
    pub fn endpoint_ratio(&self) -> f64 {
        let ratio = |v: &[f64]| {
            let peak = v.iter().fold(0.0f64, |a, b| a.max(b.abs()));
            if peak == 0.0 {
                0.0
            } else {
                v[0].abs().max(v[v.len() - 1].abs()) / peak
            }
        };
        ratio(&self.density).max(ratio(&self.current))
    }

    fn weighted_mean(&self, w: &[f64]) -> (f64, f64) {
        let tw: Vec<f64> = w.iter().enumerate().map(|(k, v)| self.time(k) * v).collect();
        (trapezoid(&tw, self.dt), trapezoid(w, self.dt))
    }
}

/// Presence-time mean `∫ t ψ†ψ dt / ∫ ψ†ψ dt` at the detector.
pub fn presence_time_mean(series: &TimeSeriesAtPoint) -> Result<EstimatorResult, ChronometryError> {
    let (num, den) = series.weighted_mean(&series.density);
    if den <= MASS_FLOOR {
        return Err(ChronometryError::ZeroMass { raw_mass: den });
    }
    Ok(EstimatorResult::new(Method::Presence, num / den, den, series.window()))
}

/// Current-weighted arrival mean `∫ t J dt / ∫ J dt` at the detector.
pub fn current_arrival_mean(series: &TimeSeriesAtPoint) -> Result<EstimatorResult, ChronometryError> {
    let (num, den) = series.weighted_mean(&series.current);
    if den.abs() <= MASS_FLOOR {
        return Err(ChronometryError::ZeroMass { raw_mass: den });
    }
    if den < 0.0 {
        return Err(ChronometryError::NegativeMass { raw_mass: den });
    }
    let neg: Vec<f64> = series.current.iter().map(|j| (-j).max(0.0)).collect();
    let abs: Vec<f64> = series.current.iter().map(|j| j.abs()).collect();
    let mut r = EstimatorResult::new(Method::CurrentArrival, num / den, den, series.window());
    r.negative_current_fraction = Some(trapezoid(&neg, series.dt) / trapezoid(&abs, series.dt));
    Ok(r)
}

/// Sampled time function `t(x)`, strictly monotonic in both variables.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeFunctionMap {
    x: Vec<f64>,
    t: Vec<f64>,
}

impl TimeFunctionMap {
    /// `x` must be strictly increasing and `t` strictly monotonic.
    pub fn new(x: Vec<f64>, t: Vec<f64>) -> Result<Self, ChronometryError> {
        if x.len() != t.len() || x.len() < 2 {
            return Err(ChronometryError::InvalidInput(
                "a time function needs at least two matching samples".into(),
            ));
        }
        if let Some(k) = x.windows(2).position(|w| w[1] <= w[0]) {
            return Err(ChronometryError::InvalidInput(format!("positions not increasing at sample {}", k + 1)));
        }
        let rising = t[1] > t[0];
        if let Some(k) = t.windows(2).position(|w| if rising { w[1] <= w[0] } else { w[1] >= w[0] }) {
            return Err(ChronometryError::NonMonotonic { index: k + 1 });
        }
        Ok(Self { x, t })
    }

    pub fn from_fn(x: Vec<f64>, f: impl Fn(f64) -> f64) -> Result<Self, ChronometryError> {
        let t = x.iter().map(|&v| f(v)).collect();
        Self::new(x, t)
    }

    pub fn positions(&self) -> &[f64] {
        &self.x
    }

    pub fn times(&self) -> &[f64] {
        &self.t
    }

    pub fn range(&self) -> (f64, f64) {
        let (a, b) = (self.t[0], self.t[self.t.len() - 1]);
        (a.min(b), a.max(b))
    }

    /// `|dx/dt|` at each sample, by finite differences of the inverse map.
    pub fn speed(&self) -> Vec<f64> {
        let n = self.x.len();
        (0..n)
            .map(|k| {
                let (a, b) = match k {
                    0 => (0, 1),
                    k if k == n - 1 => (n - 2, n - 1),
                    k => (k - 1, k + 1),
                };
                ((self.x[b] - self.x[a]) / (self.t[b] - self.t[a])).abs()
            })
            .collect()
    }
}

/// Classical arrival map `t(x) = t₀ + (x_d − x)·M/p₀` over the given positions.
pub fn ballistic_time_map(
    xs: Vec<f64>,
    t0: f64,
    x_detect: f64,
    mass: f64,
    p0: f64,
) -> Result<TimeFunctionMap, ChronometryError> {
    if p0 == 0.0 {
        return Err(ChronometryError::ZeroMomentum);
    }
    TimeFunctionMap::from_fn(xs, |x| t0 + (x_detect - x) * mass / p0)
}

/// Lattice positions and density of a state: the surface density of the ballistic map.
pub fn surface_from_state(state: &SpinorGrid) -> (Vec<f64>, Vec<f64>) {
    (state.grid.positions(), probability_density(&to_position(state)))
}

fn check_surface(tmap: &TimeFunctionMap, density: &[f64]) -> Result<(), ChronometryError> {
    if density.len() != tmap.x.len() {
        return Err(ChronometryError::InvalidInput(format!(
            "{} densities for {} map samples",
            density.len(),
            tmap.x.len()
        )));
    }
    Ok(())
}

/// Surface mean `∫ t(x) ρ(x) dx` for a continuous time function.
///
/// `ρ` must integrate to 1 within [`NORMALIZATION_TOLERANCE`] unless
/// `renormalize` is set, in which case the mean is divided by the mass.
pub fn theorem1_mean(
    tmap: &TimeFunctionMap,
    surface_density: &[f64],
    renormalize: bool,
) -> Result<EstimatorResult, ChronometryError> {
    check_surface(tmap, surface_density)?;
    let mass = trapezoid_nonuniform(&tmap.x, surface_density);
    if mass <= MASS_FLOOR {
        return Err(ChronometryError::ZeroMass { raw_mass: mass });
    }
    if !renormalize && (mass - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(ChronometryError::NotNormalized { mass });
    }
    let abs: Vec<f64> = tmap.t.iter().zip(surface_density).map(|(t, r)| t.abs() * r).collect();
    if !trapezoid_nonuniform(&tmap.x, &abs).is_finite() {
        return Err(ChronometryError::NonFiniteMean);
    }
    let tw: Vec<f64> = tmap.t.iter().zip(surface_density).map(|(t, r)| t * r).collect();
    let mut mean = trapezoid_nonuniform(&tmap.x, &tw);
    if renormalize {
        mean /= mass;
    }
    Ok(EstimatorResult::new(Method::SurfaceMean, mean, mass, tmap.range()))
}

/// Sampled density of `t(x)` under a surface density, ascending in `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeDensity {
    pub t: Vec<f64>,
    pub f: Vec<f64>,
    /// `∫ ρ dx` of the surface density that was pushed forward.
    pub surface_mass: f64,
}

impl TimeDensity {
    pub fn mass(&self) -> f64 {
        trapezoid_nonuniform(&self.t, &self.f)
    }

    pub fn csv(&self) -> String {
        csv_table(&["t", "f_t"], self.t.iter().zip(&self.f).map(|(t, f)| vec![sci(*t), sci(*f)]))
    }
}

/// Change of variables `f_T(t) = ρ(x(t))·|dx/dt|`; zero outside the range of the map.
pub fn theorem2_density(tmap: &TimeFunctionMap, surface_density: &[f64]) -> Result<TimeDensity, ChronometryError> {
    check_surface(tmap, surface_density)?;
    let speed = tmap.speed();
    let mut t = tmap.t.clone();
    let mut f: Vec<f64> = surface_density.iter().zip(&speed).map(|(r, v)| r.abs() * v).collect();
    if t[1] < t[0] {
        t.reverse();
        f.reverse();
    }
    Ok(TimeDensity {
        t,
        f,
        surface_mass: trapezoid_nonuniform(&tmap.x, surface_density),
    })
}

/// `∫ t f_T dt`, divided by `∫ f_T dt` when `renormalize` is set.
pub fn theorem2_mean(density: &TimeDensity, renormalize: bool) -> Result<EstimatorResult, ChronometryError> {
    let mass = density.mass();
    if mass <= MASS_FLOOR {
        return Err(ChronometryError::ZeroMass { raw_mass: mass });
    }
    let tw: Vec<f64> = density.t.iter().zip(&density.f).map(|(t, f)| t * f).collect();
    let mut mean = trapezoid_nonuniform(&density.t, &tw);
    if renormalize {
        mean /= mass;
    }
    let window = (density.t[0], density.t[density.t.len() - 1]);
    Ok(EstimatorResult::new(Method::FluxDensity, mean, mass, window))
}

/// Snapshot average together with the numbers showing it is not a distribution over `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaAverageReport {
    pub result: EstimatorResult,
    /// `Σ_j P_j(Ω)`; nothing forces this to be 1.
    pub weight_sum: f64,
    /// Largest change of the mean when a single snapshot is duplicated.
    pub refinement_sensitivity: f64,
}

fn omega_value(snapshots: &[(f64, f64)]) -> (f64, f64) {
    let num: f64 = snapshots.iter().map(|(t, w)| t * w).sum();
    let den: f64 = snapshots.iter().map(|(_, w)| w).sum();
    (num / den, den)
}

/// `Σ t_j P_j(Ω) / Σ P_j(Ω)` for snapshots `(t_j, P_j(Ω))`.
pub fn omega_average_demo(snapshots: &[(f64, f64)]) -> Result<OmegaAverageReport, ChronometryError> {
    if snapshots.is_empty() {
        return Err(ChronometryError::InvalidInput("no snapshots".into()));
    }
    let (mean, weight_sum) = omega_value(snapshots);
    if weight_sum.abs() <= MASS_FLOOR {
        return Err(ChronometryError::ZeroMass { raw_mass: weight_sum });
    }
    let refinement_sensitivity = (0..snapshots.len())
        .map(|j| {
            let mut dup = snapshots.to_vec();
            dup.insert(j + 1, snapshots[j]);
            (omega_value(&dup).0 - mean).abs()
        })
        .fold(0.0, f64::max);
    let lo = snapshots.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let hi = snapshots.iter().map(|s| s.0).fold(f64::NEG_INFINITY, f64::max);
    Ok(OmegaAverageReport {
        result: EstimatorResult::new(Method::OmegaAverage, mean, weight_sum, (lo, hi)),
        weight_sum,
        refinement_sensitivity,
    })
}

/// `(t_j, ∫_Ω ψ†ψ dx)` for `Ω = [lo, hi]`, from lattice snapshots of an evolving state.
pub fn region_snapshots(state: &SpinorGrid, times: &[f64], region: (f64, f64)) -> Vec<(f64, f64)> {
    let g = state.grid;
    times
        .iter()
        .map(|&t| {
            let rho = probability_density(&to_position(&evolve(state, t)));
            let p: f64 = (0..g.n())
                .filter(|&j| (region.0..=region.1).contains(&g.position(j)))
                .map(|j| rho[j])
                .sum::<f64>()
                * g.dx();
            (t, p)
        })
        .collect()
}

/// The two phase-gradient time functions of a free plane wave.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FreeTimes {
    /// `(∂p/∂E)·x`.
    pub phase_time: f64,
    /// `(∂p/∂E)·x − t`.
    pub lagged_phase_time: f64,
}

/// Time functions at position `x` for an on-shell `(p, E)`; `t` enters only the second one.
pub fn free_time_function(x: f64, p: f64, energy: f64, model: Model, t: f64) -> Result<FreeTimes, ChronometryError> {
    if p == 0.0 {
        return Err(ChronometryError::ZeroMomentum);
    }
    let on_shell = model.dispersion(p);
    let off = match model {
        Model::Dirac { .. } => energy.abs() - on_shell,
        Model::Schrodinger { .. } => energy - on_shell,
    };
    if off.abs() > 1e-9 * on_shell.max(1.0) {
        return Err(ChronometryError::OffShell { momentum: p, energy });
    }
    let dp_de = match model {
        Model::Dirac { .. } => energy / p,
        Model::Schrodinger { mass } => mass / p,
    };
    let phase_time = dp_de * x;
    Ok(FreeTimes {
        phase_time,
        lagged_phase_time: phase_time - t,
    })
}
