use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{LatticeError, MomentumGrid};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Free model on the grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    /// `H = α₁p + βm`, two spinor components.
    Dirac { mass: f64 },
    /// `H = p²/2M`, one component.
    Schrodinger { mass: f64 },
}

impl Model {
    pub fn components(&self) -> usize {
        match self {
            Model::Dirac { .. } => 2,
            Model::Schrodinger { .. } => 1,
        }
    }

    pub fn mass(&self) -> f64 {
        match *self {
            Model::Dirac { mass } | Model::Schrodinger { mass } => mass,
        }
    }

    /// Non-negative energy of a mode with momentum `p`.
    pub fn dispersion(&self, p: f64) -> f64 {
        match *self {
            Model::Dirac { mass } => p.hypot(mass),
            Model::Schrodinger { mass } => p * p / (2.0 * mass),
        }
    }

    fn validate(&self) -> Result<(), LatticeError> {
        match *self {
            Model::Dirac { mass } if mass.is_finite() && mass >= 0.0 => Ok(()),
            Model::Schrodinger { mass } if mass.is_finite() && mass > 0.0 => Ok(()),
            _ => Err(LatticeError::InvalidParameter(format!("{self:?}: bad mass"))),
        }
    }
}

/// Spinor content imposed on a Dirac packet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    PositiveEnergy,
    NegativeEnergy,
    /// Eigenvector of `α₁` with eigenvalue `±1`.
    Helicity(i8),
}

/// Wavefunction sampled on a momentum grid, component-major:
/// `values[c·n + k] = φ_c(p_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorGrid {
    pub grid: MomentumGrid,
    pub model: Model,
    pub values: Vec<Complex64>,
}

impl SpinorGrid {
    pub fn new(grid: MomentumGrid, model: Model, values: Vec<Complex64>) -> Result<Self, LatticeError> {
        model.validate()?;
        if values.len() != model.components() * grid.n() {
            return Err(LatticeError::InvalidParameter(format!(
                "expected {} samples, got {}",
                model.components() * grid.n(),
                values.len()
            )));
        }
        Ok(Self { grid, model, values })
    }

    pub fn components(&self) -> usize {
        self.model.components()
    }

    /// Sample of component `c` at mode `k`.
    pub fn at(&self, c: usize, k: usize) -> Complex64 {
        self.values[c * self.grid.n() + k]
    }

    /// `⟨a|b⟩ = Σ a*·b·Δp`.
    pub fn inner(&self, other: &SpinorGrid) -> Complex64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            * self.grid.dp()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.dp()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= 1e-12
    }

    pub fn normalized(mut self) -> Self {
        let s = self.norm_sqr().sqrt();
        if s > 0.0 {
            self.values.iter_mut().for_each(|v| *v /= s);
        }
        self
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * c).collect(),
            ..self.clone()
        }
    }

    /// `Σ_k |φ(p_k)|²` summed over components, per mode.
    pub fn momentum_density(&self) -> Vec<f64> {
        let n = self.grid.n();
        (0..n)
            .map(|k| (0..self.components()).map(|c| self.at(c, k).norm_sqr()).sum())
            .collect()
    }

    /// Largest componentwise deviation `max |a − b|`.
    pub fn max_deviation(&self, other: &SpinorGrid) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `⟨H⟩` evaluated mode by mode.
    pub fn energy_expectation(&self) -> f64 {
        let n = self.grid.n();
        let mut acc = 0.0;
        for k in 0..n {
            let p = self.grid.momentum(k);
            match self.model {
                Model::Dirac { mass } => {
                    let (a, b) = (self.at(0, k), self.at(1, k));
                    let ha = a * mass + b * p;
                    let hb = a * p - b * mass;
                    acc += (a.conj() * ha + b.conj() * hb).re;
                }
                Model::Schrodinger { mass } => acc += self.at(0, k).norm_sqr() * p * p / (2.0 * mass),
            }
        }
        acc * self.grid.dp()
    }

    /// Mean and variance of momentum.
    pub fn momentum_moments(&self) -> (f64, f64) {
        let rho = self.momentum_density();
        let dp = self.grid.dp();
        let mass: f64 = rho.iter().sum::<f64>() * dp;
        let mean = (0..rho.len()).map(|k| self.grid.momentum(k) * rho[k]).sum::<f64>() * dp / mass;
        let var = (0..rho.len())
            .map(|k| (self.grid.momentum(k) - mean).powi(2) * rho[k])
            .sum::<f64>()
            * dp
            / mass;
        (mean, var)
    }
}

/// Per-mode spinor for a Dirac projection; unit norm.
fn dirac_spinor(p: f64, m: f64, projection: Projection) -> [Complex64; 2] {
    let e = p.hypot(m);
    let pick = |u: [f64; 2], v: [f64; 2]| {
        let (nu, nv) = (u[0].hypot(u[1]), v[0].hypot(v[1]));
        let w = if nu >= nv { u } else { v };
        let s = w[0].hypot(w[1]);
        if s == 0.0 {
            // p = m = 0: both energy bundles meet; pick the α₁ = +1 spinor.
            let h = std::f64::consts::FRAC_1_SQRT_2;
            return [Complex64::from(h), Complex64::from(h)];
        }
        [Complex64::from(w[0] / s), Complex64::from(w[1] / s)]
    };
    match projection {
        Projection::PositiveEnergy => pick([e + m, p], [p, e - m]),
        Projection::NegativeEnergy => pick([-p, e + m], [e - m, -p]),
        Projection::Helicity(s) => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            [Complex64::from(h), Complex64::from(if s >= 0 { h } else { -h })]
        }
    }
}

/// Normalized Gaussian `φ(p) ∝ exp(−(p−p₀)²/4σ²)·e^{−ipx₀}`.
///
/// Dirac packets carry the per-mode spinor of `projection`; it is ignored
/// for the Schrödinger model.
pub fn gaussian_packet(
    grid: MomentumGrid,
    model: Model,
    x0: f64,
    p0: f64,
    sigma_p: f64,
    projection: Projection,
) -> Result<SpinorGrid, LatticeError> {
    model.validate()?;
    if !(sigma_p.is_finite() && sigma_p > 0.0) {
        return Err(LatticeError::InvalidParameter(format!("width {sigma_p} must be positive")));
    }
    if p0.abs() + 4.0 * sigma_p >= grid.p_max() {
        return Err(LatticeError::BandLimitViolation {
            p0,
            sigma_p,
            p_max: grid.p_max(),
        });
    }
    let n = grid.n();
    let c = model.components();
    let mut values = vec![Complex64::default(); c * n];
    for k in 0..n {
        let p = grid.momentum(k);
        let amp = (-(p - p0).powi(2) / (4.0 * sigma_p * sigma_p)).exp() * Complex64::from_polar(1.0, -p * x0);
        match model {
            Model::Schrodinger { .. } => values[k] = amp,
            Model::Dirac { mass } => {
                let s = dirac_spinor(p, mass, projection);
                values[k] = amp * s[0];
                values[n + k] = amp * s[1];
            }
        }
    }
    Ok(SpinorGrid::new(grid, model, values)?.normalized())
}

/// Exact free evolution `e^{−iHt}` applied mode by mode.
pub fn evolve(state: &SpinorGrid, t: f64) -> SpinorGrid {
    evolve_shifted(state, t, 0.0)
}

/// Evolution under `H − α`: the same as [`evolve`] up to the global phase `e^{iαt}`.
pub fn evolve_shifted(state: &SpinorGrid, t: f64, alpha: f64) -> SpinorGrid {
    let n = state.grid.n();
    let shift = Complex64::from_polar(1.0, alpha * t);
    let mut out = state.clone();
    for k in 0..n {
        let p = state.grid.momentum(k);
        match state.model {
            Model::Schrodinger { mass } => {
                out.values[k] = state.values[k] * Complex64::from_polar(1.0, -p * p * t / (2.0 * mass)) * shift;
            }
            Model::Dirac { mass } => {
                let e = p.hypot(mass);
                let (a, b) = (state.values[k], state.values[n + k]);
                let (cos, sinc) = if e > 0.0 {
                    ((e * t).cos(), (e * t).sin() / e)
                } else {
                    (1.0, t)
                };
                // cos(Et)·1 − i·sin(Et)/E·H(p)
                let ha = a * mass + b * p;
                let hb = a * p - b * mass;
                out.values[k] = (a * cos - I * sinc * ha) * shift;
                out.values[n + k] = (b * cos - I * sinc * hb) * shift;
            }
        }
    }
    out
}

/// Position-space amplitudes `ψ_c(x_j) = Δp/√(2π)·Σ_k φ_c(p_k) e^{i p_k x_j}` on the lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct PositionField {
    pub grid: MomentumGrid,
    pub model: Model,
    /// Component-major, `j` ordered from `−n/2` to `n/2 − 1`.
    pub values: Vec<Complex64>,
}

impl PositionField {
    pub fn at(&self, c: usize, j: usize) -> Complex64 {
        self.values[c * self.grid.n() + j]
    }
}

/// Inverse DFT of each component, reordered so index `n/2` is `x = 0`.
fn synthesize(grid: &MomentumGrid, comps: &[&[Complex64]]) -> Vec<Complex64> {
    let n = grid.n();
    let fft = FftPlanner::new().plan_fft_inverse(n);
    let pref = grid.dp() / (2.0 * PI).sqrt();
    let mut out = Vec::with_capacity(comps.len() * n);
    for comp in comps {
        let mut buf = comp.to_vec();
        fft.process(&mut buf);
        for idx in 0..n {
            let x = grid.position(idx);
            let phase = Complex64::from_polar(pref, -grid.p_max() * x);
            out.push(buf[(idx + n / 2) % n] * phase);
        }
    }
    out
}

pub fn to_position(state: &SpinorGrid) -> PositionField {
    let n = state.grid.n();
    let comps: Vec<&[Complex64]> = state.values.chunks(n).collect();
    PositionField {
        grid: state.grid,
        model: state.model,
        values: synthesize(&state.grid, &comps),
    }
}

/// `ψ†ψ` on the position lattice.
pub fn probability_density(field: &PositionField) -> Vec<f64> {
    let n = field.grid.n();
    (0..n)
        .map(|j| (0..field.model.components()).map(|c| field.at(c, j).norm_sqr()).sum())
        .collect()
}

/// Dirac: `ψ†α₁ψ`. Schrödinger: `(1/M)·Im(ψ*∂ψ/∂x)` with a spectral derivative.
pub fn current_density(state: &SpinorGrid) -> Vec<f64> {
    let n = state.grid.n();
    match state.model {
        Model::Dirac { .. } => {
            let f = to_position(state);
            (0..n).map(|j| 2.0 * (f.at(0, j).conj() * f.at(1, j)).re).collect()
        }
        Model::Schrodinger { mass } => {
            let f = to_position(state);
            let d: Vec<Complex64> = (0..n).map(|k| I * state.grid.momentum(k) * state.values[k]).collect();
            let df = synthesize(&state.grid, &[&d]);
            (0..n).map(|j| (f.values[j].conj() * df[j]).im / mass).collect()
        }
    }
}

/// Density and current at an arbitrary point, by direct band-limited summation.
pub fn density_and_current_at(state: &SpinorGrid, x: f64) -> (f64, f64) {
    let n = state.grid.n();
    let pref = state.grid.dp() / (2.0 * PI).sqrt();
    let mut psi = [Complex64::default(); 2];
    let mut dpsi = Complex64::default();
    for k in 0..n {
        let p = state.grid.momentum(k);
        let e = Complex64::from_polar(pref, p * x);
        for (c, slot) in psi.iter_mut().enumerate().take(state.components()) {
            *slot += state.values[c * n + k] * e;
        }
        if let Model::Schrodinger { .. } = state.model {
            dpsi += I * p * state.values[k] * e;
        }
    }
    match state.model {
        Model::Dirac { .. } => (
            psi[0].norm_sqr() + psi[1].norm_sqr(),
            2.0 * (psi[0].conj() * psi[1]).re,
        ),
        Model::Schrodinger { mass } => (psi[0].norm_sqr(), (psi[0].conj() * dpsi).im / mass),
    }
}

/// Spectral derivative of a real periodic lattice field.
pub fn spectral_derivative(grid: &MomentumGrid, field: &[f64]) -> Vec<f64> {
    let n = grid.n();
    let mut planner = FftPlanner::new();
    let mut buf: Vec<Complex64> = field.iter().map(|&v| Complex64::from(v)).collect();
    planner.plan_fft_forward(n).process(&mut buf);
    let l = grid.box_length();
    for (k, v) in buf.iter_mut().enumerate() {
        let m = if k < n / 2 {
            k as f64
        } else if k == n / 2 {
            0.0
        } else {
            k as f64 - n as f64
        };
        *v *= I * 2.0 * PI * m / l;
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    buf.iter().map(|v| v.re / n as f64).collect()
}

/// Position mean and variance from the lattice density.
pub fn position_moments(field: &PositionField) -> (f64, f64) {
    let rho = probability_density(field);
    let g = field.grid;
    let mass: f64 = rho.iter().sum();
    let mean = (0..rho.len()).map(|j| g.position(j) * rho[j]).sum::<f64>() / mass;
    let var = (0..rho.len()).map(|j| (g.position(j) - mean).powi(2) * rho[j]).sum::<f64>() / mass;
    (mean, var)
}
