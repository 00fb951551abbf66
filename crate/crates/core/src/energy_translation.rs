//! Energy-reference shifts, the ladder action of `e^{iαT}` and energy propagation.
//!
//! Moving the zero of energy, `H → H − α`, shifts every eigenvalue by the
//! same constant and multiplies evolved states by a global phase; densities,
//! currents and spectral differences are untouched. The helpers here make
//! each of those statements checkable on the lattice.
//!
//! The translation operator `e^{iαT}` is the momentum-space generator of the
//! time function `T = α₁⊗x̂` (massless Dirac, `θ¹ = 0`). For a spinor with
//! `α₁ = s` it translates the momentum support by `s·α`, which raises `H = s·p`
//! by `α`. With `α` a whole number of grid cells the translation is an exact
//! cyclic shift.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::format::{csv_table, sci};
use crate::lattice::{
    evolve, evolve_shifted, probability_density, to_position, Model, MomentumGrid, OperatorMatrix,
    SpinorGrid,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EnergyError {
    #[error("generator is not hermitian (defect {defect:e})")]
    NonHermitianGenerator { defect: f64 },
    #[error("{value} is not on the lattice")]
    OffLattice { value: f64 },
    #[error("ladder action needs a massless Dirac state, got {model:?}")]
    MassiveModel { model: Model },
    #[error("input is not a single-frequency stationary series (residual {residual:e})")]
    NonStationaryInput { residual: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Sorted eigenvalues; differences are always derived from them.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    eigenvalues: Vec<f64>,
}

impl SpectrumReport {
    pub fn new(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(f64::total_cmp);
        Self { eigenvalues }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `E_j − E_i` for every `i < j`.
    pub fn pairwise_differences(&self) -> impl Iterator<Item = f64> + '_ {
        let e = &self.eigenvalues;
        (0..e.len()).flat_map(move |i| (i + 1..e.len()).map(move |j| e[j] - e[i]))
    }

    /// Neighbouring gaps `E_{k+1} − E_k`.
    pub fn gaps(&self) -> Vec<f64> {
        self.eigenvalues.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// `max |E_k − E'_k − offset|`.
    pub fn max_shift_deviation(&self, other: &SpectrumReport, offset: f64) -> f64 {
        self.eigenvalues
            .iter()
            .zip(&other.eigenvalues)
            .map(|(a, b)| (a - b - offset).abs())
            .fold(0.0, f64::max)
    }

    /// `max |(E_j − E_i) − (E'_j − E'_i)|` over all pairs.
    pub fn max_difference_deviation(&self, other: &SpectrumReport) -> f64 {
        self.pairwise_differences()
            .zip(other.pairwise_differences())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn csv(&self) -> String {
        csv_table(
            &["index", "eigenvalue"],
            self.eigenvalues.iter().enumerate().map(|(k, e)| vec![k.to_string(), sci(*e)]),
        )
    }
}

fn require_hermitian(op: &OperatorMatrix) -> Result<(), EnergyError> {
    let defect = op.hermitian_defect();
    if defect > 1e-12 {
        return Err(EnergyError::NonHermitianGenerator { defect });
    }
    Ok(())
}

/// Eigenvalues of a hermitian operator.
pub fn spectrum(op: &OperatorMatrix) -> Result<SpectrumReport, EnergyError> {
    require_hermitian(op)?;
    let eig = SymmetricEigen::new(op.matrix.clone());
    Ok(SpectrumReport::new(eig.eigenvalues.iter().copied().collect()))
}

/// `H − α·1`: a new zero of energy.
pub fn shift_hamiltonian(h: &OperatorMatrix, alpha: f64) -> Result<OperatorMatrix, EnergyError> {
    require_hermitian(h)?;
    Ok(h.shifted(alpha))
}

/// `ψ(x_j, t_k)` on a uniform time grid; `values[k][j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSamples {
    pub t_start: f64,
    pub dt: f64,
    pub values: Vec<Vec<Complex64>>,
}

impl TimeSamples {
    pub fn time(&self, k: usize) -> f64 {
        self.t_start + k as f64 * self.dt
    }

    /// `e^{−iEt}·u(x)` sampled at `count` times.
    pub fn stationary(profile: &[Complex64], energy: f64, t_start: f64, dt: f64, count: usize) -> Self {
        let values = (0..count)
            .map(|k| {
                let ph = Complex64::from_polar(1.0, -energy * (t_start + k as f64 * dt));
                profile.iter().map(|u| u * ph).collect()
            })
            .collect();
        Self { t_start, dt, values }
    }

    /// Angular frequency `E` of a stationary series `e^{−iEt}u(x)`.
    ///
    /// The per-step phase is read off the lag-one autocorrelation, so `|E·dt|`
    /// must stay below `π`. Fails if the series is not a single mode.
    pub fn fit_frequency(&self) -> Result<f64, EnergyError> {
        if self.values.len() < 2 || !(self.dt > 0.0) {
            return Err(EnergyError::InvalidInput("need two or more samples and dt > 0".into()));
        }
        let corr: Complex64 = self
            .values
            .windows(2)
            .flat_map(|w| w[0].iter().zip(&w[1]).map(|(a, b)| a.conj() * b))
            .sum();
        if corr.norm() == 0.0 {
            return Err(EnergyError::NonStationaryInput { residual: f64::INFINITY });
        }
        let omega = -corr.arg() / self.dt;
        let base = &self.values[0];
        let scale: f64 = base.iter().map(|u| u.norm_sqr()).sum::<f64>().sqrt();
        let residual = self
            .values
            .iter()
            .enumerate()
            .map(|(k, row)| {
                let ph = Complex64::from_polar(1.0, -omega * k as f64 * self.dt);
                row.iter().zip(base).map(|(v, u)| (v - u * ph).norm_sqr()).sum::<f64>().sqrt()
            })
            .fold(0.0, f64::max)
            / scale;
        if residual > 1e-8 {
            return Err(EnergyError::NonStationaryInput { residual });
        }
        Ok(omega)
    }
}

/// Multiplies every sample by `e^{iαt}`; a stationary input at `E` comes back at `E − α`.
pub fn phase_modulate(samples: &TimeSamples, alpha: f64) -> Result<TimeSamples, EnergyError> {
    samples.fit_frequency()?;
    let values = samples
        .values
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let ph = Complex64::from_polar(1.0, alpha * samples.time(k));
            row.iter().map(|v| v * ph).collect()
        })
        .collect();
    Ok(TimeSamples {
        values,
        ..samples.clone()
    })
}

/// `e^{iαT}` with `T = α₁⊗x̂` on a massless Dirac state.
///
/// `α` must be a whole number of momentum cells.
pub fn ladder_apply(state: &SpinorGrid, alpha: f64) -> Result<SpinorGrid, EnergyError> {
    match state.model {
        Model::Dirac { mass } if mass == 0.0 => {}
        model => return Err(EnergyError::MassiveModel { model }),
    }
    let steps = state
        .grid
        .lattice_steps(alpha)
        .ok_or(EnergyError::OffLattice { value: alpha })?;
    let n = state.grid.n();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let shift = |v: &[Complex64], s: i64| -> Vec<Complex64> {
        (0..n).map(|k| v[(k as i64 - s).rem_euclid(n as i64) as usize]).collect()
    };
    // α₁ eigencomponents: u± = (φ₀ ± φ₁)/√2 translate by ±α.
    let up: Vec<Complex64> = (0..n).map(|k| (state.at(0, k) + state.at(1, k)) * h).collect();
    let dn: Vec<Complex64> = (0..n).map(|k| (state.at(0, k) - state.at(1, k)) * h).collect();
    let (up, dn) = (shift(&up, steps), shift(&dn, -steps));
    let mut values = Vec::with_capacity(2 * n);
    values.extend((0..n).map(|k| (up[k] + dn[k]) * h));
    values.extend((0..n).map(|k| (up[k] - dn[k]) * h));
    Ok(SpinorGrid {
        values,
        ..state.clone()
    })
}

/// Eigendecomposition of a hermitian `T`, reusable for many `ΔE`.
#[derive(Clone, Debug)]
pub struct EnergyPropagator {
    vectors: DMatrix<Complex64>,
    values: DVector<f64>,
}

impl EnergyPropagator {
    pub fn new(t: &OperatorMatrix) -> Result<Self, EnergyError> {
        require_hermitian(t)?;
        let eig = SymmetricEigen::new(t.matrix.clone());
        Ok(Self {
            vectors: eig.eigenvectors,
            values: eig.eigenvalues,
        })
    }

    /// `e^{iTΔE}φ₀`, the solution of `−i∂φ/∂E = Tφ`.
    pub fn propagate(&self, phi0: &SpinorGrid, delta_e: f64) -> SpinorGrid {
        let v = DVector::from_column_slice(&phi0.values);
        let mut c = self.vectors.adjoint() * v;
        for (ck, lam) in c.iter_mut().zip(self.values.iter()) {
            *ck *= Complex64::from_polar(1.0, lam * delta_e);
        }
        SpinorGrid {
            values: (&self.vectors * c).iter().copied().collect(),
            ..phi0.clone()
        }
    }
}

/// One-shot [`EnergyPropagator::propagate`].
pub fn energy_propagate(phi0: &SpinorGrid, t: &OperatorMatrix, delta_e: f64) -> Result<SpinorGrid, EnergyError> {
    Ok(EnergyPropagator::new(t)?.propagate(phi0, delta_e))
}

/// `|x₀⟩` with samples `e^{−ip_k x₀}/√(nΔp)` in component 0; `x₀` on the position lattice.
pub fn position_eigenstate(grid: MomentumGrid, model: Model, x0: f64) -> Result<SpinorGrid, EnergyError> {
    grid.position_index(x0).ok_or(EnergyError::OffLattice { value: x0 })?;
    let n = grid.n();
    let norm = 1.0 / (n as f64 * grid.dp()).sqrt();
    let mut values = vec![Complex64::default(); model.components() * n];
    for (k, v) in values.iter_mut().take(n).enumerate() {
        *v = Complex64::from_polar(norm, -grid.momentum(k) * x0);
    }
    SpinorGrid::new(grid, model, values).map_err(|e| EnergyError::InvalidInput(e.to_string()))
}

/// `max |⟨x_i|x_j⟩ − δ_ij|` over all pairs of lattice position eigenstates.
pub fn orthonormality_check(grid: MomentumGrid) -> f64 {
    let model = Model::Schrodinger { mass: 1.0 };
    let states: Vec<SpinorGrid> = grid
        .positions()
        .into_iter()
        .map(|x| position_eigenstate(grid, model, x).expect("lattice point"))
        .collect();
    let mut worst = 0.0f64;
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate().skip(i) {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((a.inner(b) - want).norm());
        }
    }
    worst
}

/// One row of a zero-point shift experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftRow {
    pub alpha: f64,
    /// `max |ρ_shifted − ρ|` over the sampled times and lattice.
    pub max_density_deviation: f64,
    /// [`SpectrumReport::max_difference_deviation`] between `H` and `H − α`.
    pub max_difference_deviation: f64,
    /// [`SpectrumReport::max_shift_deviation`] with offset `α`.
    pub max_spectrum_shift_deviation: f64,
}

impl ShiftRow {
    pub const CSV_HEADER: [&'static str; 4] =
        ["alpha", "max_density_deviation", "max_difference_deviation", "max_spectrum_shift_deviation"];

    pub fn csv_row(&self) -> Vec<String> {
        vec![
            sci(self.alpha),
            sci(self.max_density_deviation),
            sci(self.max_difference_deviation),
            sci(self.max_spectrum_shift_deviation),
        ]
    }
}

pub fn shift_rows_csv(rows: &[ShiftRow]) -> String {
    csv_table(&ShiftRow::CSV_HEADER, rows.iter().map(ShiftRow::csv_row))
}

/// Compares `H` with `H − α`: spectra, and densities of `state` evolved to each of `times`.
pub fn shift_experiment(
    h: &OperatorMatrix,
    base: &SpectrumReport,
    state: &SpinorGrid,
    alpha: f64,
    times: &[f64],
) -> Result<(ShiftRow, SpectrumReport), EnergyError> {
    let shifted = spectrum(&shift_hamiltonian(h, alpha)?)?;
    let mut max_density_deviation = 0.0f64;
    for &t in times {
        let a = probability_density(&to_position(&evolve(state, t)));
        let b = probability_density(&to_position(&evolve_shifted(state, t, alpha)));
        for (x, y) in a.iter().zip(&b) {
            max_density_deviation = max_density_deviation.max((x - y).abs());
        }
    }
    let row = ShiftRow {
        alpha,
        max_density_deviation,
        max_difference_deviation: base.max_difference_deviation(&shifted),
        max_spectrum_shift_deviation: base.max_shift_deviation(&shifted, alpha),
    };
    Ok((row, shifted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{gaussian_packet, Projection};

    #[test]
    fn spectrum_is_sorted_and_differences_derived() {
        let s = SpectrumReport::new(vec![3.0, -1.0, 2.0]);
        assert_eq!(s.eigenvalues(), &[-1.0, 2.0, 3.0]);
        assert_eq!(s.pairwise_differences().collect::<Vec<_>>(), vec![3.0, 4.0, 1.0]);
        assert_eq!(s.gaps(), vec![3.0, 1.0]);
    }

    #[test]
    fn frequency_fit() {
        let u = vec![Complex64::new(1.0, 0.5), Complex64::new(-0.3, 0.2)];
        let s = TimeSamples::stationary(&u, 5.0, 0.0, 0.05, 50);
        assert!((s.fit_frequency().unwrap() - 5.0).abs() < 1e-8);
        let m = phase_modulate(&s, 3.0).unwrap();
        assert!((m.fit_frequency().unwrap() - 2.0).abs() < 1e-8);
        let z = phase_modulate(&TimeSamples::stationary(&u, 2.0, 0.0, 0.05, 50), 2.0).unwrap();
        assert!(z.fit_frequency().unwrap().abs() < 1e-8);
        assert_eq!(phase_modulate(&s, 0.0).unwrap(), s);
    }

    #[test]
    fn mixed_frequencies_are_refused() {
        let u = vec![Complex64::from(1.0)];
        let mut s = TimeSamples::stationary(&u, 1.0, 0.0, 0.1, 20);
        let other = TimeSamples::stationary(&u, 3.0, 0.0, 0.1, 20);
        for (a, b) in s.values.iter_mut().zip(&other.values) {
            a[0] += b[0];
        }
        assert!(matches!(phase_modulate(&s, 1.0), Err(EnergyError::NonStationaryInput { .. })));
    }

    #[test]
    fn ladder_guards() {
        let g = MomentumGrid::with_spacing(64, 0.25).unwrap();
        let massive = gaussian_packet(g, Model::Dirac { mass: 1.0 }, 0.0, 1.0, 0.5, Projection::PositiveEnergy).unwrap();
        assert!(matches!(ladder_apply(&massive, 0.25), Err(EnergyError::MassiveModel { .. })));
        let s = gaussian_packet(g, Model::Dirac { mass: 0.0 }, 0.0, 1.0, 0.5, Projection::Helicity(1)).unwrap();
        assert!(matches!(ladder_apply(&s, 0.3), Err(EnergyError::OffLattice { .. })));
        assert!(ladder_apply(&s, 0.0).unwrap().max_deviation(&s) < 1e-14);
    }

    #[test]
    fn off_lattice_position() {
        let g = MomentumGrid::new(16, 4.0).unwrap();
        assert!(matches!(
            position_eigenstate(g, Model::Schrodinger { mass: 1.0 }, 0.1),
            Err(EnergyError::OffLattice { .. })
        ));
    }
}
