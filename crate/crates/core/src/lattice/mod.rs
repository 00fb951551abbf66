//! Free (1+1)D Dirac and 1D Schrödinger models on a periodic momentum grid.
//!
//! States live in the momentum representation; position amplitudes are
//! obtained by a discrete Fourier transform. Evolution applies the exact
//! per-mode exponential, so there is no integrator error. All tolerance
//! claims assume band-limited packets that stay clear of the box edges.

mod export;
mod grid;
mod operators;
mod state;

pub use export::{momentum_snapshot_csv, position_snapshot_csv, MOMENTUM_HEADER, POSITION_HEADER};
pub use grid::MomentumGrid;
pub use operators::{
    dirac_hamiltonian, hamiltonian, momentum_scalar, position_operator, schrodinger_hamiltonian,
    time_function_operator, OperatorMatrix, TimeFunctionKind,
};
pub use state::{
    current_density, density_and_current_at, evolve, evolve_shifted, gaussian_packet,
    position_moments, probability_density, spectral_derivative, to_position, Model,
    PositionField, Projection, SpinorGrid,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LatticeError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("packet |p0| + 4 sigma_p = {} reaches the cutoff {p_max}", p0.abs() + 4.0 * sigma_p)]
    BandLimitViolation { p0: f64, sigma_p: f64, p_max: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
