use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{LatticeError, Model, MomentumGrid, SpinorGrid};

/// Dense operator on component-major grid vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    pub matrix: DMatrix<Complex64>,
    pub components: usize,
    /// Set only after [`OperatorMatrix::hermitian_defect`] is within `1e-12`.
    pub hermitian: bool,
}

/// Time-function family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TimeFunctionKind {
    /// `α₁⊗x̂ + τ·β⊗1`.
    DiracLinear(f64),
    /// `x̂²/(2τ)`.
    Quadratic(f64),
}

impl OperatorMatrix {
    /// Wraps a matrix, checking hermiticity.
    pub fn new(matrix: DMatrix<Complex64>, components: usize) -> Self {
        let mut op = Self {
            matrix,
            components,
            hermitian: false,
        };
        op.hermitian = op.hermitian_defect() <= 1e-12;
        op
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `max |A − A†|` over entries.
    pub fn hermitian_defect(&self) -> f64 {
        let a = &self.matrix;
        let mut worst = 0.0f64;
        for r in 0..a.nrows() {
            for c in r..a.ncols() {
                worst = worst.max((a[(r, c)] - a[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let x = nalgebra::DVector::from_column_slice(v);
        (&self.matrix * x).iter().copied().collect()
    }

    pub fn apply_state(&self, s: &SpinorGrid) -> SpinorGrid {
        SpinorGrid {
            values: self.apply(&s.values),
            ..s.clone()
        }
    }

    pub fn expectation(&self, s: &SpinorGrid) -> Complex64 {
        s.inner(&self.apply_state(s))
    }

    pub fn product(&self, other: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix::new(&self.matrix * &other.matrix, self.components)
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix::new(&self.matrix * &other.matrix - &other.matrix * &self.matrix, self.components)
    }

    /// `[A, B]v` via two matrix-vector products each way.
    pub fn commutator_apply(&self, other: &OperatorMatrix, v: &[Complex64]) -> Vec<Complex64> {
        let ab = self.apply(&other.apply(v));
        let ba = other.apply(&self.apply(v));
        ab.iter().zip(&ba).map(|(x, y)| x - y).collect()
    }

    /// `A − α·1`.
    pub fn shifted(&self, alpha: f64) -> OperatorMatrix {
        let id = DMatrix::<Complex64>::identity(self.dim(), self.dim());
        OperatorMatrix {
            matrix: &self.matrix - id * Complex64::from(alpha),
            ..self.clone()
        }
    }
}

/// `A ⊗ B` for a 2×2 (or 1×1) spinor factor `a` and grid matrix `b`, component-major.
fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = b.nrows();
    let c = a.nrows();
    let mut out = DMatrix::zeros(c * n, c * n);
    for r in 0..c {
        for s in 0..c {
            if a[(r, s)] != Complex64::default() {
                out.view_mut((r * n, s * n), (n, n)).copy_from(&(b * a[(r, s)]));
            }
        }
    }
    out
}

fn alpha1() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0].map(Complex64::from))
}

fn beta() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0].map(Complex64::from))
}

/// Grid-only `f(x̂)` for `x̂ = i d/dp`: `f(x̂)_{kl} = (1/n)·Σ_j f(x_j) e^{−2πi(k−l)j/n}`.
fn position_function(grid: &MomentumGrid, f: impl Fn(f64) -> f64) -> DMatrix<Complex64> {
    let n = grid.n();
    // The matrix is circulant; build the first column once.
    let col: Vec<Complex64> = (0..n)
        .map(|d| {
            (0..n)
                .map(|idx| {
                    let j = idx as i64 - (n / 2) as i64;
                    let ang = -2.0 * std::f64::consts::PI * ((d as i64 * j).rem_euclid(n as i64)) as f64 / n as f64;
                    Complex64::from_polar(f(grid.position(idx)), ang)
                })
                .sum::<Complex64>()
                / n as f64
        })
        .collect();
    DMatrix::from_fn(n, n, |k, l| col[(k + n - l) % n])
}

fn position_scalar(grid: &MomentumGrid) -> DMatrix<Complex64> {
    position_function(grid, |x| x)
}

/// Multiplication by `p_k` on the grid.
pub fn momentum_scalar(grid: &MomentumGrid) -> DMatrix<Complex64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        grid.n(),
        grid.momenta().into_iter().map(Complex64::from),
    ))
}

/// `α₁p + βm`, block-diagonal in `p`.
pub fn dirac_hamiltonian(grid: &MomentumGrid, m: f64) -> Result<OperatorMatrix, LatticeError> {
    if !(m.is_finite() && m >= 0.0) {
        return Err(LatticeError::InvalidParameter(format!("mass {m} must be >= 0")));
    }
    let n = grid.n();
    let id = DMatrix::<Complex64>::identity(n, n);
    let h = kron(&alpha1(), &momentum_scalar(grid)) + kron(&beta(), &id) * Complex64::from(m);
    Ok(OperatorMatrix::new(h, 2))
}

/// `p²/2M`, diagonal.
pub fn schrodinger_hamiltonian(grid: &MomentumGrid, mass: f64) -> Result<OperatorMatrix, LatticeError> {
    if !(mass.is_finite() && mass > 0.0) {
        return Err(LatticeError::InvalidParameter(format!("mass {mass} must be > 0")));
    }
    let h = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        grid.n(),
        grid.momenta().into_iter().map(|p| Complex64::from(p * p / (2.0 * mass))),
    ));
    Ok(OperatorMatrix::new(h, 1))
}

pub fn hamiltonian(grid: &MomentumGrid, model: Model) -> Result<OperatorMatrix, LatticeError> {
    match model {
        Model::Dirac { mass } => dirac_hamiltonian(grid, mass),
        Model::Schrodinger { mass } => schrodinger_hamiltonian(grid, mass),
    }
}

/// `x̂ = i d/dp` (spectral, periodic) tensored with the spinor identity.
pub fn position_operator(grid: &MomentumGrid, components: usize) -> OperatorMatrix {
    let id = DMatrix::<Complex64>::identity(components, components);
    OperatorMatrix::new(kron(&id, &position_scalar(grid)), components)
}

/// Time-function operator with `θ¹ = 0`.
pub fn time_function_operator(
    grid: &MomentumGrid,
    kind: TimeFunctionKind,
    model: Model,
) -> Result<OperatorMatrix, LatticeError> {
    match kind {
        TimeFunctionKind::DiracLinear(tau) => {
            if !matches!(model, Model::Dirac { .. }) {
                return Err(LatticeError::InvalidParameter(
                    "the linear time function needs a Dirac model".into(),
                ));
            }
            let n = grid.n();
            let id = DMatrix::<Complex64>::identity(n, n);
            let t = kron(&alpha1(), &position_scalar(grid)) + kron(&beta(), &id) * Complex64::from(tau);
            Ok(OperatorMatrix::new(t, 2))
        }
        TimeFunctionKind::Quadratic(tau) => {
            if !(tau.is_finite() && tau > 0.0) {
                return Err(LatticeError::InvalidParameter(format!("tau {tau} must be > 0")));
            }
            let c = model.components();
            let id = DMatrix::<Complex64>::identity(c, c);
            let x2 = position_function(grid, |x| x * x / (2.0 * tau));
            Ok(OperatorMatrix::new(kron(&id, &x2), c))
        }
    }
}
