use std::f64::consts::PI;

use super::LatticeError;

/// Uniform periodic momentum grid `p_k = −p_max + k·Δp`, `Δp = 2·p_max/n`.
///
/// The conjugate position lattice has spacing `π/p_max` and points
/// `x_j = j·δx` for `j ∈ [−n/2, n/2)`, spanning the box `L = 2π/Δp`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentumGrid {
    n: usize,
    p_max: f64,
}

impl MomentumGrid {
    pub fn new(n: usize, p_max: f64) -> Result<Self, LatticeError> {
        if n < 8 || !n.is_power_of_two() {
            return Err(LatticeError::InvalidGrid(format!(
                "point count {n} is not a power of two >= 8"
            )));
        }
        if !(p_max.is_finite() && p_max > 0.0) {
            return Err(LatticeError::InvalidGrid(format!("cutoff {p_max} must be positive")));
        }
        Ok(Self { n, p_max })
    }

    /// Grid with a prescribed spacing `Δp`, i.e. `p_max = n·Δp/2`.
    pub fn with_spacing(n: usize, dp: f64) -> Result<Self, LatticeError> {
        Self::new(n, 0.5 * n as f64 * dp)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p_max(&self) -> f64 {
        self.p_max
    }

    pub fn dp(&self) -> f64 {
        2.0 * self.p_max / self.n as f64
    }

    pub fn momentum(&self, k: usize) -> f64 {
        -self.p_max + k as f64 * self.dp()
    }

    pub fn momenta(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.momentum(k)).collect()
    }

    /// Length of the periodic position box.
    pub fn box_length(&self) -> f64 {
        2.0 * PI / self.dp()
    }

    /// Position lattice spacing `π/p_max`.
    pub fn dx(&self) -> f64 {
        PI / self.p_max
    }

    /// Position of lattice index `idx ∈ [0, n)`, i.e. `j = idx − n/2`.
    pub fn position(&self, idx: usize) -> f64 {
        (idx as f64 - (self.n / 2) as f64) * self.dx()
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.position(j)).collect()
    }

    /// Lattice index of `x`, if `x` lies on the position lattice.
    pub fn position_index(&self, x: f64) -> Option<usize> {
        let j = x / self.dx();
        let r = j.round();
        if (j - r).abs() > 1e-9 {
            return None;
        }
        let idx = r + (self.n / 2) as f64;
        (idx >= 0.0 && idx < self.n as f64).then_some(idx as usize)
    }

    /// Index shift corresponding to a momentum offset, if it is a whole number of cells.
    pub fn lattice_steps(&self, dp: f64) -> Option<i64> {
        let s = dp / self.dp();
        let r = s.round();
        ((s - r).abs() <= 1e-9).then_some(r as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(MomentumGrid::new(12, 1.0).is_err());
        assert!(MomentumGrid::new(4, 1.0).is_err());
        assert!(MomentumGrid::new(16, 0.0).is_err());
    }

    #[test]
    fn reciprocal_spacings() {
        let g = MomentumGrid::new(1024, 32.0).unwrap();
        assert_eq!(g.dp(), 1.0 / 16.0);
        assert!((g.dp() * g.dx() * g.n() as f64 - 2.0 * PI).abs() < 1e-12);
        assert_eq!(g.position(512), 0.0);
        assert_eq!(g.position_index(g.position(700)), Some(700));
        assert_eq!(g.position_index(0.3), None);
        assert_eq!(g.lattice_steps(0.5), Some(8));
    }
}
