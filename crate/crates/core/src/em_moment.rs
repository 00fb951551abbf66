//! Energy-moment and electromagnetic-moment tensors of point charges on the x¹ axis.
//!
//! For a particle at event `x^μ = (t, x¹, 0, 0)` with four-momentum
//! `p^μ = (m′, m′v, 0, 0)`, `m′ = m/√(1−v²)`:
//!
//! * `J^{μν} = x^μ p^ν − x^ν p^μ`, so `J¹⁰ = m′x¹ − t·p¹` (the energy-moment),
//! * `M^{μν} = (e/2m′)·J^{μν}`, so a charge at rest has `M¹⁰ = ½·e·x¹`.
//!
//! `M` is not a Lorentz tensor because `e/2m′` depends on the frame; the
//! 4×4 array is kept only for bookkeeping. A parenthetical variant placing an
//! opposite charge at the origin (giving `e·x¹`) uses a different dipole
//! convention and is not implemented.

use crate::format::{csv_table, sci};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EmError {
    #[error("speed {v} is not below 1")]
    SuperluminalBoost { v: f64 },
    #[error("charge-to-mass ratios differ: {first} vs {other}")]
    MixedRatio { first: f64, other: f64 },
    #[error("invalid particle: {0}")]
    InvalidParticle(String),
}

/// Kinematic point charge moving along x¹.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointCharge {
    pub charge: f64,
    /// Proper mass, `> 0`.
    pub mass: f64,
    /// Velocity along x¹, `|v| < 1`.
    pub velocity: f64,
    pub t: f64,
    pub x1: f64,
}

impl PointCharge {
    pub fn new(charge: f64, mass: f64, velocity: f64, t: f64, x1: f64) -> Result<Self, EmError> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(EmError::InvalidParticle(format!("mass {mass} must be positive")));
        }
        if !(velocity.abs() < 1.0) {
            return Err(EmError::SuperluminalBoost { v: velocity });
        }
        if ![charge, t, x1].iter().all(|v| v.is_finite()) {
            return Err(EmError::InvalidParticle("non-finite charge or event".into()));
        }
        Ok(Self {
            charge,
            mass,
            velocity,
            t,
            x1,
        })
    }

    pub fn lorentz_factor(&self) -> f64 {
        1.0 / (1.0 - self.velocity * self.velocity).sqrt()
    }

    /// `m′ = m/√(1−v²)`.
    pub fn relativistic_mass(&self) -> f64 {
        self.mass * self.lorentz_factor()
    }

    /// `p¹ = m′v`.
    pub fn momentum(&self) -> f64 {
        self.relativistic_mass() * self.velocity
    }

    /// `e/2m′`.
    pub fn moment_ratio(&self) -> f64 {
        self.charge / (2.0 * self.relativistic_mass())
    }

    fn event(&self) -> [f64; 4] {
        [self.t, self.x1, 0.0, 0.0]
    }

    fn four_momentum(&self) -> [f64; 4] {
        [self.relativistic_mass(), self.momentum(), 0.0, 0.0]
    }
}

/// Antisymmetric 4×4 array; only antisymmetric values can be built.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct MomentTensor {
    components: [[f64; 4]; 4],
}

impl MomentTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `a^μ b^ν − a^ν b^μ`.
    pub fn wedge(a: [f64; 4], b: [f64; 4]) -> Self {
        let mut t = Self::zero();
        for mu in 0..4 {
            for nu in mu + 1..4 {
                t.set(mu, nu, a[mu] * b[nu] - a[nu] * b[mu]);
            }
        }
        t
    }

    /// Sets `[μ][ν] = value` and `[ν][μ] = −value`.
    pub fn set(&mut self, mu: usize, nu: usize, value: f64) {
        if mu == nu {
            return;
        }
        self.components[mu][nu] = value;
        self.components[nu][mu] = -value;
    }

    pub fn get(&self, mu: usize, nu: usize) -> f64 {
        self.components[mu][nu]
    }

    pub fn components(&self) -> &[[f64; 4]; 4] {
        &self.components
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut t = *self;
        t.components.iter_mut().flatten().for_each(|v| *v *= c);
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut t = *self;
        for mu in 0..4 {
            for nu in 0..4 {
                t.components[mu][nu] += other.components[mu][nu];
            }
        }
        t
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..4).all(|mu| (0..4).all(|nu| self.components[mu][nu] == -self.components[nu][mu]))
    }

    pub fn max_abs_difference(&self, other: &Self) -> f64 {
        self.components
            .iter()
            .flatten()
            .zip(other.components.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Four rows `frame, mu, c0..c3`.
    pub fn csv(&self, frame: Frame) -> String {
        csv_table(
            &["frame", "mu", "nu0", "nu1", "nu2", "nu3"],
            (0..4).map(|mu| {
                let mut row = vec![frame.name().to_string(), mu.to_string()];
                row.extend(self.components[mu].iter().map(|v| sci(*v)));
                row
            }),
        )
    }
}

/// Reference frame label for tensor dumps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frame {
    Rest,
    Boosted,
}

impl Frame {
    pub fn name(&self) -> &'static str {
        match self {
            Frame::Rest => "Sigma",
            Frame::Boosted => "Sigma-prime",
        }
    }
}

/// `Σ (x^μ p^ν − x^ν p^μ)` at the stored events.
pub fn angular_momentum_tensor(particles: &[PointCharge]) -> MomentTensor {
    particles
        .iter()
        .fold(MomentTensor::zero(), |acc, p| acc.add(&MomentTensor::wedge(p.event(), p.four_momentum())))
}

/// `Σ (e/2m′)·J_particle`.
///
/// With `require_common_ratio`, all particles must share one `e/m′`
/// (relative tolerance `1e-12`) so that `M = (e/2m′)·J` holds for the total.
pub fn electromagnetic_moment(particles: &[PointCharge], require_common_ratio: bool) -> Result<MomentTensor, EmError> {
    if require_common_ratio {
        if let Some(first) = particles.first() {
            let r0 = first.moment_ratio();
            for p in &particles[1..] {
                let r = p.moment_ratio();
                if (r - r0).abs() > 1e-12 * r0.abs().max(r.abs()).max(f64::MIN_POSITIVE) {
                    return Err(EmError::MixedRatio { first: r0, other: r });
                }
            }
        }
    }
    Ok(particles.iter().fold(MomentTensor::zero(), |acc, p| {
        acc.add(&angular_momentum_tensor(std::slice::from_ref(p)).scale(p.moment_ratio()))
    }))
}

/// Moments seen from a frame moving with velocity `v` along x¹.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoostResult {
    /// `E′ = m′/√(1−v²)`.
    pub energy: f64,
    /// `p′ = m′v/√(1−v²)`.
    pub momentum: f64,
    /// `J′¹⁰ = E′x′¹ − t′p′¹`.
    pub j10: f64,
    /// `M′¹⁰ = (e/2m′)·J′¹⁰`.
    pub m10: f64,
}

/// The worked boost: a charge of mass `m′` and charge `e`, event `(t′, x′¹)` in the boosted frame.
pub fn boost_example(v: f64, t_prime: f64, x_prime: f64, mass: f64, charge: f64) -> Result<BoostResult, EmError> {
    if !(v.abs() < 1.0) {
        return Err(EmError::SuperluminalBoost { v });
    }
    if !(mass.is_finite() && mass > 0.0) {
        return Err(EmError::InvalidParticle(format!("mass {mass} must be positive")));
    }
    let gamma = 1.0 / (1.0 - v * v).sqrt();
    let energy = mass * gamma;
    let momentum = mass * v * gamma;
    let j10 = energy * x_prime - t_prime * momentum;
    Ok(BoostResult {
        energy,
        momentum,
        j10,
        m10: charge / (2.0 * mass) * j10,
    })
}

/// `x¹ = (x′¹ − v·t′)/√(1−v²)`.
pub fn boosted_position(v: f64, t_prime: f64, x_prime: f64) -> Result<f64, EmError> {
    if !(v.abs() < 1.0) {
        return Err(EmError::SuperluminalBoost { v });
    }
    Ok((x_prime - v * t_prime) / (1.0 - v * v).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rest_frame_energy_moment() {
        let p = PointCharge::new(1.0, 3.0, 0.0, 0.0, 2.0).unwrap();
        let j = angular_momentum_tensor(&[p]);
        assert_eq!(j.get(1, 0), 6.0);
        assert_eq!(j.get(0, 1), -6.0);
        assert!(j.is_antisymmetric());
    }

    #[test]
    fn superluminal_inputs_are_refused() {
        assert!(matches!(PointCharge::new(1.0, 1.0, 1.0, 0.0, 0.0), Err(EmError::SuperluminalBoost { .. })));
        assert!(matches!(boost_example(-1.2, 0.0, 1.0, 1.0, 1.0), Err(EmError::SuperluminalBoost { .. })));
    }

    #[test]
    fn tensor_csv_names_frame() {
        let csv = MomentTensor::zero().csv(Frame::Boosted);
        assert!(csv.starts_with("frame,mu,nu0,nu1,nu2,nu3\nSigma-prime,0,"));
        assert_eq!(csv.lines().count(), 5);
    }
}
