//! Exact operator algebra and desk-scale numerics for time-function
//! operators in the free (1+1)D Dirac and Schrödinger models.
//!
//! * [`clifford`]: exact 2×2 Dirac matrices.
//! * [`opcalc`]: noncommutative normal forms and proof ledgers.
//! * [`lattice`]: momentum-grid states, evolution and operator matrices.
//! * [`chronometry`]: mean-time estimators.
//! * [`energy_translation`]: energy shifts, ladder action and energy propagation.
//! * [`em_moment`]: angular-momentum and electromagnetic-moment tensors.

pub mod chronometry;
pub mod clifford;
pub mod conventions;
pub mod em_moment;
pub mod energy_translation;
pub mod exact;
pub mod format;
pub mod lattice;
pub mod opcalc;
