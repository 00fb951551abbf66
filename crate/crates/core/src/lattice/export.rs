use super::{current_density, probability_density, to_position, SpinorGrid};
use crate::format::{csv_table, sci};

pub const POSITION_HEADER: [&str; 3] = ["x", "density", "current"];
pub const MOMENTUM_HEADER: [&str; 4] = ["p", "abs2", "phase0", "phase1"];

/// Position snapshot: one row per lattice point `(x, ψ†ψ, J)`.
pub fn position_snapshot_csv(state: &SpinorGrid) -> String {
    let rho = probability_density(&to_position(state));
    let j = current_density(state);
    let g = state.grid;
    csv_table(
        &POSITION_HEADER,
        (0..g.n()).map(|k| vec![sci(g.position(k)), sci(rho[k]), sci(j[k])]),
    )
}

/// Momentum snapshot `(p, Σ|φ_c|², arg φ₀, arg φ₁)`; `phase1` is empty for one component.
pub fn momentum_snapshot_csv(state: &SpinorGrid) -> String {
    let g = state.grid;
    let rho = state.momentum_density();
    csv_table(
        &MOMENTUM_HEADER,
        (0..g.n()).map(|k| {
            let phase1 = if state.components() == 2 {
                sci(state.at(1, k).arg())
            } else {
                String::new()
            };
            vec![sci(g.momentum(k)), sci(rho[k]), sci(state.at(0, k).arg()), phase1]
        }),
    )
}
