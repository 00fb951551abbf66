use timeop::format::{csv_table, sci};
use timeop::lattice::{
    evolve, momentum_snapshot_csv, position_moments, position_snapshot_csv, to_position,
};

use super::build_packet;
use crate::config::{ConfigError, EvolveConfig};
use crate::output::Artifacts;

/// Norm drift allowed over the whole run.
const NORM_TOLERANCE: f64 = 1e-12;
/// `U(t₂−t₁)U(t₁)` against `U(t₂)`.
const GROUP_LAW_TOLERANCE: f64 = 1e-10;

pub fn run(cfg: &EvolveConfig) -> Result<Artifacts, ConfigError> {
    let state = build_packet(&cfg.grid, &cfg.model, &cfg.packet)?;
    if cfg.times.is_empty() || cfg.times.iter().any(|t| !t.is_finite()) {
        return Err(ConfigError::Invalid("times must be a non-empty list of finite values".into()));
    }
    let mut out = Artifacts::default();
    let norm0 = state.norm_sqr();
    let mut rows = Vec::new();
    let mut previous: Option<(f64, _)> = None;
    for (k, &t) in cfg.times.iter().enumerate() {
        let s = evolve(&state, t);
        out.deviation("norm_drift", (s.norm_sqr() - norm0).abs(), NORM_TOLERANCE);
        if let Some((t_prev, prev)) = previous.take() {
            out.deviation("group_law", evolve(&prev, t - t_prev).max_deviation(&s), GROUP_LAW_TOLERANCE);
        }
        let (mean_x, var_x) = position_moments(&to_position(&s));
        rows.push(vec![
            sci(t),
            sci(s.norm_sqr()),
            sci(mean_x),
            sci(var_x.sqrt()),
            sci(s.energy_expectation()),
        ]);
        out.add(format!("snapshots/position_{k:03}.csv"), position_snapshot_csv(&s));
        out.add(format!("snapshots/momentum_{k:03}.csv"), momentum_snapshot_csv(&s));
        previous = Some((t, s));
    }
    out.add("evolution.csv", csv_table(&["t", "norm", "mean_x", "width_x", "mean_energy"], rows));
    Ok(out)
}
