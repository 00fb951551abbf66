use timeop::chronometry::{current_arrival_mean, presence_time_mean, ChronometryError, TimeSeriesAtPoint};
use timeop::energy_translation::*;
use timeop::format::{csv_table, sci};
use timeop::lattice::{hamiltonian, Model};

use super::build_packet;
use crate::config::{ConfigError, PauliShiftConfig};
use crate::output::Artifacts;

const SPECTRUM_TOLERANCE: f64 = 1e-12;
const INVARIANCE_TOLERANCE: f64 = 1e-10;
const LADDER_TOLERANCE: f64 = 1e-8;

fn energy_err(e: EnergyError) -> ConfigError {
    ConfigError::Invalid(e.to_string())
}

fn chrono_err(e: ChronometryError) -> ConfigError {
    ConfigError::Invalid(e.to_string())
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn run(cfg: &PauliShiftConfig) -> Result<Artifacts, ConfigError> {
    let state = build_packet(&cfg.grid, &cfg.model, &cfg.packet)?;
    let model = state.model;
    cfg.detector.validate()?;
    if cfg.alphas.iter().any(|a| !a.is_finite()) {
        return Err(ConfigError::Invalid("alphas must be finite".into()));
    }
    let sgrid = cfg.spectrum_grid.as_ref().unwrap_or(&cfg.grid).build()?;
    let h = hamiltonian(&sgrid, model).map_err(|e| ConfigError::Invalid(e.to_string()))?;
    let base = spectrum(&h).map_err(energy_err)?;

    let d = &cfg.detector;
    let series = TimeSeriesAtPoint::from_state(&state, d.x, d.t_start, d.dt, d.count).map_err(chrono_err)?;
    let presence = presence_time_mean(&series).map_err(chrono_err)?.mean_time;
    let current = current_arrival_mean(&series).map_err(chrono_err)?.mean_time;
    let energy = state.energy_expectation();
    let samples = TimeSamples::stationary(&state.values, energy, d.t_start, d.dt, d.count);
    let fitted = samples.fit_frequency().map_err(energy_err)?;
    let massless = matches!(model, Model::Dirac { mass } if mass == 0.0);

    let mut out = Artifacts::default();
    out.add("spectrum_base.csv", base.csv());
    let mut shift_rows = Vec::new();
    let mut estimator_rows = Vec::new();
    let mut ladder_rows = Vec::new();
    let mut modulation_rows = Vec::new();
    for (k, &alpha) in cfg.alphas.iter().enumerate() {
        let (row, shifted) = shift_experiment(&h, &base, &state, alpha, &cfg.times).map_err(energy_err)?;
        out.deviation("spectrum_shift", row.max_spectrum_shift_deviation, SPECTRUM_TOLERANCE);
        out.deviation("spectrum_differences", row.max_difference_deviation, SPECTRUM_TOLERANCE);
        out.deviation("density", row.max_density_deviation, INVARIANCE_TOLERANCE);
        out.add(format!("spectrum_shift_{k:02}.csv"), shifted.csv());
        println!("alpha = {alpha:<8} spectrum shift deviation {:e}", row.max_spectrum_shift_deviation);
        shift_rows.push(row);

        let moved = TimeSeriesAtPoint::from_state_shifted(&state, d.x, d.t_start, d.dt, d.count, alpha)
            .map_err(chrono_err)?;
        let dp = (presence_time_mean(&moved).map_err(chrono_err)?.mean_time - presence).abs();
        let dj = (current_arrival_mean(&moved).map_err(chrono_err)?.mean_time - current).abs();
        let ds = max_abs_diff(&moved.density, &series.density).max(max_abs_diff(&moved.current, &series.current));
        out.deviation("presence", dp, INVARIANCE_TOLERANCE);
        out.deviation("current_arrival", dj, INVARIANCE_TOLERANCE);
        out.deviation("detector_series", ds, INVARIANCE_TOLERANCE);
        estimator_rows.push(vec![sci(alpha), sci(dp), sci(dj), sci(ds)]);

        let modulated = phase_modulate(&samples, alpha).and_then(|m| m.fit_frequency()).map_err(energy_err)?;
        let dm = (modulated - (fitted - alpha)).abs();
        out.deviation("modulation", dm, LADDER_TOLERANCE);
        modulation_rows.push(vec![sci(alpha), sci(fitted), sci(modulated), sci(dm)]);

        if massless {
            let up = ladder_apply(&state, alpha).map_err(energy_err)?;
            let gain = up.energy_expectation() - energy;
            out.deviation("ladder", (gain - alpha).abs(), LADDER_TOLERANCE);
            ladder_rows.push(vec![sci(alpha), sci(energy), sci(up.energy_expectation()), sci((gain - alpha).abs())]);
        }
    }
    out.add("shift_rows.csv", shift_rows_csv(&shift_rows));
    out.add(
        "estimator_shift.csv",
        csv_table(&["alpha", "presence_deviation", "current_arrival_deviation", "series_deviation"], estimator_rows),
    );
    out.add(
        "modulation.csv",
        csv_table(&["alpha", "frequency", "modulated_frequency", "deviation"], modulation_rows),
    );
    if massless {
        out.add(
            "ladder.csv",
            csv_table(&["alpha", "energy_before", "energy_after", "gain_deviation"], ladder_rows),
        );
    } else {
        out.notes.push("ladder skipped: it needs the massless Dirac model".into());
    }
    Ok(out)
}
