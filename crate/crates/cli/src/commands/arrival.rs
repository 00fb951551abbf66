use timeop::chronometry::*;
use timeop::format::{csv_table, sci};
use timeop::lattice::Model;

use super::build_packet;
use crate::config::{ArrivalConfig, ConfigError};
use crate::output::Artifacts;

fn chrono_err(e: ChronometryError) -> ConfigError {
    ConfigError::Invalid(e.to_string())
}

fn selected_methods(cfg: &ArrivalConfig) -> Result<Vec<Method>, ConfigError> {
    match &cfg.estimators {
        None => Ok(Method::ALL.to_vec()),
        Some(tags) => tags
            .iter()
            .map(|t| t.parse::<Method>().map_err(|_| ConfigError::Invalid(format!("unknown estimator {t:?}"))))
            .collect(),
    }
}

pub fn run(cfg: &ArrivalConfig) -> Result<Artifacts, ConfigError> {
    let state = build_packet(&cfg.grid, &cfg.model, &cfg.packet)?;
    cfg.detector.validate()?;
    let methods = selected_methods(cfg)?;
    let model = state.model;
    // Classical inverse speed times p₀: M for Schrödinger, E(p₀) for Dirac.
    let inertia = match model {
        Model::Schrodinger { mass } => mass,
        Model::Dirac { .. } => model.dispersion(cfg.packet.p0),
    };
    let d = &cfg.detector;
    let classical = cfg.surface.t0 + (d.x - cfg.packet.x0) * inertia / cfg.packet.p0;

    let mut out = Artifacts::default();
    let mut results = Vec::new();

    let needs_series = methods.iter().any(|m| matches!(m, Method::Presence | Method::CurrentArrival));
    if needs_series {
        let series = TimeSeriesAtPoint::from_state(&state, d.x, d.t_start, d.dt, d.count).map_err(chrono_err)?;
        let ratio = series.endpoint_ratio();
        if ratio > 1e-6 {
            out.notes.push(format!("detector window truncates the signal: endpoint ratio {ratio:e}"));
        }
        out.add(
            "detector_series.csv",
            csv_table(
                &["t", "density", "current"],
                (0..series.len()).map(|k| vec![sci(series.time(k)), sci(series.density[k]), sci(series.current[k])]),
            ),
        );
        for m in &methods {
            match m {
                Method::Presence => results.push(presence_time_mean(&series).map_err(chrono_err)?),
                Method::CurrentArrival => {
                    let r = current_arrival_mean(&series).map_err(chrono_err)?;
                    if let Some(f) = r.negative_current_fraction {
                        out.notes.push(format!("negative current fraction {f:e}"));
                    }
                    results.push(r);
                }
                _ => {}
            }
        }
    }

    let needs_map = methods.iter().any(|m| matches!(m, Method::SurfaceMean | Method::FluxDensity));
    if needs_map {
        let (xs, rho) = surface_from_state(&state);
        let tmap = ballistic_time_map(xs, cfg.surface.t0, d.x, inertia, cfg.packet.p0).map_err(chrono_err)?;
        if methods.contains(&Method::SurfaceMean) {
            results.push(theorem1_mean(&tmap, &rho, cfg.surface.renormalize).map_err(chrono_err)?);
        }
        if methods.contains(&Method::FluxDensity) {
            let density = theorem2_density(&tmap, &rho).map_err(chrono_err)?;
            results.push(theorem2_mean(&density, cfg.surface.renormalize).map_err(chrono_err)?);
            out.add("time_density.csv", density.csv());
        }
    }

    if methods.contains(&Method::OmegaAverage) {
        let snapshots: Vec<(f64, f64)> = match (&cfg.omega.snapshots, &cfg.omega.region, &cfg.omega.times) {
            (Some(s), None, None) => s.iter().map(|[t, w]| (*t, *w)).collect(),
            (None, Some([lo, hi]), Some(times)) => region_snapshots(&state, times, (*lo, *hi)),
            _ => {
                return Err(ConfigError::Invalid(
                    "omega needs either snapshots or both region and times".into(),
                ))
            }
        };
        let report = omega_average_demo(&snapshots).map_err(chrono_err)?;
        out.notes.push(format!(
            "omega-average weight sum {:e}, refinement sensitivity {:e}",
            report.weight_sum, report.refinement_sensitivity
        ));
        out.add(
            "omega_snapshots.csv",
            csv_table(&["t", "weight"], snapshots.iter().map(|(t, w)| vec![sci(*t), sci(*w)])),
        );
        results.push(report.result);
    }

    results.sort_by_key(|r| Method::ALL.iter().position(|m| *m == r.method));
    for r in &results {
        println!("{:<16} {:>24} {}", r.method.tag(), sci(r.mean_time), r.validity.as_str());
    }
    out.add("arrival.csv", results_csv(&results));
    out.notes.push(format!("classical arrival time {}", sci(classical)));

    if let Some(check) = &cfg.check {
        let checked: Vec<&EstimatorResult> = results
            .iter()
            .filter(|r| matches!(r.method, Method::Presence | Method::FluxDensity | Method::CurrentArrival))
            .collect();
        for r in &checked {
            let rel = (r.mean_time - classical).abs() / classical.abs();
            out.deviation(&format!("{}_vs_classical", r.method.tag()), rel, check.relative_tolerance);
        }
        for (i, a) in checked.iter().enumerate() {
            for b in &checked[i + 1..] {
                let rel = (a.mean_time - b.mean_time).abs() / a.mean_time.abs().min(b.mean_time.abs());
                out.deviation("mutual_spread", rel, check.mutual_tolerance);
            }
        }
    }
    Ok(out)
}
