//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use timeop::chronometry::*;
use timeop::em_moment::*;
use timeop::energy_translation::*;
use timeop::lattice::*;
use timeop::opcalc::identities::{full_time_function_residual, verification_suite};
use timeop::opcalc::Generator;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn symbolic_suite() -> Outcome {
    let start = Instant::now();
    let suite = verification_suite().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    let bad: Vec<&str> = suite.iter().filter(|l| !l.verified()).map(|l| l.name.as_str()).collect();
    check(
        suite.len() == 9 && bad.is_empty() && elapsed < 1.0,
        format!("{} ledgers, unverified {bad:?}, {elapsed:.3}s", suite.len()),
    )
}

fn residual_disclosure() -> Outcome {
    let ledger = full_time_function_residual().map_err(|e| e.to_string())?;
    let general = &ledger.obligations[0];
    let massless = &ledger.obligations[1];
    check(
        !general.verified() && general.residual.mentions(Generator::Mass) && massless.verified(),
        format!("residual {} ; vanishes at m = 0, theta1 = 0: {}", general.residual, massless.verified()),
    )
}

fn canonical_pair() -> Outcome {
    let grid = MomentumGrid::new(1024, 32.0).unwrap();
    let model = Model::Dirac { mass: 0.0 };
    let t = time_function_operator(&grid, TimeFunctionKind::DiracLinear(0.0), model).unwrap();
    let h = dirac_hamiltonian(&grid, 0.0).unwrap();
    let mut worst = 0.0f64;
    // Helicity spinors are constant in p, so these vectors are smooth and band-limited.
    for (x0, p0, proj) in [
        (0.0, 0.0, Projection::Helicity(1)),
        (2.0, 5.0, Projection::Helicity(1)),
        (-3.0, -8.0, Projection::Helicity(-1)),
    ] {
        let v = gaussian_packet(grid, model, x0, p0, 1.0, proj).unwrap();
        let cv = t.commutator_apply(&h, &v.values);
        let num: f64 = cv
            .iter()
            .zip(&v.values)
            .map(|(c, x)| (c - Complex64::i() * x).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let den: f64 = v.values.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        worst = worst.max(num / den);
    }
    check(worst <= 1e-8, format!("max ||([T,H] - i)v||/||v|| = {worst:e}"))
}

fn unitarity_and_group_law() -> Outcome {
    let grid = MomentumGrid::new(512, 16.0).unwrap();
    let mut drift = 0.0f64;
    let mut group = 0.0f64;
    for model in [Model::Dirac { mass: 0.5 }, Model::Schrodinger { mass: 1.0 }] {
        let s = gaussian_packet(grid, model, -5.0, 3.0, 0.5, Projection::PositiveEnergy).unwrap();
        for k in 0..=20 {
            let t = 0.5 * k as f64;
            drift = drift.max((evolve(&s, t).norm_sqr() - s.norm_sqr()).abs());
        }
        for (a, b) in [(0.3, 1.7), (2.5, 4.0), (-1.0, 6.0)] {
            group = group.max(evolve(&evolve(&s, a), b).max_deviation(&evolve(&s, a + b)));
        }
    }
    check(drift <= 1e-12 && group <= 1e-10, format!("norm drift {drift:e}, group law {group:e}"))
}

fn pauli_shift() -> Outcome {
    let model = Model::Dirac { mass: 0.0 };
    let grid = MomentumGrid::with_spacing(512, 1.0 / 16.0).unwrap();
    let sgrid = MomentumGrid::with_spacing(64, 1.0 / 16.0).unwrap();
    let h = dirac_hamiltonian(&sgrid, 0.0).unwrap();
    let base = spectrum(&h).unwrap();
    let s = gaussian_packet(grid, model, 0.0, 4.0, 0.5, Projection::Helicity(1)).unwrap();
    let series = TimeSeriesAtPoint::from_state(&s, 6.0, 0.0, 0.02, 601).unwrap();
    let presence = presence_time_mean(&series).unwrap().mean_time;
    let current = current_arrival_mean(&series).unwrap().mean_time;
    let (mut spectral, mut invariance, mut ladder) = (0.0f64, 0.0f64, 0.0f64);
    for alpha in [0.5, 1.0, 2.0] {
        let (row, _) = shift_experiment(&h, &base, &s, alpha, &[0.0, 2.0, 5.0]).unwrap();
        spectral = spectral.max(row.max_spectrum_shift_deviation).max(row.max_difference_deviation);
        invariance = invariance.max(row.max_density_deviation);
        let moved = TimeSeriesAtPoint::from_state_shifted(&s, 6.0, 0.0, 0.02, 601, alpha).unwrap();
        invariance = invariance
            .max((presence_time_mean(&moved).unwrap().mean_time - presence).abs())
            .max((current_arrival_mean(&moved).unwrap().mean_time - current).abs());
        let up = ladder_apply(&s, alpha).unwrap();
        ladder = ladder.max((up.energy_expectation() - s.energy_expectation() - alpha).abs());
    }
    check(
        spectral <= 1e-12 && invariance <= 1e-10 && ladder <= 1e-8,
        format!("spectrum {spectral:e}, estimators/densities {invariance:e}, ladder {ladder:e}"),
    )
}

fn arrival_concordance() -> Outcome {
    let start = Instant::now();
    let grid = MomentumGrid::new(1024, 32.0).unwrap();
    let (mass, p0, sigma) = (1.0, 10.0, 0.5);
    let s = gaussian_packet(grid, Model::Schrodinger { mass }, 0.0, p0, sigma, Projection::PositiveEnergy).unwrap();
    let x_d = 10.0 / (2.0 * sigma);
    let classical = x_d * mass / p0;
    let series = TimeSeriesAtPoint::from_state(&s, x_d, 0.0, classical / 400.0, 1001).unwrap();
    let presence = presence_time_mean(&series).unwrap().mean_time;
    let current = current_arrival_mean(&series).unwrap().mean_time;
    let (xs, rho) = surface_from_state(&s);
    let tmap = ballistic_time_map(xs, 0.0, x_d, mass, p0).unwrap();
    let flux = theorem2_mean(&theorem2_density(&tmap, &rho).unwrap(), false).unwrap().mean_time;
    let vals = [presence, flux, current];
    let to_classical = vals.iter().map(|v| (v - classical).abs() / classical).fold(0.0, f64::max);
    let mut mutual = 0.0f64;
    for i in 0..3 {
        for j in i + 1..3 {
            mutual = mutual.max((vals[i] - vals[j]).abs() / vals[i].abs().min(vals[j].abs()));
        }
    }

    let dgrid = MomentumGrid::new(512, 16.0).unwrap();
    let d = gaussian_packet(dgrid, Model::Dirac { mass: 0.0 }, 0.0, 3.0, 0.5, Projection::Helicity(1)).unwrap();
    let dseries = TimeSeriesAtPoint::from_state(&d, 8.0, 0.0, 0.02, 801).unwrap();
    let identity =
        (presence_time_mean(&dseries).unwrap().mean_time - current_arrival_mean(&dseries).unwrap().mean_time).abs();
    let elapsed = start.elapsed().as_secs_f64();
    check(
        to_classical <= 0.01 && mutual <= 0.02 && identity <= 1e-10 && elapsed <= 10.0,
        format!(
            "presence {presence:.6}, flux-density {flux:.6}, current-arrival {current:.6} vs {classical}; \
             spread {mutual:.2e}; massless presence - current {identity:e}; {elapsed:.2}s"
        ),
    )
}

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn run_cli(verb: &str, config: &str, out: &Path) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_timeop"))
        .args([verb, "--config"])
        .arg(configs_dir().join(config))
        .arg("--out")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    if status.status.code() != Some(0) {
        return Err(format!("{verb} {config} exited {:?}: {}", status.status.code(), String::from_utf8_lossy(&status.stderr)));
    }
    Ok(())
}

fn arrival_rows(path: &Path) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(path).unwrap();
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn omega_critique() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    run_cli("arrival", "arrival.toml", &dir.path().join("a"))?;
    run_cli("arrival", "arrival-refined.toml", &dir.path().join("b"))?;
    let a = arrival_rows(&dir.path().join("a/arrival.csv"));
    let b = arrival_rows(&dir.path().join("b/arrival.csv"));
    let find = |rows: &[Vec<String>], tag: &str| rows.iter().find(|r| r[0] == tag).cloned().unwrap_or_default();
    let omega = |rows: &[Vec<String>]| find(rows, "omega-average")[1].parse::<f64>().unwrap();
    let (before, after) = (omega(&a), omega(&b));
    let stable = ["surface-mean", "flux-density"].iter().all(|t| find(&a, t) == find(&b, t) && !find(&a, t).is_empty());
    check(
        (before - 2.0).abs() <= 1e-12 && (after - 7.0 / 3.0).abs() <= 1e-12 && stable,
        format!("omega-average {before} -> {after}; surface-mean and flux-density rows unchanged: {stable}"),
    )
}

fn em_moments() -> Outcome {
    let rest = PointCharge::new(1.0, 3.0, 0.0, 0.0, 2.0).unwrap();
    let j = angular_momentum_tensor(&[rest]);
    let m = electromagnetic_moment(&[rest], true).unwrap();
    let exact = j.get(1, 0) == rest.relativistic_mass() * 2.0 && m.get(1, 0) == 0.5 * 1.0 * 2.0;
    let mut prop = 0.0f64;
    for k in 0..50 {
        let f = k as f64;
        let p = PointCharge::new(1.0 - 0.04 * f, 0.5 + 0.1 * f, -0.9 + 0.036 * f, 0.3 * f - 4.0, 2.5 - 0.11 * f).unwrap();
        let (jp, mp) = (angular_momentum_tensor(&[p]), electromagnetic_moment(&[p], true).unwrap());
        prop = prop.max(mp.max_abs_difference(&jp.scale(p.charge / (2.0 * p.relativistic_mass()))));
    }
    let b = boost_example(0.6, 0.0, 1.0, 1.0, 1.0).unwrap();
    let boost = (b.energy - 1.25).abs().max((b.momentum - 0.75).abs());
    check(
        exact && prop <= 1e-12 && boost <= 1e-12,
        format!("J10 = {}, M10 = {}; proportionality {prop:e}; boost deviation {boost:e}", j.get(1, 0), m.get(1, 0)),
    )
}

fn eigenstate_orthonormality() -> Outcome {
    let grid = MomentumGrid::new(256, 8.0).unwrap();
    let ortho = orthonormality_check(grid);
    let x = position_operator(&grid, 1);
    let mut eig = 0.0f64;
    for idx in [0, 31, 128, 200, 255] {
        let x0 = grid.position(idx);
        let s = position_eigenstate(grid, Model::Schrodinger { mass: 1.0 }, x0).unwrap();
        eig = eig.max(x.apply_state(&s).max_deviation(&s.scaled(Complex64::from(x0))));
    }
    check(ortho <= 1e-12 && eig <= 1e-10, format!("orthonormality {ortho:e}, eigen equation {eig:e}"))
}

fn collect_files(root: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push(p.strip_prefix(root).unwrap().to_path_buf());
            }
        }
    }
    out.sort();
    out
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs = [
        ("verify-algebra", "verify-algebra.toml"),
        ("evolve", "evolve.toml"),
        ("arrival", "arrival.toml"),
        ("pauli-shift", "pauli-shift.toml"),
        ("em-moment", "em-moment.toml"),
    ];
    let mut compared = 0;
    for (verb, config) in runs {
        let (a, b) = (dir.path().join(format!("{verb}-1")), dir.path().join(format!("{verb}-2")));
        run_cli(verb, config, &a)?;
        run_cli(verb, config, &b)?;
        let files = collect_files(&a);
        if files != collect_files(&b) {
            return Err(format!("{verb}: file sets differ"));
        }
        for f in &files {
            if std::fs::read(a.join(f)).unwrap() != std::fs::read(b.join(f)).unwrap() {
                return Err(format!("{verb}: {} differs", f.display()));
            }
        }
        compared += files.len();
    }
    Ok(format!("{compared} files byte-identical across two runs of each command"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("symbolic suite", symbolic_suite),
        ("residual disclosure", residual_disclosure),
        ("numerical canonical pair", canonical_pair),
        ("unitarity and group law", unitarity_and_group_law),
        ("zero-point shift invariance", pauli_shift),
        ("arrival-time concordance", arrival_concordance),
        ("snapshot-average critique", omega_critique),
        ("energy and electromagnetic moments", em_moments),
        ("position eigenstate orthonormality", eigenstate_orthonormality),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
