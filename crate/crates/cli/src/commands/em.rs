use std::path::Path;

use serde::Deserialize;
use timeop::em_moment::*;
use timeop::format::{csv_table, sci};

use crate::config::{ConfigError, EmMomentConfig};
use crate::output::Artifacts;

const PROPORTIONALITY_TOLERANCE: f64 = 1e-12;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ParticleRow {
    charge: f64,
    mass: f64,
    velocity: f64,
    t: f64,
    x1: f64,
}

fn em_err(e: EmError) -> ConfigError {
    ConfigError::Invalid(e.to_string())
}

pub fn read_particles(path: &Path) -> Result<Vec<PointCharge>, ConfigError> {
    let parse = |message: String| ConfigError::Parse {
        path: path.display().to_string(),
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| parse(e.to_string()))?;
    let mut out = Vec::new();
    for row in reader.deserialize::<ParticleRow>() {
        let r = row.map_err(|e| parse(e.to_string()))?;
        out.push(PointCharge::new(r.charge, r.mass, r.velocity, r.t, r.x1).map_err(em_err)?);
    }
    if out.is_empty() {
        return Err(parse("no particles".into()));
    }
    Ok(out)
}

fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + b.abs())
}

pub fn run(cfg: &EmMomentConfig, config_dir: &Path) -> Result<Artifacts, ConfigError> {
    let particles = read_particles(&config_dir.join(&cfg.particles))?;
    let j = angular_momentum_tensor(&particles);
    let m = electromagnetic_moment(&particles, cfg.require_common_ratio).map_err(em_err)?;

    let mut out = Artifacts::default();
    // M = (e/2m′)J per particle, summed.
    let mut rows = Vec::new();
    for (k, p) in particles.iter().enumerate() {
        let jp = angular_momentum_tensor(std::slice::from_ref(p));
        let mp = electromagnetic_moment(std::slice::from_ref(p), true).map_err(em_err)?;
        let dev = (0..4)
            .flat_map(|mu| (0..4).map(move |nu| (mu, nu)))
            .map(|(mu, nu)| relative_gap(mp.get(mu, nu), p.moment_ratio() * jp.get(mu, nu)))
            .fold(0.0, f64::max);
        out.deviation("proportionality", dev, PROPORTIONALITY_TOLERANCE);
        rows.push(vec![
            k.to_string(),
            sci(p.relativistic_mass()),
            sci(p.momentum()),
            sci(jp.get(1, 0)),
            sci(mp.get(1, 0)),
        ]);
    }
    if !j.is_antisymmetric() || !m.is_antisymmetric() {
        out.fail("moment tensors lost antisymmetry");
    }
    if cfg.require_common_ratio {
        let ratio = particles[0].moment_ratio();
        out.deviation("common_ratio", m.max_abs_difference(&j.scale(ratio)), PROPORTIONALITY_TOLERANCE);
    }
    println!("J10 = {}  M10 = {}", sci(j.get(1, 0)), sci(m.get(1, 0)));
    out.add("particles.csv", csv_table(&["index", "relativistic_mass", "momentum", "j10", "m10"], rows));
    out.add("j_tensor.csv", j.csv(Frame::Rest));
    out.add("m_tensor.csv", m.csv(Frame::Rest));

    if let Some(b) = &cfg.boost {
        let r = boost_example(b.v, b.t_prime, b.x_prime, b.mass, b.charge).map_err(em_err)?;
        let x1 = boosted_position(b.v, b.t_prime, b.x_prime).map_err(em_err)?;
        out.add(
            "boost.csv",
            csv_table(
                &["v", "energy", "momentum", "j10", "m10", "x1_rest"],
                [vec![sci(b.v), sci(r.energy), sci(r.momentum), sci(r.j10), sci(r.m10), sci(x1)]],
            ),
        );
        let mut jb = MomentTensor::zero();
        jb.set(1, 0, r.j10);
        let mut mb = MomentTensor::zero();
        mb.set(1, 0, r.m10);
        out.add("j_tensor_boosted.csv", jb.csv(Frame::Boosted));
        out.add("m_tensor_boosted.csv", mb.csv(Frame::Boosted));
        println!("boost v = {}: E' = {}  p' = {}", b.v, sci(r.energy), sci(r.momentum));
    }
    Ok(out)
}
