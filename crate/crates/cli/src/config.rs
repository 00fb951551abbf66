//! Per-command TOML configs. Unknown keys are rejected at every level.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use timeop::lattice::{Model, MomentumGrid, Projection};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid parameter: {0}")]
    Invalid(String),
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    toml::from_str(&text).map_err(|e| ConfigError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

/// Exactly one of `p_max` and `dp`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub n: usize,
    pub p_max: Option<f64>,
    pub dp: Option<f64>,
}

impl GridSection {
    pub fn build(&self) -> Result<MomentumGrid, ConfigError> {
        let grid = match (self.p_max, self.dp) {
            (Some(p), None) => MomentumGrid::new(self.n, p),
            (None, Some(dp)) => MomentumGrid::with_spacing(self.n, dp),
            _ => return Err(invalid("grid needs exactly one of p_max, dp")),
        };
        grid.map_err(|e| invalid(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Dirac,
    Schrodinger,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub kind: ModelKind,
    pub mass: f64,
}

impl ModelSection {
    pub fn build(&self) -> Result<Model, ConfigError> {
        let ok = match self.kind {
            ModelKind::Dirac => self.mass >= 0.0,
            ModelKind::Schrodinger => self.mass > 0.0,
        };
        if !(ok && self.mass.is_finite()) {
            return Err(invalid(format!("mass {} not allowed for {:?}", self.mass, self.kind)));
        }
        Ok(match self.kind {
            ModelKind::Dirac => Model::Dirac { mass: self.mass },
            ModelKind::Schrodinger => Model::Schrodinger { mass: self.mass },
        })
    }
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectionKind {
    PositiveEnergy,
    NegativeEnergy,
    HelicityPlus,
    HelicityMinus,
}

impl From<ProjectionKind> for Projection {
    fn from(p: ProjectionKind) -> Self {
        match p {
            ProjectionKind::PositiveEnergy => Projection::PositiveEnergy,
            ProjectionKind::NegativeEnergy => Projection::NegativeEnergy,
            ProjectionKind::HelicityPlus => Projection::Helicity(1),
            ProjectionKind::HelicityMinus => Projection::Helicity(-1),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PacketSection {
    pub x0: f64,
    pub p0: f64,
    pub sigma_p: f64,
    #[serde(default = "default_projection")]
    pub projection: ProjectionKind,
}

fn default_projection() -> ProjectionKind {
    ProjectionKind::PositiveEnergy
}

/// Uniform time samples `t_start + k·dt`, `k < count`, at position `x`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DetectorSection {
    pub x: f64,
    pub t_start: f64,
    pub dt: f64,
    pub count: usize,
}

impl DetectorSection {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.dt > 0.0) || self.count < 2 {
            return Err(invalid("detector needs dt > 0 and count >= 2"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyAlgebraConfig {
    /// Rationals such as `"3/2"` for the linearized-square ledger.
    pub taus: Vec<String>,
    #[serde(default = "default_sweep_cases")]
    pub sweep_cases: usize,
    #[serde(default = "default_max_word")]
    pub max_word: usize,
    pub seed: Option<u64>,
    /// User identities, each proved to reduce to zero.
    #[serde(default)]
    pub extra: Vec<ExtraIdentity>,
    pub output_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum RuleChoice {
    Canonical,
    ConcreteDirac,
    AbstractTimeFunction,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExtraIdentity {
    pub name: String,
    /// Expression in the text grammar, claimed to equal zero.
    pub expression: String,
    #[serde(default = "default_rules")]
    pub rules: RuleChoice,
}

fn default_rules() -> RuleChoice {
    RuleChoice::Canonical
}

fn default_sweep_cases() -> usize {
    32
}

fn default_max_word() -> usize {
    3
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveConfig {
    pub grid: GridSection,
    pub model: ModelSection,
    pub packet: PacketSection,
    pub times: Vec<f64>,
    pub output_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSection {
    #[serde(default)]
    pub t0: f64,
    #[serde(default)]
    pub renormalize: bool,
}

/// Either explicit `(t, P(Ω))` snapshots or a region sampled at `times`.
#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaSection {
    pub snapshots: Option<Vec<[f64; 2]>>,
    pub region: Option<[f64; 2]>,
    pub times: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ArrivalCheck {
    /// Allowed relative distance of each endorsed-or-current estimator from the classical time.
    pub relative_tolerance: f64,
    /// Allowed relative spread between those estimators.
    pub mutual_tolerance: f64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ArrivalConfig {
    pub grid: GridSection,
    pub model: ModelSection,
    pub packet: PacketSection,
    pub detector: DetectorSection,
    #[serde(default)]
    pub surface: SurfaceSection,
    #[serde(default)]
    pub omega: OmegaSection,
    /// Method tags; all five when absent.
    pub estimators: Option<Vec<String>>,
    pub check: Option<ArrivalCheck>,
    pub output_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PauliShiftConfig {
    pub grid: GridSection,
    pub model: ModelSection,
    pub packet: PacketSection,
    pub detector: DetectorSection,
    pub alphas: Vec<f64>,
    /// Evolution times at which densities are compared.
    pub times: Vec<f64>,
    /// Grid for the dense eigensolve; defaults to `grid`.
    pub spectrum_grid: Option<GridSection>,
    pub output_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BoostSection {
    pub v: f64,
    pub t_prime: f64,
    pub x_prime: f64,
    pub mass: f64,
    pub charge: f64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct EmMomentConfig {
    /// CSV with columns `charge,mass,velocity,t,x1`, relative to the config file.
    pub particles: PathBuf,
    #[serde(default)]
    pub require_common_ratio: bool,
    pub boost: Option<BoostSection>,
    pub output_dir: Option<PathBuf>,
}
