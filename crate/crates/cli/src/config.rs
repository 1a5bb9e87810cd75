//! Experiment configuration: one JSON document, unknown keys rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use stochwave_core::diagnostics::Observable;
use stochwave_core::sim::StepperSpec;
use stochwave_core::verify::ResidualOptions;
use stochwave_core::waves::{
    lookup, CandidateParams, CandidateSolution, CatalogEntry, ExpectedVerdict,
};
use stochwave_core::{Boundary, Interpretation, ModelKind, ModelSpec, NoiseKind, SpatialGrid};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
    #[serde(default)]
    pub verify: Option<VerifySection>,
    #[serde(default)]
    pub simulate: Option<SimulateSection>,
    #[serde(default)]
    pub ensemble: Option<EnsembleSection>,
    #[serde(default)]
    pub converge: Option<ConvergeSection>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
    pub boundary: Boundary,
}

impl GridConfig {
    pub fn build(&self) -> Result<SpatialGrid, CliError> {
        Ok(SpatialGrid::new(
            self.x_min,
            self.x_max,
            self.n,
            self.boundary,
        )?)
    }
}

impl From<&CatalogEntry> for GridConfig {
    fn from(e: &CatalogEntry) -> Self {
        Self {
            x_min: e.x_min,
            x_max: e.x_max,
            n: e.n,
            boundary: e.boundary,
        }
    }
}

fn ito() -> Interpretation {
    Interpretation::Ito
}

/// Model equation with its noise; the noise kind defaults per model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelConfig {
    Nagumo {
        a: f64,
        #[serde(default)]
        sigma: f64,
        #[serde(default)]
        noise: Option<NoiseKind>,
        #[serde(default = "ito")]
        interpretation: Interpretation,
    },
    Burgers {
        nu: f64,
        #[serde(default)]
        sigma: f64,
        #[serde(default)]
        noise: Option<NoiseKind>,
        #[serde(default = "ito")]
        interpretation: Interpretation,
    },
    #[serde(rename = "kdv")]
    KdV {
        #[serde(default)]
        sigma: f64,
        #[serde(default)]
        noise: Option<NoiseKind>,
        #[serde(default = "ito")]
        interpretation: Interpretation,
    },
    Nls {
        #[serde(default)]
        sigma: f64,
        #[serde(default = "ito")]
        interpretation: Interpretation,
    },
}

impl ModelConfig {
    pub fn build(&self) -> Result<ModelSpec, CliError> {
        let (kind, sigma, noise, interp) = match *self {
            ModelConfig::Nagumo {
                a,
                sigma,
                noise,
                interpretation,
            } => (
                ModelKind::Nagumo { a },
                sigma,
                noise.unwrap_or(NoiseKind::Logistic),
                interpretation,
            ),
            ModelConfig::Burgers {
                nu,
                sigma,
                noise,
                interpretation,
            } => (
                ModelKind::Burgers { nu },
                sigma,
                noise.unwrap_or(NoiseKind::Linear),
                interpretation,
            ),
            ModelConfig::KdV {
                sigma,
                noise,
                interpretation,
            } => (
                ModelKind::KdV,
                sigma,
                noise.unwrap_or(NoiseKind::Additive),
                interpretation,
            ),
            ModelConfig::Nls {
                sigma,
                interpretation,
            } => (ModelKind::Nls, sigma, NoiseKind::Linear, interpretation),
        };
        Ok(ModelSpec::new(kind, noise, sigma, interp)?)
    }
}

/// A catalog candidate with optional parameter overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateRef {
    pub id: String,
    #[serde(default)]
    pub params: CandidateParams,
}

impl CandidateRef {
    pub fn entry(&self) -> Result<&'static CatalogEntry, CliError> {
        Ok(lookup(&self.id)?)
    }

    pub fn build(&self) -> Result<CandidateSolution, CliError> {
        Ok(self.entry()?.build(&self.params)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyCandidate {
    pub id: String,
    #[serde(default)]
    pub params: CandidateParams,
    /// Overrides the catalog's expectation.
    #[serde(default)]
    pub expected: Option<ExpectedVerdict>,
    #[serde(default)]
    pub grid: Option<GridConfig>,
    #[serde(default)]
    pub horizon: Option<f64>,
    #[serde(default)]
    pub base_steps: Option<usize>,
    #[serde(default)]
    pub levels: Option<usize>,
}

fn three() -> usize {
    3
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    #[serde(default)]
    pub candidates: Vec<VerifyCandidate>,
    /// Independent paths per candidate (`path_index = 0..n_paths`).
    #[serde(default = "three")]
    pub n_paths: usize,
    #[serde(default)]
    pub options: ResidualOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateSection {
    /// Source of the `t = 0` field; also supplies the model unless `model` is set.
    pub initial: CandidateRef,
    #[serde(default)]
    pub model: Option<ModelConfig>,
    pub grid: GridConfig,
    pub stepper: StepperSpec,
    pub horizon: f64,
    pub snapshots: Vec<f64>,
    #[serde(default)]
    pub path_index: u64,
    /// Also write the binary dump `trajectory.bin`.
    #[serde(default)]
    pub binary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnsembleMode {
    ClosedForm,
    Simulation,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bands {
    #[serde(default)]
    pub mean_slope: Option<[f64; 2]>,
    #[serde(default)]
    pub var_slope: Option<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleSection {
    pub candidate: CandidateRef,
    pub mode: EnsembleMode,
    #[serde(default)]
    pub model: Option<ModelConfig>,
    /// Required for `simulation`.
    #[serde(default)]
    pub stepper: Option<StepperSpec>,
    pub observable: Observable,
    pub grid: GridConfig,
    pub horizon: f64,
    pub n_steps: usize,
    pub snapshots: Vec<f64>,
    pub n_paths: usize,
    #[serde(default)]
    pub bands: Bands,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrongSection {
    pub candidate: CandidateRef,
    pub grid: GridConfig,
    pub horizon: f64,
    pub base_steps: usize,
    pub levels: usize,
    pub n_paths: usize,
    /// Scheme and options; `dt` is replaced per level.
    #[serde(default)]
    pub stepper: Option<StepperSpec>,
    pub order_band: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilitySection {
    pub nu: f64,
    pub grid: GridConfig,
    pub dts: Vec<f64>,
    /// Mesh ratio `νΔt/Δx²` the classification boundary must bracket.
    #[serde(default)]
    pub expected_boundary: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergeSection {
    #[serde(default)]
    pub strong: Option<StrongSection>,
    #[serde(default)]
    pub stability: Option<StabilitySection>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::config(format!("config: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Checks that every identifier resolves and every section is usable.
    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(v) = &self.verify {
            for c in &v.candidates {
                lookup(&c.id)?.build(&c.params)?;
                if let Some(g) = &c.grid {
                    g.build()?;
                }
            }
            if v.n_paths == 0 && !v.candidates.is_empty() {
                return Err(CliError::config("verify.n_paths must be at least 1"));
            }
        }
        if let Some(s) = &self.simulate {
            s.initial.build()?;
            s.grid.build()?;
            StepperSpec::new(s.stepper.scheme, s.stepper.dt)?;
            if let Some(m) = &s.model {
                m.build()?;
            }
        }
        if let Some(e) = &self.ensemble {
            e.candidate.build()?;
            e.grid.build()?;
            if let Some(m) = &e.model {
                m.build()?;
            }
            if e.n_paths < 2 {
                return Err(CliError::config(format!(
                    "ensemble.n_paths must be at least 2, got {}",
                    e.n_paths
                )));
            }
            if e.mode == EnsembleMode::Simulation && e.stepper.is_none() {
                return Err(CliError::config("simulation ensembles need a stepper"));
            }
        }
        if let Some(c) = &self.converge {
            if let Some(s) = &c.strong {
                s.candidate.build()?;
                s.grid.build()?;
                if s.levels < 3 {
                    return Err(stochwave_core::Error::InsufficientLevels(s.levels).into());
                }
            }
            if let Some(s) = &c.stability {
                s.grid.build()?;
            }
        }
        Ok(())
    }
}
