use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::annealer::CoolingSchedule;
use crate::error::{Error, Result};
use crate::kernels::{Adaptation, KernelFamily, KernelSpec, ScaleSchedule};
use crate::objectives::{lookup, Objective};
use crate::sequences::{RetainedDigits, SequenceDriver};

/// One schedule for every coordinate, or one per coordinate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScheduleSpec {
    Shared(ScaleSchedule),
    PerCoordinate(Vec<ScaleSchedule>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdaptationMode {
    /// Kernel constant on the driver's index blocks.
    #[default]
    Blocks,
    EveryStep,
}

fn default_base() -> u32 {
    2
}

fn default_replications() -> u32 {
    1
}

/// An experiment as read from a JSON file.
///
/// Optional fields are filled by [`ExperimentConfig::effective`]; the
/// effective form is what gets echoed next to the outputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub objective: String,
    pub dim: usize,
    pub kernel: KernelFamily,
    pub schedule: ScheduleSpec,
    #[serde(default)]
    pub adaptation: AdaptationMode,
    /// Retained digits `R`, an integer or `"inf"`.
    pub retained: RetainedDigits,
    #[serde(default = "default_base")]
    pub base: u32,
    /// Quality parameter of the driver; defaults to the table's declared value.
    #[serde(default)]
    pub t: Option<u32>,
    pub cooling: CoolingSchedule,
    pub iterations: u64,
    #[serde(default = "default_replications")]
    pub replications: u32,
    #[serde(default)]
    pub seed: u64,
    /// Start point; defaults to the centre of the cube.
    #[serde(default)]
    pub x0: Option<Vec<f64>>,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
    /// Steps at which summaries are taken; defaults to `100, 1000, 10000, N`.
    #[serde(default)]
    pub checkpoints: Option<Vec<u64>>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configs serialize") + "\n"
    }

    /// Checkpoints in force: the configured list, or the defaults, restricted
    /// to `1..=N`, sorted, deduplicated.
    pub fn checkpoint_list(&self) -> Vec<u64> {
        let n = self.iterations;
        let mut c = self.checkpoints.clone().unwrap_or_else(|| vec![100, 1_000, 10_000, n]);
        c.retain(|&k| (1..=n).contains(&k));
        c.sort_unstable();
        c.dedup();
        c
    }

    /// The config with every default written out and the output path dropped.
    pub fn effective(&self) -> Result<Self> {
        let mut e = self.clone();
        if e.t.is_none() {
            e.t = Some(declared_t(self.dim)?);
        }
        if e.x0.is_none() {
            e.x0 = Some(vec![0.5; self.dim]);
        }
        e.checkpoints = Some(self.checkpoint_list());
        e.out_dir = None;
        Ok(e)
    }

    pub fn objective(&self) -> Result<Objective> {
        lookup(&self.objective, self.dim).map_err(config_error)
    }

    pub fn kernel_spec(&self) -> Result<KernelSpec> {
        let schedules = match &self.schedule {
            ScheduleSpec::Shared(s) => vec![s.clone(); self.dim],
            ScheduleSpec::PerCoordinate(v) => v.clone(),
        };
        if schedules.len() != self.dim {
            return Err(Error::Config(format!("{} schedules given for dimension {}", schedules.len(), self.dim)));
        }
        let adaptation = match self.adaptation {
            AdaptationMode::EveryStep => Adaptation::EveryStep,
            AdaptationMode::Blocks => Adaptation::Blocks {
                base: self.base,
                dim: self.dim,
                retained: self.retained,
                t: match self.t {
                    Some(t) => t,
                    None => declared_t(self.dim)?,
                },
            },
        };
        KernelSpec::new(self.kernel, schedules, adaptation).map_err(config_error)
    }

    /// Checks everything that can be checked without running.
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Config("dim must be at least 1".into()));
        }
        if self.replications == 0 {
            return Err(Error::Config("replications must be at least 1".into()));
        }
        if self.base != 2 {
            return Err(Error::Config(format!("only base 2 drivers are available, got base {}", self.base)));
        }
        self.objective()?;
        self.kernel_spec()?;
        self.cooling.validate().map_err(config_error)?;
        if let Some(t) = self.t {
            let declared = declared_t(self.dim)?;
            if t < declared {
                return Err(Error::Config(format!("t = {t} is below the table's declared t = {declared}")));
            }
        }
        if let Some(x0) = &self.x0 {
            if x0.len() != self.dim || x0.iter().any(|v| !(0.0..=1.0).contains(v)) {
                return Err(Error::Config(format!("x0 must be a point of [0,1]^{}", self.dim)));
            }
        }
        Ok(())
    }
}

fn declared_t(dim: usize) -> Result<u32> {
    SequenceDriver::proposal_table(dim).map(|t| t.declared_t()).map_err(config_error)
}

fn config_error(e: Error) -> Error {
    match e {
        Error::Config(_) => e,
        other => Error::Config(other.to_string()),
    }
}
