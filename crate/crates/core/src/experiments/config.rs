use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::benchmarks::Scheme;
use crate::channel::{derive_radio_params, Point3, RadioParams, Scenario};
use crate::error::{Error, Result};
use crate::pso::PsoParams;
use crate::units;

/// Quantity varied along the x axis of an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    PowerDbm,
    NumPas,
    NumUes,
    SideLength,
    Delta,
    Iterations,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::PowerDbm => "power_dbm",
            SweepVariable::NumPas => "num_pas",
            SweepVariable::NumUes => "num_ues",
            SweepVariable::SideLength => "side_length",
            SweepVariable::Delta => "delta",
            SweepVariable::Iterations => "iterations",
        }
    }

    pub fn axis_label(self) -> &'static str {
        match self {
            SweepVariable::PowerDbm => "transmit power (dBm)",
            SweepVariable::NumPas => "number of antennas N",
            SweepVariable::NumUes => "number of users K",
            SweepVariable::SideLength => "side length D (m)",
            SweepVariable::Delta => "quantization step (m)",
            SweepVariable::Iterations => "iterations T",
        }
    }

    fn is_integral(self) -> bool {
        matches!(
            self,
            SweepVariable::NumPas | SweepVariable::NumUes | SweepVariable::Iterations
        )
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepVariable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            SweepVariable::PowerDbm,
            SweepVariable::NumPas,
            SweepVariable::NumUes,
            SweepVariable::SideLength,
            SweepVariable::Delta,
            SweepVariable::Iterations,
        ]
        .into_iter()
        .find(|v| v.name() == s)
        .ok_or_else(|| Error::Config(format!("unknown sweep variable `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    pub name: String,
    pub variable: SweepVariable,
    pub values: Vec<f64>,
    pub schemes: Vec<Scheme>,
    pub realizations: usize,
    pub master_seed: u64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            name: "power".into(),
            variable: SweepVariable::PowerDbm,
            values: vec![10.0, 15.0, 20.0, 25.0, 30.0],
            schemes: vec![Scheme::Pass2dCont, Scheme::ConPass, Scheme::Fpa],
            realizations: 100,
            master_seed: 1,
        }
    }
}

/// System geometry and radio, defaulting to the 28 GHz reference setup.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioParams {
    pub num_ues: usize,
    pub num_pas: usize,
    pub side_length: f64,
    pub height: f64,
    pub carrier_freq_ghz: f64,
    pub n_eff: f64,
    pub tx_power_dbm: f64,
    pub noise_dbm: f64,
    /// Minimum antenna spacing; half the free-space wavelength when absent.
    pub min_separation: Option<f64>,
}

impl Default for ScenarioParams {
    fn default() -> Self {
        Self {
            num_ues: 4,
            num_pas: 4,
            side_length: 20.0,
            height: 3.0,
            carrier_freq_ghz: 28.0,
            n_eff: 1.4,
            tx_power_dbm: 20.0,
            noise_dbm: -80.0,
            min_separation: None,
        }
    }
}

impl ScenarioParams {
    pub fn radio(&self) -> Result<RadioParams> {
        derive_radio_params(
            self.carrier_freq_ghz * 1e9,
            self.n_eff,
            units::dbm_to_watts(self.tx_power_dbm),
            units::dbm_to_watts(self.noise_dbm),
        )
    }

    /// Scenario with the given users and this geometry.
    pub fn scenario(&self, ues: Vec<Point3>) -> Result<Scenario> {
        let radio = self.radio()?;
        let d0 = self.min_separation.unwrap_or(radio.lambda_c() / 2.0);
        Scenario::with_geometry(
            ues,
            self.side_length,
            self.height,
            d0,
            Point3::new(-self.side_length / 2.0, 0.0, self.height),
            radio,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridParams {
    /// Quantization step on both axes (m).
    pub delta: f64,
    /// Per-instance solver budget (s).
    pub time_budget_s: f64,
}

impl Default for GridParams {
    fn default() -> Self {
        Self {
            delta: 1.0,
            time_budget_s: 60.0,
        }
    }
}

impl GridParams {
    pub fn time_budget(&self) -> Duration {
        Duration::from_secs_f64(self.time_budget_s)
    }
}

/// A full experiment as read from a TOML file. Every section and key is
/// optional; unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub sweep: SweepSpec,
    pub scenario: ScenarioParams,
    pub pso: PsoParams,
    pub grid: GridParams,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text).map_err(|e| Error::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let s = &self.sweep;
        if s.values.is_empty() {
            return Err(Error::Config("sweep values must not be empty".into()));
        }
        if !s.values.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Config("sweep values must be strictly increasing".into()));
        }
        if s.variable.is_integral() && s.values.iter().any(|v| v.fract() != 0.0 || *v < 1.0) {
            return Err(Error::Config(format!("{} values must be positive integers", s.variable)));
        }
        if s.realizations == 0 {
            return Err(Error::Config("realizations must be >= 1".into()));
        }
        if s.schemes.is_empty() {
            return Err(Error::Config("at least one scheme is required".into()));
        }
        if self.scenario.num_ues == 0 || self.scenario.num_pas == 0 {
            return Err(Error::Config("num_ues and num_pas must be >= 1".into()));
        }
        if !(self.grid.delta > 0.0 && self.grid.time_budget_s >= 0.0) {
            return Err(Error::Config("grid delta must be positive and the time budget non-negative".into()));
        }
        self.scenario.radio()?;
        self.pso.validate()?;
        for &v in &s.values {
            self.at(v)?;
        }
        Ok(())
    }

    /// Copy with the swept quantity set to `value`.
    pub fn at(&self, value: f64) -> Result<ExperimentConfig> {
        let mut c = self.clone();
        match self.sweep.variable {
            SweepVariable::PowerDbm => c.scenario.tx_power_dbm = value,
            SweepVariable::NumPas => c.scenario.num_pas = value as usize,
            SweepVariable::NumUes => c.scenario.num_ues = value as usize,
            SweepVariable::SideLength => {
                if !(value > 0.0) {
                    return Err(Error::Config("side length must be positive".into()));
                }
                c.scenario.side_length = value
            }
            SweepVariable::Delta => {
                if !(value > 0.0) {
                    return Err(Error::Config("delta must be positive".into()));
                }
                c.grid.delta = value
            }
            SweepVariable::Iterations => c.pso.max_iters = value as usize,
        }
        Ok(c)
    }
}
