use std::path::Path;
use std::time::Duration;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bnb::{solve_milp, MilpSolution};
use super::grid::{build_grid, conflict_set, discrete_channel_table, ConflictSet, DiscreteChannelTable, SelectionVector};
use super::milp::{build_milp, MilpModel};
use super::oracle::brute_force_select;
use crate::channel::{Point3, RadioParams, Scenario};
use crate::error::{Error, Result};

/// Self-contained discrete selection problem, stored as JSON.
///
/// The channel table is kept as `[re, im]` pairs so a reloaded instance is
/// bit-identical to the one that was saved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscreteInstance {
    pub side_length: f64,
    pub height: f64,
    pub min_separation: f64,
    pub feed_point: Point3,
    pub radio: RadioParams,
    pub ues: Vec<Point3>,
    pub g1: usize,
    pub g2: usize,
    pub num_pas: usize,
    pub channel: Vec<Vec<[f64; 2]>>,
    pub conflicts: Vec<(usize, usize)>,
}

impl DiscreteInstance {
    /// Builds the grid, channel table and conflict set for a scenario.
    pub fn generate(scenario: &Scenario, g1: usize, g2: usize, num_pas: usize) -> Result<Self> {
        let grid = build_grid(scenario.side_length(), g1, g2, scenario.height())?;
        let table = discrete_channel_table(&grid, scenario);
        let conflicts = conflict_set(&grid, scenario.min_separation());
        Ok(Self {
            side_length: scenario.side_length(),
            height: scenario.height(),
            min_separation: scenario.min_separation(),
            feed_point: scenario.feed_point(),
            radio: *scenario.radio(),
            ues: scenario.ues().to_vec(),
            g1,
            g2,
            num_pas,
            channel: table.rows().iter().map(|r| r.iter().map(|c| [c.re, c.im]).collect()).collect(),
            conflicts: conflicts.pairs().to_vec(),
        })
    }

    pub fn scenario(&self) -> Result<Scenario> {
        Scenario::with_geometry(
            self.ues.clone(),
            self.side_length,
            self.height,
            self.min_separation,
            self.feed_point,
            self.radio,
        )
    }

    pub fn table(&self) -> Result<DiscreteChannelTable> {
        let table = DiscreteChannelTable::from_rows(
            self.channel
                .iter()
                .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
                .collect(),
        )?;
        if table.num_users() != self.ues.len() || table.num_candidates() != self.g1 * self.g2 {
            return Err(Error::invalid(format!(
                "channel table is {} x {}, expected {} x {}",
                table.num_users(),
                table.num_candidates(),
                self.ues.len(),
                self.g1 * self.g2
            )));
        }
        Ok(table)
    }

    pub fn conflict_set(&self) -> ConflictSet {
        ConflictSet::from_pairs(self.conflicts.clone())
    }

    pub fn model(&self) -> Result<MilpModel> {
        build_milp(&self.table()?, &self.conflict_set(), self.num_pas, &self.scenario()?)
    }

    pub fn solve(&self, time_budget: Duration) -> Result<MilpSolution> {
        Ok(solve_milp(&self.model()?, time_budget))
    }

    pub fn brute_force(&self) -> Result<(SelectionVector, f64)> {
        brute_force_select(&self.table()?, &self.conflict_set(), self.num_pas, &self.scenario()?)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::invalid(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let inst: Self = serde_json::from_str(text).map_err(|e| Error::invalid(e.to_string()))?;
        inst.scenario()?;
        inst.table()?;
        Ok(inst)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| Error::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }
}
