//! Monte Carlo sweeps over the schemes, with CSV and SVG output.
//!
//! Every realization draws its users from a stream derived from the master
//! seed and the realization index only, so all schemes and all sweep values
//! see the same user drop. Scheme seeds additionally depend on the sweep
//! point and the scheme, never on scheduling, so the thread count does not
//! change any number.

mod config;
mod output;
pub mod validate;

pub use config::{ExperimentConfig, GridParams, ScenarioParams, SweepSpec, SweepVariable};
pub use output::{
    aggregate, emit_csv, emit_plot, read_aggregates, read_records, AggregateRecord, AGGREGATE_HEADER, RAW_HEADER,
};

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::benchmarks::{optimize_con_pass, optimize_fpa, pa_above_ues, Scheme};
use crate::channel::{Point3, Scenario};
use crate::discrete::{optimize_on_grid, CandidateGrid};
use crate::error::{Error, Result};
use crate::pso::{self, PsoParams};
use crate::seed;
use crate::units;

/// `K` users uniform on `[-D/2, D/2]^2`, `z = 0`.
pub fn sample_ues<R: Rng + ?Sized>(num_ues: usize, side_length: f64, rng: &mut R) -> Vec<Point3> {
    let half = side_length / 2.0;
    (0..num_ues)
        .map(|_| Point3::new(rng.gen_range(-half..=half), rng.gen_range(-half..=half), 0.0))
        .collect()
}

/// One scheme on one realization at one sweep point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub scheme: Scheme,
    pub sweep_name: String,
    pub sweep_value: f64,
    pub realization: usize,
    pub mu_linear: f64,
    pub mu_db: f64,
    pub wall_ms: f64,
    /// `ok`, `optimal`, `timeout`, `infeasible` or `error: ...`.
    pub status: String,
}

/// Options that affect how a run executes but not what it computes.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// Write `wall_ms = 0` so repeated runs give byte-identical files.
    pub omit_timing: bool,
}

/// Users of realization `r` for a given user count and side length.
pub fn realization_ues(master_seed: u64, realization: usize, num_ues: usize, side_length: f64) -> Vec<Point3> {
    let mut rng = seed::stream(master_seed, &[0x5ce7, realization as u64]);
    sample_ues(num_ues, side_length, &mut rng)
}

struct Outcome {
    mu: f64,
    status: String,
}

fn run_scheme(scheme: Scheme, cfg: &ExperimentConfig, scenario: &Scenario, pso_params: &PsoParams) -> Result<Outcome> {
    let n = cfg.scenario.num_pas;
    let ok = |mu: f64| Outcome { mu, status: "ok".into() };
    match scheme {
        Scheme::Pass2dCont => pso::optimize(scenario, n, pso_params).map(|s| ok(s.min_snr)),
        Scheme::ConPass => optimize_con_pass(scenario, n, pso_params).map(|s| ok(s.min_snr)),
        Scheme::Fpa => optimize_fpa(scenario, n, pso_params).map(|s| ok(s.min_snr)),
        Scheme::AboveUes => pa_above_ues(scenario, n).map(|(_, mu)| ok(mu)),
        Scheme::Pass2dDisc => {
            let grid = CandidateGrid::with_step(scenario.side_length(), cfg.grid.delta, scenario.height())?;
            let sol = optimize_on_grid(scenario, &grid, n, cfg.grid.time_budget())?;
            Ok(Outcome {
                mu: sol.mu,
                status: sol.status.as_str().into(),
            })
        }
    }
}

/// Runs every scheme on every realization at every sweep value.
pub fn run_experiment(config: &ExperimentConfig, options: &RunOptions) -> Result<Vec<ResultRecord>> {
    run_experiment_observed(config, options, |_, _| {})
}

/// As [`run_experiment`], calling `observe` with each record and the exact
/// scenario the scheme was run on.
pub fn run_experiment_observed<F>(config: &ExperimentConfig, options: &RunOptions, observe: F) -> Result<Vec<ResultRecord>>
where
    F: Fn(&ResultRecord, &Scenario) + Sync,
{
    config.validate()?;
    let sweep = &config.sweep;
    let points: Vec<ExperimentConfig> = sweep.values.iter().map(|&v| config.at(v)).collect::<Result<_>>()?;
    let tasks: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|s| (0..sweep.realizations).map(move |r| (s, r)))
        .collect();

    let work = |&(s, r): &(usize, usize)| -> Result<Vec<ResultRecord>> {
        let cfg = &points[s];
        let value = sweep.values[s];
        let ues = realization_ues(sweep.master_seed, r, cfg.scenario.num_ues, cfg.scenario.side_length);
        let scenario = cfg.scenario.scenario(ues)?;
        let mut out = Vec::with_capacity(sweep.schemes.len());
        for (i, &scheme) in sweep.schemes.iter().enumerate() {
            let pso_params = PsoParams {
                rng_seed: seed::derive(sweep.master_seed, &[r as u64, s as u64, i as u64]),
                ..cfg.pso.clone()
            };
            let started = Instant::now();
            let outcome = run_scheme(scheme, cfg, &scenario, &pso_params);
            let wall_ms = if options.omit_timing {
                0.0
            } else {
                started.elapsed().as_secs_f64() * 1e3
            };
            let (mu, status) = match outcome {
                Ok(o) => (o.mu, o.status),
                Err(e) => {
                    log::warn!("{scheme} failed on realization {r} at {}={value}: {e}", sweep.variable);
                    (f64::NAN, format!("error: {e}"))
                }
            };
            let record = ResultRecord {
                scheme,
                sweep_name: sweep.variable.name().into(),
                sweep_value: value,
                realization: r,
                mu_linear: mu,
                mu_db: units::to_db(mu),
                wall_ms,
                status,
            };
            observe(&record, &scenario);
            out.push(record);
        }
        log::debug!("{}={value} realization {r} done", sweep.variable);
        Ok(out)
    };

    let batches: Vec<Result<Vec<ResultRecord>>> = match options.jobs {
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
            pool.install(|| tasks.par_iter().map(work).collect())
        }
        None => tasks.par_iter().map(work).collect(),
    };
    let mut records = Vec::with_capacity(tasks.len() * sweep.schemes.len());
    for b in batches {
        records.extend(b?);
    }
    Ok(records)
}
