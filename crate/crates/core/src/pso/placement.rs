//! The penalized max-min SNR placement problem on the waveguide plane (or on
//! the line `y = 0` for the line-shaped benchmark).

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::engine::{self, Evaluation, SwarmProblem, SwarmState};
use super::PsoParams;
use crate::channel::{self, PaConfiguration, Point3, Scenario};
use crate::error::{Error, Result};
use crate::units;

/// Where the antennas may move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Layout {
    /// Anywhere on the square waveguide plane; two coordinates per PA.
    Plane,
    /// Along the line `y = 0`; one coordinate per PA.
    Line,
}

/// Zero-based anchor user of each PA: `n mod K`.
pub fn assign_round_robin(num_pas: usize, num_ues: usize) -> Vec<usize> {
    (0..num_pas).map(|n| n % num_ues).collect()
}

/// Area-uniform disk sample from `xi ~ U[0,1]` and `theta ~ U[0, 2pi)`.
pub fn disk_offset(radius: f64, xi: f64, theta: f64) -> (f64, f64) {
    let rho = radius * xi.sqrt();
    (rho * theta.cos(), rho * theta.sin())
}

/// Component-wise clamp into `[-D/2, D/2]`.
pub fn project_to_region(v: f64, side_length: f64) -> f64 {
    v.clamp(-side_length / 2.0, side_length / 2.0)
}

/// Pairs of plane positions `[x0, y0, x1, y1, ...]` closer than `min_separation`.
pub fn violation_count(positions: &[f64], min_separation: f64) -> usize {
    count_close_pairs(positions, 2, min_separation)
}

fn count_close_pairs(coords: &[f64], stride: usize, min_separation: f64) -> usize {
    let d2 = min_separation * min_separation;
    let n = coords.len() / stride;
    let mut count = 0;
    for i in 0..n {
        let a = &coords[i * stride..(i + 1) * stride];
        for j in i + 1..n {
            let b = &coords[j * stride..(j + 1) * stride];
            let dist2: f64 = a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum();
            if dist2 < d2 {
                count += 1;
            }
        }
    }
    count
}

/// `10 log10(min_k SNR_k) - penalty_db * violations` for plane positions.
pub fn fitness(positions: &[f64], scenario: &Scenario, penalty_db: f64) -> f64 {
    let pas = || {
        positions
            .chunks_exact(2)
            .map(|c| scenario.pa_at(c[0], c[1]))
    };
    penalized(min_snr_raw(pas, positions.len() / 2, scenario), violation_count(positions, scenario.min_separation()), penalty_db)
}

fn penalized(min_snr: f64, violations: usize, penalty_db: f64) -> f64 {
    units::to_db(min_snr) - penalty_db * violations as f64
}

fn min_snr_raw<F, I>(pas: F, n: usize, scenario: &Scenario) -> f64
where
    F: Fn() -> I,
    I: Iterator<Item = Point3>,
{
    scenario
        .ues()
        .iter()
        .map(|ue| channel::snr_from_sum(channel::coherent_sum(ue, pas(), scenario), n, scenario.radio()))
        .fold(f64::INFINITY, f64::min)
}

pub struct PlacementProblem<'a> {
    scenario: &'a Scenario,
    num_pas: usize,
    layout: Layout,
    penalty_db: f64,
    init_radius: f64,
    retry_budget: usize,
    bounds: Vec<(f64, f64)>,
}

impl<'a> PlacementProblem<'a> {
    pub fn new(scenario: &'a Scenario, num_pas: usize, layout: Layout, params: &PsoParams) -> Result<Self> {
        if num_pas == 0 {
            return Err(Error::invalid("at least one antenna is required"));
        }
        if scenario.ues().is_empty() {
            return Err(Error::invalid("at least one user is required"));
        }
        params.validate()?;
        let (xr, yr) = user_box(scenario);
        let bounds = match layout {
            Layout::Plane => (0..num_pas).flat_map(|_| [xr, yr]).collect(),
            Layout::Line => vec![xr; num_pas],
        };
        Ok(Self {
            scenario,
            num_pas,
            layout,
            penalty_db: params.penalty_db,
            init_radius: params.init_radius,
            retry_budget: params.init_retry_budget,
            bounds,
        })
    }

    pub fn scenario(&self) -> &Scenario {
        self.scenario
    }

    fn stride(&self) -> usize {
        match self.layout {
            Layout::Plane => 2,
            Layout::Line => 1,
        }
    }

    fn pas<'b>(&'b self, x: &'b [f64]) -> impl Iterator<Item = Point3> + 'b {
        let layout = self.layout;
        x.chunks_exact(self.stride()).map(move |c| match layout {
            Layout::Plane => self.scenario.pa_at(c[0], c[1]),
            Layout::Line => self.scenario.pa_at(c[0], 0.0),
        })
    }

    pub fn decode(&self, x: &[f64]) -> PaConfiguration {
        PaConfiguration::new(self.pas(x).collect())
    }

    pub fn min_snr(&self, x: &[f64]) -> f64 {
        min_snr_raw(|| self.pas(x), self.num_pas, self.scenario)
    }

    pub fn violations(&self, x: &[f64]) -> usize {
        count_close_pairs(x, self.stride(), self.scenario.min_separation())
    }
}

/// Users' bounding box intersected with the region. A degenerate dimension
/// is widened by the minimum separation on both sides.
fn user_box(scenario: &Scenario) -> ((f64, f64), (f64, f64)) {
    let half = scenario.half_side();
    let d0 = scenario.min_separation();
    let span = |vals: &mut dyn Iterator<Item = f64>| {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in vals {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if lo == hi {
            lo -= d0;
            hi += d0;
        }
        (lo.max(-half), hi.min(half))
    };
    let xr = span(&mut scenario.ues().iter().map(|u| u.x));
    let yr = span(&mut scenario.ues().iter().map(|u| u.y));
    (xr, yr)
}

impl SwarmProblem for PlacementProblem<'_> {
    fn dim(&self) -> usize {
        self.num_pas * self.stride()
    }

    fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    fn velocity_limit(&self, params: &PsoParams) -> f64 {
        params.v_max.unwrap_or(0.1 * self.scenario.side_length())
    }

    /// Round-robin user-centric sampling with rejection of points that
    /// violate the minimum separation.
    fn sample_position(&self, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
        let side = self.scenario.side_length();
        let ues = self.scenario.ues();
        let stride = self.stride();
        let d2 = self.scenario.min_separation().powi(2);
        let mut x = Vec::with_capacity(self.dim());
        let mut attempts = 0usize;
        for (n, anchor) in assign_round_robin(self.num_pas, ues.len()).into_iter().enumerate() {
            loop {
                let xi: f64 = rng.gen();
                let theta = rng.gen_range(0.0..2.0 * PI);
                let (dx, dy) = disk_offset(self.init_radius, xi, theta);
                let cand = [
                    project_to_region(ues[anchor].x + dx, side),
                    project_to_region(ues[anchor].y + dy, side),
                ];
                let cand = &cand[..stride];
                let clear = x.chunks_exact(stride).all(|p: &[f64]| {
                    p.iter().zip(cand).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() >= d2
                });
                if clear {
                    x.extend_from_slice(cand);
                    break;
                }
                attempts += 1;
                if attempts >= self.retry_budget {
                    return Err(Error::Initialization(format!(
                        "could not place PA {} of {} after {} resamples; the instance is over-constrained",
                        n + 1,
                        self.num_pas,
                        attempts
                    )));
                }
            }
        }
        Ok(x)
    }

    fn evaluate(&self, x: &[f64]) -> Evaluation {
        let violations = self.violations(x);
        Evaluation {
            fitness: penalized(self.min_snr(x), violations, self.penalty_db),
            feasible: violations == 0,
        }
    }
}

/// Initial swarm for plane placement, one RNG stream per particle derived
/// from `seed`.
pub fn initialize_swarm(scenario: &Scenario, num_pas: usize, params: &PsoParams, seed: u64) -> Result<SwarmState> {
    let problem = PlacementProblem::new(scenario, num_pas, Layout::Plane, params)?;
    SwarmState::initialize(&problem, params, seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub iteration: usize,
    pub global_best_fitness_db: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlacementSolution {
    pub config: PaConfiguration,
    /// Linear min SNR.
    pub min_snr: f64,
    pub trace: Vec<TracePoint>,
    pub restart: usize,
    pub iterations: usize,
}

impl PlacementSolution {
    pub fn min_snr_db(&self) -> f64 {
        units::to_db(self.min_snr)
    }
}

pub(crate) fn solve_placement(
    scenario: &Scenario,
    num_pas: usize,
    layout: Layout,
    params: &PsoParams,
) -> Result<PlacementSolution> {
    let problem = PlacementProblem::new(scenario, num_pas, layout, params)?;
    let outcome = engine::optimize_problem(&problem, params)?;
    let trace = outcome
        .trace
        .iter()
        .enumerate()
        .map(|(iteration, &f)| TracePoint {
            iteration,
            global_best_fitness_db: f,
        })
        .collect();
    match outcome.feasible {
        Some((x, _)) => Ok(PlacementSolution {
            config: problem.decode(&x),
            min_snr: problem.min_snr(&x),
            trace,
            restart: outcome.restart,
            iterations: outcome.iterations,
        }),
        None => Err(Error::NoFeasiblePlacement {
            best_fitness: outcome.best_fitness,
            candidate: problem.decode(&outcome.best_position).positions,
        }),
    }
}

/// Continuous plane placement maximizing the minimum SNR.
pub fn optimize(scenario: &Scenario, num_pas: usize, params: &PsoParams) -> Result<PlacementSolution> {
    solve_placement(scenario, num_pas, Layout::Plane, params)
}
