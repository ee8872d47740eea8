//! Particle swarm optimization.
//!
//! [`engine`] is a maximizing swarm over a box-bounded real vector with a
//! linearly decreasing inertia weight, synchronous best updates and one RNG
//! stream per particle (so parallel evaluation never changes results).
//! [`placement`] plugs the penalized max-min SNR placement problem into it.

pub mod engine;
pub mod placement;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use engine::{
    apply_update, inertia, update_particle, Evaluation, Particle, SwarmProblem, SwarmRun, SwarmState,
};
pub use placement::{
    assign_round_robin, disk_offset, fitness, initialize_swarm, optimize, project_to_region,
    violation_count, Layout, PlacementProblem, PlacementSolution, TracePoint,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsoParams {
    pub num_particles: usize,
    pub max_iters: usize,
    pub accel_cognitive: f64,
    pub accel_social: f64,
    pub inertia_max: f64,
    pub inertia_min: f64,
    /// Penalty per violating pair, in dB of fitness.
    pub penalty_db: f64,
    /// Radius of the disk around each anchor user used at initialization (m).
    pub init_radius: f64,
    /// Per-component velocity clamp. `None` means 10% of the search box width.
    pub v_max: Option<f64>,
    pub restarts: usize,
    pub rng_seed: u64,
    /// Early stop when the global best improves by less than this (dB) over
    /// `stall_window` iterations.
    pub stall_tolerance: f64,
    pub stall_window: usize,
    /// Resample budget per particle during initialization.
    pub init_retry_budget: usize,
    /// Evaluate particles on the rayon pool. Results are identical either way.
    pub parallel: bool,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            num_particles: 500,
            max_iters: 200,
            accel_cognitive: 1.5,
            accel_social: 1.5,
            inertia_max: 0.9,
            inertia_min: 0.4,
            penalty_db: 30.0,
            init_radius: 2.0,
            v_max: None,
            restarts: 4,
            rng_seed: 0,
            stall_tolerance: 1e-3,
            stall_window: 25,
            init_retry_budget: 10_000,
            parallel: false,
        }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::invalid(m.to_string()));
        if self.num_particles == 0 {
            return fail("num_particles must be >= 1");
        }
        if self.max_iters == 0 {
            return fail("max_iters must be >= 1");
        }
        if self.restarts == 0 {
            return fail("restarts must be >= 1");
        }
        if !(self.inertia_min > 0.0 && self.inertia_max >= self.inertia_min) {
            return fail("inertia bounds must satisfy inertia_max >= inertia_min > 0");
        }
        if !(self.penalty_db > 0.0) {
            return fail("penalty must be positive");
        }
        if !(self.init_radius > 0.0) {
            return fail("init_radius must be positive");
        }
        if let Some(v) = self.v_max {
            if !(v > 0.0) {
                return fail("v_max must be positive");
            }
        }
        if !(self.accel_cognitive >= 0.0 && self.accel_social >= 0.0) {
            return fail("acceleration coefficients must be non-negative");
        }
        if self.stall_window == 0 || !(self.stall_tolerance >= 0.0) {
            return fail("stall window must be >= 1 and tolerance >= 0");
        }
        Ok(())
    }
}
