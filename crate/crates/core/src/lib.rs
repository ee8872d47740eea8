//! Two-dimensional pinching-antenna systems.
//!
//! A dielectric waveguide plane mounted at height `h` hosts `N` pinching
//! antennas (PAs) that all radiate the same symbol from one RF chain. Moving
//! the PAs reshapes both the free-space path loss and the composite
//! free-space/in-waveguide phase seen by every user, so placement acts as an
//! analog beamformer. This crate optimizes that placement for the max-min
//! SNR objective:
//!
//! - [`channel`]: geometry, line-of-sight channel coefficients and SNR.
//! - [`pso`]: a penalty-based particle swarm optimizer for continuous
//!   placement, built on a small generic swarm engine.
//! - [`discrete`]: the candidate-grid formulation, its McCormick-linearized
//!   MILP, an exact branch-and-bound solver and a brute-force oracle.
//! - [`benchmarks`]: line-shaped PASS, a fixed uniform linear array with
//!   digital max-min beamforming, and the PAs-above-users heuristic.
//! - [`experiments`]: Monte Carlo sweeps, CSV output and SVG plots.
//!
//! All internal quantities are SI linear units; [`units`] converts at the
//! edges.

pub mod benchmarks;
pub mod channel;
pub mod discrete;
mod error;
pub mod experiments;
pub mod pso;
mod seed;
pub mod units;

pub use channel::{PaConfiguration, Point3, RadioParams, Scenario};
pub use error::{Error, Result};
