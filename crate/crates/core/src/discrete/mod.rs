//! Discrete placement on a grid of candidate positions.
//!
//! `G1` parallel waveguides along `y`, each with `G2` pinching slots along
//! `x`, give `G = G1 G2` candidates. Choosing exactly `N` of them with no
//! two closer than the minimum separation is a binary quadratic program;
//! replacing every product `b_i b_j` by a McCormick-linked binary `z_ij`
//! turns it into an exact MILP, which [`solve_milp`] solves by
//! branch-and-bound. [`brute_force_select`] enumerates every placement and
//! serves as the oracle.

mod bnb;
mod grid;
mod instance;
mod milp;
mod oracle;

pub use bnb::{solve_milp, MilpSolution, SolveStatus};
pub use grid::{
    build_grid, conflict_set, discrete_channel_table, CandidateGrid, ConflictSet, DiscreteChannelTable,
    SelectionVector,
};
pub use instance::DiscreteInstance;
pub use milp::{build_milp, LinearConstraint, MilpModel, Sense, VarId};
pub use oracle::{brute_force_select, brute_force_select_with_budget, binomial, DEFAULT_ENUMERATION_BUDGET};

use std::time::Duration;

use crate::channel::Scenario;
use crate::error::Result;

/// Default time budget of one branch-and-bound solve.
pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(60);

/// Grid, channel table, conflicts, model and solve in one call.
pub fn optimize_on_grid(
    scenario: &Scenario,
    grid: &CandidateGrid,
    num_pas: usize,
    time_budget: Duration,
) -> Result<MilpSolution> {
    let table = discrete_channel_table(grid, scenario);
    let conflicts = conflict_set(grid, scenario.min_separation());
    let model = build_milp(&table, &conflicts, num_pas, scenario)?;
    Ok(solve_milp(&model, time_budget))
}
