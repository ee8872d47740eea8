//! Grid placement: build the linearized model, solve it exactly and compare
//! with the continuous swarm.

use std::time::Duration;

use pass2d::discrete::{build_milp, conflict_set, discrete_channel_table, solve_milp, CandidateGrid};
use pass2d::experiments::realization_ues;
use pass2d::pso::{self, PsoParams};
use pass2d::units::to_db;
use pass2d::{RadioParams, Scenario};

fn main() -> pass2d::Result<()> {
    let scenario = Scenario::new(realization_ues(3, 0, 4, 20.0), 20.0, RadioParams::mmwave(20.0))?;
    let n = 4;
    for step in [4.0, 2.0, 1.0] {
        let grid = CandidateGrid::with_step(20.0, step, scenario.height())?;
        let table = discrete_channel_table(&grid, &scenario);
        let conflicts = conflict_set(&grid, scenario.min_separation());
        let model = build_milp(&table, &conflicts, n, &scenario)?;
        let sol = solve_milp(&model, Duration::from_secs(60));
        let picked: Vec<String> = sol
            .selection
            .as_ref()
            .map(|b| b.indices().iter().map(|&i| format!("({:.0},{:.0})", grid.point(i).x, grid.point(i).y)).collect())
            .unwrap_or_default();
        println!(
            "step {step} m: {} candidates, {} constraints, {} {:.2} dB in {} nodes, picks {}",
            grid.len(),
            model.constraints().count(),
            sol.status.as_str(),
            to_db(sol.mu),
            sol.nodes,
            picked.join(" ")
        );
    }
    let cont = pso::optimize(&scenario, n, &PsoParams::default())?;
    println!("continuous swarm: {:.2} dB", cont.min_snr_db());
    Ok(())
}
