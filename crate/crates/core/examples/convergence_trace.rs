//! Global-best fitness per iteration for several user counts, as CSV.

use pass2d::experiments::realization_ues;
use pass2d::pso::{self, PsoParams};
use pass2d::{RadioParams, Scenario};

fn main() -> pass2d::Result<()> {
    let params = PsoParams {
        rng_seed: 11,
        restarts: 1,
        ..PsoParams::default()
    };
    let mut traces = Vec::new();
    for k in [2, 4, 6] {
        let s = Scenario::new(realization_ues(11, 0, k, 20.0), 20.0, RadioParams::mmwave(20.0))?;
        traces.push((k, pso::optimize(&s, 4, &params)?.trace));
    }
    println!("num_ues,iteration,global_best_db");
    for (k, trace) in &traces {
        for t in trace {
            println!("{k},{},{:.4}", t.iteration, t.global_best_fitness_db);
        }
    }
    Ok(())
}
