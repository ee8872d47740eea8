//! Continuous placement with the particle swarm.
//!
//! `cargo run --release --example pso_placement -- [num_ues] [num_pas] [seed]`

use pass2d::experiments::realization_ues;
use pass2d::pso::{self, PsoParams};
use pass2d::{RadioParams, Scenario};

fn main() -> pass2d::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let k = args.first().copied().unwrap_or(4) as usize;
    let n = args.get(1).copied().unwrap_or(4) as usize;
    let seed = args.get(2).copied().unwrap_or(7);

    let scenario = Scenario::new(realization_ues(seed, 0, k, 20.0), 20.0, RadioParams::mmwave(20.0))?;
    let params = PsoParams {
        rng_seed: seed,
        ..PsoParams::default()
    };
    let sol = pso::optimize(&scenario, n, &params)?;

    for (i, u) in scenario.ues().iter().enumerate() {
        println!("user {i}: ({:6.2}, {:6.2})", u.x, u.y);
    }
    for (i, p) in sol.config.positions.iter().enumerate() {
        println!("PA {i}:   ({:6.2}, {:6.2})", p.x, p.y);
    }
    println!(
        "min SNR {:.2} dB after {} iterations (restart {}), feasible: {}",
        sol.min_snr_db(),
        sol.iterations,
        sol.restart,
        sol.config.is_feasible(&scenario)
    );
    Ok(())
}
