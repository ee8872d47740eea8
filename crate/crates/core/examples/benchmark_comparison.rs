//! All schemes on the same drops.

use std::time::Duration;

use pass2d::benchmarks::{optimize_con_pass, optimize_fpa, pa_above_ues};
use pass2d::discrete::{optimize_on_grid, CandidateGrid};
use pass2d::experiments::realization_ues;
use pass2d::pso::{self, PsoParams};
use pass2d::units::to_db;
use pass2d::{RadioParams, Scenario};

fn main() -> pass2d::Result<()> {
    let params = PsoParams {
        num_particles: 200,
        max_iters: 100,
        ..PsoParams::default()
    };
    println!("drop  plane   grid    line    ula     above  (dB)");
    for r in 0..5 {
        let s = Scenario::new(realization_ues(42, r, 4, 20.0), 20.0, RadioParams::mmwave(20.0))?;
        let grid = CandidateGrid::with_step(20.0, 1.0, s.height())?;
        let plane = pso::optimize(&s, 4, &params)?.min_snr_db();
        let disc = to_db(optimize_on_grid(&s, &grid, 4, Duration::from_secs(60))?.mu);
        let line = optimize_con_pass(&s, 4, &params)?.min_snr_db();
        let ula = optimize_fpa(&s, 4, &params)?.min_snr_db();
        let above = to_db(pa_above_ues(&s, 4)?.1);
        println!("{r:>4}  {plane:6.2}  {disc:6.2}  {line:6.2}  {ula:6.2}  {above:6.2}");
    }
    Ok(())
}
