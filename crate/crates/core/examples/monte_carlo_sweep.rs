//! A reduced power sweep written to CSV and SVG.
//!
//! `cargo run --release --example monte_carlo_sweep -- [out_dir]`

use pass2d::benchmarks::Scheme;
use pass2d::experiments::{aggregate, emit_csv, emit_plot, run_experiment, ExperimentConfig, RunOptions, SweepVariable};
use pass2d::pso::PsoParams;

fn main() -> pass2d::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "sweep_out".into());
    let mut cfg = ExperimentConfig::default();
    cfg.sweep.name = "power".into();
    cfg.sweep.variable = SweepVariable::PowerDbm;
    cfg.sweep.values = vec![10.0, 15.0, 20.0, 25.0, 30.0];
    cfg.sweep.schemes = vec![Scheme::Pass2dCont, Scheme::ConPass, Scheme::Fpa, Scheme::AboveUes];
    cfg.sweep.realizations = 10;
    cfg.pso = PsoParams {
        num_particles: 100,
        max_iters: 100,
        ..PsoParams::default()
    };
    cfg.validate()?;

    let records = run_experiment(&cfg, &RunOptions::default())?;
    let aggs = aggregate(&records);
    let (raw, agg) = emit_csv(&records, &aggs, &out)?;
    let svg = std::path::Path::new(&out).join("plot.svg");
    emit_plot(&aggs, "min SNR versus transmit power", &svg)?;
    for a in &aggs {
        println!("{:<12} P={:>4} dBm  {:6.2} +/- {:.2} dB", a.scheme.to_string(), a.sweep_value, a.mean_db, a.stderr_db);
    }
    println!("wrote {}, {}, {}", raw.display(), agg.display(), svg.display());
    Ok(())
}
