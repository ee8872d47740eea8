use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use pass2d::benchmarks::Scheme;
use pass2d::discrete::DiscreteInstance;
use pass2d::experiments::{self, validate, ExperimentConfig, RunOptions};

#[derive(Parser)]
#[command(version, about = "Antenna placement on a dielectric plane: sweeps, solver and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte Carlo sweep and write raw.csv, aggregate.csv and plot.svg.
    Run {
        /// TOML experiment file. Defaults apply when omitted.
        config: Option<PathBuf>,
        #[arg(short, long, default_value = "results")]
        out: PathBuf,
        #[arg(long)]
        realizations: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated scheme ids.
        #[arg(long, value_delimiter = ',')]
        schemes: Option<Vec<Scheme>>,
        /// Worker threads (does not change results).
        #[arg(long)]
        jobs: Option<usize>,
        /// Write zero wall times so reruns are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
    /// Solve a saved discrete instance by enumeration and by branch-and-bound.
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value_t = 60.0)]
        time_budget: f64,
    },
    /// Plot an aggregate CSV as SVG.
    Plot {
        aggregates: PathBuf,
        #[arg(short, long, default_value = "plot.svg")]
        out: PathBuf,
        #[arg(long, default_value = "min SNR")]
        title: String,
    },
    /// Run the built-in invariant checks.
    Validate,
}

fn run(cli: Cli) -> pass2d::Result<bool> {
    match cli.command {
        Command::Run {
            config,
            out,
            realizations,
            seed,
            schemes,
            jobs,
            no_timing,
        } => {
            let mut cfg = match config {
                Some(p) => ExperimentConfig::load(p)?,
                None => ExperimentConfig::default(),
            };
            if let Some(r) = realizations {
                cfg.sweep.realizations = r;
            }
            if let Some(s) = seed {
                cfg.sweep.master_seed = s;
            }
            if let Some(s) = schemes {
                cfg.sweep.schemes = s;
            }
            let opts = RunOptions {
                jobs,
                omit_timing: no_timing,
            };
            let records = experiments::run_experiment(&cfg, &opts)?;
            let aggs = experiments::aggregate(&records);
            let (raw, agg) = experiments::emit_csv(&records, &aggs, &out)?;
            let plot = out.join("plot.svg");
            experiments::emit_plot(&aggs, &cfg.sweep.name, &plot)?;
            for a in &aggs {
                println!(
                    "{:<12} {}={:<8} n={:<4} {:>9.3} dB ± {:.3}",
                    a.scheme, a.sweep_name, a.sweep_value, a.n, a.mean_db, a.stderr_db
                );
            }
            println!("wrote {}, {}, {}", raw.display(), agg.display(), plot.display());
            Ok(true)
        }
        Command::Oracle { instance, time_budget } => {
            let inst = DiscreteInstance::load(&instance)?;
            let (sel, mu) = inst.brute_force()?;
            println!("enumeration: {:?}  mu = {mu:.12e}", sel.indices());
            let sol = inst.solve(Duration::from_secs_f64(time_budget))?;
            let idx = sol.selection.as_ref().map(|s| s.indices());
            println!(
                "branch-and-bound: {idx:?}  mu = {:.12e}  status = {}  nodes = {}",
                sol.mu,
                sol.status.as_str(),
                sol.nodes
            );
            Ok((sol.mu - mu).abs() <= 1e-9 * mu.abs())
        }
        Command::Plot { aggregates, out, title } => {
            let aggs = experiments::read_aggregates(&aggregates)?;
            experiments::emit_plot(&aggs, &title, &out)?;
            println!("wrote {}", out.display());
            Ok(true)
        }
        Command::Validate => {
            let checks = validate::run_checks();
            for c in &checks {
                println!("{} {:<40} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            Ok(checks.iter().all(|c| c.passed))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
