//! Wall time of one swarm iteration versus antenna count and swarm size.

use std::time::Instant;

use pass2d::experiments::realization_ues;
use pass2d::pso::{initialize_swarm, Layout, PlacementProblem, PsoParams};
use pass2d::{RadioParams, Scenario};

fn per_iteration(s: &Scenario, n: usize, m: usize) -> pass2d::Result<f64> {
    let params = PsoParams {
        num_particles: m,
        max_iters: 10_000,
        ..PsoParams::default()
    };
    let problem = PlacementProblem::new(s, n, Layout::Plane, &params)?;
    let mut state = initialize_swarm(s, n, &params, 1)?;
    for _ in 0..3 {
        state.step(&problem, &params);
    }
    let t = Instant::now();
    for _ in 0..30 {
        state.step(&problem, &params);
    }
    Ok(t.elapsed().as_secs_f64() / 30.0)
}

fn slope(pts: &[(f64, f64)]) -> f64 {
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0.ln()).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1.ln()).sum::<f64>() / m;
    let num: f64 = pts.iter().map(|p| (p.0.ln() - mx) * (p.1.ln() - my)).sum();
    num / pts.iter().map(|p| (p.0.ln() - mx).powi(2)).sum::<f64>()
}

fn main() -> pass2d::Result<()> {
    let s = Scenario::new(realization_ues(3, 0, 4, 20.0), 20.0, RadioParams::mmwave(20.0))?;
    let mut by_n = Vec::new();
    for n in [8, 16, 32, 64, 128, 256] {
        let t = per_iteration(&s, n, 100)?;
        println!("N={n:>3} M=100: {:.3} ms", t * 1e3);
        by_n.push((n as f64, t));
    }
    println!("slope in N over 8..64: {:.2}", slope(&by_n[..4]));
    println!("slope in N over 64..256: {:.2}", slope(&by_n[3..]));
    let mut by_m = Vec::new();
    for m in [50, 100, 200, 400] {
        let t = per_iteration(&s, 16, m)?;
        println!("N= 16 M={m:>3}: {:.3} ms", t * 1e3);
        by_m.push((m as f64, t));
    }
    println!("slope in M: {:.2}", slope(&by_m));
    Ok(())
}
