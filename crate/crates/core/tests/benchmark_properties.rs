use pass2d::benchmarks::{optimize_con_pass, optimize_fpa, pa_above_ues};
use pass2d::experiments::realization_ues;
use pass2d::pso::{self, PsoParams};
use pass2d::units::to_db;
use pass2d::{RadioParams, Scenario};

fn params(seed: u64) -> PsoParams {
    PsoParams {
        num_particles: 200,
        max_iters: 100,
        rng_seed: seed,
        ..PsoParams::default()
    }
}

#[test]
fn dominance_chain_per_instance() {
    for r in 0..8 {
        let s = Scenario::new(realization_ues(31, r, 4, 20.0), 20.0, RadioParams::mmwave(20.0)).unwrap();
        let plane = pso::optimize(&s, 4, &params(r as u64)).unwrap();
        let line = optimize_con_pass(&s, 4, &params(r as u64)).unwrap();
        let (_, above) = pa_above_ues(&s, 4).unwrap();
        assert!(line.min_snr_db() <= plane.min_snr_db() + 0.2, "r={r}");
        assert!(to_db(above) <= plane.min_snr_db() + 0.2, "r={r}");
        for p in &line.config.positions {
            assert!(p.y == 0.0 && p.x.abs() <= 10.0);
        }
    }
}

#[test]
fn averaged_ordering_fpa_line_plane() {
    let (mut plane, mut line, mut fpa) = (0.0, 0.0, 0.0);
    let reps = 20;
    for r in 0..reps {
        let s = Scenario::new(realization_ues(5, r, 4, 20.0), 20.0, RadioParams::mmwave(20.0)).unwrap();
        plane += pso::optimize(&s, 4, &params(r as u64)).unwrap().min_snr_db();
        line += optimize_con_pass(&s, 4, &params(r as u64)).unwrap().min_snr_db();
        fpa += optimize_fpa(&s, 4, &params(r as u64)).unwrap().min_snr_db();
    }
    assert!(fpa < line && line < plane, "{fpa} {line} {plane}");
    let _ = reps;
}

#[test]
fn fpa_weights_meet_the_power_budget() {
    for r in 0..5 {
        let s = Scenario::new(realization_ues(8, r, 3, 20.0), 20.0, RadioParams::mmwave(15.0)).unwrap();
        let sol = optimize_fpa(&s, 6, &params(r as u64)).unwrap();
        let p: f64 = sol.weights.iter().map(|w| w.norm_sqr()).sum();
        let want = s.radio().tx_power_w();
        assert!((p - want).abs() <= 1e-9 * want);
    }
}
