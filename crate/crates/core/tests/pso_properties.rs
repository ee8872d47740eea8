use pass2d::experiments::realization_ues;
use pass2d::pso::{self, PsoParams};
use pass2d::{RadioParams, Scenario};

fn scenario(k: usize, seed: u64, side: f64) -> Scenario {
    Scenario::new(realization_ues(seed, 0, k, side), side, RadioParams::mmwave(20.0)).unwrap()
}

#[test]
fn penalty_keeps_every_output_feasible() {
    for seed in 0..100u64 {
        let k = 1 + (seed % 6) as usize;
        let n = 1 + (seed % 8) as usize;
        let s = scenario(k, seed, 20.0);
        let params = PsoParams {
            num_particles: 30,
            max_iters: 40,
            restarts: 1,
            rng_seed: seed,
            ..PsoParams::default()
        };
        let sol = pso::optimize(&s, n, &params).unwrap();
        assert!(sol.config.is_feasible(&s), "seed {seed}");
        assert_eq!(sol.config.len(), n);
    }
}

#[test]
fn convergence_flattens_before_the_iteration_cap() {
    for k in [2, 4, 6] {
        let s = scenario(k, 77, 20.0);
        let params = PsoParams {
            rng_seed: 1,
            ..PsoParams::default()
        };
        let sol = pso::optimize(&s, 4, &params).unwrap();
        let t = &sol.trace;
        assert!(t.len() <= 201);
        let tail = &t[t.len().saturating_sub(10)..];
        for w in tail.windows(2) {
            let step = w[1].global_best_fitness_db - w[0].global_best_fitness_db;
            assert!((0.0..0.01).contains(&step), "K={k}: step {step}");
        }
    }
}

#[test]
fn fewer_users_reach_higher_steady_state() {
    let params = PsoParams {
        num_particles: 200,
        max_iters: 100,
        rng_seed: 4,
        ..PsoParams::default()
    };
    let mean = |k: usize| {
        (0..10u64)
            .map(|r| {
                let s = Scenario::new(realization_ues(9, r as usize, k, 20.0), 20.0, RadioParams::mmwave(20.0)).unwrap();
                pso::optimize(&s, 4, &params).unwrap().min_snr_db()
            })
            .sum::<f64>()
            / 10.0
    };
    let (two, six) = (mean(2), mean(6));
    assert!(two > six, "{two} vs {six}");
}
