use std::time::Duration;

use num_complex::Complex64;
use pass2d::discrete::{
    brute_force_select, build_grid, build_milp, conflict_set, discrete_channel_table, optimize_on_grid, solve_milp,
    CandidateGrid, ConflictSet, DiscreteChannelTable, DiscreteInstance, SolveStatus,
};
use pass2d::pso::{self, PsoParams};
use pass2d::{Point3, RadioParams, Scenario};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_instance(rng: &mut ChaCha8Rng) -> (DiscreteChannelTable, ConflictSet, usize, Scenario) {
    let k = rng.gen_range(1..=4);
    let g = rng.gen_range(2..=16);
    let n = rng.gen_range(1..=4usize).min(g);
    let rows = (0..k)
        .map(|_| {
            (0..g)
                .map(|_| Complex64::from_polar(rng.gen_range(0.05..1.0), rng.gen_range(0.0..std::f64::consts::TAU)))
                .collect()
        })
        .collect();
    let mut pairs = Vec::new();
    for i in 0..g {
        for j in i + 1..g {
            if rng.gen_bool(0.1) {
                pairs.push((i, j));
            }
        }
    }
    let ues = (0..k).map(|i| Point3::new(i as f64, 0.0, 0.0)).collect();
    let s = Scenario::new(ues, 10.0, RadioParams::mmwave(rng.gen_range(10.0..30.0))).unwrap();
    (DiscreteChannelTable::from_rows(rows).unwrap(), ConflictSet::from_pairs(pairs), n, s)
}

#[test]
fn solver_agrees_with_enumeration_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    while checked < 50 {
        let (t, c, n, s) = random_instance(&mut rng);
        let model = build_milp(&t, &c, n, &s).unwrap();
        let sol = solve_milp(&model, Duration::from_secs(30));
        match brute_force_select(&t, &c, n, &s) {
            Ok((sel, mu)) => {
                assert_eq!(sol.status, SolveStatus::Optimal);
                assert!((sol.mu - mu).abs() <= 1e-9 * mu, "{} vs {}", sol.mu, mu);
                let got = sol.selection.unwrap();
                assert!(got.is_valid(n, &c));
                assert_eq!(got, sel);
                assert!(sol.root_bound >= sol.mu);
                checked += 1;
            }
            Err(_) => assert_eq!(sol.status, SolveStatus::Infeasible),
        }
    }
}

#[test]
fn root_bound_dominates_on_grid_instances() {
    for seed in 0..5u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ues = (0..3)
            .map(|_| Point3::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), 0.0))
            .collect();
        let s = Scenario::new(ues, 10.0, RadioParams::mmwave(20.0)).unwrap();
        let grid = CandidateGrid::with_step(10.0, 1.0, 3.0).unwrap();
        let sol = optimize_on_grid(&s, &grid, 3, Duration::from_secs(60)).unwrap();
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert!(sol.root_bound >= sol.mu);
    }
}

#[test]
fn refining_a_nested_grid_never_hurts() {
    for seed in 0..4u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
        let ues = (0..4)
            .map(|_| Point3::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0), 0.0))
            .collect();
        let s = Scenario::new(ues, 20.0, RadioParams::mmwave(20.0)).unwrap();
        let mut last = 0.0;
        for step in [5.0, 2.5] {
            let grid = CandidateGrid::with_step(20.0, step, 3.0).unwrap();
            let sol = optimize_on_grid(&s, &grid, 3, Duration::from_secs(60)).unwrap();
            assert_eq!(sol.status, SolveStatus::Optimal);
            assert!(sol.mu >= last, "step {step}: {} < {last}", sol.mu);
            last = sol.mu;
        }
    }
}

#[test]
fn single_user_grid_optimum_approaches_the_overhead_point() {
    let ue = Point3::new(1.37, -0.62, 0.0);
    let s = Scenario::new(vec![ue], 4.0, RadioParams::mmwave(20.0)).unwrap();
    let r = s.radio();
    let continuous = r.tx_power_w() * r.eta() / (9.0 * r.noise_power_w());
    let mut last_gap = f64::INFINITY;
    for step in [1.0, 0.5, 0.25, 0.125] {
        let grid = CandidateGrid::with_step(4.0, step, 3.0).unwrap();
        let sol = optimize_on_grid(&s, &grid, 1, Duration::from_secs(30)).unwrap();
        let idx = sol.selection.unwrap().indices()[0];
        let p = grid.point(idx);
        assert!((p.x - ue.x).abs() <= step / 2.0 + 1e-12 && (p.y - ue.y).abs() <= step / 2.0 + 1e-12);
        assert!(sol.mu <= continuous);
        let gap = continuous - sol.mu;
        assert!(gap <= last_gap);
        last_gap = gap;
    }
    assert!(last_gap / continuous < 1e-3);
}

#[test]
fn swarm_is_close_to_fine_grid_oracle() {
    // corner users of a 4 m square, 17 x 17 grid at 0.25 m
    let ues = vec![
        Point3::new(-1.5, -1.5, 0.0),
        Point3::new(1.5, -1.5, 0.0),
        Point3::new(-1.5, 1.5, 0.0),
        Point3::new(1.5, 1.5, 0.0),
    ];
    let s = Scenario::new(ues, 4.0, RadioParams::mmwave(20.0)).unwrap();
    let grid = CandidateGrid::with_step(4.0, 0.25, 3.0).unwrap();
    let oracle = optimize_on_grid(&s, &grid, 4, Duration::from_secs(120)).unwrap();
    assert_eq!(oracle.status, SolveStatus::Optimal);
    let params = PsoParams {
        rng_seed: 3,
        ..PsoParams::default()
    };
    let sol = pso::optimize(&s, 4, &params).unwrap();
    let oracle_db = 10.0 * oracle.mu.log10();
    assert!(sol.min_snr_db() >= oracle_db - 1.5, "{} vs {}", sol.min_snr_db(), oracle_db);
}

#[test]
fn feasible_oracle_layout_beats_nearby_infeasible_ones() {
    // A D0-feasible layout scores above any layout with one violation whose
    // raw SNR is less than the penalty higher.
    let ues = vec![Point3::new(0.3, 0.2, 0.0), Point3::new(-0.4, 0.5, 0.0)];
    let s = Scenario::new(ues, 2.0, RadioParams::mmwave(20.0))
        .unwrap()
        .with_min_separation(0.6)
        .unwrap();
    let grid = build_grid(2.0, 5, 5, 3.0).unwrap();
    let table = discrete_channel_table(&grid, &s);
    let conflicts = conflict_set(&grid, s.min_separation());
    let (sel, _) = brute_force_select(&table, &conflicts, 2, &s).unwrap();
    let pos: Vec<f64> = sel.indices().iter().flat_map(|&i| [grid.point(i).x, grid.point(i).y]).collect();
    let feasible = pso::fitness(&pos, &s, 30.0);
    assert_eq!(pso::violation_count(&pos, s.min_separation()), 0);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..2000 {
        let (x, y) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let bad = [x, y, x + 0.1, y];
        let raw = 10.0 * pass2d::channel::min_snr(
            &pass2d::PaConfiguration::new(vec![s.pa_at(bad[0], bad[1]), s.pa_at(bad[2], bad[3])]),
            &s,
        )
        .unwrap()
        .log10();
        if raw - feasible < 30.0 {
            assert!(pso::fitness(&bad, &s, 30.0) < feasible);
        }
    }
}

#[test]
fn instance_file_reproduces_solution() {
    let ues = vec![Point3::new(2.0, 1.0, 0.0), Point3::new(-3.0, -2.5, 0.0)];
    let s = Scenario::new(ues, 8.0, RadioParams::mmwave(25.0)).unwrap();
    let inst = DiscreteInstance::generate(&s, 5, 5, 3).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("case.json");
    inst.save(&path).unwrap();
    let back = DiscreteInstance::load(&path).unwrap();
    let a = inst.solve(Duration::from_secs(10)).unwrap();
    let b = back.solve(Duration::from_secs(10)).unwrap();
    assert_eq!(a.selection, b.selection);
    assert_eq!(a.mu, b.mu);
    assert_eq!(back.brute_force().unwrap().1, a.mu);
}

proptest! {
    #[test]
    fn mccormick_forces_products(g in 2usize..8, seed in any::<u64>(), corners in prop::collection::vec(0u8..4, 28)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = vec![(0..g).map(|_| Complex64::new(rng.gen(), rng.gen())).collect()];
        let t = DiscreteChannelTable::from_rows(rows).unwrap();
        let s = Scenario::new(vec![Point3::new(0.0, 0.0, 0.0)], 2.0, RadioParams::mmwave(20.0)).unwrap();
        let m = build_milp(&t, &ConflictSet::default(), 1, &s).unwrap();
        for p in 0..m.num_pair_vars() {
            let (i, j) = m.pairs()[p];
            let corner = corners[p % corners.len()];
            let mut b = vec![0.0; g];
            b[i] = f64::from(corner & 1);
            b[j] = f64::from(corner >> 1);
            for zv in [0.0, 1.0] {
                let mut z = vec![0.0; m.num_pair_vars()];
                z[p] = zv;
                let ok = m.mccormick(p).iter().all(|c| c.is_satisfied(&b, &z, 0.0, 0.0));
                prop_assert_eq!(ok, zv == b[i] * b[j]);
            }
        }
    }

    #[test]
    fn linearized_gamma_equals_coherent_power(seed in any::<u64>(), mask in any::<u16>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = 12;
        let rows: Vec<Vec<Complex64>> = (0..3)
            .map(|_| (0..g).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
            .collect();
        let t = DiscreteChannelTable::from_rows(rows.clone()).unwrap();
        let ues = (0..3).map(|i| Point3::new(i as f64, 0.0, 0.0)).collect();
        let s = Scenario::new(ues, 10.0, RadioParams::mmwave(20.0)).unwrap();
        let m = build_milp(&t, &ConflictSet::default(), 1, &s).unwrap();
        let b: Vec<f64> = (0..g).map(|i| f64::from((mask >> i) & 1)).collect();
        let z = m.linked_products(&b);
        for (k, row) in rows.iter().enumerate() {
            let direct: Complex64 = row.iter().zip(&b).map(|(h, x)| h * x).sum();
            let want = direct.norm_sqr();
            prop_assert!((m.gamma(k, &b, &z) - want).abs() <= 1e-9 * want.max(1e-12));
        }
    }
}
