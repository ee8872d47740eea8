//! Quick self-checks of the core invariants, used by the `validate` command.

use std::time::Duration;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{min_snr, PaConfiguration, Point3, RadioParams, Scenario};
use crate::discrete::{
    brute_force_select, build_milp, solve_milp, ConflictSet, DiscreteChannelTable, SolveStatus,
};
use crate::pso::{self, PsoParams};

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check { name, passed, detail }
}

fn overhead_snr() -> Check {
    let radio = RadioParams::mmwave(20.0);
    let ue = Point3::new(1.0, -2.0, 0.0);
    let result = Scenario::new(vec![ue], 20.0, radio).and_then(|s| {
        let cfg = PaConfiguration::new(vec![Point3::new(1.0, -2.0, 3.0)]);
        min_snr(&cfg, &s)
    });
    match result {
        Ok(mu) => {
            let closed = radio.tx_power_w() * radio.eta() / (9.0 * radio.noise_power_w());
            let err_db = (10.0 * (mu / closed).log10()).abs();
            check("overhead SNR closed form", err_db < 0.01, format!("error {err_db:.2e} dB"))
        }
        Err(e) => check("overhead SNR closed form", false, e.to_string()),
    }
}

fn mccormick() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let rows = vec![(0..9).map(|_| Complex64::new(rng.gen(), rng.gen())).collect()];
    let table = DiscreteChannelTable::from_rows(rows).expect("rectangular");
    let scenario = Scenario::new(vec![Point3::new(0.0, 0.0, 0.0)], 2.0, RadioParams::mmwave(20.0)).expect("valid");
    let model = build_milp(&table, &ConflictSet::default(), 2, &scenario).expect("valid model");
    let mut bad = 0;
    for p in 0..model.num_pair_vars() {
        let (i, j) = model.pairs()[p];
        for corner in 0..4u8 {
            let mut b = vec![0.0; 9];
            b[i] = f64::from(corner & 1);
            b[j] = f64::from(corner >> 1);
            for zv in [0.0, 1.0] {
                let mut z = vec![0.0; model.num_pair_vars()];
                z[p] = zv;
                let ok = model.mccormick(p).iter().all(|c| c.is_satisfied(&b, &z, 0.0, 0.0));
                if ok != (zv == b[i] * b[j]) {
                    bad += 1;
                }
            }
        }
    }
    check("linearization exactness", bad == 0, format!("{} pairs, {bad} mismatches", model.num_pair_vars()))
}

fn solver_vs_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst = 0.0f64;
    let mut failures = 0;
    for _ in 0..20 {
        let (k, g, n) = (rng.gen_range(1..=4), rng.gen_range(4..=16), rng.gen_range(1..=4));
        let rows = (0..k)
            .map(|_| (0..g).map(|_| Complex64::from_polar(rng.gen_range(0.1..1.0), rng.gen_range(0.0..6.3))).collect())
            .collect();
        let table = DiscreteChannelTable::from_rows(rows).expect("rectangular");
        let ues = (0..k).map(|i| Point3::new(i as f64 * 0.1, 0.0, 0.0)).collect();
        let scenario = Scenario::new(ues, 2.0, RadioParams::mmwave(20.0)).expect("valid");
        let conflicts = ConflictSet::default();
        let model = build_milp(&table, &conflicts, n.min(g), &scenario).expect("valid model");
        let sol = solve_milp(&model, Duration::from_secs(10));
        match brute_force_select(&table, &conflicts, n.min(g), &scenario) {
            Ok((_, mu)) if sol.status == SolveStatus::Optimal => {
                worst = worst.max((sol.mu - mu).abs() / mu);
            }
            _ => failures += 1,
        }
    }
    check(
        "exact solver matches enumeration",
        failures == 0 && worst <= 1e-9,
        format!("worst relative error {worst:.2e}, {failures} failures"),
    )
}

fn swarm_reproducible() -> Check {
    let ues = vec![Point3::new(3.0, 2.0, 0.0), Point3::new(-4.0, -5.0, 0.0)];
    let params = PsoParams {
        num_particles: 30,
        max_iters: 30,
        restarts: 1,
        rng_seed: 5,
        ..PsoParams::default()
    };
    let result = Scenario::new(ues, 20.0, RadioParams::mmwave(20.0)).and_then(|s| {
        let a = pso::optimize(&s, 2, &params)?;
        let b = pso::optimize(&s, 2, &params)?;
        Ok((a.clone(), a == b && a.config.is_feasible(&s)))
    });
    match result {
        Ok((sol, ok)) => {
            let monotone = sol
                .trace
                .windows(2)
                .all(|w| w[1].global_best_fitness_db >= w[0].global_best_fitness_db);
            check(
                "swarm determinism and monotone trace",
                ok && monotone,
                format!("{:.3} dB after {} iterations", sol.min_snr_db(), sol.iterations),
            )
        }
        Err(e) => check("swarm determinism and monotone trace", false, e.to_string()),
    }
}

/// Runs every check; each takes well under a second.
pub fn run_checks() -> Vec<Check> {
    vec![overhead_snr(), mccormick(), solver_vs_oracle(), swarm_reproducible()]
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_checks_pass() {
        for c in super::run_checks() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
