use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::PsoParams;
use crate::error::Result;
use crate::seed;

/// Fitness of one candidate. Higher is better.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub fitness: f64,
    /// Whether the candidate satisfies every hard constraint that the
    /// fitness only penalizes.
    pub feasible: bool,
}

/// A maximization problem over a box-bounded real vector.
pub trait SwarmProblem: Sync {
    fn dim(&self) -> usize;

    /// Per-coordinate `[lo, hi]` box every position is clamped into after a
    /// move.
    fn bounds(&self) -> &[(f64, f64)];

    fn sample_position(&self, rng: &mut ChaCha8Rng) -> Result<Vec<f64>>;

    fn evaluate(&self, x: &[f64]) -> Evaluation;

    /// Positions that replace the first random particles.
    fn warm_starts(&self) -> Vec<Vec<f64>> {
        Vec::new()
    }

    fn velocity_limit(&self, params: &PsoParams) -> f64 {
        params.v_max.unwrap_or_else(|| {
            0.1 * self
                .bounds()
                .iter()
                .map(|(lo, hi)| hi - lo)
                .fold(0.0, f64::max)
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
}

/// Linearly decreasing inertia weight.
pub fn inertia(t: usize, max_iters: usize, inertia_max: f64, inertia_min: f64) -> f64 {
    inertia_max - (inertia_max - inertia_min) * t as f64 / max_iters as f64
}

/// One velocity/position move with the random pulls already drawn:
/// `v <- w v + c1 (pbest - x) + c2 (gbest - x)`, clamp `v` to `+-v_max`,
/// `x <- x + v`, clamp `x` into `bounds`.
pub fn apply_update(
    p: &mut Particle,
    global_best: &[f64],
    inertia: f64,
    cognitive_pull: f64,
    social_pull: f64,
    v_max: f64,
    bounds: &[(f64, f64)],
) {
    for i in 0..p.position.len() {
        let x = p.position[i];
        let v = inertia * p.velocity[i]
            + cognitive_pull * (p.best_position[i] - x)
            + social_pull * (global_best[i] - x);
        let v = v.clamp(-v_max, v_max);
        let (lo, hi) = bounds[i];
        p.velocity[i] = v;
        p.position[i] = (x + v).clamp(lo, hi);
    }
}

/// Draws one scalar `omega1, omega2 ~ U[0, 1)` pair for the particle and
/// applies [`apply_update`].
pub fn update_particle<R: Rng + ?Sized>(
    p: &mut Particle,
    global_best: &[f64],
    inertia: f64,
    params: &PsoParams,
    v_max: f64,
    bounds: &[(f64, f64)],
    rng: &mut R,
) {
    let w1: f64 = rng.gen();
    let w2: f64 = rng.gen();
    apply_update(
        p,
        global_best,
        inertia,
        params.accel_cognitive * w1,
        params.accel_social * w2,
        v_max,
        bounds,
    );
}

#[derive(Debug, Clone)]
pub struct SwarmState {
    pub particles: Vec<Particle>,
    pub global_best_position: Vec<f64>,
    pub global_best_fitness: f64,
    pub global_best_feasible: bool,
    pub iteration: usize,
    best_feasible: Option<(Vec<f64>, f64)>,
    rngs: Vec<ChaCha8Rng>,
    v_max: f64,
}

impl SwarmState {
    pub fn initialize<P: SwarmProblem>(problem: &P, params: &PsoParams, seed: u64) -> Result<Self> {
        params.validate()?;
        let v_max = problem.velocity_limit(params);
        let warm = problem.warm_starts();
        let mut rngs = Vec::with_capacity(params.num_particles);
        let mut particles = Vec::with_capacity(params.num_particles);
        let mut evals = Vec::with_capacity(params.num_particles);
        for m in 0..params.num_particles {
            let mut rng = seed::stream(seed, &[m as u64]);
            let position = match warm.get(m) {
                Some(w) => w.clone(),
                None => problem.sample_position(&mut rng)?,
            };
            let velocity = (0..position.len())
                .map(|_| rng.gen_range(-v_max..=v_max))
                .collect();
            let eval = problem.evaluate(&position);
            particles.push(Particle {
                best_position: position.clone(),
                best_fitness: eval.fitness,
                position,
                velocity,
            });
            evals.push(eval);
            rngs.push(rng);
        }
        let mut state = SwarmState {
            global_best_position: particles[0].position.clone(),
            global_best_fitness: f64::NEG_INFINITY,
            global_best_feasible: false,
            particles,
            iteration: 0,
            best_feasible: None,
            rngs,
            v_max,
        };
        state.absorb(&evals);
        if state.global_best_fitness == f64::NEG_INFINITY {
            // every particle scored -inf; keep particle 0 as the reference
            state.global_best_feasible = evals[0].feasible;
        }
        Ok(state)
    }

    pub fn v_max(&self) -> f64 {
        self.v_max
    }

    /// Best feasible position seen at any point of the run.
    pub fn best_feasible(&self) -> Option<(&[f64], f64)> {
        self.best_feasible
            .as_ref()
            .map(|(x, f)| (x.as_slice(), *f))
    }

    /// Moves every particle once, then updates personal and global bests.
    pub fn step<P: SwarmProblem>(&mut self, problem: &P, params: &PsoParams) {
        self.iteration += 1;
        let w = inertia(
            self.iteration.min(params.max_iters),
            params.max_iters,
            params.inertia_max,
            params.inertia_min,
        );
        let gbest = &self.global_best_position;
        let v_max = self.v_max;
        let bounds = problem.bounds();
        let move_and_eval = |(p, rng): (&mut Particle, &mut ChaCha8Rng)| {
            update_particle(p, gbest, w, params, v_max, bounds, rng);
            problem.evaluate(&p.position)
        };
        let evals: Vec<Evaluation> = if params.parallel {
            self.particles
                .par_iter_mut()
                .zip(self.rngs.par_iter_mut())
                .map(move_and_eval)
                .collect()
        } else {
            self.particles
                .iter_mut()
                .zip(self.rngs.iter_mut())
                .map(move_and_eval)
                .collect()
        };
        for (p, e) in self.particles.iter_mut().zip(&evals) {
            if e.fitness > p.best_fitness {
                p.best_fitness = e.fitness;
                p.best_position.clone_from(&p.position);
            }
        }
        self.absorb(&evals);
    }

    // Reduction over the latest evaluations; ties keep the earlier holder.
    fn absorb(&mut self, evals: &[Evaluation]) {
        for (p, e) in self.particles.iter().zip(evals) {
            if e.fitness > self.global_best_fitness {
                self.global_best_fitness = e.fitness;
                self.global_best_position.clone_from(&p.position);
                self.global_best_feasible = e.feasible;
            }
            if e.feasible && self.best_feasible.as_ref().is_none_or(|(_, f)| e.fitness > *f) {
                self.best_feasible = Some((p.position.clone(), e.fitness));
            }
        }
    }
}

/// One independent swarm run.
#[derive(Debug, Clone)]
pub struct SwarmRun {
    pub state: SwarmState,
    /// Global best fitness after initialization and after every iteration.
    pub trace: Vec<f64>,
    pub stopped_early: bool,
}

pub fn run_swarm<P: SwarmProblem>(problem: &P, params: &PsoParams, seed: u64) -> Result<SwarmRun> {
    let mut state = SwarmState::initialize(problem, params, seed)?;
    let mut trace = vec![state.global_best_fitness];
    let mut stopped_early = false;
    while state.iteration < params.max_iters {
        state.step(problem, params);
        trace.push(state.global_best_fitness);
        let t = trace.len() - 1;
        if t >= params.stall_window && trace[t] - trace[t - params.stall_window] < params.stall_tolerance {
            stopped_early = state.iteration < params.max_iters;
            break;
        }
    }
    Ok(SwarmRun {
        state,
        trace,
        stopped_early,
    })
}

/// Best of `params.restarts` independent runs.
#[derive(Debug, Clone)]
pub struct EngineOutcome {
    /// Best feasible position over all restarts, if any.
    pub feasible: Option<(Vec<f64>, f64)>,
    /// Best penalized position over all restarts.
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    /// Trace of the restart that produced the returned solution.
    pub trace: Vec<f64>,
    pub restart: usize,
    pub iterations: usize,
}

pub fn optimize_problem<P: SwarmProblem>(problem: &P, params: &PsoParams) -> Result<EngineOutcome> {
    params.validate()?;
    let mut out: Option<EngineOutcome> = None;
    for r in 0..params.restarts {
        let run = run_swarm(problem, params, seed::derive(params.rng_seed, &[r as u64]))?;
        let feasible = run.state.best_feasible().map(|(x, f)| (x.to_vec(), f));
        let candidate = EngineOutcome {
            feasible,
            best_position: run.state.global_best_position.clone(),
            best_fitness: run.state.global_best_fitness,
            trace: run.trace,
            restart: r,
            iterations: run.state.iteration,
        };
        out = Some(match out {
            None => candidate,
            Some(prev) => {
                if ranks_above(&candidate, &prev) {
                    candidate
                } else {
                    prev
                }
            }
        });
    }
    Ok(out.expect("at least one restart"))
}

fn ranks_above(a: &EngineOutcome, b: &EngineOutcome) -> bool {
    match (&a.feasible, &b.feasible) {
        (Some((_, fa)), Some((_, fb))) => fa > fb,
        (Some(_), None) => true,
        (None, Some(_)) => false,
        (None, None) => a.best_fitness > b.best_fitness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    struct Sphere {
        bounds: Vec<(f64, f64)>,
    }

    impl SwarmProblem for Sphere {
        fn dim(&self) -> usize {
            self.bounds.len()
        }
        fn bounds(&self) -> &[(f64, f64)] {
            &self.bounds
        }
        fn sample_position(&self, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
            Ok(self.bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect())
        }
        fn evaluate(&self, x: &[f64]) -> Evaluation {
            Evaluation {
                fitness: -x.iter().map(|v| (v - 1.0) * (v - 1.0)).sum::<f64>(),
                feasible: true,
            }
        }
    }

    fn particle(x: f64, v: f64, pbest: f64) -> Particle {
        Particle {
            position: vec![x],
            velocity: vec![v],
            best_position: vec![pbest],
            best_fitness: 0.0,
        }
    }

    #[test]
    fn inertia_schedule() {
        assert_eq!(inertia(0, 200, 0.9, 0.4), 0.9);
        assert!((inertia(200, 200, 0.9, 0.4) - 0.4).abs() < 1e-15);
        assert!((inertia(100, 200, 0.9, 0.4) - 0.65).abs() < 1e-15);
    }

    #[test]
    fn stationary_particle_stays() {
        let mut p = particle(0.3, 0.0, 0.3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        update_particle(&mut p, &[0.3], 0.9, &PsoParams::default(), 1.0, &[(-1.0, 1.0)], &mut rng);
        assert_eq!(p.position, vec![0.3]);
        assert_eq!(p.velocity, vec![0.0]);
    }

    #[test]
    fn pure_inertia_step() {
        let mut p = particle(0.0, 0.5, 3.0);
        apply_update(&mut p, &[-2.0], 0.8, 0.0, 0.0, 10.0, &[(-10.0, 10.0)]);
        assert!((p.position[0] - 0.4).abs() < 1e-15);
        assert!((p.velocity[0] - 0.4).abs() < 1e-15);
    }

    #[test]
    fn clamps_velocity_and_position() {
        let mut p = particle(0.9, 0.0, 5.0);
        apply_update(&mut p, &[5.0], 0.5, 1.0, 1.0, 0.5, &[(-1.0, 1.0)]);
        assert_eq!(p.velocity[0], 0.5);
        assert_eq!(p.position[0], 1.0);
        let mut q = particle(-0.9, 0.0, -5.0);
        apply_update(&mut q, &[-5.0], 0.5, 1.0, 1.0, 0.5, &[(-1.0, 1.0)]);
        assert_eq!(q.position[0], -1.0);
    }

    #[test]
    fn converges_on_sphere_with_monotone_trace() {
        let problem = Sphere {
            bounds: vec![(-5.0, 5.0); 3],
        };
        let params = PsoParams {
            num_particles: 30,
            max_iters: 150,
            ..PsoParams::default()
        };
        let run = run_swarm(&problem, &params, 11).unwrap();
        assert!(run.trace.windows(2).all(|w| w[1] >= w[0]));
        assert!(run.state.global_best_fitness > -1e-4);
    }

    #[test]
    fn parallel_matches_sequential() {
        let problem = Sphere {
            bounds: vec![(-5.0, 5.0); 4],
        };
        let seq = PsoParams {
            num_particles: 16,
            max_iters: 40,
            ..PsoParams::default()
        };
        let par = PsoParams {
            parallel: true,
            ..seq.clone()
        };
        let a = run_swarm(&problem, &seq, 5).unwrap();
        let b = run_swarm(&problem, &par, 5).unwrap();
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.state.global_best_position, b.state.global_best_position);
    }
}
