//! Reference schemes: a single waveguide on `y = 0`, a fixed uniform linear
//! array with digital max-min beamforming, and antennas parked above users.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::channel::{self, path_gain, PaConfiguration, Point3, Scenario};
use crate::error::{Error, Result};
use crate::pso::engine::{optimize_problem, Evaluation, SwarmProblem};
use crate::pso::placement::{assign_round_robin, solve_placement, Layout, PlacementSolution};
use crate::pso::PsoParams;
use crate::units;

/// Every scheme the experiment runner knows, under its stable id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Scheme {
    /// Continuous plane placement.
    Pass2dCont,
    /// Grid placement solved exactly.
    Pass2dDisc,
    ConPass,
    Fpa,
    AboveUes,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [
        Scheme::Pass2dCont,
        Scheme::Pass2dDisc,
        Scheme::ConPass,
        Scheme::Fpa,
        Scheme::AboveUes,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Scheme::Pass2dCont => "pass2d-cont",
            Scheme::Pass2dDisc => "pass2d-disc",
            Scheme::ConPass => "con-pass",
            Scheme::Fpa => "fpa",
            Scheme::AboveUes => "above-ues",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| Error::UnknownScheme(s.to_string()))
    }
}

impl TryFrom<String> for Scheme {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Scheme> for String {
    fn from(s: Scheme) -> String {
        s.id().to_string()
    }
}

/// Line placement: the same swarm search restricted to `y = 0`.
pub fn optimize_con_pass(scenario: &Scenario, num_pas: usize, params: &PsoParams) -> Result<PlacementSolution> {
    solve_placement(scenario, num_pas, Layout::Line, params)
}

/// Element positions `x_n = (n - (N+1)/2) D0`, `y = 0`, `z = h`.
pub fn ula_positions(scenario: &Scenario, num_antennas: usize) -> Vec<Point3> {
    let d0 = scenario.min_separation();
    let mid = (num_antennas as f64 + 1.0) / 2.0;
    (1..=num_antennas)
        .map(|n| Point3::new((n as f64 - mid) * d0, 0.0, scenario.height()))
        .collect()
}

/// Free-space channels `h_kn = sqrt(eta)/d exp(-j 2 pi d / lambda_c)`.
pub fn free_space_channels(scenario: &Scenario, antennas: &[Point3]) -> Result<Vec<Vec<Complex64>>> {
    let radio = scenario.radio();
    scenario
        .ues()
        .iter()
        .map(|ue| {
            antennas
                .iter()
                .map(|a| {
                    let amp = path_gain(ue, a, radio.eta())?;
                    Ok(Complex64::from_polar(amp, -2.0 * PI * ue.distance(a) / radio.lambda_c()))
                })
                .collect()
        })
        .collect()
}

/// `min_k |h_k^H w|^2 / sigma^2`.
pub fn beamforming_min_snr(channels: &[Vec<Complex64>], weights: &[Complex64], noise_power_w: f64) -> f64 {
    channels
        .iter()
        .map(|h| h.iter().zip(weights).map(|(a, b)| a.conj() * b).sum::<Complex64>().norm_sqr() / noise_power_w)
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FpaSolution {
    pub positions: Vec<Point3>,
    /// Beamforming weights with `||w||^2 = P`.
    pub weights: Vec<Complex64>,
    pub min_snr: f64,
}

impl FpaSolution {
    pub fn min_snr_db(&self) -> f64 {
        units::to_db(self.min_snr)
    }
}

/// Max-min beamformer search over the real and imaginary parts of `w`.
struct BeamformerProblem {
    channels: Vec<Vec<Complex64>>,
    power_w: f64,
    noise_power_w: f64,
    bounds: Vec<(f64, f64)>,
}

impl BeamformerProblem {
    fn weights(&self, x: &[f64]) -> Option<Vec<Complex64>> {
        let w: Vec<Complex64> = x.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect();
        let norm = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        (norm > 0.0).then(|| {
            let scale = self.power_w.sqrt() / norm;
            w.into_iter().map(|c| c * scale).collect()
        })
    }

    /// Unit-peak encoding of a complex vector.
    fn encode(w: &[Complex64]) -> Vec<f64> {
        let peak = w
            .iter()
            .flat_map(|c| [c.re.abs(), c.im.abs()])
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        w.iter().flat_map(|c| [c.re / peak, c.im / peak]).collect()
    }
}

impl SwarmProblem for BeamformerProblem {
    fn dim(&self) -> usize {
        self.bounds.len()
    }

    fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    fn sample_position(&self, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
        Ok((0..self.dim()).map(|_| rng.gen_range(-1.0..=1.0)).collect())
    }

    fn evaluate(&self, x: &[f64]) -> Evaluation {
        let fitness = match self.weights(x) {
            Some(w) => units::to_db(beamforming_min_snr(&self.channels, &w, self.noise_power_w)),
            None => f64::NEG_INFINITY,
        };
        Evaluation { fitness, feasible: true }
    }

    /// Matched filters of every user and of their unit-norm sum.
    fn warm_starts(&self) -> Vec<Vec<f64>> {
        let n = self.dim() / 2;
        let mut starts: Vec<Vec<f64>> = self.channels.iter().map(|h| Self::encode(h)).collect();
        let mut sum = vec![Complex64::new(0.0, 0.0); n];
        for h in &self.channels {
            let norm = h.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            for (s, c) in sum.iter_mut().zip(h) {
                *s += c / norm;
            }
        }
        if sum.iter().any(|c| c.norm() > 0.0) {
            starts.push(Self::encode(&sum));
        }
        starts
    }
}

/// Fixed centered ULA with digitally optimized max-min weights.
pub fn optimize_fpa(scenario: &Scenario, num_antennas: usize, params: &PsoParams) -> Result<FpaSolution> {
    if num_antennas == 0 {
        return Err(Error::invalid("number of antennas must be >= 1"));
    }
    if scenario.ues().is_empty() {
        return Err(Error::invalid("scenario has no users"));
    }
    let positions = ula_positions(scenario, num_antennas);
    let channels = free_space_channels(scenario, &positions)?;
    fpa_with_channels(positions, channels, scenario, params)
}

fn fpa_with_channels(
    positions: Vec<Point3>,
    channels: Vec<Vec<Complex64>>,
    scenario: &Scenario,
    params: &PsoParams,
) -> Result<FpaSolution> {
    let radio = scenario.radio();
    let problem = BeamformerProblem {
        bounds: vec![(-1.0, 1.0); 2 * positions.len()],
        channels,
        power_w: radio.tx_power_w(),
        noise_power_w: radio.noise_power_w(),
    };
    let outcome = optimize_problem(&problem, params)?;
    let x = outcome.feasible.map_or(outcome.best_position, |(x, _)| x);
    let weights = problem
        .weights(&x)
        .ok_or_else(|| Error::Initialization("beamformer search ended at the zero vector".into()))?;
    let min_snr = beamforming_min_snr(&problem.channels, &weights, problem.noise_power_w);
    Ok(FpaSolution {
        positions,
        weights,
        min_snr,
    })
}

/// One antenna above each user (round robin when `N > K`), pushed apart
/// radially until every pair is at least `D0` apart. No optimization.
pub fn pa_above_ues(scenario: &Scenario, num_pas: usize) -> Result<(PaConfiguration, f64)> {
    let ues = scenario.ues();
    if num_pas == 0 || ues.is_empty() {
        return Err(Error::invalid("need at least one antenna and one user"));
    }
    let d0 = scenario.min_separation();
    let half = scenario.half_side();
    let h = scenario.height();
    let mut placed: Vec<Point3> = Vec::with_capacity(num_pas);
    for (n, u) in assign_round_robin(num_pas, ues.len()).into_iter().enumerate() {
        let layer = n / ues.len();
        let mut p = Point3::new(ues[u].x + layer as f64 * d0, ues[u].y, h);
        for _ in 0..1000 {
            let Some(q) = placed.iter().find(|q| q.distance(&p) < d0) else {
                break;
            };
            let (dx, dy) = (p.x - q.x, p.y - q.y);
            let dist = dx.hypot(dy);
            let (ux, uy) = if dist > 0.0 { (dx / dist, dy / dist) } else { (1.0, 0.0) };
            let step = d0 * (1.0 + 1e-9);
            p = Point3::new(
                (q.x + ux * step).clamp(-half, half),
                (q.y + uy * step).clamp(-half, half),
                h,
            );
        }
        placed.push(p);
    }
    let config = PaConfiguration::new(placed);
    let mu = channel::min_snr(&config, scenario)?;
    Ok((config, mu))
}
