//! Geometry, line-of-sight propagation and SNR for the 2D pinching-antenna
//! broadcast downlink.
//!
//! Every PA sits on the waveguide plane `z = h` and every user on the floor
//! `z = 0`. The channel between user `k` and PA `n` is
//!
//! ```text
//! h_k^n = sqrt(eta) / |u_k - p_n| * exp(-j 2pi |u_k - p_n| / lambda_c)
//!                                 * exp(-j 2pi |feed - p_n| / lambda_g)
//! ```
//!
//! and the broadcast SNR with equal power split over `N` PAs is
//! `P |sum_n h_k^n|^2 / (N sigma^2)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units;

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn distance(&self, other: &Point3) -> f64 {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn translated(&self, dx: f64, dy: f64) -> Point3 {
        Point3::new(self.x + dx, self.y + dy, self.z)
    }
}

/// Carrier, waveguide and power parameters with the derived wavelengths.
///
/// Constructed only through [`derive_radio_params`] so the derived fields
/// always agree with the inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RadioInputs", into = "RadioInputs")]
pub struct RadioParams {
    carrier_freq_hz: f64,
    n_eff: f64,
    tx_power_w: f64,
    noise_power_w: f64,
    lambda_c: f64,
    lambda_g: f64,
    eta: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct RadioInputs {
    carrier_freq_hz: f64,
    n_eff: f64,
    tx_power_w: f64,
    noise_power_w: f64,
}

impl TryFrom<RadioInputs> for RadioParams {
    type Error = Error;

    fn try_from(r: RadioInputs) -> Result<Self> {
        derive_radio_params(r.carrier_freq_hz, r.n_eff, r.tx_power_w, r.noise_power_w)
    }
}

impl From<RadioParams> for RadioInputs {
    fn from(r: RadioParams) -> Self {
        RadioInputs {
            carrier_freq_hz: r.carrier_freq_hz,
            n_eff: r.n_eff,
            tx_power_w: r.tx_power_w,
            noise_power_w: r.noise_power_w,
        }
    }
}

/// Derives `lambda_c = c / f_c`, `lambda_g = lambda_c / n_eff` and
/// `eta = lambda_c^2 / (16 pi^2)`.
///
/// A transmit power of exactly zero is accepted (it yields zero SNR); every
/// other input must be strictly positive and `n_eff >= 1`.
pub fn derive_radio_params(
    carrier_freq_hz: f64,
    n_eff: f64,
    tx_power_w: f64,
    noise_power_w: f64,
) -> Result<RadioParams> {
    if !(carrier_freq_hz.is_finite() && carrier_freq_hz > 0.0) {
        return Err(Error::invalid(format!(
            "carrier frequency must be positive, got {carrier_freq_hz}"
        )));
    }
    if !(n_eff.is_finite() && n_eff >= 1.0) {
        return Err(Error::invalid(format!(
            "effective refractive index must be >= 1, got {n_eff}"
        )));
    }
    if !(tx_power_w.is_finite() && tx_power_w >= 0.0) {
        return Err(Error::invalid(format!(
            "transmit power must be non-negative, got {tx_power_w}"
        )));
    }
    if !(noise_power_w.is_finite() && noise_power_w > 0.0) {
        return Err(Error::invalid(format!(
            "noise power must be positive, got {noise_power_w}"
        )));
    }
    let lambda_c = SPEED_OF_LIGHT / carrier_freq_hz;
    Ok(RadioParams {
        carrier_freq_hz,
        n_eff,
        tx_power_w,
        noise_power_w,
        lambda_c,
        lambda_g: lambda_c / n_eff,
        eta: lambda_c * lambda_c / (16.0 * PI * PI),
    })
}

impl RadioParams {
    /// 28 GHz carrier, `n_eff = 1.4`, -80 dBm noise, with the given power.
    pub fn mmwave(tx_power_dbm: f64) -> Self {
        derive_radio_params(28e9, 1.4, units::dbm_to_watts(tx_power_dbm), units::dbm_to_watts(-80.0))
            .expect("reference radio parameters are valid")
    }

    pub fn carrier_freq_hz(&self) -> f64 {
        self.carrier_freq_hz
    }
    pub fn n_eff(&self) -> f64 {
        self.n_eff
    }
    pub fn tx_power_w(&self) -> f64 {
        self.tx_power_w
    }
    pub fn noise_power_w(&self) -> f64 {
        self.noise_power_w
    }
    pub fn lambda_c(&self) -> f64 {
        self.lambda_c
    }
    pub fn lambda_g(&self) -> f64 {
        self.lambda_g
    }
    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn with_tx_power(&self, tx_power_w: f64) -> Result<Self> {
        derive_radio_params(self.carrier_freq_hz, self.n_eff, tx_power_w, self.noise_power_w)
    }
}

/// One problem instance: user positions, the square waveguide region and the
/// radio parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    ues: Vec<Point3>,
    side_length: f64,
    height: f64,
    min_separation: f64,
    feed_point: Point3,
    radio: RadioParams,
}

impl Scenario {
    /// Builds a scenario with the reference geometry: antennas at `h = 3 m`,
    /// minimum spacing `lambda_c / 2` and the feed at `(-D/2, 0, h)`.
    pub fn new(ues: Vec<Point3>, side_length: f64, radio: RadioParams) -> Result<Self> {
        let height = 3.0;
        Self::with_geometry(
            ues,
            side_length,
            height,
            radio.lambda_c() / 2.0,
            Point3::new(-side_length / 2.0, 0.0, height),
            radio,
        )
    }

    pub fn with_geometry(
        ues: Vec<Point3>,
        side_length: f64,
        height: f64,
        min_separation: f64,
        feed_point: Point3,
        radio: RadioParams,
    ) -> Result<Self> {
        let s = Scenario {
            ues,
            side_length,
            height,
            min_separation,
            feed_point,
            radio,
        };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        if !(self.side_length.is_finite() && self.side_length > 0.0) {
            return Err(Error::invalid("side length must be positive"));
        }
        if !(self.height.is_finite() && self.height > 0.0) {
            return Err(Error::invalid("antenna height must be positive"));
        }
        if !(self.min_separation.is_finite() && self.min_separation > 0.0) {
            return Err(Error::invalid("minimum separation must be positive"));
        }
        if !self.feed_point.is_finite() {
            return Err(Error::invalid("feed point must be finite"));
        }
        let half = self.side_length / 2.0;
        for (k, ue) in self.ues.iter().enumerate() {
            if !ue.is_finite() || ue.z != 0.0 {
                return Err(Error::invalid(format!("user {k} must be finite with z = 0")));
            }
            if ue.x.abs() > half || ue.y.abs() > half {
                return Err(Error::invalid(format!(
                    "user {k} at ({}, {}) lies outside the square of side {}",
                    ue.x, ue.y, self.side_length
                )));
            }
        }
        Ok(())
    }

    pub fn ues(&self) -> &[Point3] {
        &self.ues
    }
    pub fn side_length(&self) -> f64 {
        self.side_length
    }
    pub fn half_side(&self) -> f64 {
        self.side_length / 2.0
    }
    pub fn height(&self) -> f64 {
        self.height
    }
    pub fn min_separation(&self) -> f64 {
        self.min_separation
    }
    pub fn feed_point(&self) -> Point3 {
        self.feed_point
    }
    pub fn radio(&self) -> &RadioParams {
        &self.radio
    }

    pub fn with_feed_point(mut self, feed_point: Point3) -> Result<Self> {
        self.feed_point = feed_point;
        self.validate()?;
        Ok(self)
    }

    pub fn with_min_separation(mut self, min_separation: f64) -> Result<Self> {
        self.min_separation = min_separation;
        self.validate()?;
        Ok(self)
    }

    pub fn with_radio(mut self, radio: RadioParams) -> Self {
        self.radio = radio;
        self
    }

    /// Translates users and the feed horizontally. The region is not moved,
    /// so this is meant for invariance checks on raw SNR evaluation only.
    pub fn translated_unchecked(&self, dx: f64, dy: f64) -> Scenario {
        Scenario {
            ues: self.ues.iter().map(|u| u.translated(dx, dy)).collect(),
            feed_point: self.feed_point.translated(dx, dy),
            ..self.clone()
        }
    }

    /// Point on the waveguide plane.
    pub fn pa_at(&self, x: f64, y: f64) -> Point3 {
        Point3::new(x, y, self.height)
    }

    pub fn contains(&self, p: &Point3) -> bool {
        let half = self.half_side();
        p.x.abs() <= half && p.y.abs() <= half
    }
}

/// Ordered antenna positions on the waveguide plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaConfiguration {
    pub positions: Vec<Point3>,
}

impl PaConfiguration {
    pub fn new(positions: Vec<Point3>) -> Self {
        Self { positions }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Number of unordered pairs closer than `min_separation`.
    pub fn violation_count(&self, min_separation: f64) -> usize {
        let p = &self.positions;
        let mut count = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i].distance(&p[j]) < min_separation {
                    count += 1;
                }
            }
        }
        count
    }

    /// Inside the region, on the plane `z = h`, and respecting the spacing.
    pub fn is_feasible(&self, scenario: &Scenario) -> bool {
        self.positions
            .iter()
            .all(|p| scenario.contains(p) && p.z == scenario.height())
            && self.violation_count(scenario.min_separation()) == 0
    }
}

/// Free-space amplitude gain `sqrt(eta) / |ue - pa|`.
pub fn path_gain(ue: &Point3, pa: &Point3, eta: f64) -> Result<f64> {
    let d = ue.distance(pa);
    if d == 0.0 {
        return Err(Error::Singularity {
            x: pa.x,
            y: pa.y,
            z: pa.z,
        });
    }
    Ok(eta.sqrt() / d)
}

/// Unit-modulus phase of the free-space hop times the in-waveguide hop from
/// the feed to the PA.
pub fn phase_factor(ue: &Point3, pa: &Point3, feed: &Point3, lambda_c: f64, lambda_g: f64) -> Complex64 {
    let theta = 2.0 * PI * (ue.distance(pa) / lambda_c + feed.distance(pa) / lambda_g);
    Complex64::from_polar(1.0, -theta)
}

pub fn channel_coefficient(ue: &Point3, pa: &Point3, feed: &Point3, radio: &RadioParams) -> Result<Complex64> {
    let g = path_gain(ue, pa, radio.eta())?;
    Ok(g * phase_factor(ue, pa, feed, radio.lambda_c(), radio.lambda_g()))
}

/// Coherent sum of all PA contributions at one user. Assumes no PA coincides
/// with the user, which holds whenever antennas sit at `z = h > 0`.
pub(crate) fn coherent_sum<I>(ue: &Point3, pas: I, scenario: &Scenario) -> Complex64
where
    I: IntoIterator<Item = Point3>,
{
    let radio = scenario.radio();
    let feed = scenario.feed_point();
    let (inv_lc, inv_lg) = (1.0 / radio.lambda_c(), 1.0 / radio.lambda_g());
    let mut acc = Complex64::new(0.0, 0.0);
    for pa in pas {
        let d = ue.distance(&pa);
        let theta = 2.0 * PI * (d * inv_lc + feed.distance(&pa) * inv_lg);
        let (s, c) = theta.sin_cos();
        acc += Complex64::new(c, -s) / d;
    }
    acc * radio.eta().sqrt()
}

/// Linear SNR for `n_active` antennas given the coherent channel sum.
pub(crate) fn snr_from_sum(sum: Complex64, n_active: usize, radio: &RadioParams) -> f64 {
    radio.tx_power_w() * sum.norm_sqr() / (n_active as f64 * radio.noise_power_w())
}

pub fn snr_per_user(config: &PaConfiguration, ue: &Point3, scenario: &Scenario) -> Result<f64> {
    if config.is_empty() {
        return Err(Error::invalid("configuration has no antennas"));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for pa in &config.positions {
        sum += channel_coefficient(ue, pa, &scenario.feed_point(), scenario.radio())?;
    }
    Ok(snr_from_sum(sum, config.len(), scenario.radio()))
}

/// Per-user SNRs in user order.
pub fn snr_all(config: &PaConfiguration, scenario: &Scenario) -> Result<Vec<f64>> {
    scenario
        .ues()
        .iter()
        .map(|ue| snr_per_user(config, ue, scenario))
        .collect()
}

pub fn min_snr(config: &PaConfiguration, scenario: &Scenario) -> Result<f64> {
    if scenario.ues().is_empty() {
        return Err(Error::invalid("scenario has no users"));
    }
    Ok(snr_all(config, scenario)?
        .into_iter()
        .fold(f64::INFINITY, f64::min))
}
