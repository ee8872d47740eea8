use num_complex::Complex64;

use super::grid::{ConflictSet, DiscreteChannelTable};
use crate::channel::Scenario;
use crate::error::{Error, Result};

/// Variable of the linearized program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarId {
    /// Selection flag of candidate `g`.
    B(usize),
    /// Product variable of the `p`-th non-conflicting pair.
    Z(usize),
    /// The common SNR level being maximized.
    Mu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// `sum(coef * var) sense rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint {
    pub terms: Vec<(VarId, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

impl LinearConstraint {
    fn new(terms: Vec<(VarId, f64)>, sense: Sense, rhs: f64) -> Self {
        Self { terms, sense, rhs }
    }

    pub fn lhs(&self, b: &[f64], z: &[f64], mu: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(v, c)| {
                c * match v {
                    VarId::B(g) => b[g],
                    VarId::Z(p) => z[p],
                    VarId::Mu => mu,
                }
            })
            .sum()
    }

    /// Satisfied up to an absolute slack `tol`.
    pub fn is_satisfied(&self, b: &[f64], z: &[f64], mu: f64, tol: f64) -> bool {
        let lhs = self.lhs(b, z, mu);
        match self.sense {
            Sense::Le => lhs <= self.rhs + tol,
            Sense::Ge => lhs >= self.rhs - tol,
            Sense::Eq => (lhs - self.rhs).abs() <= tol,
        }
    }
}

/// Max-min SNR selection as a mixed-integer linear program.
///
/// `Gamma_k(b, z) = sum_i |h_ki|^2 b_i + sum_{i<j} 2 Re(conj(h_ki) h_kj) z_ij`
/// with `z` present only for non-conflicting pairs. SNRs follow
/// `mu = snr_scale * Gamma`, `snr_scale = P / (N sigma^2)`.
#[derive(Debug, Clone)]
pub struct MilpModel {
    num_candidates: usize,
    num_pas: usize,
    linear: Vec<Vec<f64>>,
    pairs: Vec<(usize, usize)>,
    pair_coefs: Vec<Vec<f64>>,
    conflicts: ConflictSet,
    snr_scale: f64,
    channels: Option<Vec<Vec<Complex64>>>,
}

pub fn build_milp(
    table: &DiscreteChannelTable,
    conflicts: &ConflictSet,
    num_pas: usize,
    scenario: &Scenario,
) -> Result<MilpModel> {
    let g = table.num_candidates();
    if num_pas == 0 {
        return Err(Error::invalid("number of antennas must be >= 1"));
    }
    if num_pas > g {
        return Err(Error::InfeasibleSelection { n: num_pas, g });
    }
    if table.num_users() != scenario.ues().len() {
        return Err(Error::invalid("channel table does not match the scenario's users"));
    }
    let mut pairs = Vec::with_capacity(g * (g - 1) / 2 - conflicts.len().min(g * (g - 1) / 2));
    for i in 0..g {
        for j in i + 1..g {
            if !conflicts.contains(i, j) {
                pairs.push((i, j));
            }
        }
    }
    let linear = table
        .rows()
        .iter()
        .map(|r| r.iter().map(|h| h.norm_sqr()).collect())
        .collect();
    let pair_coefs = table
        .rows()
        .iter()
        .map(|r| pairs.iter().map(|&(i, j)| 2.0 * (r[i].conj() * r[j]).re).collect())
        .collect();
    let radio = scenario.radio();
    Ok(MilpModel {
        num_candidates: g,
        num_pas,
        linear,
        pairs,
        pair_coefs,
        conflicts: conflicts.clone(),
        snr_scale: radio.tx_power_w() / (num_pas as f64 * radio.noise_power_w()),
        channels: Some(table.rows().to_vec()),
    })
}

impl MilpModel {
    /// Model from raw coefficients. `pair_coefs[k][p]` belongs to `pairs[p]`;
    /// pairs must be sorted, `i < j`, and disjoint from `conflicts`.
    pub fn from_coefficients(
        num_pas: usize,
        linear: Vec<Vec<f64>>,
        pairs: Vec<(usize, usize)>,
        pair_coefs: Vec<Vec<f64>>,
        conflicts: ConflictSet,
        snr_scale: f64,
    ) -> Result<Self> {
        let g = linear.first().map_or(0, Vec::len);
        if linear.is_empty() || linear.iter().any(|r| r.len() != g) {
            return Err(Error::invalid("linear coefficients must form a non-empty K x G matrix"));
        }
        if pair_coefs.len() != linear.len() || pair_coefs.iter().any(|r| r.len() != pairs.len()) {
            return Err(Error::invalid("pair coefficients must be K x (number of pairs)"));
        }
        if !pairs.windows(2).all(|w| w[0] < w[1])
            || pairs.iter().any(|&(i, j)| i >= j || j >= g || conflicts.contains(i, j))
        {
            return Err(Error::invalid("pairs must be sorted, i < j < G, and not conflicting"));
        }
        if num_pas == 0 || num_pas > g {
            return Err(Error::InfeasibleSelection { n: num_pas, g });
        }
        if !(snr_scale > 0.0) {
            return Err(Error::invalid("snr scale must be positive"));
        }
        Ok(Self {
            num_candidates: g,
            num_pas,
            linear,
            pairs,
            pair_coefs,
            conflicts,
            snr_scale,
            channels: None,
        })
    }

    pub fn num_candidates(&self) -> usize {
        self.num_candidates
    }
    pub fn num_pas(&self) -> usize {
        self.num_pas
    }
    pub fn num_users(&self) -> usize {
        self.linear.len()
    }
    pub fn num_pair_vars(&self) -> usize {
        self.pairs.len()
    }
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
    pub fn linear(&self, k: usize) -> &[f64] {
        &self.linear[k]
    }
    pub fn pair_coefs(&self, k: usize) -> &[f64] {
        &self.pair_coefs[k]
    }
    pub fn conflicts(&self) -> &ConflictSet {
        &self.conflicts
    }
    pub fn snr_scale(&self) -> f64 {
        self.snr_scale
    }

    /// Channel rows the coefficients were built from, if known.
    pub fn channels(&self) -> Option<&[Vec<Complex64>]> {
        self.channels.as_deref()
    }

    pub fn pair_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.pairs.binary_search(&key).ok()
    }

    /// `Gamma_k` at an arbitrary (possibly fractional) point.
    pub fn gamma(&self, k: usize, b: &[f64], z: &[f64]) -> f64 {
        let lin: f64 = self.linear[k].iter().zip(b).map(|(c, x)| c * x).sum();
        let quad: f64 = self.pair_coefs[k].iter().zip(z).map(|(c, x)| c * x).sum();
        lin + quad
    }

    /// `min_k Gamma_k` of a selection with `z_ij = b_i b_j`. Indices must be
    /// sorted ascending.
    pub fn gamma_min_of(&self, indices: &[usize]) -> f64 {
        (0..self.num_users())
            .map(|k| {
                let mut v = 0.0;
                for (a, &i) in indices.iter().enumerate() {
                    v += self.linear[k][i];
                    for &j in &indices[a + 1..] {
                        if let Some(p) = self.pair_index(i, j) {
                            v += self.pair_coefs[k][p];
                        }
                    }
                }
                v
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Cardinality, conflict, McCormick and SNR constraints, in that order.
    pub fn constraints(&self) -> impl Iterator<Item = LinearConstraint> + '_ {
        let g = self.num_candidates;
        let card = std::iter::once(LinearConstraint::new(
            (0..g).map(|i| (VarId::B(i), 1.0)).collect(),
            Sense::Eq,
            self.num_pas as f64,
        ));
        let conflicts = self
            .conflicts
            .pairs()
            .iter()
            .map(|&(i, j)| LinearConstraint::new(vec![(VarId::B(i), 1.0), (VarId::B(j), 1.0)], Sense::Le, 1.0));
        let mccormick = (0..self.pairs.len()).flat_map(move |p| self.mccormick(p));
        let snr = (0..self.num_users()).map(move |k| {
            let mut terms: Vec<(VarId, f64)> =
                self.linear[k].iter().enumerate().map(|(i, &c)| (VarId::B(i), c)).collect();
            terms.extend(self.pair_coefs[k].iter().enumerate().map(|(p, &c)| (VarId::Z(p), c)));
            terms.push((VarId::Mu, -1.0 / self.snr_scale));
            LinearConstraint::new(terms, Sense::Ge, 0.0)
        });
        card.chain(conflicts).chain(mccormick).chain(snr)
    }

    /// `z <= b_i`, `z <= b_j`, `z >= b_i + b_j - 1` for pair `p`.
    pub fn mccormick(&self, p: usize) -> [LinearConstraint; 3] {
        let (i, j) = self.pairs[p];
        let (bi, bj, z) = (VarId::B(i), VarId::B(j), VarId::Z(p));
        [
            LinearConstraint::new(vec![(z, 1.0), (bi, -1.0)], Sense::Le, 0.0),
            LinearConstraint::new(vec![(z, 1.0), (bj, -1.0)], Sense::Le, 0.0),
            LinearConstraint::new(vec![(z, 1.0), (bi, -1.0), (bj, -1.0)], Sense::Ge, -1.0),
        ]
    }

    /// `z` implied by a binary `b`.
    pub fn linked_products(&self, b: &[f64]) -> Vec<f64> {
        self.pairs.iter().map(|&(i, j)| b[i] * b[j]).collect()
    }
}
