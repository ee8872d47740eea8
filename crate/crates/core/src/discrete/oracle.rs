use num_complex::Complex64;

use super::grid::{ConflictSet, DiscreteChannelTable, SelectionVector};
use crate::channel::Scenario;
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_BUDGET: u128 = 10_000_000;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `min_k |sum_{g in indices} h_kg|^2`, summed in the given order.
pub(crate) fn canonical_gamma_min(rows: &[Vec<Complex64>], indices: &[usize]) -> f64 {
    rows.iter()
        .map(|r| indices.iter().map(|&g| r[g]).sum::<Complex64>().norm_sqr())
        .fold(f64::INFINITY, f64::min)
}

/// Relative window inside which two objective values count as a tie.
pub(crate) const TIE_TOLERANCE: f64 = 1e-9;

/// Best-so-far selection under the shared tie rule: higher canonical value
/// wins, equal values go to the lexicographically smaller index list.
#[derive(Debug, Clone)]
pub(crate) struct Incumbent {
    pub value: f64,
    pub indices: Vec<usize>,
}

impl Incumbent {
    /// Offers a sorted selection whose fast value is `approx`; `exact`
    /// computes its canonical value on demand.
    pub fn offer(&mut self, approx: f64, indices: &[usize], exact: impl FnOnce(&[usize]) -> f64) -> bool {
        if self.indices.is_empty() {
            self.value = exact(indices);
            self.indices = indices.to_vec();
            return true;
        }
        let margin = TIE_TOLERANCE * self.value.abs();
        if approx < self.value - margin {
            return false;
        }
        let value = exact(indices);
        let better = value > self.value || (value == self.value && indices < self.indices.as_slice());
        if better {
            self.value = value;
            self.indices = indices.to_vec();
        }
        better
    }
}

pub fn brute_force_select(
    table: &DiscreteChannelTable,
    conflicts: &ConflictSet,
    num_pas: usize,
    scenario: &Scenario,
) -> Result<(SelectionVector, f64)> {
    brute_force_select_with_budget(table, conflicts, num_pas, scenario, DEFAULT_ENUMERATION_BUDGET)
}

/// Exhaustive search over every `N`-subset in lexicographic order.
///
/// Returns the selection and its min SNR `P min_k |h_k^T b|^2 / (N sigma^2)`.
pub fn brute_force_select_with_budget(
    table: &DiscreteChannelTable,
    conflicts: &ConflictSet,
    num_pas: usize,
    scenario: &Scenario,
    budget: u128,
) -> Result<(SelectionVector, f64)> {
    let g = table.num_candidates();
    if num_pas == 0 || num_pas > g {
        return Err(Error::InfeasibleSelection { n: num_pas, g });
    }
    let count = binomial(g, num_pas);
    if count > budget {
        return Err(Error::EnumerationBudget {
            g,
            n: num_pas,
            count,
            budget,
        });
    }
    let rows = table.rows();
    let k = rows.len();
    let adjacency = conflicts.adjacency(g);
    let n = num_pas;
    // partial[d][k]: sum of the first d chosen channels of user k
    let mut partial = vec![vec![Complex64::new(0.0, 0.0); k]; n + 1];
    let mut idx: Vec<usize> = Vec::with_capacity(n);
    let mut best = Incumbent {
        value: f64::NEG_INFINITY,
        indices: Vec::new(),
    };
    let clashes = |idx: &[usize], c: usize| idx.iter().any(|&i| adjacency[c].contains(&i));

    let mut next = 0usize;
    loop {
        let depth = idx.len();
        if depth == n {
            let v = partial[n].iter().map(|s| s.norm_sqr()).fold(f64::INFINITY, f64::min);
            best.offer(v, &idx, |s| canonical_gamma_min(rows, s));
            next = idx.pop().map_or(g, |i| i + 1);
            continue;
        }
        if next + (n - depth) > g {
            match idx.pop() {
                Some(i) => {
                    next = i + 1;
                    continue;
                }
                None => break,
            }
        }
        let c = next;
        if clashes(&idx, c) {
            next += 1;
            continue;
        }
        for kk in 0..k {
            partial[depth + 1][kk] = partial[depth][kk] + rows[kk][c];
        }
        idx.push(c);
        next = c + 1;
    }

    if best.indices.is_empty() {
        return Err(Error::InfeasibleSelection { n, g });
    }
    let radio = scenario.radio();
    let mu = radio.tx_power_w() * best.value / (n as f64 * radio.noise_power_w());
    Ok((SelectionVector::from_indices(g, &best.indices), mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{Point3, RadioParams};
    use crate::discrete::milp::build_milp;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn scenario(k: usize) -> Scenario {
        let ues = (0..k).map(|i| Point3::new(i as f64, 0.5, 0.0)).collect();
        Scenario::new(ues, 20.0, RadioParams::mmwave(20.0)).unwrap()
    }

    fn random_table(k: usize, g: usize, seed: u64) -> DiscreteChannelTable {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        DiscreteChannelTable::from_rows(
            (0..k)
                .map(|_| {
                    (0..g)
                        .map(|_| Complex64::from_polar(rng.gen_range(0.1..1.0), rng.gen_range(0.0..6.3)))
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 2), 36);
        assert_eq!(binomial(441, 4), 1_554_599_970);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(10, 0), 1);
    }

    #[test]
    fn full_selection_when_n_equals_g() {
        let t = random_table(2, 4, 1);
        let (sel, mu) = brute_force_select(&t, &ConflictSet::default(), 4, &scenario(2)).unwrap();
        assert_eq!(sel.indices(), vec![0, 1, 2, 3]);
        let r = RadioParams::mmwave(20.0);
        let want = r.tx_power_w() * canonical_gamma_min(t.rows(), &[0, 1, 2, 3]) / (4.0 * r.noise_power_w());
        assert_eq!(mu, want);
    }

    #[test]
    fn single_user_optimum_agrees_with_linearized_gamma() {
        let t = random_table(1, 10, 2);
        let s = scenario(1);
        let c = ConflictSet::from_pairs(vec![(0, 1), (3, 7)]);
        let (sel, mu) = brute_force_select(&t, &c, 3, &s).unwrap();
        let m = build_milp(&t, &c, 3, &s).unwrap();
        let mut best = f64::NEG_INFINITY;
        for a in 0..10 {
            for b in a + 1..10 {
                for d in b + 1..10 {
                    let idx = [a, b, d];
                    if SelectionVector::from_indices(10, &idx).is_valid(3, &c) {
                        best = best.max(m.gamma_min_of(&idx));
                    }
                }
            }
        }
        assert!((mu / m.snr_scale() - best).abs() <= 1e-9 * best);
        assert!(sel.is_valid(3, &c));
    }

    #[test]
    fn dominated_candidate_removal_keeps_optimum() {
        let t = random_table(2, 8, 3);
        let s = scenario(2);
        let (sel, mu) = brute_force_select(&t, &ConflictSet::default(), 2, &s).unwrap();
        let chosen = sel.indices();
        let dropped = (0..8).find(|g| !chosen.contains(g)).unwrap();
        let keep: Vec<usize> = (0..8).filter(|&g| g != dropped).collect();
        let (_, mu2) = brute_force_select(&t.restricted(&keep), &ConflictSet::default(), 2, &s).unwrap();
        assert_eq!(mu, mu2);
    }

    #[test]
    fn budget_refusal_names_the_count() {
        let t = random_table(1, 30, 4);
        let err = brute_force_select_with_budget(&t, &ConflictSet::default(), 5, &scenario(1), 1000).unwrap_err();
        assert!(err.to_string().contains("142506"));
    }

    #[test]
    fn all_conflicting_is_infeasible() {
        let t = random_table(1, 3, 5);
        let c = ConflictSet::from_pairs(vec![(0, 1), (0, 2), (1, 2)]);
        assert!(matches!(
            brute_force_select(&t, &c, 2, &scenario(1)),
            Err(Error::InfeasibleSelection { .. })
        ));
    }
}
