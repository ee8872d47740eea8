//! Exact branch-and-bound for the linearized max-min selection program.
//!
//! Candidates are sorted by descending `sum_k |h_kg|^2` and subsets are
//! enumerated depth-first in that order, which is binary branching on `b_g`
//! with the "in" branch first. A node with fixed set `F` and `r` slots left
//! keeps, for every user and every remaining candidate `j`,
//! `lin_k(j) = |h_kj|^2 + sum_{i in F} q_k(i, j)` where `q` are the pair
//! coefficients, so that `Gamma_k(F + {j}) = Gamma_k(F) + lin_k(j)`.
//!
//! The bound replaces each pair term among the `r` new picks by a per
//! candidate surcharge `rho_kj` that dominates its share: with channel
//! vectors available `rho_kj = |h_kj|` times the sum of the `r - 1` largest
//! remaining amplitudes, otherwise `(r - 1) max(q, 0) / 2`. The best `r`
//! values of `lin + rho` give an upper bound on `Gamma_k` for every user and
//! for uniform mixtures of users, which forces a common choice of picks.
//! Candidates whose best completion cannot reach the incumbent are removed
//! from the whole subtree.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::SelectionVector;
use super::milp::MilpModel;
use super::oracle::{canonical_gamma_min, Incumbent, TIE_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    Timeout,
    Infeasible,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Timeout => "timeout",
            SolveStatus::Infeasible => "infeasible",
        }
    }
}

#[derive(Debug, Clone)]
pub struct MilpSolution {
    /// Best selection found; `None` when none exists or none was found in time.
    pub selection: Option<SelectionVector>,
    /// Min SNR of the selection, `snr_scale * gamma_min` (0 without a selection).
    pub mu: f64,
    /// `min_k Gamma_k` of the selection.
    pub gamma_min: f64,
    pub status: SolveStatus,
    /// Proven upper bound on the optimal `mu`.
    pub upper_bound: f64,
    /// Bound of the root relaxation, in `mu` units.
    pub root_bound: f64,
    /// `(upper_bound - mu) / upper_bound`; zero when optimal.
    pub gap: f64,
    pub nodes: u64,
    pub elapsed: Duration,
}

enum Coefs {
    /// Channel rows in search order and their amplitudes.
    Gram { h: Vec<Vec<Complex64>>, amp: Vec<Vec<f64>> },
    /// Dense `G x G` pair coefficients per user in search order.
    Dense { q: Vec<Vec<f64>>, half_max_pos: Vec<f64> },
}

struct Search<'a> {
    model: &'a MilpModel,
    n: usize,
    k: usize,
    g: usize,
    order: Vec<usize>,
    diag: Vec<Vec<f64>>,
    coefs: Coefs,
    conflicts: Option<Vec<Vec<u64>>>,
    incumbent: Incumbent,
    chosen: Vec<usize>,
    nodes: u64,
    deadline: Instant,
    timed_out: bool,
    // scratch: top values per user
    tops: Vec<Vec<f64>>,
}

/// Largest `r` values, descending, written into `buf`.
fn top_values(values: impl Iterator<Item = f64>, r: usize, buf: &mut Vec<f64>) {
    buf.clear();
    for v in values {
        if buf.len() < r {
            let pos = buf.partition_point(|&x| x >= v);
            buf.insert(pos, v);
        } else if v > buf[r - 1] {
            buf.pop();
            let pos = buf.partition_point(|&x| x >= v);
            buf.insert(pos, v);
        }
    }
}

fn channels_match(model: &MilpModel, rows: &[Vec<Complex64>]) -> bool {
    if rows.len() != model.num_users() || rows.iter().any(|r| r.len() != model.num_candidates()) {
        return false;
    }
    let scale = (0..model.num_users())
        .flat_map(|k| model.linear(k).iter().copied())
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let tol = 1e-9 * scale;
    rows.iter().enumerate().all(|(k, r)| {
        r.iter().zip(model.linear(k)).all(|(h, &d)| (h.norm_sqr() - d).abs() <= tol)
            && model
                .pairs()
                .iter()
                .zip(model.pair_coefs(k))
                .all(|(&(i, j), &c)| (2.0 * (r[i].conj() * r[j]).re - c).abs() <= tol)
    })
}

impl<'a> Search<'a> {
    fn new(model: &'a MilpModel, deadline: Instant) -> Self {
        let (g, k, n) = (model.num_candidates(), model.num_users(), model.num_pas());
        let score: Vec<f64> = (0..g).map(|i| (0..k).map(|u| model.linear(u)[i]).sum()).collect();
        let mut order: Vec<usize> = (0..g).collect();
        order.sort_by(|&a, &b| score[b].total_cmp(&score[a]).then(a.cmp(&b)));
        let diag: Vec<Vec<f64>> = (0..k).map(|u| order.iter().map(|&i| model.linear(u)[i]).collect()).collect();

        let coefs = match model.channels() {
            Some(rows) if channels_match(model, rows) => {
                let h: Vec<Vec<Complex64>> = rows.iter().map(|r| order.iter().map(|&i| r[i]).collect()).collect();
                let amp = h.iter().map(|r| r.iter().map(|c| c.norm()).collect()).collect();
                Coefs::Gram { h, amp }
            }
            _ => {
                let mut pos = vec![0; g];
                for (p, &i) in order.iter().enumerate() {
                    pos[i] = p;
                }
                let mut q = vec![vec![0.0; g * g]; k];
                let mut half_max_pos = vec![0.0f64; k];
                for (p, &(i, j)) in model.pairs().iter().enumerate() {
                    let (a, b) = (pos[i], pos[j]);
                    for u in 0..k {
                        let c = model.pair_coefs(u)[p];
                        q[u][a * g + b] = c;
                        q[u][b * g + a] = c;
                        half_max_pos[u] = half_max_pos[u].max(c / 2.0);
                    }
                }
                Coefs::Dense { q, half_max_pos }
            }
        };

        let conflicts = (!model.conflicts().is_empty()).then(|| {
            let words = g.div_ceil(64);
            let mut pos = vec![0; g];
            for (p, &i) in order.iter().enumerate() {
                pos[i] = p;
            }
            let mut bits = vec![vec![0u64; words]; g];
            for &(i, j) in model.conflicts().pairs() {
                let (a, b) = (pos[i], pos[j]);
                bits[a][b / 64] |= 1 << (b % 64);
                bits[b][a / 64] |= 1 << (a % 64);
            }
            bits
        });

        Self {
            model,
            n,
            k,
            g,
            order,
            diag,
            coefs,
            conflicts,
            incumbent: Incumbent {
                value: f64::NEG_INFINITY,
                indices: Vec::new(),
            },
            chosen: Vec::with_capacity(n),
            nodes: 0,
            deadline,
            timed_out: false,
            tops: vec![Vec::with_capacity(n + 1); k],
        }
    }

    #[inline]
    fn q(&self, u: usize, a: usize, b: usize) -> f64 {
        match &self.coefs {
            Coefs::Gram { h, .. } => 2.0 * (h[u][a].conj() * h[u][b]).re,
            Coefs::Dense { q, .. } => q[u][a * self.g + b],
        }
    }

    #[inline]
    fn clash(&self, a: usize, b: usize) -> bool {
        self.conflicts
            .as_ref()
            .is_some_and(|bits| bits[a][b / 64] >> (b % 64) & 1 == 1)
    }

    fn canonical(&self, indices: &[usize]) -> f64 {
        match self.model.channels() {
            Some(rows) if matches!(self.coefs, Coefs::Gram { .. }) => canonical_gamma_min(rows, indices),
            _ => self.model.gamma_min_of(indices),
        }
    }

    fn threshold(&self) -> f64 {
        if self.incumbent.indices.is_empty() {
            f64::NEG_INFINITY
        } else {
            self.incumbent.value - TIE_TOLERANCE * self.incumbent.value.abs()
        }
    }

    fn offer(&mut self, approx: f64, positions: &[usize]) {
        if approx < self.threshold() {
            return;
        }
        let mut idx: Vec<usize> = positions.iter().map(|&p| self.order[p]).collect();
        idx.sort_unstable();
        let mut inc = std::mem::replace(
            &mut self.incumbent,
            Incumbent {
                value: f64::NEG_INFINITY,
                indices: Vec::new(),
            },
        );
        inc.offer(approx, &idx, |s| self.canonical(s));
        self.incumbent = inc;
    }

    /// `lin + rho` for every user and list entry, flattened `u * len + i`.
    fn surcharged(&mut self, list: &[usize], lin: &[f64], r: usize) -> Vec<f64> {
        let len = list.len();
        let mut vals = lin.to_vec();
        if r < 2 {
            return vals;
        }
        match &self.coefs {
            Coefs::Gram { amp, .. } => {
                for u in 0..self.k {
                    let buf = &mut self.tops[u];
                    top_values(list.iter().map(|&p| amp[u][p]), r - 1, buf);
                    let t: f64 = buf.iter().sum();
                    for (i, &p) in list.iter().enumerate() {
                        vals[u * len + i] += amp[u][p] * t;
                    }
                }
            }
            Coefs::Dense { half_max_pos, .. } => {
                for u in 0..self.k {
                    let extra = (r - 1) as f64 * half_max_pos[u];
                    for v in &mut vals[u * len..(u + 1) * len] {
                        *v += extra;
                    }
                }
            }
        }
        vals
    }

    /// Upper bound on `min_k Gamma_k` over all completions of the node.
    fn node_bound(&mut self, len: usize, vals: &[f64], base: &[f64], r: usize) -> f64 {
        let k = self.k;
        let mut per_user: Vec<(f64, usize)> = Vec::with_capacity(k);
        let mut buf = Vec::with_capacity(r + 1);
        for u in 0..k {
            top_values(vals[u * len..(u + 1) * len].iter().copied(), r, &mut buf);
            per_user.push((base[u] + buf.iter().sum::<f64>(), u));
        }
        per_user.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut best = per_user[0].0;
        let mut mix = vec![0.0; len];
        let mut mix_base = 0.0;
        for m in 1..=k {
            let u = per_user[m - 1].1;
            mix_base += base[u];
            for (acc, v) in mix.iter_mut().zip(&vals[u * len..(u + 1) * len]) {
                *acc += v;
            }
            if m >= 2 {
                top_values(mix.iter().copied(), r, &mut buf);
                best = best.min((mix_base + buf.iter().sum::<f64>()) / m as f64);
            }
        }
        best
    }

    fn visit(&mut self, list: &[usize], lin: &[f64], base: &[f64]) {
        self.nodes += 1;
        if (self.nodes == 1 || self.nodes % 4096 == 0) && Instant::now() >= self.deadline {
            self.timed_out = true;
        }
        if self.timed_out {
            return;
        }
        let r = self.n - self.chosen.len();
        let len = list.len();
        if len < r {
            return;
        }
        let k = self.k;

        if r == 1 {
            for i in 0..len {
                let v = (0..k).map(|u| base[u] + lin[u * len + i]).fold(f64::INFINITY, f64::min);
                if v >= self.threshold() {
                    self.chosen.push(list[i]);
                    let positions = self.chosen.clone();
                    self.chosen.pop();
                    self.offer(v, &positions);
                }
            }
            return;
        }

        let vals = self.surcharged(list, lin, r);
        let threshold = self.threshold();
        let ub = self.node_bound(len, &vals, base, r);
        if ub * (1.0 + TIE_TOLERANCE) < threshold {
            return;
        }

        // Drop candidates that cannot appear in any improving completion.
        let mut keep: Vec<usize> = (0..len).collect();
        if threshold.is_finite() {
            let mut buf = Vec::with_capacity(r + 1);
            let mut mean = vec![0.0; len];
            for u in 0..k {
                for (m, v) in mean.iter_mut().zip(&vals[u * len..(u + 1) * len]) {
                    *m += v / k as f64;
                }
            }
            let mean_base = base.iter().sum::<f64>() / k as f64;
            let rows: Vec<(&[f64], f64)> = (0..k)
                .map(|u| (&vals[u * len..(u + 1) * len], base[u]))
                .chain(std::iter::once((mean.as_slice(), mean_base)))
                .collect();
            for (row, b0) in rows {
                top_values(keep.iter().map(|&i| row[i]), r, &mut buf);
                if buf.len() < r {
                    return;
                }
                let top_r: f64 = buf.iter().sum();
                let top_r1 = top_r - buf[r - 1];
                let rth = buf[r - 1];
                keep.retain(|&i| {
                    let v = row[i];
                    let others = if v >= rth { top_r - v } else { top_r1 };
                    (b0 + v + others) * (1.0 + TIE_TOLERANCE) >= threshold
                });
            }
            if keep.len() < r {
                return;
            }
        }

        let kept: Vec<usize> = keep.iter().map(|&i| list[i]).collect();
        let mut child_base = vec![0.0; k];
        for a in 0..=kept.len() - r {
            let j = kept[a];
            let child_list: Vec<usize> = kept[a + 1..].iter().copied().filter(|&p| !self.clash(j, p)).collect();
            if child_list.len() < r - 1 {
                continue;
            }
            let cl = child_list.len();
            let mut child_lin = vec![0.0; k * cl];
            let ia = keep[a];
            // positions of child entries inside `list`
            let src: Vec<usize> = keep[a + 1..]
                .iter()
                .copied()
                .filter(|&i| !self.clash(j, list[i]))
                .collect();
            for u in 0..k {
                child_base[u] = base[u] + lin[u * len + ia];
                for (c, &i) in src.iter().enumerate() {
                    child_lin[u * cl + c] = lin[u * len + i] + self.q(u, j, list[i]);
                }
            }
            self.chosen.push(j);
            let cb = child_base.clone();
            self.visit(&child_list, &child_lin, &cb);
            self.chosen.pop();
            if self.timed_out {
                return;
            }
            if ub * (1.0 + TIE_TOLERANCE) < self.threshold() {
                return;
            }
        }
    }

    fn root(&self) -> (Vec<usize>, Vec<f64>, Vec<f64>) {
        let list: Vec<usize> = (0..self.g).collect();
        let lin: Vec<f64> = self.diag.iter().flat_map(|d| d.iter().copied()).collect();
        (list, lin, vec![0.0; self.k])
    }

    fn root_bound(&mut self) -> f64 {
        let (list, lin, base) = self.root();
        let r = self.n;
        if r == 1 {
            return (0..self.g)
                .map(|j| (0..self.k).map(|u| self.diag[u][j]).fold(f64::INFINITY, f64::min))
                .fold(f64::NEG_INFINITY, f64::max);
        }
        let vals = self.surcharged(&list, &lin, r);
        self.node_bound(list.len(), &vals, &base, r)
    }

    /// Value of a set under incremental bookkeeping; returns per-user Gamma.
    fn gammas(&self, set: &[usize]) -> Vec<f64> {
        (0..self.k)
            .map(|u| {
                let mut v = 0.0;
                for (a, &i) in set.iter().enumerate() {
                    v += self.diag[u][i];
                    for &j in &set[..a] {
                        v += self.q(u, i, j);
                    }
                }
                v
            })
            .collect()
    }

    /// Greedy completion of `start` maximizing the min gain step by step.
    fn greedy(&self, start: usize) -> Option<Vec<usize>> {
        let (g, k) = (self.g, self.k);
        let mut set = vec![start];
        let mut base: Vec<f64> = (0..k).map(|u| self.diag[u][start]).collect();
        let mut lin: Vec<f64> = (0..k)
            .flat_map(|u| (0..g).map(move |j| (u, j)))
            .map(|(u, j)| self.diag[u][j] + self.q(u, start, j))
            .collect();
        let mut allowed: Vec<bool> = (0..g).map(|j| j != start && !self.clash(start, j)).collect();
        while set.len() < self.n {
            let mut best: Option<(f64, usize)> = None;
            for j in (0..g).filter(|&j| allowed[j]) {
                let v = (0..k).map(|u| base[u] + lin[u * g + j]).fold(f64::INFINITY, f64::min);
                if best.is_none_or(|(bv, _)| v > bv) {
                    best = Some((v, j));
                }
            }
            let (_, j) = best?;
            for u in 0..k {
                base[u] += lin[u * g + j];
                for i in 0..g {
                    lin[u * g + i] += self.q(u, j, i);
                }
            }
            allowed[j] = false;
            for (i, a) in allowed.iter_mut().enumerate() {
                if *a && self.clash(j, i) {
                    *a = false;
                }
            }
            set.push(j);
        }
        Some(set)
    }

    /// Best-improvement single swaps until no swap helps.
    fn improve(&self, mut set: Vec<usize>) -> Vec<usize> {
        let (g, k) = (self.g, self.k);
        let mut current = self.gammas(&set).into_iter().fold(f64::INFINITY, f64::min);
        for _ in 0..200 {
            let mut best: Option<(f64, usize, usize)> = None;
            for out in 0..set.len() {
                let rest: Vec<usize> = set.iter().enumerate().filter(|&(i, _)| i != out).map(|(_, &p)| p).collect();
                let rest_gamma = self.gammas(&rest);
                for j in 0..g {
                    if set.contains(&j) || rest.iter().any(|&p| self.clash(p, j)) {
                        continue;
                    }
                    let v = (0..k)
                        .map(|u| rest_gamma[u] + self.diag[u][j] + rest.iter().map(|&p| self.q(u, p, j)).sum::<f64>())
                        .fold(f64::INFINITY, f64::min);
                    if v > current * (1.0 + 1e-12) + f64::MIN_POSITIVE && best.is_none_or(|(bv, _, _)| v > bv) {
                        best = Some((v, out, j));
                    }
                }
            }
            match best {
                Some((v, out, j)) => {
                    set[out] = j;
                    current = v;
                }
                None => break,
            }
        }
        set
    }

    fn warm_start(&mut self) {
        let mut starts: Vec<usize> = (0..self.g.min(64)).collect();
        for u in 0..self.k {
            let mut by_amp: Vec<usize> = (0..self.g).collect();
            by_amp.sort_by(|&a, &b| self.diag[u][b].total_cmp(&self.diag[u][a]));
            starts.extend(by_amp.into_iter().take(8));
        }
        starts.sort_unstable();
        starts.dedup();
        for s in starts {
            if Instant::now() >= self.deadline {
                break;
            }
            if let Some(set) = self.greedy(s) {
                let set = self.improve(set);
                let v = self.gammas(&set).into_iter().fold(f64::INFINITY, f64::min);
                self.offer(v, &set);
            }
        }
    }
}

/// Solves the model to proven optimality unless `time_budget` runs out.
pub fn solve_milp(model: &MilpModel, time_budget: Duration) -> MilpSolution {
    let started = Instant::now();
    let mut search = Search::new(model, started + time_budget);
    let root_gamma = search.root_bound() * (1.0 + TIE_TOLERANCE);
    search.warm_start();
    let (list, lin, base) = search.root();
    search.visit(&list, &lin, &base);

    let scale = model.snr_scale();
    let g = model.num_candidates();
    let found = !search.incumbent.indices.is_empty();
    let status = match (search.timed_out, found) {
        (true, _) => SolveStatus::Timeout,
        (false, true) => SolveStatus::Optimal,
        (false, false) => SolveStatus::Infeasible,
    };
    let gamma_min = if found { search.incumbent.value } else { 0.0 };
    let mu = scale * gamma_min;
    let upper_bound = match status {
        SolveStatus::Optimal => mu,
        SolveStatus::Infeasible => 0.0,
        SolveStatus::Timeout => (scale * root_gamma).max(mu),
    };
    let gap = if upper_bound > 0.0 { (upper_bound - mu) / upper_bound } else { 0.0 };
    MilpSolution {
        selection: found.then(|| SelectionVector::from_indices(g, &search.incumbent.indices)),
        mu,
        gamma_min,
        status,
        upper_bound,
        root_bound: scale * root_gamma,
        gap,
        nodes: search.nodes,
        elapsed: started.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{Point3, RadioParams, Scenario};
    use crate::discrete::grid::{ConflictSet, DiscreteChannelTable};
    use crate::discrete::milp::build_milp;
    use crate::discrete::oracle::brute_force_select;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn scenario(k: usize) -> Scenario {
        let ues = (0..k).map(|i| Point3::new(i as f64, 1.0, 0.0)).collect();
        Scenario::new(ues, 20.0, RadioParams::mmwave(20.0)).unwrap()
    }

    fn random_table(k: usize, g: usize, rng: &mut ChaCha8Rng) -> DiscreteChannelTable {
        DiscreteChannelTable::from_rows(
            (0..k)
                .map(|_| {
                    (0..g)
                        .map(|_| Complex64::from_polar(rng.gen_range(0.05..1.0), rng.gen_range(0.0..6.3)))
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn top_values_keeps_largest() {
        let mut buf = Vec::new();
        top_values([3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0].into_iter(), 3, &mut buf);
        assert_eq!(buf, vec![9.0, 5.0, 4.0]);
    }

    #[test]
    fn three_by_three_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let t = random_table(2, 9, &mut rng);
            let s = scenario(2);
            let c = ConflictSet::default();
            let m = build_milp(&t, &c, 2, &s).unwrap();
            let sol = solve_milp(&m, Duration::from_secs(10));
            let (sel, mu) = brute_force_select(&t, &c, 2, &s).unwrap();
            assert_eq!(sol.status, SolveStatus::Optimal);
            assert_eq!(sol.selection.unwrap(), sel);
            assert!((sol.mu - mu).abs() <= 1e-9 * mu);
            assert!(sol.root_bound >= sol.mu);
        }
    }

    #[test]
    fn general_coefficients_match_gram_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..20 {
            let t = random_table(3, 12, &mut rng);
            let s = scenario(3);
            let c = ConflictSet::from_pairs(vec![(0, 1), (2, 5), (4, 11)]);
            let m = build_milp(&t, &c, 3, &s).unwrap();
            let bare = MilpModel::from_coefficients(
                3,
                (0..3).map(|k| m.linear(k).to_vec()).collect(),
                m.pairs().to_vec(),
                (0..3).map(|k| m.pair_coefs(k).to_vec()).collect(),
                c.clone(),
                m.snr_scale(),
            )
            .unwrap();
            let a = solve_milp(&m, Duration::from_secs(10));
            let b = solve_milp(&bare, Duration::from_secs(10));
            assert_eq!(a.selection, b.selection);
            assert!((a.mu - b.mu).abs() <= 1e-9 * a.mu);
        }
    }

    #[test]
    fn forced_full_selection() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = random_table(2, 6, &mut rng);
        let s = scenario(2);
        let m = build_milp(&t, &ConflictSet::default(), 6, &s).unwrap();
        let sol = solve_milp(&m, Duration::from_secs(10));
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert_eq!(sol.selection.unwrap().count(), 6);
        let r = s.radio();
        let want = (0..2)
            .map(|k| t.row(k).iter().sum::<Complex64>().norm_sqr())
            .fold(f64::INFINITY, f64::min)
            * r.tx_power_w()
            / (6.0 * r.noise_power_w());
        assert!((sol.mu - want).abs() <= 1e-12 * want);
    }

    #[test]
    fn all_pairs_conflicting_is_infeasible() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let t = random_table(1, 5, &mut rng);
        let pairs = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
        let m = build_milp(&t, &ConflictSet::from_pairs(pairs), 2, &scenario(1)).unwrap();
        let sol = solve_milp(&m, Duration::from_secs(10));
        assert_eq!(sol.status, SolveStatus::Infeasible);
        assert!(sol.selection.is_none());
    }

    #[test]
    fn zero_budget_times_out_with_valid_gap() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let t = random_table(3, 200, &mut rng);
        let m = build_milp(&t, &ConflictSet::default(), 4, &scenario(3)).unwrap();
        let sol = solve_milp(&m, Duration::ZERO);
        assert_eq!(sol.status, SolveStatus::Timeout);
        assert!(sol.upper_bound >= sol.mu);
        assert!((0.0..=1.0).contains(&sol.gap));
    }
}
