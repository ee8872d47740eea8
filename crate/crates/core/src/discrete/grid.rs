use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::{Point3, Scenario};
use crate::error::{Error, Result};

/// Candidate positions of the multi-waveguide grid.
///
/// Indices are zero-based: waveguide `row` in `0..g1` and slot `col` in
/// `0..g2` map to `row * g2 + col`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateGrid {
    side_length: f64,
    height: f64,
    g1: usize,
    g2: usize,
    delta1: f64,
    delta2: f64,
    points: Vec<Point3>,
}

/// Uniform `g1 x g2` grid covering `[-D/2, D/2]^2` at height `h`.
pub fn build_grid(side_length: f64, g1: usize, g2: usize, height: f64) -> Result<CandidateGrid> {
    if g1 < 2 || g2 < 2 {
        return Err(Error::invalid(format!(
            "grid needs at least 2 points per axis, got {g1} x {g2}"
        )));
    }
    if !(side_length > 0.0 && height > 0.0) {
        return Err(Error::invalid("grid side length and height must be positive"));
    }
    let delta1 = side_length / (g1 - 1) as f64;
    let delta2 = side_length / (g2 - 1) as f64;
    let half = side_length / 2.0;
    let mut points = Vec::with_capacity(g1 * g2);
    for row in 0..g1 {
        for col in 0..g2 {
            points.push(Point3::new(
                -half + col as f64 * side_length / (g2 - 1) as f64,
                -half + row as f64 * side_length / (g1 - 1) as f64,
                height,
            ));
        }
    }
    Ok(CandidateGrid {
        side_length,
        height,
        g1,
        g2,
        delta1,
        delta2,
        points,
    })
}

impl CandidateGrid {
    /// Square grid with spacing `step` on both axes; `D / step` must be an
    /// integer.
    pub fn with_step(side_length: f64, step: f64, height: f64) -> Result<Self> {
        let cells = side_length / step;
        let rounded = cells.round();
        if !(step > 0.0) || (cells - rounded).abs() > 1e-9 * cells.max(1.0) || rounded < 1.0 {
            return Err(Error::invalid(format!(
                "quantization step {step} does not divide the side length {side_length}"
            )));
        }
        let n = rounded as usize + 1;
        build_grid(side_length, n, n, height)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
    pub fn points(&self) -> &[Point3] {
        &self.points
    }
    pub fn point(&self, index: usize) -> Point3 {
        self.points[index]
    }
    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.g2 + col
    }
    pub fn waveguides(&self) -> usize {
        self.g1
    }
    pub fn slots_per_waveguide(&self) -> usize {
        self.g2
    }
    pub fn delta1(&self) -> f64 {
        self.delta1
    }
    pub fn delta2(&self) -> f64 {
        self.delta2
    }
    pub fn side_length(&self) -> f64 {
        self.side_length
    }
    pub fn height(&self) -> f64 {
        self.height
    }

    /// Feed of waveguide `row`, at its left end.
    pub fn feed_point(&self, row: usize) -> Point3 {
        Point3::new(
            -self.side_length / 2.0,
            -self.side_length / 2.0 + row as f64 * self.delta1,
            self.height,
        )
    }
}

/// `K x G` complex channel between every user and every candidate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteChannelTable {
    rows: Vec<Vec<Complex64>>,
}

impl DiscreteChannelTable {
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        if let Some(first) = rows.first() {
            if rows.iter().any(|r| r.len() != first.len()) {
                return Err(Error::invalid("channel table rows differ in length"));
            }
        }
        Ok(Self { rows })
    }

    pub fn num_users(&self) -> usize {
        self.rows.len()
    }
    pub fn num_candidates(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }
    pub fn row(&self, k: usize) -> &[Complex64] {
        &self.rows[k]
    }
    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.rows
    }
    pub fn get(&self, k: usize, g: usize) -> Complex64 {
        self.rows[k][g]
    }

    /// Keeps only the listed candidates, in the given order.
    pub fn restricted(&self, keep: &[usize]) -> Self {
        Self {
            rows: self
                .rows
                .iter()
                .map(|r| keep.iter().map(|&g| r[g]).collect())
                .collect(),
        }
    }
}

/// Channel with the per-waveguide phase reference: the guided wave travels
/// `x_g + D/2` from its own waveguide's feed.
pub fn discrete_channel_table(grid: &CandidateGrid, scenario: &Scenario) -> DiscreteChannelTable {
    let radio = scenario.radio();
    let sqrt_eta = radio.eta().sqrt();
    let half = grid.side_length() / 2.0;
    let rows = scenario
        .ues()
        .iter()
        .map(|ue| {
            grid.points()
                .iter()
                .map(|p| {
                    let d = ue.distance(p);
                    let theta = 2.0 * PI * (d / radio.lambda_c() + (p.x + half) / radio.lambda_g());
                    Complex64::from_polar(sqrt_eta / d, -theta)
                })
                .collect()
        })
        .collect();
    DiscreteChannelTable { rows }
}

/// Unordered candidate pairs `(i, j)`, `i < j`, closer than the minimum
/// separation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConflictSet {
    pairs: Vec<(usize, usize)>,
}

impl ConflictSet {
    pub fn from_pairs(mut pairs: Vec<(usize, usize)>) -> Self {
        for p in &mut pairs {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
    pub fn len(&self) -> usize {
        self.pairs.len()
    }
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
    pub fn contains(&self, i: usize, j: usize) -> bool {
        let key = if i < j { (i, j) } else { (j, i) };
        self.pairs.binary_search(&key).is_ok()
    }

    /// Neighbour lists over `g` candidates.
    pub fn adjacency(&self, g: usize) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); g];
        for &(i, j) in &self.pairs {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }
}

pub fn conflict_set(grid: &CandidateGrid, min_separation: f64) -> ConflictSet {
    let pts = grid.points();
    let mut pairs = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i].distance(&pts[j]) < min_separation {
                pairs.push((i, j));
            }
        }
    }
    ConflictSet { pairs }
}

/// Binary selection over the `G` candidates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SelectionVector {
    pub flags: Vec<bool>,
}

impl SelectionVector {
    pub fn from_indices(num_candidates: usize, indices: &[usize]) -> Self {
        let mut flags = vec![false; num_candidates];
        for &i in indices {
            flags[i] = true;
        }
        Self { flags }
    }

    pub fn indices(&self) -> Vec<usize> {
        self.flags
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }

    pub fn count(&self) -> usize {
        self.flags.iter().filter(|&&b| b).count()
    }

    /// Exactly `n` selected and no conflicting pair both set.
    pub fn is_valid(&self, n: usize, conflicts: &ConflictSet) -> bool {
        self.count() == n
            && conflicts
                .pairs()
                .iter()
                .all(|&(i, j)| !(self.flags[i] && self.flags[j]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{path_gain, RadioParams};

    fn scenario() -> Scenario {
        Scenario::new(
            vec![Point3::new(1.3, -2.2, 0.0), Point3::new(-4.0, 6.5, 0.0)],
            20.0,
            RadioParams::mmwave(20.0),
        )
        .unwrap()
    }

    #[test]
    fn grid_corners_and_indexing() {
        let g = build_grid(20.0, 21, 21, 3.0).unwrap();
        assert_eq!(g.point(0), Point3::new(-10.0, -10.0, 3.0));
        assert_eq!(g.point(g.len() - 1), Point3::new(10.0, 10.0, 3.0));
        assert_eq!(g.delta1(), 1.0);
        assert_eq!(g.delta2(), 1.0);
        // one-based g = (g1 - 1) G2 + g2 = 22 for g1 = 2, g2 = 1
        let one_based = (2 - 1) * 21 + 1;
        assert_eq!(one_based, 22);
        assert_eq!(g.index(1, 0), one_based - 1);
        assert_eq!(g.point(one_based - 1), Point3::new(-10.0, -9.0, 3.0));
        assert_eq!(g.feed_point(1), Point3::new(-10.0, -9.0, 3.0));
    }

    #[test]
    fn grid_rejects_single_row() {
        assert!(build_grid(20.0, 1, 5, 3.0).is_err());
        assert!(build_grid(20.0, 5, 1, 3.0).is_err());
        assert!(CandidateGrid::with_step(20.0, 3.0, 3.0).is_err());
        assert_eq!(CandidateGrid::with_step(20.0, 2.0, 3.0).unwrap().len(), 121);
    }

    #[test]
    fn table_amplitude_and_guided_phase() {
        let s = scenario();
        let g = build_grid(20.0, 5, 5, 3.0).unwrap();
        let t = discrete_channel_table(&g, &s);
        let r = s.radio();
        for (k, ue) in s.ues().iter().enumerate() {
            for (i, p) in g.points().iter().enumerate() {
                let amp = path_gain(ue, p, r.eta()).unwrap();
                assert!((t.get(k, i).norm() - amp).abs() <= 1e-12 * amp);
            }
        }
        // strip the free-space phase; what is left is the guided term
        let guided = |i: usize| {
            let p = g.point(i);
            let d = s.ues()[0].distance(&p);
            t.get(0, i) * d / r.eta().sqrt() * Complex64::from_polar(1.0, 2.0 * PI * d / r.lambda_c())
        };
        assert!((guided(g.index(3, 0)) - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        assert!((guided(g.index(1, 2)) - guided(g.index(4, 2))).norm() < 1e-9);
    }

    #[test]
    fn conflict_examples() {
        let g = build_grid(20.0, 21, 21, 3.0).unwrap();
        assert!(conflict_set(&g, RadioParams::mmwave(20.0).lambda_c() / 2.0).is_empty());

        let small = build_grid(2.0, 3, 3, 3.0).unwrap();
        let all = conflict_set(&small, 2.0 * 2f64.sqrt() + 0.1);
        assert_eq!(all.len(), 36);

        // 1.5 delta catches axis and diagonal neighbours only
        let near = conflict_set(&small, 1.5);
        let mut expected = Vec::new();
        for i in 0..9usize {
            for j in i + 1..9usize {
                let (ri, ci, rj, cj) = (i / 3, i % 3, j / 3, j % 3);
                if ri.abs_diff(rj) <= 1 && ci.abs_diff(cj) <= 1 {
                    expected.push((i, j));
                }
            }
        }
        assert_eq!(near.pairs(), expected.as_slice());
        assert_eq!(near.len(), 20);
    }

    #[test]
    fn selection_validity() {
        let c = ConflictSet::from_pairs(vec![(2, 0)]);
        assert!(c.contains(0, 2));
        assert!(!SelectionVector::from_indices(4, &[0, 2]).is_valid(2, &c));
        assert!(SelectionVector::from_indices(4, &[0, 3]).is_valid(2, &c));
        assert!(!SelectionVector::from_indices(4, &[0]).is_valid(2, &c));
    }
}
