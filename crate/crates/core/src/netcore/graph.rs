use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense weighted adjacency matrix; entry `(i, j)` is the influence of `j` on `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph<S> {
    n: usize,
    weights: Vec<S>,
}

impl<S: Scalar> WeightedGraph<S> {
    /// Builds a graph from row-major weights. Rejects negative or non-finite entries.
    pub fn new(n: usize, weights: Vec<S>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if weights.len() != n * n {
            return Err(Error::Shape { n, len: weights.len() });
        }
        for (k, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w < S::zero() {
                return Err(Error::InvalidWeight { row: k / n, col: k % n, value: w.as_f64() });
            }
        }
        Ok(Self { n, weights })
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Result<Self> {
        let n = rows.len();
        let mut weights = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Shape { n, len: row.len() * n });
            }
            weights.extend_from_slice(row);
        }
        Self::new(n, weights)
    }

    /// Builds a graph and rescales every row to unit sum.
    pub fn new_normalized(n: usize, weights: Vec<S>) -> Result<Self> {
        let mut g = Self::new(n, weights)?;
        for i in 0..n {
            let sum = g.row_sum(i);
            if sum <= S::zero() {
                return Err(Error::ZeroRow { row: i });
            }
            for w in &mut g.weights[i * n..(i + 1) * n] {
                *w /= sum;
            }
        }
        Ok(g)
    }

    /// All-zero matrix, filled in entry by entry by the generators.
    pub fn zeros(n: usize) -> Self {
        Self { n, weights: vec![S::zero(); n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> S {
        self.weights[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[S] {
        &self.weights[i * self.n..(i + 1) * self.n]
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn row_sum(&self, i: usize) -> S {
        self.row(i).iter().copied().sum()
    }

    /// Largest `|row sum - 1|` over all rows.
    pub fn max_row_deviation(&self) -> S {
        (0..self.n).map(|i| (self.row_sum(i) - S::one()).abs()).fold(S::zero(), S::max)
    }

    pub fn is_row_stochastic(&self) -> bool {
        self.max_row_deviation().as_f64() <= S::STOCHASTIC_TOL
    }

    /// Exact (bitwise) symmetry.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Largest `|m_ij - m_ji|`.
    pub fn asymmetry(&self) -> S {
        let mut worst = S::zero();
        for i in 0..self.n {
            for j in i + 1..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) == S::zero())
    }

    /// Sum of `m_ij` over `j` in `set`.
    pub fn mass_into(&self, i: usize, set: &[usize]) -> S {
        let row = self.row(i);
        set.iter().map(|&j| row[j]).sum()
    }

    pub fn cast<T: Scalar>(&self) -> WeightedGraph<T> {
        WeightedGraph { n: self.n, weights: self.weights.iter().map(|w| T::lit(w.as_f64())).collect() }
    }
}

/// Per-layer findings of [`validate_network`](super::validate_network).
#[derive(Debug, Clone, Serialize)]
pub struct LayerReport {
    pub layer: char,
    pub n: usize,
    /// `(row, sum - 1)` for every row outside the stochastic tolerance.
    pub row_deviations: Vec<(usize, f64)>,
    pub max_row_deviation: f64,
    /// `(row, col, value)` for every negative or non-finite entry.
    pub negative_entries: Vec<(usize, usize, f64)>,
    pub asymmetry: f64,
    pub symmetric: bool,
    pub row_stochastic: bool,
    pub zero_diagonal: bool,
}

impl LayerReport {
    pub fn valid(&self) -> bool {
        self.row_stochastic && self.negative_entries.is_empty()
    }
}

/// Inspects raw row-major weights without requiring them to form a valid graph.
pub fn inspect_layer<S: Scalar>(layer: char, n: usize, weights: &[S]) -> LayerReport {
    let tol = S::STOCHASTIC_TOL;
    let mut row_deviations = Vec::new();
    let mut negative_entries = Vec::new();
    let mut max_dev = 0.0f64;
    let mut asym = 0.0f64;
    let mut zero_diagonal = true;
    for i in 0..n {
        let row = &weights[i * n..(i + 1) * n];
        let sum: f64 = row.iter().map(|w| w.as_f64()).sum();
        let dev = sum - 1.0;
        max_dev = max_dev.max(dev.abs());
        if dev.abs() > tol {
            row_deviations.push((i, dev));
        }
        for (j, w) in row.iter().enumerate() {
            let v = w.as_f64();
            if !v.is_finite() || v < 0.0 {
                negative_entries.push((i, j, v));
            }
            if j > i {
                asym = asym.max((v - weights[j * n + i].as_f64()).abs());
            }
        }
        if row[i] != S::zero() {
            zero_diagonal = false;
        }
    }
    LayerReport {
        layer,
        n,
        row_stochastic: row_deviations.is_empty(),
        row_deviations,
        max_row_deviation: max_dev,
        negative_entries,
        symmetric: asym == 0.0,
        asymmetry: asym,
        zero_diagonal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_negative_and_bad_shape() {
        assert!(matches!(
            WeightedGraph::<f64>::new(2, vec![0.0, 1.0, -0.5, 1.5]),
            Err(Error::InvalidWeight { row: 1, col: 0, .. })
        ));
        assert!(matches!(WeightedGraph::<f64>::new(2, vec![0.0; 3]), Err(Error::Shape { .. })));
        assert!(matches!(WeightedGraph::<f64>::new(0, vec![]), Err(Error::Empty)));
    }

    #[test]
    fn normalization_and_flags() {
        let g = WeightedGraph::<f64>::new_normalized(2, vec![0.0, 2.0, 3.0, 0.0]).unwrap();
        assert_eq!(g.row(0), &[0.0, 1.0]);
        assert!(g.is_row_stochastic());
        assert!(g.is_symmetric());
        assert!(g.has_zero_diagonal());
        assert!(matches!(
            WeightedGraph::<f64>::new_normalized(2, vec![0.0, 0.0, 1.0, 0.0]),
            Err(Error::ZeroRow { row: 0 })
        ));
    }

    #[test]
    fn inspect_reports_deviation() {
        let r = inspect_layer('W', 2, &[0.0f64, 0.9, 1.0, 0.0]);
        assert!(!r.valid());
        assert_eq!(r.row_deviations.len(), 1);
        assert_eq!(r.row_deviations[0].0, 0);
        assert!((r.row_deviations[0].1 + 0.1).abs() < 1e-15);
        assert!((r.asymmetry - 0.1).abs() < 1e-15);
    }
}
