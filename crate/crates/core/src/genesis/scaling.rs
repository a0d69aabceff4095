//! Matrix balancing in `f64`.

use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 10_000;
pub const SCALE_TOL: f64 = 1e-12;

fn max_row_dev(n: usize, m: &[f64], target: f64) -> f64 {
    (0..n).map(|i| (m[i * n..(i + 1) * n].iter().sum::<f64>() - target).abs()).fold(0.0, f64::max)
}

/// Rebuilds `D M D` from the upper triangle so the result is bitwise symmetric.
fn apply(n: usize, m: &[f64], d: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        out[i * n + i] = d[i] * m[i * n + i] * d[i];
        for j in i + 1..n {
            let v = d[i] * m[i * n + j] * d[j];
            out[i * n + j] = v;
            out[j * n + i] = v;
        }
    }
    out
}

/// Finds a positive diagonal `D` with `D M D` row-sums equal to `target` and
/// returns the scaled matrix. `m` must be symmetric and non-negative.
///
/// Uses the damped fixed point `d <- sqrt(d * target / (M d))`, which
/// converges for matrices with total support (any connected graph with
/// positive weights on at least three nodes, or one with a diagonal).
pub fn symmetric_scale(n: usize, m: &[f64], target: f64) -> Result<Vec<f64>> {
    let mut d = vec![1.0; n];
    for _ in 0..MAX_SWEEPS {
        let out = apply(n, m, &d);
        if max_row_dev(n, &out, target) <= SCALE_TOL * 0.01 * target.max(1.0) {
            return Ok(out);
        }
        let md: Vec<f64> = (0..n).map(|i| (0..n).map(|j| m[i * n + j] * d[j]).sum()).collect();
        for i in 0..n {
            if md[i] <= 0.0 {
                return Err(Error::ZeroRow { row: i });
            }
            d[i] = (d[i] * target / md[i]).sqrt();
        }
    }
    let out = apply(n, m, &d);
    let dev = max_row_dev(n, &out, target);
    if dev <= SCALE_TOL * target.max(1.0) {
        Ok(out)
    } else {
        Err(Error::ScalingDiverged { sweeps: MAX_SWEEPS, deviation: dev })
    }
}

/// Alternating row/column normalization of a positive `p x q` block towards
/// row sums `r` and column sums `c` (requires `p r = q c`).
pub fn rectangular_scale(p: usize, q: usize, m: &[f64], r: f64, c: f64) -> Result<Vec<f64>> {
    let mut b = m.to_vec();
    let dev = |b: &[f64]| {
        let rows = (0..p).map(|i| (b[i * q..(i + 1) * q].iter().sum::<f64>() - r).abs()).fold(0.0, f64::max);
        let cols = (0..q).map(|j| ((0..p).map(|i| b[i * q + j]).sum::<f64>() - c).abs()).fold(0.0, f64::max);
        rows.max(cols)
    };
    for _ in 0..MAX_SWEEPS {
        if dev(&b) <= SCALE_TOL * 0.01 {
            return Ok(b);
        }
        for i in 0..p {
            let s: f64 = b[i * q..(i + 1) * q].iter().sum();
            if s <= 0.0 {
                return Err(Error::ZeroRow { row: i });
            }
            b[i * q..(i + 1) * q].iter_mut().for_each(|v| *v *= r / s);
        }
        for j in 0..q {
            let s: f64 = (0..p).map(|i| b[i * q + j]).sum();
            if s <= 0.0 {
                return Err(Error::ZeroRow { row: j });
            }
            (0..p).for_each(|i| b[i * q + j] *= c / s);
        }
    }
    let d = dev(&b);
    if d <= SCALE_TOL {
        Ok(b)
    } else {
        Err(Error::ScalingDiverged { sweeps: MAX_SWEEPS, deviation: d })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_result_is_symmetric_and_balanced() {
        let n = 4;
        let m = vec![0.0, 1.0, 2.0, 3.0, 1.0, 0.0, 5.0, 1.0, 2.0, 5.0, 0.0, 0.5, 3.0, 1.0, 0.5, 0.0];
        let out = symmetric_scale(n, &m, 1.0).unwrap();
        for i in 0..n {
            assert!((out[i * n..(i + 1) * n].iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            for j in 0..n {
                assert_eq!(out[i * n + j].to_bits(), out[j * n + i].to_bits());
            }
        }
    }

    #[test]
    fn rectangular_marginals() {
        let b = rectangular_scale(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0], 0.6, 0.4).unwrap();
        for i in 0..2 {
            assert!((b[i * 3..i * 3 + 3].iter().sum::<f64>() - 0.6).abs() < 1e-12);
        }
        for j in 0..3 {
            assert!((b[j] + b[3 + j] - 0.4).abs() < 1e-12);
        }
    }
}
