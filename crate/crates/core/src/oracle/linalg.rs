use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense LU factorization with partial pivoting, `P M = L U`, stored packed.
#[derive(Debug, Clone)]
pub struct Lu<S> {
    n: usize,
    lu: Vec<S>,
    perm: Vec<usize>,
}

/// Pivots below this magnitude are reported as singular.
const PIVOT_FLOOR: f64 = 1e-300;

impl<S: Scalar> Lu<S> {
    pub fn factor(n: usize, mut m: Vec<S>) -> Result<Self> {
        if m.len() != n * n {
            return Err(Error::Shape { n, len: m.len() });
        }
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n).max_by(|&a, &b| m[a * n + k].abs().partial_cmp(&m[b * n + k].abs()).unwrap()).unwrap();
            let pivot = m[p * n + k];
            if !(pivot.abs() > S::lit(PIVOT_FLOOR)) {
                return Err(Error::Singular { col: k, pivot: pivot.as_f64() });
            }
            if p != k {
                for c in 0..n {
                    m.swap(k * n + c, p * n + c);
                }
                perm.swap(k, p);
            }
            for r in k + 1..n {
                let f = m[r * n + k] / pivot;
                m[r * n + k] = f;
                if f != S::zero() {
                    for c in k + 1..n {
                        let u = m[k * n + c];
                        m[r * n + c] -= f * u;
                    }
                }
            }
        }
        Ok(Self { n, lu: m, perm })
    }

    pub fn solve(&self, b: &[S]) -> Vec<S> {
        let n = self.n;
        let mut y: Vec<S> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            let mut s = y[r];
            for c in 0..r {
                s -= self.lu[r * n + c] * y[c];
            }
            y[r] = s;
        }
        for r in (0..n).rev() {
            let mut s = y[r];
            for c in r + 1..n {
                s -= self.lu[r * n + c] * y[c];
            }
            y[r] = s / self.lu[r * n + r];
        }
        y
    }
}

/// `max_i |(M x - b)_i|`.
pub fn residual<S: Scalar>(n: usize, m: &[S], x: &[S], b: &[S]) -> S {
    (0..n)
        .map(|r| {
            let mx: S = (0..n).map(|c| m[r * n + c] * x[c]).sum();
            (mx - b[r]).abs()
        })
        .fold(S::zero(), S::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_with_pivoting() {
        let m = vec![0.0, 2.0, 1.0, 1.0, 1.0, 0.0, 3.0, 0.0, 1.0];
        let x = vec![1.0, -2.0, 0.5];
        let b: Vec<f64> = (0..3).map(|r| (0..3).map(|c| m[r * 3 + c] * x[c]).sum()).collect();
        let lu = Lu::factor(3, m.clone()).unwrap();
        let got = lu.solve(&b);
        assert!(residual(3, &m, &got, &b) < 1e-14);
        for (g, e) in got.iter().zip(&x) {
            assert!((g - e).abs() < 1e-14);
        }
    }

    #[test]
    fn singular_detected() {
        let m = vec![1.0, 2.0, 2.0, 4.0];
        assert!(matches!(Lu::factor(2, m), Err(Error::Singular { col: 1, .. })));
    }
}
