use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;

use super::theorems::{eq22_threshold, thm3_vn_threshold, thm3_vp_threshold, thm5_rhs};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Denominators smaller than this are treated as singular.
const SINGULAR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourFn {
    Thm3Vp,
    Thm3Vn,
    Thm5Rhs,
    Thm7Gap,
    CooPolRhs,
}

impl ContourFn {
    pub const ALL: [ContourFn; 5] =
        [ContourFn::Thm3Vp, ContourFn::Thm3Vn, ContourFn::Thm5Rhs, ContourFn::Thm7Gap, ContourFn::CooPolRhs];

    pub fn as_str(self) -> &'static str {
        match self {
            ContourFn::Thm3Vp => "thm3_vp",
            ContourFn::Thm3Vn => "thm3_vn",
            ContourFn::Thm5Rhs => "thm5_rhs",
            ContourFn::Thm7Gap => "thm7_gap",
            ContourFn::CooPolRhs => "coo_pol_rhs",
        }
    }

    /// Value at `(beta, lambda)`; NaN where a denominator vanishes.
    pub fn eval<S: Scalar>(self, beta: S, lambda: S) -> S {
        let one = S::one();
        match self {
            ContourFn::Thm3Vp => thm3_vp_threshold(lambda, beta).0,
            ContourFn::Thm3Vn => thm3_vn_threshold(lambda, beta).0,
            ContourFn::Thm5Rhs => thm5_rhs(lambda, beta, S::zero()),
            ContourFn::Thm7Gap => {
                let two = S::lit(2.0);
                let den = two * beta - beta * lambda - one;
                if den.abs() < S::lit(SINGULAR) {
                    return S::nan();
                }
                (one + beta * (one - lambda) / den) / two - (one - two * lambda) / (one - lambda)
            }
            ContourFn::CooPolRhs => eq22_threshold(lambda, beta).0,
        }
    }
}

impl FromStr for ContourFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ContourFn::ALL
            .into_iter()
            .find(|f| f.as_str() == s.trim())
            .ok_or_else(|| Error::Parse { line: 0, msg: format!("unknown contour function {s:?}") })
    }
}

/// Values on the grid `beta_k = lambda_k = (k + 1) / (resolution + 1)`,
/// `k = 0..resolution`, which never touches 0 or 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourGrid<S> {
    pub function: ContourFn,
    pub axis: Vec<S>,
    /// Row-major: `values[l * resolution + b]` is the cell `(axis[b], axis[l])`.
    pub values: Vec<S>,
}

impl<S: Scalar> ContourGrid<S> {
    pub fn resolution(&self) -> usize {
        self.axis.len()
    }

    pub fn get(&self, beta_idx: usize, lambda_idx: usize) -> S {
        self.values[lambda_idx * self.axis.len() + beta_idx]
    }

    /// `(beta, lambda, value)` triples in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (S, S, S)> + '_ {
        let r = self.axis.len();
        self.values.iter().enumerate().map(move |(k, &v)| (self.axis[k % r], self.axis[k / r], v))
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("beta,lambda,value\n");
        for (b, l, v) in self.cells() {
            let v = v.as_f64();
            if v.is_nan() {
                writeln!(s, "{},{},NaN", b.as_f64(), l.as_f64()).unwrap();
            } else {
                writeln!(s, "{},{},{}", b.as_f64(), l.as_f64(), v).unwrap();
            }
        }
        s
    }
}

pub fn contour<S: Scalar>(function: ContourFn, resolution: usize) -> Result<ContourGrid<S>> {
    if resolution < 2 {
        return Err(Error::Resolution(resolution));
    }
    let axis: Vec<S> = (0..resolution).map(|k| S::lit((k + 1) as f64 / (resolution + 1) as f64)).collect();
    let values = (0..resolution * resolution)
        .into_par_iter()
        .map(|k| function.eval(axis[k % resolution], axis[k / resolution]))
        .collect();
    Ok(ContourGrid { function, axis, values })
}
