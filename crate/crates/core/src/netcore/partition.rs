use serde::Serialize;

use super::graph::WeightedGraph;
use super::params::Action;
use super::state::PopulationState;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Agents grouped by action and opinion sign (with `sgn(0) = 0`):
///
/// | set          | opinion | action |
/// |--------------|---------|--------|
/// | `plus_plus`  | `>= 0`  | `+1`   |
/// | `minus_plus` | `> 0`   | `-1`   |
/// | `plus_minus` | `< 0`   | `+1`   |
/// | `minus_minus`| `<= 0`  | `-1`   |
///
/// Field names read as `<action>_<opinion sign>`. Indices are 0-based and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub plus_plus: Vec<usize>,
    pub minus_plus: Vec<usize>,
    pub plus_minus: Vec<usize>,
    pub minus_minus: Vec<usize>,
}

impl Partition {
    /// Agents whose opinion sign agrees with their action.
    pub fn aligned(&self) -> usize {
        self.plus_plus.len() + self.minus_minus.len()
    }
}

pub fn partition_state<S: Scalar>(z: &PopulationState<S>) -> Partition {
    let mut p =
        Partition { plus_plus: Vec::new(), minus_plus: Vec::new(), plus_minus: Vec::new(), minus_minus: Vec::new() };
    for i in 0..z.n() {
        let y = z.y(i);
        match z.action(i) {
            Action::Plus if y >= S::zero() => p.plus_plus.push(i),
            Action::Plus => p.plus_minus.push(i),
            Action::Minus if y <= S::zero() => p.minus_minus.push(i),
            Action::Minus => p.minus_plus.push(i),
        }
    }
    p
}

/// `(sum_{j in S} m_ij / sum_j m_ij)` for each `i` in `set`, in `set` order.
pub fn internal_ratios<S: Scalar>(set: &[usize], m: &WeightedGraph<S>) -> Result<Vec<S>> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    set.iter()
        .map(|&i| {
            if i >= m.n() {
                return Err(Error::Index { index: i, n: m.n() });
            }
            let total = m.row_sum(i);
            if total <= S::zero() {
                return Err(Error::ZeroRow { row: i });
            }
            Ok(m.mass_into(i, set) / total)
        })
        .collect()
}

/// Smallest internal ratio over the set; `set` is `q`-cohesive iff this is `>= q`.
pub fn cohesiveness<S: Scalar>(set: &[usize], m: &WeightedGraph<S>) -> Result<S> {
    Ok(internal_ratios(set, m)?.into_iter().fold(S::infinity(), S::min))
}

/// Largest internal ratio over the set; `set` is `q`-diffusive iff this is `< q`.
pub fn diffusiveness<S: Scalar>(set: &[usize], m: &WeightedGraph<S>) -> Result<S> {
    Ok(internal_ratios(set, m)?.into_iter().fold(S::neg_infinity(), S::max))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Classification {
    Consensus {
        action: Action,
    },
    /// Every agent aligned, both camps nonempty.
    Polarized {
        positive: Vec<usize>,
        negative: Vec<usize>,
    },
    Mixed,
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::Consensus { action: Action::Plus } => "consensus_plus",
            Classification::Consensus { action: Action::Minus } => "consensus_minus",
            Classification::Polarized { .. } => "polarized",
            Classification::Mixed => "mixed",
        }
    }
}

/// Opinion tolerance used when recognising a consensus.
pub const CONSENSUS_TOL: f64 = 1e-9;

pub fn classify_state<S: Scalar>(z: &PopulationState<S>) -> Classification {
    let tol = S::lit(CONSENSUS_TOL);
    for a in [Action::Plus, Action::Minus] {
        let target: S = a.value();
        let all = (0..z.n()).all(|i| z.action(i) == a && (z.y(i) - target).abs() <= tol);
        if all {
            return Classification::Consensus { action: a };
        }
    }
    let p = partition_state(z);
    if p.aligned() == z.n() && !p.plus_plus.is_empty() && !p.minus_minus.is_empty() {
        Classification::Polarized { positive: p.plus_plus, negative: p.minus_minus }
    } else {
        Classification::Mixed
    }
}
