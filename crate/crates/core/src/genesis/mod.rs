//! Seeded construction of networks and initial states.
//!
//! All randomness comes from ChaCha8 (`rand_chacha`) seeded through
//! `SeedableRng::seed_from_u64`, so outputs are identical across platforms.
//! Weights are computed in `f64` and cast to the target scalar at the end.

mod generators;
mod scaling;

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use generators::{
    complete_bipartite, condition_rescaled, random_symmetric_stochastic, CrossWeights, MARGIN, MAX_ATTEMPTS,
};
pub use scaling::{rectangular_scale, symmetric_scale};

use crate::analysis::TheoremId;
use crate::error::{Error, Result};
use crate::netcore::{Action, AgentParams, PopulationState, WeightedGraph};
use crate::scalar::Scalar;

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent seed for retry `k` of a seeded procedure.
pub fn sub_seed(seed: u64, k: u64) -> u64 {
    seed ^ k.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17)
}

/// Both sides nonempty, disjoint, and covering `0..n`.
pub fn validate_partition(vp: &[usize], vn: &[usize], n: usize) -> Result<()> {
    if vp.is_empty() || vn.is_empty() {
        return Err(Error::Partition("both sides must be nonempty".into()));
    }
    let mut seen = vec![false; n];
    for &i in vp.iter().chain(vn) {
        if i >= n {
            return Err(Error::Index { index: i, n });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::Partition(format!("agent {} appears twice", i + 1)));
        }
    }
    match seen.iter().position(|s| !s) {
        Some(i) => Err(Error::Partition(format!("agent {} is on neither side", i + 1))),
        None => Ok(()),
    }
}

/// `"1-3,7"` style list of 1-based indices, from sorted 0-based input.
pub fn format_index_set(set: &[usize]) -> String {
    let mut out = String::new();
    let mut k = 0;
    while k < set.len() {
        let start = set[k];
        let mut end = start;
        while k + 1 < set.len() && set[k + 1] == end + 1 {
            k += 1;
            end = set[k];
        }
        if !out.is_empty() {
            out.push(',');
        }
        if end == start {
            write!(out, "{}", start + 1).unwrap();
        } else {
            write!(out, "{}-{}", start + 1, end + 1).unwrap();
        }
        k += 1;
    }
    out
}

/// Inverse of [`format_index_set`]; returns sorted, deduplicated 0-based indices.
pub fn parse_index_set(text: &str, n: usize) -> Result<Vec<usize>> {
    let bad = |msg: String| Error::Parse { line: 0, msg };
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (a, b) = part.split_once('-').unwrap_or((part, part));
        let a: usize = a.trim().parse().map_err(|_| bad(format!("bad index {part:?}")))?;
        let b: usize = b.trim().parse().map_err(|_| bad(format!("bad index {part:?}")))?;
        if a == 0 || b < a || b > n {
            return Err(bad(format!("range {part:?} outside 1..={n}")));
        }
        out.extend(a - 1..b);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Indices of `0..n` not in `set`.
pub fn complement(set: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|i| !set.contains(i)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenKind {
    RandomSymmetricStochastic,
    ConditionRescaled { theorem: TheoremId, vp: Vec<usize>, vn: Vec<usize> },
    CompleteBipartite { vp: Vec<usize>, vn: Vec<usize>, cross: CrossWeights },
}

/// A fully specified, reproducible network recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub seed: u64,
    /// Honoured by the random generator; the structured ones always have a
    /// zero diagonal.
    pub zero_diagonal: bool,
}

impl GenSpec {
    pub fn random(n: usize, seed: u64) -> Self {
        Self { kind: GenKind::RandomSymmetricStochastic, n, seed, zero_diagonal: true }
    }

    /// `params` is needed only for the conditioned kind.
    pub fn generate<S: Scalar>(&self, params: Option<&AgentParams<S>>) -> Result<WeightedGraph<S>> {
        match &self.kind {
            GenKind::RandomSymmetricStochastic => random_symmetric_stochastic(self.n, self.seed, self.zero_diagonal),
            GenKind::ConditionRescaled { theorem, vp, vn } => {
                let params =
                    params.ok_or_else(|| Error::Infeasible("conditioned generation needs parameters".into()))?;
                condition_rescaled(*theorem, vp, vn, params, self.seed)
            }
            GenKind::CompleteBipartite { vp, vn, cross } => complete_bipartite(vp, vn, *cross, self.seed),
        }
    }

    /// The `[network]` section of a scenario file describing this recipe.
    pub fn to_config(&self) -> String {
        let mut s = String::from("[network]\n");
        let kind = match &self.kind {
            GenKind::RandomSymmetricStochastic => "random",
            GenKind::ConditionRescaled { .. } => "conditioned",
            GenKind::CompleteBipartite { .. } => "bipartite",
        };
        writeln!(s, "generator = {kind}").unwrap();
        writeln!(s, "n = {}", self.n).unwrap();
        writeln!(s, "seed = {}", self.seed).unwrap();
        writeln!(s, "zero_diagonal = {}", self.zero_diagonal).unwrap();
        match &self.kind {
            GenKind::RandomSymmetricStochastic => {}
            GenKind::ConditionRescaled { theorem, vp, .. } => {
                writeln!(s, "theorem = {theorem}").unwrap();
                writeln!(s, "positive = {}", format_index_set(vp)).unwrap();
            }
            GenKind::CompleteBipartite { vp, cross, .. } => {
                writeln!(s, "positive = {}", format_index_set(vp)).unwrap();
                let c = if *cross == CrossWeights::Uniform { "uniform" } else { "random" };
                writeln!(s, "cross = {c}").unwrap();
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitialKind {
    /// `x = +1`, `y` in `(0, 1]` on `vp`; `x = -1`, `y` in `[-1, 0)` on `vn`.
    Polarized { vp: Vec<usize>, vn: Vec<usize> },
    /// Uniform actions, `y` in `(0, 1]`.
    PositiveOpinions,
    /// Uniform actions, `y` uniform in `[-1, 1]`.
    Random,
}

pub fn initial_state<S: Scalar>(kind: &InitialKind, n: usize, seed: u64) -> Result<PopulationState<S>> {
    let mut r = rng(seed);
    let unit_open_low = |r: &mut ChaCha8Rng| 1.0 - r.gen::<f64>();
    let (x, y): (Vec<Action>, Vec<f64>) = match kind {
        InitialKind::Polarized { vp, vn } => {
            validate_partition(vp, vn, n)?;
            let mut x = vec![Action::Minus; n];
            for &i in vp {
                x[i] = Action::Plus;
            }
            let y = x
                .iter()
                .map(|a| if *a == Action::Plus { unit_open_low(&mut r) } else { -unit_open_low(&mut r) })
                .collect();
            (x, y)
        }
        InitialKind::PositiveOpinions => (0..n)
            .map(|_| {
                let a = if r.gen_bool(0.5) { Action::Plus } else { Action::Minus };
                (a, unit_open_low(&mut r))
            })
            .unzip(),
        InitialKind::Random => (0..n)
            .map(|_| {
                let a = if r.gen_bool(0.5) { Action::Plus } else { Action::Minus };
                (a, r.gen_range(-1.0..=1.0))
            })
            .unzip(),
    };
    PopulationState::new(x, y.into_iter().map(S::lit).collect())
}
