use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScheduleKind {
    /// Agents `0, 1, ..., n-1, 0, ...`, one per step.
    RoundRobin,
    /// One agent per step drawn uniformly with a ChaCha8 stream.
    UniformRandom { seed: u64 },
    /// A finite list of active sets; the run ends when it is exhausted.
    Explicit(Vec<Vec<usize>>),
}

/// Bound `T` such that every agent is active in every window of `T` steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Persistence {
    Certified(usize),
    Unverified,
}

impl Persistence {
    pub fn bound(self) -> Option<usize> {
        match self {
            Persistence::Certified(t) => Some(t),
            Persistence::Unverified => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivationSchedule {
    n: usize,
    kind: ScheduleKind,
}

impl ActivationSchedule {
    pub fn round_robin(n: usize) -> Self {
        Self { n, kind: ScheduleKind::RoundRobin }
    }

    pub fn uniform_random(n: usize, seed: u64) -> Self {
        Self { n, kind: ScheduleKind::UniformRandom { seed } }
    }

    pub fn explicit(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        for set in &sets {
            if let Some(&bad) = set.iter().find(|&&i| i >= n) {
                return Err(Error::Index { index: bad, n });
            }
        }
        Ok(Self { n, kind: ScheduleKind::Explicit(sets) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &ScheduleKind {
        &self.kind
    }

    pub fn seed(&self) -> Option<u64> {
        match self.kind {
            ScheduleKind::UniformRandom { seed } => Some(seed),
            _ => None,
        }
    }

    /// Finite length of an explicit schedule; `None` for the unbounded kinds.
    pub fn len(&self) -> Option<usize> {
        match &self.kind {
            ScheduleKind::Explicit(sets) => Some(sets.len()),
            _ => None,
        }
    }

    /// Bound that holds for the whole schedule. Random schedules carry no
    /// deterministic bound; explicit schedules are scanned end to end.
    pub fn persistence(&self) -> Persistence {
        match &self.kind {
            ScheduleKind::RoundRobin => Persistence::Certified(self.n),
            ScheduleKind::UniformRandom { .. } => Persistence::Unverified,
            ScheduleKind::Explicit(sets) => persistence_of(sets, self.n),
        }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            ScheduleKind::RoundRobin => "round_robin".into(),
            ScheduleKind::UniformRandom { seed } => format!("uniform_random(seed={seed})"),
            ScheduleKind::Explicit(sets) => format!("explicit(len={})", sets.len()),
        }
    }

    pub fn activations(&self) -> Activations<'_> {
        let rng = match self.kind {
            ScheduleKind::UniformRandom { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        Activations { schedule: self, t: 0, rng }
    }
}

pub struct Activations<'a> {
    schedule: &'a ActivationSchedule,
    t: usize,
    rng: Option<ChaCha8Rng>,
}

impl Iterator for Activations<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let n = self.schedule.n;
        let out = match &self.schedule.kind {
            ScheduleKind::RoundRobin => vec![self.t % n],
            ScheduleKind::UniformRandom { .. } => {
                vec![self.rng.as_mut().expect("seeded").gen_range(0..n)]
            }
            ScheduleKind::Explicit(sets) => sets.get(self.t)?.clone(),
        };
        self.t += 1;
        Some(out)
    }
}

/// Smallest `T` such that every length-`T` window of the first `horizon` steps
/// contains every agent.
pub fn verify_persistence(schedule: &ActivationSchedule, horizon: usize) -> Persistence {
    if horizon == 0 {
        return Persistence::Unverified;
    }
    let prefix: Vec<Vec<usize>> = schedule.activations().take(horizon).collect();
    persistence_of(&prefix, schedule.n)
}

/// Window bound of a realized activation sequence.
///
/// For each agent with occurrence times `p_1 < ... < p_k` in a sequence of
/// length `H`, the tightest window is `max(p_1 + 1, H - p_k, max gap)`.
pub fn persistence_of(sequence: &[Vec<usize>], n: usize) -> Persistence {
    let h = sequence.len();
    let mut first = vec![usize::MAX; n];
    let mut last = vec![0usize; n];
    let mut gap = vec![0usize; n];
    for (t, set) in sequence.iter().enumerate() {
        for &i in set {
            if i >= n {
                continue;
            }
            if first[i] == usize::MAX {
                first[i] = t;
            } else if t > last[i] {
                gap[i] = gap[i].max(t - last[i]);
            }
            last[i] = t;
        }
    }
    let mut bound = 0;
    for i in 0..n {
        if first[i] == usize::MAX {
            return Persistence::Unverified;
        }
        bound = bound.max(first[i] + 1).max(h - last[i]).max(gap[i]);
    }
    if bound == 0 {
        Persistence::Unverified
    } else {
        Persistence::Certified(bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct window scan, independent of the gap formula.
    fn brute(seq: &[Vec<usize>], n: usize) -> Persistence {
        (1..=seq.len())
            .find(|&t| seq.windows(t).all(|w| (0..n).all(|i| w.iter().any(|s| s.contains(&i)))))
            .map_or(Persistence::Unverified, Persistence::Certified)
    }

    #[test]
    fn round_robin_bound() {
        let s = ActivationSchedule::round_robin(5);
        assert_eq!(s.persistence(), Persistence::Certified(5));
        assert_eq!(verify_persistence(&s, 23), Persistence::Certified(5));
    }

    #[test]
    fn explicit_bounds() {
        let s = ActivationSchedule::explicit(2, vec![vec![0], vec![0], vec![1]]).unwrap();
        assert_eq!(verify_persistence(&s, 10), Persistence::Certified(3));
        let s = ActivationSchedule::explicit(2, vec![vec![0]; 6]).unwrap();
        assert_eq!(verify_persistence(&s, 6), Persistence::Unverified);
        assert!(ActivationSchedule::explicit(2, vec![vec![2]]).is_err());
    }

    #[test]
    fn gap_formula_matches_window_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..5);
            let h = rng.gen_range(1..25);
            let seq: Vec<Vec<usize>> = (0..h).map(|_| (0..n).filter(|_| rng.gen_bool(0.4)).collect()).collect();
            assert_eq!(persistence_of(&seq, n), brute(&seq, n), "{seq:?}");
        }
    }

    #[test]
    fn random_schedule_is_reproducible() {
        let s = ActivationSchedule::uniform_random(7, 99);
        let a: Vec<_> = s.activations().take(50).collect();
        let b: Vec<_> = s.activations().take(50).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|set| set.len() == 1 && set[0] < 7));
    }
}
