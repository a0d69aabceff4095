use serde::Serialize;

use super::schedule::{persistence_of, ActivationSchedule, Persistence, ScheduleKind};
use super::step;
use crate::error::{Error, Result};
use crate::netcore::{AgentParams, PopulationState, TwoLayerNetwork};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StopCriterion<S> {
    pub max_steps: usize,
    /// Largest per-step opinion change still counted as "at rest".
    pub opinion_tol: S,
    /// Quiet steps required before declaring convergence; `None` derives it
    /// from the schedule.
    pub window: Option<usize>,
}

impl<S: Scalar> StopCriterion<S> {
    /// `600 * n` steps, opinion tolerance `1e-10`, schedule-derived window.
    pub fn for_agents(n: usize) -> Self {
        Self { max_steps: 600 * n, opinion_tol: S::lit(1e-10), window: None }
    }

    fn validate(&self, window: usize) -> Result<()> {
        if !(self.opinion_tol > S::zero()) {
            return Err(Error::StopCriterion("opinion_tol must be positive".into()));
        }
        if window == 0 || window > self.max_steps {
            return Err(Error::StopCriterion(format!("need max_steps ({}) >= window ({window}) >= 1", self.max_steps)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimOptions<S> {
    pub stop: StopCriterion<S>,
    /// Half-width of the band in which a discriminant counts as zero.
    pub tie_tol: S,
    /// Run explicit schedules that have no certified persistence bound.
    pub allow_unverified: bool,
}

impl<S: Scalar> SimOptions<S> {
    pub fn for_agents(n: usize) -> Self {
        Self { stop: StopCriterion::for_agents(n), tie_tol: S::zero(), allow_unverified: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Converged,
    MaxSteps,
    ScheduleExhausted,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceMeta<S> {
    pub n: usize,
    pub params: AgentParams<S>,
    pub schedule: String,
    pub seed: Option<u64>,
    pub tie_tol: S,
}

/// Full record of a run. `active[t]` and `deltas[t]` describe the step taking
/// `states[t]` to `states[t + 1]`.
#[derive(Debug, Clone)]
pub struct Trace<S> {
    pub states: Vec<PopulationState<S>>,
    pub active: Vec<Vec<usize>>,
    pub deltas: Vec<Vec<(usize, S)>>,
    pub converged: bool,
    pub stop: StopReason,
    /// Quiet window used for convergence detection.
    pub window: usize,
    /// Persistence bound of the activations actually performed.
    pub realized_persistence: Persistence,
    pub meta: TraceMeta<S>,
}

impl<S: Scalar> Trace<S> {
    pub fn initial(&self) -> &PopulationState<S> {
        &self.states[0]
    }

    pub fn last(&self) -> &PopulationState<S> {
        self.states.last().expect("trace holds at least the initial state")
    }

    pub fn steps(&self) -> usize {
        self.active.len()
    }

    /// Step at which the action profile last changed (0 if it never did).
    pub fn action_settle_step(&self) -> usize {
        self.states.windows(2).rposition(|w| w[0].actions() != w[1].actions()).map_or(0, |t| t + 1)
    }
}

fn default_window(schedule: &ActivationSchedule, persistence: Persistence) -> usize {
    let n = schedule.n();
    match schedule.kind() {
        ScheduleKind::RoundRobin => n,
        ScheduleKind::UniformRandom { .. } => {
            let coupon = (n as f64 * (n as f64).ln()).ceil() as usize;
            coupon.max(n)
        }
        ScheduleKind::Explicit(_) => persistence.bound().unwrap_or(n),
    }
}

/// Iterates [`step`] along the schedule until the population is at rest or a
/// step budget runs out.
///
/// At rest means: for the last `window` steps no action changed, no opinion
/// moved by `opinion_tol` or more, and every agent the schedule ever activates
/// was activated inside that quiet stretch. Running out of steps is recorded
/// in the trace, not reported as an error.
pub fn simulate<S: Scalar>(
    z0: &PopulationState<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
    schedule: &ActivationSchedule,
    opts: &SimOptions<S>,
) -> Result<Trace<S>> {
    let n = net.n();
    z0.check_size(n)?;
    if params.n() != n {
        return Err(Error::ParamLength { name: "params", expected: n, got: params.n() });
    }
    if schedule.n() != n {
        return Err(Error::StateSize { n, got: schedule.n() });
    }
    let persistence = schedule.persistence();
    if let ScheduleKind::Explicit(_) = schedule.kind() {
        if persistence == Persistence::Unverified && !opts.allow_unverified {
            return Err(Error::UnverifiedSchedule);
        }
    }
    let window = opts.stop.window.unwrap_or_else(|| default_window(schedule, persistence));
    opts.stop.validate(window)?;

    let mut support = vec![false; n];
    match schedule.kind() {
        ScheduleKind::Explicit(sets) => sets.iter().flatten().for_each(|&i| support[i] = true),
        _ => support.iter_mut().for_each(|s| *s = true),
    }
    let support_size = support.iter().filter(|&&s| s).count();

    let mut states = vec![z0.clone()];
    let mut active = Vec::new();
    let mut deltas = Vec::new();
    let mut quiet = 0usize;
    let mut seen = vec![false; n];
    let mut seen_count = 0usize;
    let mut stop = StopReason::MaxSteps;
    let mut acts = schedule.activations();

    for _ in 0..opts.stop.max_steps {
        let Some(set) = acts.next() else {
            stop = StopReason::ScheduleExhausted;
            break;
        };
        let cur = states.last().expect("nonempty");
        let (next, ds) = step(cur, &set, net, params, opts.tie_tol)?;
        let moved = set
            .iter()
            .any(|&i| next.action(i) != cur.action(i) || (next.y(i) - cur.y(i)).abs() >= opts.stop.opinion_tol);
        if moved {
            quiet = 0;
            seen.iter_mut().for_each(|s| *s = false);
            seen_count = 0;
        } else {
            quiet += 1;
            for &i in &set {
                if support[i] && !seen[i] {
                    seen[i] = true;
                    seen_count += 1;
                }
            }
        }
        states.push(next);
        active.push(set);
        deltas.push(ds);
        if quiet >= window && seen_count == support_size {
            stop = StopReason::Converged;
            break;
        }
    }

    let realized_persistence = persistence_of(&active, n);
    Ok(Trace {
        states,
        active,
        deltas,
        converged: stop == StopReason::Converged,
        stop,
        window,
        realized_persistence,
        meta: TraceMeta {
            n,
            params: params.clone(),
            schedule: schedule.label(),
            seed: schedule.seed(),
            tie_tol: opts.tie_tol,
        },
    })
}
