//! Asynchronous best-response engine.
//!
//! An active agent `i` switches to `x_i' = S(delta_i)` and moves its opinion to
//! `y_i' = (1 - lambda_i) sum_j w_ij y_j + lambda_i S(delta_i)`, where `S` is the
//! sign of the discriminant with ties resolved in favour of the current action.

mod export;
mod schedule;
mod simulate;

pub use export::{trace_csv, trace_jsonl, write_trace_csv, write_trace_jsonl};
pub use schedule::{persistence_of, verify_persistence, ActivationSchedule, Persistence, ScheduleKind};
pub use simulate::{simulate, SimOptions, StopCriterion, StopReason, Trace, TraceMeta};

use crate::error::{Error, Result};
use crate::netcore::{Action, AgentParams, PopulationState, TwoLayerNetwork};
use crate::scalar::Scalar;

/// Discriminant `delta_i(z)`; its sign decides agent `i`'s best action.
///
/// Both sums run over every `j`, self-loops included.
pub fn discriminant<S: Scalar>(
    i: usize,
    z: &PopulationState<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
) -> Result<S> {
    let n = net.n();
    if i >= n {
        return Err(Error::Index { index: i, n });
    }
    z.check_size(n)?;
    Ok(discriminant_unchecked(i, z, net, params))
}

pub(crate) fn discriminant_unchecked<S: Scalar>(
    i: usize,
    z: &PopulationState<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
) -> S {
    let one = S::one();
    let two = S::lit(2.0);
    let (lambda, beta, alpha) = (params.lambda(i), params.beta(i), params.alpha());

    let mut action_sum = S::zero();
    for (j, &a) in net.a().row(i).iter().enumerate() {
        if a != S::zero() {
            let xj = z.x(j);
            action_sum += a * (two * xj + alpha * (one + xj));
        }
    }
    let mut opinion_sum = S::zero();
    for (j, &w) in net.w().row(i).iter().enumerate() {
        opinion_sum += w * z.y(j);
    }
    params.epsilon(i) * lambda * (one - beta) / two * action_sum + two * (one - lambda) * lambda * beta * opinion_sum
}

/// `+1` above the tie band, `-1` below it, `current` inside `[-tie_tol, tie_tol]`.
pub fn sign_with_inertia<S: Scalar>(delta: S, current: Action, tie_tol: S) -> Action {
    if delta > tie_tol {
        Action::Plus
    } else if delta < -tie_tol {
        Action::Minus
    } else {
        current
    }
}

/// One update. Every discriminant is evaluated on the pre-step state, so the
/// result does not depend on the order of `active`. Returns the new state and
/// `(agent, delta)` for each updated agent.
pub fn step<S: Scalar>(
    z: &PopulationState<S>,
    active: &[usize],
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
    tie_tol: S,
) -> Result<(PopulationState<S>, Vec<(usize, S)>)> {
    let n = net.n();
    z.check_size(n)?;
    if let Some(&bad) = active.iter().find(|&&i| i >= n) {
        return Err(Error::Index { index: bad, n });
    }
    let mut next = z.clone();
    let mut deltas = Vec::with_capacity(active.len());
    for &i in active {
        if deltas.iter().any(|&(k, _)| k == i) {
            continue;
        }
        let delta = discriminant_unchecked(i, z, net, params);
        let action = sign_with_inertia(delta, z.action(i), tie_tol);
        next.set_agent(i, action, updated_opinion(i, z, net, params, action));
        deltas.push((i, delta));
    }
    Ok((next, deltas))
}

fn updated_opinion<S: Scalar>(
    i: usize,
    z: &PopulationState<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
    action: Action,
) -> S {
    let lambda = params.lambda(i);
    let mut avg = S::zero();
    for (j, &w) in net.w().row(i).iter().enumerate() {
        avg += w * z.y(j);
    }
    let y = (S::one() - lambda) * avg + lambda * action.value::<S>();
    // convex combination of values in [-1, 1]; only rounding can push it out
    debug_assert!(y.abs() <= S::one() + S::lit(1e-9), "opinion {y} escaped [-1, 1]");
    y.max(-S::one()).min(S::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::{AgentKind, WeightedGraph};

    fn pair() -> TwoLayerNetwork<f64> {
        TwoLayerNetwork::single(WeightedGraph::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()).unwrap()
    }

    fn state(x: &[f64], y: &[f64]) -> PopulationState<f64> {
        PopulationState::from_values(x, y.to_vec()).unwrap()
    }

    #[test]
    fn consensus_discriminant_closed_form() {
        let (l, b, a) = (0.3, 0.7, 0.5);
        let net = pair();
        let p = AgentParams::uniform(2, l, b, AgentKind::Coordinating, a).unwrap();
        let z = PopulationState::consensus(2, Action::Plus);
        let d = discriminant(0, &z, &net, &p).unwrap();
        let expected = l * (1.0 - b) * (1.0 + a) + 2.0 * l * b * (1.0 - l);
        assert!((d - expected).abs() < 1e-15);
        assert!(d > 0.0);
    }

    #[test]
    fn toy_pair_discriminants() {
        let net = pair();
        let coord = AgentParams::uniform(2, 0.5, 0.5, AgentKind::Coordinating, 0.0).unwrap();
        // 0.125 * (2 * -1) + 0.25 * (-0.5) = -0.375
        let d = discriminant(0, &state(&[1.0, -1.0], &[0.5, -0.5]), &net, &coord).unwrap();
        assert_eq!(d, -0.375);

        let anti = AgentParams::uniform(2, 0.5, 0.5, AgentKind::AntiCoordinating, 0.0).unwrap();
        let z = state(&[1.0, -1.0], &[1.0 / 3.0, -1.0 / 3.0]);
        // -0.125 * (2 * -1) + 0.25 * (-1/3) = 1/6
        assert!((discriminant(0, &z, &net, &anti).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!((discriminant(1, &z, &net, &anti).unwrap() + 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(discriminant(2, &z, &net, &anti), Err(Error::Index { index: 2, n: 2 }));
    }

    #[test]
    fn inertia_rule() {
        assert_eq!(sign_with_inertia(0.3, Action::Minus, 0.0), Action::Plus);
        assert_eq!(sign_with_inertia(0.0, Action::Minus, 0.0), Action::Minus);
        assert_eq!(sign_with_inertia(-1e-13, Action::Plus, 1e-12), Action::Plus);
        assert_eq!(sign_with_inertia(-2e-12, Action::Plus, 1e-12), Action::Minus);
    }

    #[test]
    fn step_toy_pair() {
        let net = pair();
        let p = AgentParams::uniform(2, 0.5, 0.5, AgentKind::Coordinating, 0.0).unwrap();
        let z = state(&[1.0, -1.0], &[0.5, -0.5]);
        let (next, deltas) = step(&z, &[0], &net, &p, 0.0).unwrap();
        assert_eq!(next.action(0), Action::Minus);
        assert_eq!(next.y(0), -0.75);
        assert_eq!((next.action(1), next.y(1)), (Action::Minus, -0.5));
        assert_eq!(deltas, vec![(0, -0.375)]);
    }

    #[test]
    fn consensus_is_fixed() {
        let net = pair();
        let p = AgentParams::uniform(2, 0.4, 0.9, AgentKind::Coordinating, 1.0).unwrap();
        let z = PopulationState::consensus(2, Action::Plus);
        let (next, _) = step(&z, &[0, 1], &net, &p, 0.0).unwrap();
        assert_eq!(next, z);
    }

    #[test]
    fn simultaneous_updates_are_order_free() {
        let net = pair();
        let p = AgentParams::uniform(2, 0.5, 0.5, AgentKind::Coordinating, 0.0).unwrap();
        let z = state(&[1.0, -1.0], &[0.5, -0.5]);
        let (a, _) = step(&z, &[0, 1], &net, &p, 0.0).unwrap();
        let (b, _) = step(&z, &[1, 0], &net, &p, 0.0).unwrap();
        assert_eq!(a, b);
    }
}
