use serde::Serialize;

use crate::error::Result;
use crate::netcore::{AgentKind, AgentParams, PopulationState, TwoLayerNetwork};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Potential<S> {
    pub value: S,
    /// Homogeneous anti-coordinating agents on symmetric layers with a
    /// zero-diagonal action layer. Outside this regime the value is still
    /// computed but carries no ordinal guarantee.
    pub valid: bool,
}

/// `eta_i = lambda_i (1 - beta_i) / (4 beta_i (1 - lambda_i))`.
pub fn eta<S: Scalar>(lambda: S, beta: S) -> S {
    lambda * (S::one() - beta) / (S::lit(4.0) * beta * (S::one() - lambda))
}

/// Potential of the anti-coordination game:
///
/// `Phi = - sum_i sum_{j != i} eta_i a_ij / 2 [(1-x_i)(1-x_j) + (1+alpha)(1+x_i)(1+x_j)]
///        - 1/2 sum_i sum_j w_ij / 2 (y_i - y_j)^2
///        - 1/2 sum_k lambda_k / (1 - lambda_k) (x_k - y_k)^2`.
///
/// The bracket is the same one that appears in the payoff; with it, a
/// unilateral change of agent `i` moves `Phi` by exactly
/// `delta f_i / (beta (1 - lambda))`.
pub fn potential<S: Scalar>(
    z: &PopulationState<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
) -> Result<Potential<S>> {
    let n = net.n();
    z.check_size(n)?;
    let one = S::one();
    let two = S::lit(2.0);
    let alpha = params.alpha();

    let mut game = S::zero();
    for i in 0..n {
        let xi = z.x(i);
        let eta_i = eta(params.lambda(i), params.beta(i));
        for (j, &a) in net.a().row(i).iter().enumerate() {
            if j == i || a == S::zero() {
                continue;
            }
            let xj = z.x(j);
            game += eta_i * a / two * ((one - xi) * (one - xj) + (one + alpha) * (one + xi) * (one + xj));
        }
    }
    let mut social = S::zero();
    for i in 0..n {
        for (j, &w) in net.w().row(i).iter().enumerate() {
            let d = z.y(i) - z.y(j);
            social += w / two * d * d;
        }
    }
    let mut consistency = S::zero();
    for k in 0..n {
        let l = params.lambda(k);
        let d = z.x(k) - z.y(k);
        consistency += l / (one - l) * d * d;
    }

    let valid = params.homogeneous().is_some_and(|h| h.kind == AgentKind::AntiCoordinating)
        && net.is_symmetric()
        && net.a().has_zero_diagonal();
    Ok(Potential { value: -game - social / two - consistency / two, valid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::payoff;
    use crate::netcore::{Action, WeightedGraph};

    fn triangle() -> TwoLayerNetwork<f64> {
        let h = 0.5;
        TwoLayerNetwork::single(WeightedGraph::from_rows(&[vec![0.0, h, h], vec![h, 0.0, h], vec![h, h, 0.0]]).unwrap())
            .unwrap()
    }

    #[test]
    fn consensus_value() {
        let net = triangle();
        let p = AgentParams::uniform(3, 0.5, 0.5, AgentKind::AntiCoordinating, 0.0).unwrap();
        let phi = potential(&PopulationState::consensus(3, Action::Plus), &net, &p).unwrap();
        assert!(phi.valid);
        // each i contributes eta * 1/2 * 4 = 2 eta = 1/2
        assert!((phi.value + 1.5).abs() < 1e-15);
    }

    #[test]
    fn aligned_state_has_no_consistency_term() {
        let net = triangle();
        let p = AgentParams::uniform(3, 0.3, 0.6, AgentKind::AntiCoordinating, 0.0).unwrap();
        let z = PopulationState::from_values(&[1.0, -1.0, 1.0], vec![1.0, -1.0, 1.0]).unwrap();
        let phi = potential(&z, &net, &p).unwrap().value;
        let e = eta(0.3, 0.6);
        // pairs (0,2) agree on +1: bracket 4; mixed pairs: bracket 0
        let game = 2.0 * e * 0.25 * 4.0;
        let social = 4.0 * 0.25 * 4.0;
        assert!((phi + game + social / 2.0).abs() < 1e-14);
    }

    #[test]
    fn unilateral_change_scales_payoff_change() {
        let net = triangle();
        let (l, b) = (0.35, 0.7);
        let p = AgentParams::uniform(3, l, b, AgentKind::AntiCoordinating, 0.4).unwrap();
        let z = PopulationState::from_values(&[1.0, -1.0, 1.0], vec![0.2, -0.6, 0.9]).unwrap();
        let dz = z.with_agent(1, Action::Plus, 0.1).unwrap();
        let df =
            payoff(1, Action::Plus, 0.1, &z, &net, &p).unwrap() - payoff(1, Action::Minus, -0.6, &z, &net, &p).unwrap();
        let dphi = potential(&dz, &net, &p).unwrap().value - potential(&z, &net, &p).unwrap().value;
        assert!((dphi - df / (b * (1.0 - l))).abs() < 1e-13, "{dphi} vs {df}");
    }

    #[test]
    fn validity_flag() {
        let net = triangle();
        let coord = AgentParams::uniform(3, 0.5, 0.5, AgentKind::Coordinating, 0.0).unwrap();
        let z = PopulationState::consensus(3, Action::Minus);
        assert!(!potential(&z, &net, &coord).unwrap().valid);
    }
}
