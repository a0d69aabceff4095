use serde::Serialize;

use crate::error::{Error, Result};
use crate::netcore::{Action, AgentParams, PopulationState, TwoLayerNetwork};
use crate::scalar::Scalar;

/// Default payoff slack for equilibrium checks.
pub const NASH_TOL: f64 = 1e-10;

fn check(i: usize, z: &PopulationState<impl Scalar>, n: usize) -> Result<()> {
    if i >= n {
        return Err(Error::Index { index: i, n });
    }
    z.check_size(n)
}

/// Payoff of agent `i` for playing `(action, opinion)` while everyone else
/// keeps their strategy in `z`. Wherever agent `i` itself appears in a sum
/// (self-loops), the candidate strategy is used.
pub fn payoff<S: Scalar>(
    i: usize,
    action: Action,
    opinion: S,
    z: &PopulationState<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
) -> Result<S> {
    check(i, z, net.n())?;
    Ok(payoff_unchecked(i, action, opinion, z, net, params))
}

pub(crate) fn payoff_unchecked<S: Scalar>(
    i: usize,
    action: Action,
    opinion: S,
    z: &PopulationState<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
) -> S {
    let one = S::one();
    let two = S::lit(2.0);
    let four = S::lit(4.0);
    let (lambda, beta, alpha) = (params.lambda(i), params.beta(i), params.alpha());
    let xi: S = action.value();
    let x = |j: usize| if j == i { xi } else { z.x(j) };
    let y = |j: usize| if j == i { opinion } else { z.y(j) };

    let mut game = S::zero();
    for (j, &a) in net.a().row(i).iter().enumerate() {
        if a != S::zero() {
            let xj = x(j);
            game += a * ((one - xi) * (one - xj) + (one + alpha) * (one + xi) * (one + xj));
        }
    }
    let mut social = S::zero();
    for (j, &w) in net.w().row(i).iter().enumerate() {
        if w != S::zero() {
            let d = opinion - y(j);
            social += w * d * d;
        }
    }
    let consistency = (opinion - xi) * (opinion - xi);

    params.epsilon(i) * lambda * (one - beta) / four * game
        - (one - lambda) * beta / two * social
        - lambda * beta / two * consistency
}

/// Opinion maximizing agent `i`'s payoff once it commits to `action`.
///
/// Setting the derivative of the concave quadratic to zero gives
/// `y = ((1 - lambda) sum_{j != i} w_ij y_j + lambda x) / ((1 - lambda) sum_{j != i} w_ij + lambda)`;
/// the self-loop term drops out because it compares `y_i` with itself.
pub fn optimal_opinion<S: Scalar>(
    i: usize,
    action: Action,
    z: &PopulationState<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
) -> S {
    let lambda = params.lambda(i);
    let one = S::one();
    let (mut num, mut mass) = (S::zero(), S::zero());
    for (j, &w) in net.w().row(i).iter().enumerate() {
        if j != i {
            num += w * z.y(j);
            mass += w;
        }
    }
    let y = ((one - lambda) * num + lambda * action.value::<S>()) / ((one - lambda) * mass + lambda);
    y.max(-one).min(one)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResponseOption<S> {
    pub action: Action,
    pub opinion: S,
    pub payoff: S,
}

/// Both candidate actions with their optimal opinions, and which of them
/// maximize the payoff.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BestResponse<S> {
    pub minus: ResponseOption<S>,
    pub plus: ResponseOption<S>,
    /// Payoff of the `+1` option minus that of the `-1` option.
    pub gap: S,
    pub maximizers: Vec<ResponseOption<S>>,
}

impl<S: Scalar> BestResponse<S> {
    pub fn is_tie(&self) -> bool {
        self.maximizers.len() == 2
    }

    pub fn best_payoff(&self) -> S {
        self.minus.payoff.max(self.plus.payoff)
    }

    /// The maximizer kept by the inertia rule: the one matching `current` on a tie.
    pub fn select(&self, current: Action) -> ResponseOption<S> {
        if self.is_tie() {
            if current == Action::Plus {
                self.plus
            } else {
                self.minus
            }
        } else {
            self.maximizers[0]
        }
    }
}

/// Maximizers of agent `i`'s payoff against `z_{-i}`. Options whose payoffs
/// differ by at most `tie_tol` are both reported.
pub fn best_response_set<S: Scalar>(
    i: usize,
    z: &PopulationState<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
    tie_tol: S,
) -> Result<BestResponse<S>> {
    check(i, z, net.n())?;
    Ok(best_response_unchecked(i, z, net, params, tie_tol))
}

pub(crate) fn best_response_unchecked<S: Scalar>(
    i: usize,
    z: &PopulationState<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
    tie_tol: S,
) -> BestResponse<S> {
    let option = |action| {
        let opinion = optimal_opinion(i, action, z, net, params);
        ResponseOption { action, opinion, payoff: payoff_unchecked(i, action, opinion, z, net, params) }
    };
    let (minus, plus) = (option(Action::Minus), option(Action::Plus));
    let gap = plus.payoff - minus.payoff;
    let maximizers = if gap.abs() <= tie_tol {
        vec![minus, plus]
    } else if gap > S::zero() {
        vec![plus]
    } else {
        vec![minus]
    };
    BestResponse { minus, plus, gap, maximizers }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NashReport<S> {
    pub holds: bool,
    /// `f_i(z_i, z_{-i}) - max_z' f_i(z', z_{-i})`; never positive, and the
    /// profile is an equilibrium iff every entry is at least `-tol`.
    pub slack: Vec<S>,
    pub tol: S,
}

impl<S: Scalar> NashReport<S> {
    /// Agents whose deviation gain exceeds the tolerance.
    pub fn violators(&self) -> Vec<usize> {
        (0..self.slack.len()).filter(|&i| self.slack[i] < -self.tol).collect()
    }
}

/// Nash test by payoff comparison: no agent can gain more than `tol` by
/// switching to either action paired with its best opinion.
pub fn is_nash<S: Scalar>(
    z: &PopulationState<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
    tol: S,
) -> Result<NashReport<S>> {
    let n = net.n();
    z.check_size(n)?;
    let slack: Vec<S> = (0..n)
        .map(|i| {
            let current = payoff_unchecked(i, z.action(i), z.y(i), z, net, params);
            let br = best_response_unchecked(i, z, net, params, S::zero());
            (current - br.best_payoff()).min(S::zero())
        })
        .collect();
    let holds = slack.iter().all(|&s| s >= -tol);
    Ok(NashReport { holds, slack, tol })
}

/// Set-membership test: `z_i` is one of the maximizers (payoff ties within
/// `payoff_tol`, opinion within `opinion_tol` of the maximizing opinion).
pub fn is_best_response<S: Scalar>(
    i: usize,
    z: &PopulationState<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
    payoff_tol: S,
    opinion_tol: S,
) -> Result<bool> {
    let br = best_response_set(i, z, net, params, payoff_tol)?;
    Ok(br.maximizers.iter().any(|o| o.action == z.action(i) && (o.opinion - z.y(i)).abs() <= opinion_tol))
}
