//! Ground truth: exact opinion fixed points for frozen actions, exhaustive
//! equilibrium enumeration for small populations, and cross-checks of
//! simulation output and theorem verdicts against both.

mod linalg;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub use linalg::{residual, Lu};

use crate::analysis::{check_thm6, is_nash, TheoremReport, NASH_TOL};
use crate::dynamics::{discriminant_unchecked, Trace};
use crate::error::{Error, Result};
use crate::netcore::{classify_state, Action, AgentParams, Classification, PopulationState, TwoLayerNetwork};
use crate::scalar::Scalar;

/// Largest population `enumerate_equilibria` accepts by default.
pub const N_MAX: usize = 20;
/// Opinion tolerance when comparing a trace against the exact fixed point.
pub const OPINION_TOL: f64 = 1e-8;

/// The linear opinion map `M = I - (I - Lambda) W` with `Lambda = diag(lambda)`,
/// factored once; `y* = M^{-1} Lambda x` for any action profile `x`.
#[derive(Debug, Clone)]
pub struct OpinionSystem<S> {
    n: usize,
    m: Vec<S>,
    lu: Lu<S>,
    lambda: Vec<S>,
}

impl<S: Scalar> OpinionSystem<S> {
    pub fn new(net: &TwoLayerNetwork<S>, params: &AgentParams<S>) -> Result<Self> {
        let n = net.n();
        if params.n() != n {
            return Err(Error::ParamLength { name: "params", expected: n, got: params.n() });
        }
        let mut m = vec![S::zero(); n * n];
        for i in 0..n {
            let keep = S::one() - params.lambda(i);
            for (j, &w) in net.w().row(i).iter().enumerate() {
                m[i * n + j] = -keep * w;
            }
            m[i * n + i] += S::one();
        }
        let lu = Lu::factor(n, m.clone())?;
        Ok(Self { n, m, lu, lambda: params.lambdas().to_vec() })
    }

    /// Residual bound accepted for a direct solve.
    pub fn tolerance() -> S {
        S::lit(S::STOCHASTIC_TOL)
    }

    pub fn solve(&self, x: &[Action]) -> Result<Vec<S>> {
        if x.len() != self.n {
            return Err(Error::StateSize { n: self.n, got: x.len() });
        }
        let b: Vec<S> = x.iter().zip(&self.lambda).map(|(a, &l)| l * a.value::<S>()).collect();
        let y = self.lu.solve(&b);
        let r = residual(self.n, &self.m, &y, &b);
        if !(r <= Self::tolerance()) {
            return Err(Error::Residual { residual: r.as_f64(), tol: Self::tolerance().as_f64() });
        }
        // exact solutions lie in [-1, 1]; clamp rounding only
        Ok(y.into_iter().map(|v| v.max(-S::one()).min(S::one())).collect())
    }
}

/// Unique opinions consistent with frozen actions `x`:
/// `y_i = (1 - lambda_i) sum_j w_ij y_j + lambda_i x_i`.
pub fn opinion_fixed_point<S: Scalar>(
    x: &[Action],
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
) -> Result<Vec<S>> {
    OpinionSystem::new(net, params)?.solve(x)
}

/// Iterates the opinion update with `x` frozen, starting from `y0`, until the
/// largest change falls below `tol`. Returns the limit and the sweep count.
pub fn opinion_fixed_point_iterative<S: Scalar>(
    x: &[Action],
    y0: &[S],
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
    tol: S,
    max_sweeps: usize,
) -> Result<(Vec<S>, usize)> {
    let n = net.n();
    if x.len() != n || y0.len() != n {
        return Err(Error::StateSize { n, got: x.len().min(y0.len()) });
    }
    let mut y = y0.to_vec();
    for sweep in 1..=max_sweeps {
        let next: Vec<S> = (0..n)
            .map(|i| {
                let l = params.lambda(i);
                let avg: S = net.w().row(i).iter().zip(&y).map(|(&w, &v)| w * v).sum();
                (S::one() - l) * avg + l * x[i].value::<S>()
            })
            .collect();
        let change = next.iter().zip(&y).map(|(a, b)| (*a - *b).abs()).fold(S::zero(), S::max);
        y = next;
        if change < tol {
            return Ok((y, sweep));
        }
    }
    Err(Error::NotConverged)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumCandidate<S> {
    pub x: Vec<Action>,
    pub y_star: Vec<S>,
    /// No agent's discriminant contradicts its action.
    pub consistent: bool,
    /// Some discriminant lies within the tie band; the profile survives only
    /// through the inertia rule.
    pub marginal: bool,
    pub delta: Vec<S>,
}

impl<S: Scalar> EquilibriumCandidate<S> {
    pub fn state(&self) -> PopulationState<S> {
        PopulationState::new(self.x.clone(), self.y_star.clone()).expect("fixed point lies in [-1, 1]")
    }
}

fn candidate<S: Scalar>(
    x: Vec<Action>,
    sys: &OpinionSystem<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
) -> Result<EquilibriumCandidate<S>> {
    let y_star = sys.solve(&x)?;
    let z = PopulationState::new(x, y_star)?;
    let band = S::lit(NASH_TOL);
    let delta: Vec<S> = (0..net.n()).map(|i| discriminant_unchecked(i, &z, net, params)).collect();
    let mut consistent = true;
    let mut marginal = false;
    for (i, &d) in delta.iter().enumerate() {
        if d.abs() <= band {
            marginal = true;
        } else if (d > S::zero()) != (z.action(i) == Action::Plus) {
            consistent = false;
        }
    }
    Ok(EquilibriumCandidate { x: z.actions().to_vec(), y_star: z.opinions().to_vec(), consistent, marginal, delta })
}

/// Fixed point and discriminants for one action profile.
pub fn evaluate_profile<S: Scalar>(
    x: &[Action],
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
) -> Result<EquilibriumCandidate<S>> {
    let sys = OpinionSystem::new(net, params)?;
    candidate(x.to_vec(), &sys, net, params)
}

/// Action profile number `k` in lexicographic order with `-1 < +1`
/// (agent 0 is the most significant position).
pub fn profile(n: usize, k: u64) -> Vec<Action> {
    (0..n).map(|i| if k >> (n - 1 - i) & 1 == 1 { Action::Plus } else { Action::Minus }).collect()
}

/// Every action profile with its fixed point, rejected ones included. Holds
/// all `2^n` candidates in memory, so keep `n` small.
pub fn enumerate_profiles<S: Scalar>(
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
    n_max: usize,
) -> Result<Vec<EquilibriumCandidate<S>>> {
    let n = net.n();
    if n > n_max || n >= 63 {
        return Err(Error::TooLarge { n, n_max });
    }
    let sys = OpinionSystem::new(net, params)?;
    (0..1u64 << n).into_par_iter().map(|k| candidate(profile(n, k), &sys, net, params)).collect()
}

/// All pure equilibria, in lexicographic profile order. Each one is checked
/// against the payoff-based equilibrium test; a disagreement is an error.
pub fn enumerate_equilibria<S: Scalar>(
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
    n_max: usize,
) -> Result<Vec<EquilibriumCandidate<S>>> {
    let n = net.n();
    if n > n_max || n >= 63 {
        return Err(Error::TooLarge { n, n_max });
    }
    let sys = OpinionSystem::new(net, params)?;
    let kept = (0..1u64 << n)
        .into_par_iter()
        .filter_map(|k| match candidate(profile(n, k), &sys, net, params) {
            Ok(c) if !c.consistent => None,
            other => Some(other),
        })
        .collect::<Result<Vec<_>>>()?;
    for c in &kept {
        let nash = is_nash(&c.state(), net, params, S::lit(NASH_TOL))?;
        if !nash.holds {
            return Err(Error::OracleMismatch(format!(
                "consistent profile {} fails the payoff test at agents {:?}",
                fmt_profile(&c.x),
                nash.violators().iter().map(|i| i + 1).collect::<Vec<_>>()
            )));
        }
    }
    Ok(kept)
}

pub fn fmt_profile(x: &[Action]) -> String {
    x.iter().map(|a| if *a == Action::Plus { '+' } else { '-' }).collect()
}

/// `[{"x": [...], "y": [...], "marginal": bool}, ...]`.
pub fn equilibria_json<S: Scalar>(list: &[EquilibriumCandidate<S>]) -> Value {
    Value::Array(
        list.iter()
            .map(|c| {
                json!({
                    "x": c.x.iter().map(|a| a.sign()).collect::<Vec<_>>(),
                    "y": c.y_star.iter().map(|v| v.as_f64()).collect::<Vec<_>>(),
                    "marginal": c.marginal,
                })
            })
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossValidation<S> {
    pub n: usize,
    /// Whether the terminal profile was looked up in a full enumeration.
    pub enumerated: bool,
    pub equilibria: Option<usize>,
    pub max_opinion_error: S,
    pub marginal: bool,
}

/// Checks a converged trace against the oracle: the terminal action profile
/// must be an equilibrium (looked up in the full enumeration when
/// `n <= n_max`) and terminal opinions must match the exact fixed point.
pub fn cross_validate<S: Scalar>(
    trace: &Trace<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
    n_max: usize,
) -> Result<CrossValidation<S>> {
    if !trace.converged {
        return Err(Error::NotConverged);
    }
    let z = trace.last();
    let n = net.n();
    z.check_size(n)?;
    let cand = evaluate_profile(z.actions(), net, params)?;
    let tol = S::lit(OPINION_TOL);
    let mut worst = (0, S::zero());
    for i in 0..n {
        let err = (z.y(i) - cand.y_star[i]).abs();
        if !(err <= worst.1) {
            worst = (i, err);
        }
    }
    if !(worst.1 <= tol) {
        let i = worst.0;
        return Err(Error::OracleMismatch(format!(
            "agent {}: opinion {} differs from fixed point {} by {:e} (tolerance {:e})",
            i + 1,
            z.y(i).as_f64(),
            cand.y_star[i].as_f64(),
            worst.1.as_f64(),
            OPINION_TOL
        )));
    }
    if !cand.consistent {
        let i = (0..n)
            .find(|&i| {
                let d = cand.delta[i];
                d.abs() > S::lit(NASH_TOL) && (d > S::zero()) != (z.action(i) == Action::Plus)
            })
            .unwrap_or(0);
        return Err(Error::OracleMismatch(format!(
            "terminal profile {} is not an equilibrium: agent {} plays {} with discriminant {:e}",
            fmt_profile(z.actions()),
            i + 1,
            z.action(i).sign(),
            cand.delta[i].as_f64()
        )));
    }
    let (enumerated, equilibria) = if n <= n_max {
        let list = enumerate_equilibria(net, params, n_max)?;
        if !list.iter().any(|c| c.x == z.actions()) {
            return Err(Error::OracleMismatch(format!(
                "terminal profile {} missing from the enumeration",
                fmt_profile(z.actions())
            )));
        }
        (true, Some(list.len()))
    } else {
        (false, None)
    };
    Ok(CrossValidation { n, enumerated, equilibria, max_opinion_error: worst.1, marginal: cand.marginal })
}

/// Existence check versus ground truth for one partition.
#[derive(Debug, Clone, Serialize)]
pub struct Thm6Audit<S> {
    pub report: TheoremReport<S>,
    /// A consistent profile with `+1` on `vp`, `-1` on `vn` whose fixed
    /// point is polarized along the same partition.
    pub oracle_equilibrium: bool,
    pub candidate: EquilibriumCandidate<S>,
    /// Set when the verdict and the oracle disagree.
    pub finding: Option<String>,
}

pub fn audit_thm6<S: Scalar>(
    vp: &[usize],
    vn: &[usize],
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
) -> Result<Thm6Audit<S>> {
    let report = check_thm6(vp, vn, net, params)?;
    let mut x = vec![Action::Minus; net.n()];
    for &i in vp {
        x[i] = Action::Plus;
    }
    let cand = evaluate_profile(&x, net, params)?;
    let mut positive = vp.to_vec();
    let mut negative = vn.to_vec();
    positive.sort_unstable();
    negative.sort_unstable();
    let polarized = classify_state(&cand.state()) == Classification::Polarized { positive, negative };
    let exists = cand.consistent && polarized;
    let finding = match (report.applicable, report.holds, exists) {
        (true, true, false) => {
            Some("sufficient condition holds but no polarized equilibrium exists on this partition".to_string())
        }
        (true, false, true) => {
            let failed: Vec<_> = report.failing().map(|r| r.label.clone()).collect();
            Some(format!(
                "polarized equilibrium exists although {} fail{} as printed",
                failed.join(", "),
                if failed.len() == 1 { "s" } else { "" }
            ))
        }
        _ => None,
    };
    Ok(Thm6Audit { report, oracle_equilibrium: exists, candidate: cand, finding })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::check_thm5;
    use crate::netcore::{AgentKind, WeightedGraph};

    fn pair() -> TwoLayerNetwork<f64> {
        TwoLayerNetwork::single(WeightedGraph::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()).unwrap()
    }

    fn ring(n: usize) -> TwoLayerNetwork<f64> {
        let mut w = vec![0.0; n * n];
        for i in 0..n {
            w[i * n + (i + 1) % n] += 0.5;
            w[i * n + (i + n - 1) % n] += 0.5;
        }
        TwoLayerNetwork::single(WeightedGraph::new(n, w).unwrap()).unwrap()
    }

    const P: Action = Action::Plus;
    const M: Action = Action::Minus;

    #[test]
    fn fixed_point_examples() {
        let net = pair();
        let half = AgentParams::uniform(2, 0.5, 0.5, AgentKind::Coordinating, 0.0).unwrap();
        let y = opinion_fixed_point(&[P, P], &net, &half).unwrap();
        assert!(y.iter().all(|&v| (v - 1.0).abs() < 1e-15));
        let y = opinion_fixed_point(&[P, M], &net, &half).unwrap();
        assert!((y[0] - 1.0 / 3.0).abs() < 1e-15 && (y[1] + 1.0 / 3.0).abs() < 1e-15);
        let p = AgentParams::uniform(2, 0.7, 0.5, AgentKind::Coordinating, 0.0).unwrap();
        let y = opinion_fixed_point(&[P, M], &net, &p).unwrap();
        assert!((y[0] - 7.0 / 13.0).abs() < 1e-15 && (y[1] + 7.0 / 13.0).abs() < 1e-15);
    }

    #[test]
    fn iteration_agrees_with_direct_solve() {
        let net = ring(7);
        let p = AgentParams::new(
            vec![0.2, 0.5, 0.9, 0.3, 0.6, 0.1, 0.4],
            vec![0.5; 7],
            vec![AgentKind::Coordinating; 7],
            0.0,
        )
        .unwrap();
        let x = [P, M, M, P, P, M, P];
        let direct = opinion_fixed_point(&x, &net, &p).unwrap();
        let (iter, _) = opinion_fixed_point_iterative(&x, &[0.0; 7], &net, &p, 1e-14, 100_000).unwrap();
        for (a, b) in direct.iter().zip(&iter) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn anti_pair_enumeration() {
        let net = pair();
        let p = AgentParams::uniform(2, 0.5, 0.5, AgentKind::AntiCoordinating, 0.0).unwrap();
        let list = enumerate_equilibria(&net, &p, N_MAX).unwrap();
        let profiles: Vec<_> = list.iter().map(|c| c.x.clone()).collect();
        assert!(profiles.contains(&vec![P, M]) && profiles.contains(&vec![M, P]));
        // the consensus sits exactly on the boundary: delta = 0, kept as marginal
        let cons = list.iter().find(|c| c.x == vec![P, P]).unwrap();
        assert!(cons.marginal && cons.delta.iter().all(|d| d.abs() < 1e-15));
        assert!(!check_thm5(&net, &p).unwrap().holds);
        // off the boundary the consensus is excluded
        let p = AgentParams::uniform(2, 0.6, 0.5, AgentKind::AntiCoordinating, 0.0).unwrap();
        let list = enumerate_equilibria(&net, &p, N_MAX).unwrap();
        assert!(list.iter().all(|c| c.x != vec![P, P]));
    }

    #[test]
    fn coordinating_has_both_consensus_profiles() {
        let net = ring(5);
        let p = AgentParams::uniform(5, 0.4, 0.3, AgentKind::Coordinating, 0.5).unwrap();
        let list = enumerate_equilibria(&net, &p, N_MAX).unwrap();
        assert_eq!(list.first().unwrap().x, vec![M; 5]);
        assert_eq!(list.last().unwrap().x, vec![P; 5]);
        let json = equilibria_json(&list);
        assert_eq!(json[0]["x"], json!([-1, -1, -1, -1, -1]));
        assert_eq!(json[0]["marginal"], json!(false));
    }

    #[test]
    fn size_gate() {
        let net = ring(25);
        let p = AgentParams::uniform(25, 0.4, 0.3, AgentKind::Coordinating, 0.0).unwrap();
        assert_eq!(enumerate_equilibria(&net, &p, N_MAX).unwrap_err(), Error::TooLarge { n: 25, n_max: 20 });
    }

    #[test]
    fn lexicographic_profiles() {
        assert_eq!(profile(3, 0), vec![M, M, M]);
        assert_eq!(profile(3, 1), vec![M, M, P]);
        assert_eq!(profile(3, 4), vec![P, M, M]);
    }
}
