//! Sufficient-condition checkers. Each returns a report with one row per
//! agent (or per global inequality); prerequisite failures yield a
//! "not applicable" report rather than an error.

use super::report::{ConditionRow, PartitionDegrees, Relation, TheoremId, TheoremReport};
use crate::error::{Error, Result};
use crate::netcore::{
    classify_state, partition_state, AgentKind, AgentParams, Classification, Homogeneous, PopulationState,
    TwoLayerNetwork,
};
use crate::scalar::Scalar;

/// Threshold for the `+1` camp's within-set mass in the polarized-to-consensus
/// condition, with the branch of the max that binds.
pub fn thm3_vp_threshold<S: Scalar>(lambda: S, beta: S) -> (S, &'static str) {
    let one = S::one();
    let first = (one - S::lit(2.0) * lambda) / (one - lambda);
    let second = one - (one - beta) / (S::lit(2.0) * (one - lambda * beta));
    if first >= second {
        (first, "(1-2l)/(1-l)")
    } else {
        (second, "1-(1-b)/(2(1-lb))")
    }
}

/// Threshold for the `-1` camp's within-set mass, with the binding branch of the min.
pub fn thm3_vn_threshold<S: Scalar>(lambda: S, beta: S) -> (S, &'static str) {
    let one = S::one();
    let first = lambda / (one - lambda);
    let second = (one - beta) / (S::lit(2.0) * (one - lambda * beta));
    if first <= second {
        (first, "l/(1-l)")
    } else {
        (second, "(1-b)/(2(1-lb))")
    }
}

/// Right-hand side of the anti-coordination consensus condition.
pub fn thm5_rhs<S: Scalar>(lambda: S, beta: S, alpha: S) -> S {
    let one = S::one();
    S::lit(2.0) * (one - lambda) * beta / ((one - beta) * (one + alpha))
}

/// Open interval for within-set mass in the polarized-convergence condition:
/// `((1-2l)/(1-l), (1 + b(1-l)/(2b-bl-1)) / 2)`. `None` when `beta >= 1/(2-lambda)`.
pub fn thm7_interval<S: Scalar>(lambda: S, beta: S) -> Option<(S, S)> {
    let one = S::one();
    let two = S::lit(2.0);
    if beta >= one / (two - lambda) {
        return None;
    }
    let lo = (one - two * lambda) / (one - lambda);
    let hi = (one + beta * (one - lambda) / (two * beta - beta * lambda - one)) / two;
    Some((lo, hi))
}

/// Threshold of the coordinating polarized-equilibrium condition, with its binding branch.
pub fn eq22_threshold<S: Scalar>(lambda: S, beta: S) -> (S, &'static str) {
    let one = S::one();
    let first = (one - S::lit(2.0) * lambda) / (one - lambda);
    let second = (one + beta * (one - lambda) / (one - beta * lambda)) / S::lit(2.0);
    if first >= second {
        (first, "(1-2l)/(1-l)")
    } else {
        (second, "(1+b(1-l)/(1-bl))/2")
    }
}

/// Cohesiveness and diffusiveness thresholds of the basin condition:
/// `(1/(alpha+2), (alpha+1)/(alpha+2))`.
pub fn thm2_thresholds<S: Scalar>(alpha: S) -> (S, S) {
    let two = S::lit(2.0);
    (S::one() / (alpha + two), (alpha + S::one()) / (alpha + two))
}

/// Left-hand sides of the three polarized-existence inequalities, evaluated
/// exactly as printed. Each must be positive for the condition to hold; the
/// first is returned as `lambda - bound`.
pub fn thm6_lhs<S: Scalar>(lambda: S, beta: S, d: &PartitionDegrees<S>) -> [S; 3] {
    let one = S::one();
    let two = S::lit(2.0);
    let (pm, pmax, nm, nmax) = (d.d_p_min, d.d_p_max, d.d_n_min, d.d_n_max);
    let bound = ((pm - nmax) / (one + pm - nm)).max((nmax - pm) / (one + nmax - pm));
    let scale = (one - beta) / (two * beta * (one - lambda));
    let p = (lambda * (pm + nmax - one) + pm - nmax) / (one - (one - lambda) * (pmax + nmax - one))
        + scale * (one - two * pmax);
    let n = (lambda * (nm + pmax - one) + nm - pmax) / (one - (one - lambda) * (nmax + pmax - one))
        - scale * (one - two * nmax);
    [lambda - bound, p, n]
}

fn extremes<S: Scalar>(set: &[usize], net: &TwoLayerNetwork<S>) -> (S, S) {
    set.iter()
        .map(|&i| net.w().mass_into(i, set))
        .fold((S::infinity(), S::neg_infinity()), |(lo, hi), m| (lo.min(m), hi.max(m)))
}

pub fn partition_degrees<S: Scalar>(vp: &[usize], vn: &[usize], net: &TwoLayerNetwork<S>) -> PartitionDegrees<S> {
    let (d_p_min, d_p_max) = extremes(vp, net);
    let (d_n_min, d_n_max) = extremes(vn, net);
    PartitionDegrees { d_p_min, d_p_max, d_n_min, d_n_max }
}

struct Needs {
    kind: AgentKind,
    symmetric: bool,
    identical_layers: bool,
}

fn prerequisites<S: Scalar>(
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
    needs: Needs,
) -> std::result::Result<Homogeneous<S>, String> {
    if params.n() != net.n() {
        return Err(format!("params cover {} agents, network has {}", params.n(), net.n()));
    }
    let h = params.homogeneous().ok_or("parameters are not homogeneous")?;
    if h.kind != needs.kind {
        return Err(format!("requires epsilon = {}", needs.kind.sign()));
    }
    if needs.symmetric && !net.is_symmetric() {
        return Err("layers are not symmetric".into());
    }
    if needs.identical_layers {
        if !net.layers_identical() {
            return Err("requires A = W".into());
        }
        if h.alpha != S::zero() {
            return Err("requires alpha = 0".into());
        }
    }
    Ok(h)
}

fn polarized<S: Scalar>(z0: &PopulationState<S>) -> std::result::Result<(Vec<usize>, Vec<usize>), String> {
    match classify_state(z0) {
        Classification::Polarized { positive, negative } => Ok((positive, negative)),
        other => Err(format!("initial state is not polarized ({})", other.label())),
    }
}

fn within_mass<S: Scalar>(set: &[usize], net: &TwoLayerNetwork<S>) -> Vec<(usize, S)> {
    set.iter().map(|&i| (i, net.w().mass_into(i, set))).collect()
}

/// Basin of consensus for coordinating agents with positive initial opinions.
pub fn check_thm2<S: Scalar>(
    z0: &PopulationState<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
) -> Result<TheoremReport<S>> {
    z0.check_size(net.n())?;
    let id = TheoremId::Thm2;
    let needs = Needs { kind: AgentKind::Coordinating, symmetric: true, identical_layers: false };
    let h = match prerequisites(net, params, needs) {
        Ok(h) => h,
        Err(r) => return Ok(TheoremReport::not_applicable(id, r)),
    };
    if z0.opinions().iter().any(|&y| y <= S::zero()) {
        return Ok(TheoremReport::not_applicable(id, "initial opinions must lie in (0, 1]"));
    }
    let part = partition_state(z0);
    let (cohesive, diffusive) = thm2_thresholds(h.alpha);
    let a = net.a();
    let mut rows = Vec::new();
    for &i in &part.plus_plus {
        let ratio = a.mass_into(i, &part.plus_plus) / a.row_sum(i);
        rows.push(ConditionRow::new(Some(i), "cohesive:V1+", ratio, Relation::GreaterEq, cohesive));
    }
    for &i in &part.minus_plus {
        let ratio = a.mass_into(i, &part.minus_plus) / a.row_sum(i);
        rows.push(ConditionRow::new(Some(i), "diffusive:V-1+", ratio, Relation::Less, diffusive));
    }
    let mut rep = TheoremReport::evaluated(id, rows, Vec::new());
    if part.plus_plus.is_empty() {
        rep.notes.push("V1+ is empty; cohesiveness holds vacuously".into());
    }
    if part.minus_plus.is_empty() {
        rep.notes.push("V-1+ is empty; diffusiveness holds vacuously".into());
    }
    Ok(rep)
}

/// Polarized start converging to consensus for coordinating agents.
///
/// Symmetry of `W` is not required: the condition and its argument only use
/// row sums, and symmetric row-stochastic matrices force balanced cross-block
/// mass, which rules out the condition on equal-sized camps.
pub fn check_thm3<S: Scalar>(
    z0: &PopulationState<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
) -> Result<TheoremReport<S>> {
    z0.check_size(net.n())?;
    let id = TheoremId::Thm3;
    let needs = Needs { kind: AgentKind::Coordinating, symmetric: false, identical_layers: true };
    let h = match prerequisites(net, params, needs) {
        Ok(h) => h,
        Err(r) => return Ok(TheoremReport::not_applicable(id, r)),
    };
    let (vp, vn) = match polarized(z0) {
        Ok(p) => p,
        Err(r) => return Ok(TheoremReport::not_applicable(id, r)),
    };
    let (tp, bp) = thm3_vp_threshold(h.lambda, h.beta);
    let (tn, bn) = thm3_vn_threshold(h.lambda, h.beta);
    let mut rows: Vec<_> = within_mass(&vp, net)
        .into_iter()
        .map(|(i, m)| ConditionRow::new(Some(i), format!("vp:{bp}"), m, Relation::Greater, tp))
        .collect();
    rows.extend(
        within_mass(&vn, net)
            .into_iter()
            .map(|(i, m)| ConditionRow::new(Some(i), format!("vn:{bn}"), m, Relation::Less, tn)),
    );
    let mut rep = TheoremReport::evaluated(id, rows, Vec::new());
    rep.notes.push(format!("vp threshold binds on {bp}; vn threshold binds on {bn}"));
    if !net.is_symmetric() {
        rep.notes.push("W is directed; the condition uses row sums only".into());
    }
    Ok(rep)
}

/// Existence of the `+1` consensus equilibrium for anti-coordinating agents.
pub fn check_thm5<S: Scalar>(net: &TwoLayerNetwork<S>, params: &AgentParams<S>) -> Result<TheoremReport<S>> {
    let id = TheoremId::Thm5;
    let needs = Needs { kind: AgentKind::AntiCoordinating, symmetric: true, identical_layers: false };
    let h = match prerequisites(net, params, needs) {
        Ok(h) => h,
        Err(r) => return Ok(TheoremReport::not_applicable(id, r)),
    };
    let rhs = thm5_rhs(h.lambda, h.beta, h.alpha);
    let rows =
        (0..net.n()).map(|i| ConditionRow::new(Some(i), "row_mass", net.a().row_sum(i), Relation::Less, rhs)).collect();
    Ok(TheoremReport::evaluated(id, rows, Vec::new()))
}

/// Existence of a polarized equilibrium for anti-coordinating agents on the
/// given partition. The three inequalities are evaluated as printed.
pub fn check_thm6<S: Scalar>(
    vp: &[usize],
    vn: &[usize],
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
) -> Result<TheoremReport<S>> {
    let n = net.n();
    if vp.is_empty() || vn.is_empty() {
        return Err(Error::Partition("both sides must be nonempty".into()));
    }
    let mut seen = vec![false; n];
    for &i in vp.iter().chain(vn) {
        if i >= n {
            return Err(Error::Index { index: i, n });
        }
        if seen[i] {
            return Err(Error::Partition(format!("agent {} appears twice", i + 1)));
        }
        seen[i] = true;
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::Partition(format!("agent {} is on neither side", missing + 1)));
    }
    let id = TheoremId::Thm6;
    let needs = Needs { kind: AgentKind::AntiCoordinating, symmetric: true, identical_layers: true };
    let h = match prerequisites(net, params, needs) {
        Ok(h) => h,
        Err(r) => return Ok(TheoremReport::not_applicable(id, r)),
    };
    let d = partition_degrees(vp, vn, net);
    let [c18, c19, c20] = thm6_lhs(h.lambda, h.beta, &d);
    let zero = S::zero();
    let conditions = vec![
        ConditionRow::new(None, "eq18", h.lambda, Relation::Greater, h.lambda - c18),
        ConditionRow::new(None, "eq19", c19, Relation::Greater, zero),
        ConditionRow::new(None, "eq20", c20, Relation::Greater, zero),
    ];
    let mut rep = TheoremReport::evaluated(id, Vec::new(), conditions);
    rep.degrees = Some(d);
    if c18 > zero && c19 > zero && !(c20 > zero) {
        rep.notes.push("eq20 fails as printed while eq18 and eq19 hold; compare against the equilibrium oracle".into());
    }
    Ok(rep)
}

/// Polarized start converging to a polarized equilibrium for anti-coordinating agents.
pub fn check_thm7<S: Scalar>(
    z0: &PopulationState<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
) -> Result<TheoremReport<S>> {
    z0.check_size(net.n())?;
    let id = TheoremId::Thm7;
    let needs = Needs { kind: AgentKind::AntiCoordinating, symmetric: true, identical_layers: true };
    let h = match prerequisites(net, params, needs) {
        Ok(h) => h,
        Err(r) => return Ok(TheoremReport::not_applicable(id, r)),
    };
    let Some((lo, hi)) = thm7_interval(h.lambda, h.beta) else {
        return Ok(TheoremReport::not_applicable(id, "requires beta < 1/(2 - lambda)"));
    };
    let (vp, vn) = match polarized(z0) {
        Ok(p) => p,
        Err(r) => return Ok(TheoremReport::not_applicable(id, r)),
    };
    let mut rows = Vec::new();
    for (name, set) in [("vp", &vp), ("vn", &vn)] {
        for (i, m) in within_mass(set, net) {
            rows.push(ConditionRow::new(Some(i), format!("{name}:lower"), m, Relation::Greater, lo));
            rows.push(ConditionRow::new(Some(i), format!("{name}:upper"), m, Relation::Less, hi));
        }
    }
    let mut rep = TheoremReport::evaluated(id, rows, Vec::new());
    if !(lo < hi) || hi <= S::zero() || lo >= S::one() {
        rep.notes.push(format!(
            "admissible interval ({}, {}) has no point in [0, 1]; no network satisfies the condition",
            lo.as_f64(),
            hi.as_f64()
        ));
    }
    Ok(rep)
}

/// Polarized equilibrium condition for coordinating agents.
pub fn check_coordination_polarized<S: Scalar>(
    z0: &PopulationState<S>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
) -> Result<TheoremReport<S>> {
    z0.check_size(net.n())?;
    let id = TheoremId::Eq22;
    let needs = Needs { kind: AgentKind::Coordinating, symmetric: true, identical_layers: true };
    let h = match prerequisites(net, params, needs) {
        Ok(h) => h,
        Err(r) => return Ok(TheoremReport::not_applicable(id, r)),
    };
    let (vp, vn) = match polarized(z0) {
        Ok(p) => p,
        Err(r) => return Ok(TheoremReport::not_applicable(id, r)),
    };
    let (t, branch) = eq22_threshold(h.lambda, h.beta);
    let mut rows = Vec::new();
    for (name, set) in [("vp", &vp), ("vn", &vn)] {
        for (i, m) in within_mass(set, net) {
            rows.push(ConditionRow::new(Some(i), format!("{name}:{branch}"), m, Relation::Greater, t));
        }
    }
    Ok(TheoremReport::evaluated(id, rows, Vec::new()))
}

/// Dispatch by id. `partition` is required for the existence check and
/// otherwise ignored; the state-based checkers read it from `z0`.
pub fn check<S: Scalar>(
    id: TheoremId,
    z0: &PopulationState<S>,
    partition: Option<(&[usize], &[usize])>,
    net: &TwoLayerNetwork<S>,
    params: &AgentParams<S>,
) -> Result<TheoremReport<S>> {
    match id {
        TheoremId::Thm2 => check_thm2(z0, net, params),
        TheoremId::Thm3 => check_thm3(z0, net, params),
        TheoremId::Thm5 => check_thm5(net, params),
        TheoremId::Thm6 => {
            let (vp, vn) = match partition {
                Some(p) => (p.0.to_vec(), p.1.to_vec()),
                None => polarized(z0).map_err(Error::Partition)?,
            };
            check_thm6(&vp, &vn, net, params)
        }
        TheoremId::Thm7 => check_thm7(z0, net, params),
        TheoremId::Eq22 => check_coordination_polarized(z0, net, params),
    }
}
