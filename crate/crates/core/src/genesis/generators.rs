use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::scaling::{rectangular_scale, symmetric_scale};
use super::{rng, sub_seed, validate_partition};
use crate::analysis::{
    check_coordination_polarized, check_thm2, check_thm3, check_thm7, eq22_threshold, thm2_thresholds,
    thm3_vn_threshold, thm3_vp_threshold, thm7_interval, TheoremId,
};
use crate::error::{Error, Result};
use crate::netcore::{Action, AgentParams, PopulationState, TwoLayerNetwork, WeightedGraph};
use crate::scalar::Scalar;

/// Fresh sub-seeds tried before a conditioned generation gives up.
pub const MAX_ATTEMPTS: usize = 100;
/// Fraction of an admissible interval kept clear at each end.
pub const MARGIN: f64 = 0.05;

/// Positive weight in `(0, 1]`.
fn positive(rng: &mut ChaCha8Rng) -> f64 {
    1.0 - rng.gen::<f64>()
}

fn finish<S: Scalar>(n: usize, w: Vec<f64>) -> Result<WeightedGraph<S>> {
    WeightedGraph::new(n, w.into_iter().map(S::lit).collect())
}

/// Uniform random weights, symmetrized, then balanced to be row-stochastic
/// while staying bitwise symmetric.
pub fn random_symmetric_stochastic<S: Scalar>(n: usize, seed: u64, zero_diagonal: bool) -> Result<WeightedGraph<S>> {
    if n < 2 {
        return Err(Error::Partition(format!("need at least 2 agents, got {n}")));
    }
    if n == 2 && zero_diagonal {
        return finish(2, vec![0.0, 1.0, 1.0, 0.0]);
    }
    let mut r = rng(seed);
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        if !zero_diagonal {
            m[i * n + i] = positive(&mut r);
        }
        for j in i + 1..n {
            let v = positive(&mut r);
            m[i * n + j] = v;
            m[j * n + i] = v;
        }
    }
    finish(n, symmetric_scale(n, &m, 1.0)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossWeights {
    Uniform,
    Random,
}

/// Zero weight inside each side, positive weight across. Symmetric
/// row-stochastic matrices of this shape exist only for equal-sized sides.
pub fn complete_bipartite<S: Scalar>(
    vp: &[usize],
    vn: &[usize],
    cross: CrossWeights,
    seed: u64,
) -> Result<WeightedGraph<S>> {
    let n = vp.len() + vn.len();
    validate_partition(vp, vn, n)?;
    if vp.len() != vn.len() {
        return Err(Error::Partition(format!(
            "a symmetric row-stochastic bipartite graph needs equal sides, got {} and {}",
            vp.len(),
            vn.len()
        )));
    }
    let k = vp.len();
    let block = match cross {
        CrossWeights::Uniform => vec![1.0 / k as f64; k * k],
        CrossWeights::Random => {
            let mut r = rng(seed);
            let raw: Vec<f64> = (0..k * k).map(|_| positive(&mut r)).collect();
            rectangular_scale(k, k, &raw, 1.0, 1.0)?
        }
    };
    let mut w = vec![0.0; n * n];
    for (a, &i) in vp.iter().enumerate() {
        for (b, &j) in vn.iter().enumerate() {
            w[i * n + j] = block[a * k + b];
            w[j * n + i] = block[a * k + b];
        }
    }
    finish(n, w)
}

/// Admissible within-set mass `[lo, hi]` for each side (already shrunk by the
/// margin), plus whether the checker accepts directed graphs.
struct Targets {
    p: (f64, f64),
    n: (f64, f64),
    directed_ok: bool,
}

fn shrink(lo: f64, hi: f64) -> Option<(f64, f64)> {
    let (lo, hi) = (lo.max(0.0), hi.min(1.0));
    if !(lo < hi) {
        return None;
    }
    let m = MARGIN * (hi - lo);
    Some((lo + m, hi - m))
}

fn targets(theorem: TheoremId, lambda: f64, beta: f64, alpha: f64) -> Result<Targets> {
    let infeasible = |side: &str, lo: f64, hi: f64| {
        Error::Infeasible(format!("within-set mass for {side} must lie in ({lo:.6}, {hi:.6}) intersected with [0, 1]"))
    };
    let both = |lo: f64, hi: f64| {
        shrink(lo, hi)
            .map(|t| Targets { p: t, n: t, directed_ok: false })
            .ok_or_else(|| infeasible("both sides", lo, hi))
    };
    match theorem {
        TheoremId::Thm2 => {
            let (c, d) = thm2_thresholds(alpha);
            let p = shrink(c, 1.0).ok_or_else(|| infeasible("V1+", c, 1.0))?;
            let n = shrink(0.0, d).ok_or_else(|| infeasible("V-1+", 0.0, d))?;
            Ok(Targets { p, n, directed_ok: false })
        }
        TheoremId::Thm3 => {
            let (tp, _) = thm3_vp_threshold(lambda, beta);
            let (tn, _) = thm3_vn_threshold(lambda, beta);
            let p = shrink(tp, 1.0).ok_or_else(|| infeasible("Vp", tp, 1.0))?;
            let n = shrink(0.0, tn).ok_or_else(|| infeasible("Vn", 0.0, tn))?;
            Ok(Targets { p, n, directed_ok: true })
        }
        TheoremId::Thm7 => {
            let (lo, hi) = thm7_interval(lambda, beta)
                .ok_or_else(|| Error::Infeasible(format!("requires beta < 1/(2 - lambda), got beta = {beta}")))?;
            both(lo, hi)
        }
        TheoremId::Eq22 => {
            let (t, _) = eq22_threshold(lambda, beta);
            both(t, 1.0)
        }
        other => Err(Error::Infeasible(format!("no conditioned generator for {other}"))),
    }
}

/// Interval of `m_p` keeping both sides in range under the symmetric balance
/// `p (1 - m_p) = q (1 - m_n)`. Single-agent sides have zero within mass.
fn symmetric_masses(p: usize, q: usize, tp: (f64, f64), tn: (f64, f64)) -> Option<(f64, f64)> {
    let (pf, qf) = (p as f64, q as f64);
    let tp = if p == 1 { (0.0, 0.0) } else { tp };
    let tn = if q == 1 { (0.0, 0.0) } else { tn };
    let lo = tp.0.max(1.0 - qf * (1.0 - tn.0) / pf);
    let hi = tp.1.min(1.0 - qf * (1.0 - tn.1) / pf);
    (lo <= hi).then_some((lo, hi))
}

/// Random symmetric zero-diagonal block with every row summing to `mass`.
fn inner_block(k: usize, mass: f64, r: &mut ChaCha8Rng) -> Result<Vec<f64>> {
    if k == 1 || mass == 0.0 {
        return Ok(vec![0.0; k * k]);
    }
    if k == 2 {
        return Ok(vec![0.0, mass, mass, 0.0]);
    }
    let mut m = vec![0.0; k * k];
    for i in 0..k {
        for j in i + 1..k {
            let v = positive(r);
            m[i * k + j] = v;
            m[j * k + i] = v;
        }
    }
    symmetric_scale(k, &m, mass)
}

fn assemble_symmetric(vp: &[usize], vn: &[usize], mp: f64, mn: f64, r: &mut ChaCha8Rng) -> Result<Vec<f64>> {
    let (p, q) = (vp.len(), vn.len());
    let n = p + q;
    let bp = inner_block(p, mp, r)?;
    let bn = inner_block(q, mn, r)?;
    let raw: Vec<f64> = (0..p * q).map(|_| positive(r)).collect();
    let cross = if 1.0 - mp > 0.0 { rectangular_scale(p, q, &raw, 1.0 - mp, 1.0 - mn)? } else { vec![0.0; p * q] };
    let mut w = vec![0.0; n * n];
    for (a, &i) in vp.iter().enumerate() {
        for (b, &j) in vp.iter().enumerate() {
            w[i * n + j] = bp[a * p + b];
        }
        for (b, &j) in vn.iter().enumerate() {
            w[i * n + j] = cross[a * q + b];
            w[j * n + i] = cross[a * q + b];
        }
    }
    for (a, &i) in vn.iter().enumerate() {
        for (b, &j) in vn.iter().enumerate() {
            w[i * n + j] = bn[a * q + b];
        }
    }
    // final balancing pass removes rounding left by the block-wise scaling
    symmetric_scale(n, &w, 1.0)
}

/// Row-stochastic directed graph: each row draws its own within mass from the
/// target interval and spreads both parts with random positive weights.
fn assemble_directed(vp: &[usize], vn: &[usize], tp: (f64, f64), tn: (f64, f64), r: &mut ChaCha8Rng) -> Vec<f64> {
    let n = vp.len() + vn.len();
    let mut w = vec![0.0; n * n];
    for (own, other, t) in [(vp, vn, tp), (vn, vp, tn)] {
        for &i in own {
            let peers: Vec<usize> = own.iter().copied().filter(|&j| j != i).collect();
            let mass = if peers.is_empty() { 0.0 } else { r.gen_range(t.0..=t.1) };
            for (set, total) in [(&peers, mass), (&other.to_vec(), 1.0 - mass)] {
                let raw: Vec<f64> = set.iter().map(|_| positive(r)).collect();
                let s: f64 = raw.iter().sum();
                for (&j, v) in set.iter().zip(raw) {
                    w[i * n + j] = total * v / s;
                }
            }
        }
    }
    w
}

fn reference_state<S: Scalar>(theorem: TheoremId, vp: &[usize], n: usize) -> PopulationState<S> {
    let mut x = vec![Action::Minus; n];
    for &i in vp {
        x[i] = Action::Plus;
    }
    let y =
        (0..n).map(|i| if theorem == TheoremId::Thm2 || x[i] == Action::Plus { S::one() } else { -S::one() }).collect();
    PopulationState::new(x, y).expect("valid reference state")
}

/// A graph on which the named sufficient condition holds for the partition
/// `(vp, vn)`, verified by running the checker on the generated network.
///
/// For `thm2`, `vp` plays the role of the `+1` agents and `vn` of the `-1`
/// agents (all opinions positive); for the others they are the two camps of
/// a polarized state. The result is symmetric whenever a symmetric graph with
/// the required masses exists. `thm3` on camps too similar in size admits no
/// symmetric solution, and then a directed row-stochastic graph is returned.
pub fn condition_rescaled<S: Scalar>(
    theorem: TheoremId,
    vp: &[usize],
    vn: &[usize],
    params: &AgentParams<S>,
    seed: u64,
) -> Result<WeightedGraph<S>> {
    let n = vp.len() + vn.len();
    validate_partition(vp, vn, n)?;
    if params.n() != n {
        return Err(Error::ParamLength { name: "params", expected: n, got: params.n() });
    }
    let h = params
        .homogeneous()
        .ok_or_else(|| Error::Infeasible("conditioned generation needs homogeneous parameters".into()))?;
    let (lambda, beta, alpha) = (h.lambda.as_f64(), h.beta.as_f64(), h.alpha.as_f64());
    let t = targets(theorem, lambda, beta, alpha)?;
    let sym = symmetric_masses(vp.len(), vn.len(), t.p, t.n);
    if sym.is_none() && !t.directed_ok {
        return Err(Error::Infeasible(format!(
            "no symmetric row-stochastic graph on a {}/{} split meets the target masses {:?} and {:?}",
            vp.len(),
            vn.len(),
            t.p,
            t.n
        )));
    }
    let z0 = reference_state::<S>(theorem, vp, n);
    let mut last = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        let mut r = rng(sub_seed(seed, attempt as u64));
        let w = match sym {
            Some((lo, hi)) => {
                let mp = if lo < hi { r.gen_range(lo..=hi) } else { lo };
                let mn = 1.0 - vp.len() as f64 * (1.0 - mp) / vn.len() as f64;
                match assemble_symmetric(vp, vn, mp, mn.clamp(0.0, 1.0), &mut r) {
                    Ok(w) => w,
                    Err(e) => {
                        last = e.to_string();
                        continue;
                    }
                }
            }
            None => assemble_directed(vp, vn, t.p, t.n, &mut r),
        };
        let g: WeightedGraph<S> = finish(n, w)?;
        let net = match TwoLayerNetwork::single(g.clone()) {
            Ok(net) => net,
            Err(e) => {
                last = e.to_string();
                continue;
            }
        };
        let report = match theorem {
            TheoremId::Thm2 => check_thm2(&z0, &net, params)?,
            TheoremId::Thm3 => check_thm3(&z0, &net, params)?,
            TheoremId::Thm7 => check_thm7(&z0, &net, params)?,
            _ => check_coordination_polarized(&z0, &net, params)?,
        };
        if !report.applicable {
            return Err(Error::Infeasible(report.reason.unwrap_or_default()));
        }
        if report.holds {
            return Ok(g);
        }
        last = format!("checker rejected attempt {attempt}");
    }
    Err(Error::GenerationFailed { attempts: MAX_ATTEMPTS, reason: last })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::{validate_network, AgentKind};

    fn halves(n: usize) -> (Vec<usize>, Vec<usize>) {
        ((0..n / 2).collect(), (n / 2..n).collect())
    }

    #[test]
    fn two_nodes_exact() {
        let g: WeightedGraph<f64> = random_symmetric_stochastic(2, 5, true).unwrap();
        assert_eq!(g.weights(), &[0.0, 1.0, 1.0, 0.0]);
        assert!(random_symmetric_stochastic::<f64>(1, 5, true).is_err());
    }

    #[test]
    fn random_output_is_valid_and_seeded() {
        for zd in [true, false] {
            let g: WeightedGraph<f64> = random_symmetric_stochastic(30, 11, zd).unwrap();
            assert!(g.max_row_deviation() <= 1e-12);
            assert!(g.is_symmetric());
            assert_eq!(g.has_zero_diagonal(), zd);
            let h: WeightedGraph<f64> = random_symmetric_stochastic(30, 11, zd).unwrap();
            assert_eq!(g, h);
        }
        let a: WeightedGraph<f64> = random_symmetric_stochastic(6, 1, true).unwrap();
        let b: WeightedGraph<f64> = random_symmetric_stochastic(6, 2, true).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn bipartite_uniform_and_random() {
        let (vp, vn) = halves(30);
        let g: WeightedGraph<f64> = complete_bipartite(&vp, &vn, CrossWeights::Uniform, 0).unwrap();
        assert_eq!(g.get(0, 15), 1.0 / 15.0);
        assert_eq!(g.mass_into(3, &vp), 0.0);
        let g: WeightedGraph<f64> = complete_bipartite(&vp, &vn, CrossWeights::Random, 4).unwrap();
        let net = TwoLayerNetwork::single(g).unwrap();
        assert!(validate_network(&net).valid && net.is_symmetric());
        assert!(matches!(complete_bipartite::<f64>(&[0, 1], &[2], CrossWeights::Uniform, 0), Err(Error::Partition(_))));
    }

    #[test]
    fn conditioned_eq22_and_thm7() {
        let (vp, vn) = halves(30);
        let p = AgentParams::uniform(30, 0.7, 0.6, AgentKind::Coordinating, 0.0).unwrap();
        let g: WeightedGraph<f64> = condition_rescaled(TheoremId::Eq22, &vp, &vn, &p, 3).unwrap();
        assert!(g.is_symmetric() && g.max_row_deviation() <= 1e-12);
        assert!(vp.iter().all(|&i| g.mass_into(i, &vp) > 0.655));

        let p = AgentParams::uniform(30, 0.7, 0.6, AgentKind::AntiCoordinating, 0.0).unwrap();
        let g: WeightedGraph<f64> = condition_rescaled(TheoremId::Thm7, &vp, &vn, &p, 3).unwrap();
        assert!(g.is_symmetric());

        let p = AgentParams::uniform(30, 0.25, 0.4, AgentKind::AntiCoordinating, 0.0).unwrap();
        assert!(matches!(condition_rescaled::<f64>(TheoremId::Thm7, &vp, &vn, &p, 3), Err(Error::Infeasible(_))));
    }

    #[test]
    fn conditioned_thm3_falls_back_to_directed() {
        let (vp, vn) = halves(30);
        let p = AgentParams::uniform(30, 0.8, 0.6, AgentKind::Coordinating, 0.0).unwrap();
        let g: WeightedGraph<f64> = condition_rescaled(TheoremId::Thm3, &vp, &vn, &p, 9).unwrap();
        assert!(!g.is_symmetric());
        assert!(g.max_row_deviation() <= 1e-12);
        assert!(vp.iter().all(|&i| g.mass_into(i, &vp) > 0.6154));
        assert!(vn.iter().all(|&i| g.mass_into(i, &vn) < 0.3846));
    }

    #[test]
    fn conditioned_thm2_needs_a_larger_plus_side() {
        let p = AgentParams::uniform(10, 0.5, 0.5, AgentKind::Coordinating, 0.0).unwrap();
        let vp: Vec<usize> = (0..7).collect();
        let vn: Vec<usize> = (7..10).collect();
        let g: WeightedGraph<f64> = condition_rescaled(TheoremId::Thm2, &vp, &vn, &p, 1).unwrap();
        assert!(g.is_symmetric());
        let (vp, vn) = halves(10);
        assert!(matches!(condition_rescaled::<f64>(TheoremId::Thm2, &vp, &vn, &p, 1), Err(Error::Infeasible(_))));
    }
}
