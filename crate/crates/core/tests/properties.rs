//! Invariants checked over randomly generated instances.

mod common;

use coevo::analysis::{best_response_set, is_best_response, is_nash, payoff, potential, NASH_TOL};
use coevo::dynamics::{discriminant, persistence_of, simulate, step, ActivationSchedule, SimOptions};
use coevo::genesis::{condition_rescaled, random_symmetric_stochastic, CrossWeights};
use coevo::netcore::io::{format_network, parse_network};
use coevo::netcore::{
    cohesiveness, diffusiveness, partition_state, validate_network, PopulationState, TwoLayerNetwork,
};
use coevo::oracle::{evaluate_profile, opinion_fixed_point, opinion_fixed_point_iterative, profile};
use coevo::{Action, AgentKind};
use common::*;
use proptest::prelude::*;

fn unit() -> impl Strategy<Value = f64> {
    0.02f64..0.98
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn partition_is_disjoint_cover(n in 1usize..40, seed in any::<u64>()) {
        let z = random_state(n, seed);
        let p = partition_state(&z);
        let mut all: Vec<usize> =
            [&p.plus_plus, &p.minus_plus, &p.plus_minus, &p.minus_minus].into_iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
    }

    #[test]
    fn generated_networks_validate(n in 2usize..25, seed in any::<u64>(), zd in any::<bool>()) {
        let g = random_symmetric_stochastic::<f64>(n, seed, zd).unwrap();
        prop_assert!(g.max_row_deviation() <= 1e-12);
        prop_assert!(g.is_symmetric());
        let net = TwoLayerNetwork::single(g).unwrap();
        let rep = validate_network(&net);
        prop_assert!(rep.valid);
        prop_assert!(rep.layers.iter().all(|l| l.symmetric && l.row_stochastic));
    }

    #[test]
    fn bipartite_generation_validates(k in 1usize..12, seed in any::<u64>()) {
        let vp: Vec<usize> = (0..k).collect();
        let vn: Vec<usize> = (k..2 * k).collect();
        let g = coevo::genesis::complete_bipartite::<f64>(&vp, &vn, CrossWeights::Random, seed).unwrap();
        prop_assert!(g.is_symmetric() && g.max_row_deviation() <= 1e-12);
        prop_assert!(vp.iter().all(|&i| g.mass_into(i, &vp) == 0.0));
    }

    #[test]
    fn network_file_round_trip(n in 2usize..12, seed in any::<u64>()) {
        let net = two_layer_net(n, seed);
        let back: TwoLayerNetwork<f64> = parse_network(&format_network(&net)).unwrap();
        prop_assert_eq!(back, net);
    }

    #[test]
    fn cohesiveness_not_above_diffusiveness(n in 2usize..15, seed in any::<u64>(), mask in any::<u32>()) {
        let net = symmetric_net(n, seed);
        let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        prop_assume!(!set.is_empty());
        let c = cohesiveness(&set, net.a()).unwrap();
        let d = diffusiveness(&set, net.a()).unwrap();
        prop_assert!(c <= d);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&d));
    }

    #[test]
    fn step_preserves_opinion_range(
        n in 2usize..12, seed in any::<u64>(), l in unit(), b in unit(), alpha in 0.0f64..3.0, coord in any::<bool>(),
        active_mask in 1u32..4096,
    ) {
        let net = two_layer_net(n, seed);
        let p = params(n, l, b, kind_of(coord), alpha);
        let z = random_state(n, seed ^ 1);
        let active: Vec<usize> = (0..n).filter(|i| active_mask >> (i % 12) & 1 == 1).collect();
        let (next, _) = step(&z, &active, &net, &p, 0.0).unwrap();
        prop_assert!(next.opinions().iter().all(|y| (-1.0..=1.0).contains(y)));
        for i in (0..n).filter(|i| !active.contains(i)) {
            prop_assert_eq!(next.action(i), z.action(i));
            prop_assert_eq!(next.y(i), z.y(i));
        }
    }

    #[test]
    fn update_is_the_inertia_best_response(
        n in 2usize..10, seed in any::<u64>(), l in unit(), b in unit(), alpha in 0.0f64..3.0, coord in any::<bool>(),
    ) {
        let net = two_layer_net(n, seed);
        let p = params(n, l, b, kind_of(coord), alpha);
        let z = random_state(n, seed ^ 2);
        for i in 0..n {
            let (next, _) = step(&z, &[i], &net, &p, 0.0).unwrap();
            let br = best_response_set(i, &z, &net, &p, 0.0).unwrap();
            prop_assert!((br.gap - discriminant(i, &z, &net, &p).unwrap()).abs() < 1e-12);
            let chosen = br.select(z.action(i));
            prop_assert_eq!(chosen.action, next.action(i));
            prop_assert!((chosen.opinion - next.y(i)).abs() < 1e-12);
            // the update's payoff is never beaten by the other action
            let f = payoff(i, next.action(i), next.y(i), &z, &net, &p).unwrap();
            prop_assert!(f >= br.best_payoff() - 1e-12);
        }
    }

    #[test]
    fn nash_matches_best_response_membership(
        n in 2usize..7, seed in any::<u64>(), l in unit(), b in unit(), coord in any::<bool>(), k in any::<u64>(),
        at_fixed_point in any::<bool>(),
    ) {
        let net = symmetric_net(n, seed);
        let p = params(n, l, b, kind_of(coord), 0.0);
        let z = if at_fixed_point {
            let x = profile(n, k % (1 << n));
            let y = opinion_fixed_point(&x, &net, &p).unwrap();
            PopulationState::new(x, y).unwrap()
        } else {
            random_state(n, k)
        };
        let nash = is_nash(&z, &net, &p, NASH_TOL).unwrap();
        let members = (0..n).all(|i| is_best_response(i, &z, &net, &p, NASH_TOL, 1e-9).unwrap());
        prop_assert_eq!(nash.holds, members);
    }

    #[test]
    fn consensus_is_equilibrium_for_coordinators(
        n in 2usize..14, seed in any::<u64>(), l in unit(), b in unit(), alpha in 0.0f64..3.0,
    ) {
        let net = two_layer_net(n, seed);
        let p = params(n, l, b, AgentKind::Coordinating, alpha);
        for a in [Action::Plus, Action::Minus] {
            prop_assert!(is_nash(&PopulationState::consensus(n, a), &net, &p, NASH_TOL).unwrap().holds);
        }
    }

    #[test]
    fn potential_rises_with_every_improving_deviation(
        n in 2usize..9, seed in any::<u64>(), l in unit(), b in unit(), alpha in 0.0f64..2.0,
        yalt in -1.0f64..1.0,
    ) {
        let net = two_layer_net(n, seed);
        let p = params(n, l, b, AgentKind::AntiCoordinating, alpha);
        let z = random_state(n, seed ^ 3);
        let phi0 = potential(&z, &net, &p).unwrap();
        prop_assert!(phi0.valid);
        for i in 0..n {
            let f0 = payoff(i, z.action(i), z.y(i), &z, &net, &p).unwrap();
            let br = best_response_set(i, &z, &net, &p, 0.0).unwrap();
            let mut options = vec![(br.minus.action, br.minus.opinion), (br.plus.action, br.plus.opinion)];
            options.push((z.action(i).flip(), yalt));
            options.push((z.action(i), yalt));
            for (a, y) in options {
                let f1 = payoff(i, a, y, &z, &net, &p).unwrap();
                if f1 - f0 > 1e-12 {
                    let phi1 = potential(&z.with_agent(i, a, y).unwrap(), &net, &p).unwrap();
                    prop_assert!(phi1.value > phi0.value, "agent {} gains {} but potential moves {}", i, f1 - f0, phi1.value - phi0.value);
                }
            }
        }
    }

    #[test]
    fn opinion_iteration_reaches_fixed_point(
        n in 2usize..12, seed in any::<u64>(), k in any::<u64>(), y0 in proptest::collection::vec(-1.0f64..1.0, 12),
    ) {
        let net = symmetric_net(n, seed);
        let lambdas: Vec<f64> = (0..n).map(|i| 0.1 + 0.8 * ((seed >> (i % 60)) & 7) as f64 / 7.0).collect();
        let p = coevo::netcore::AgentParams::new(lambdas, vec![0.5; n], vec![AgentKind::Coordinating; n], 0.0).unwrap();
        let x = profile(n, k % (1 << n));
        let exact = opinion_fixed_point(&x, &net, &p).unwrap();
        let (iter, _) = opinion_fixed_point_iterative(&x, &y0[..n], &net, &p, 1e-14, 200_000).unwrap();
        for (a, b) in exact.iter().zip(&iter) {
            prop_assert!((a - b).abs() < 1e-11);
        }
    }

    #[test]
    fn consistency_matches_payoff_test(
        n in 2usize..7, seed in any::<u64>(), l in unit(), b in unit(), coord in any::<bool>(), alpha in 0.0f64..2.0,
    ) {
        let net = two_layer_net(n, seed);
        let p = params(n, l, b, kind_of(coord), alpha);
        for k in 0..1u64 << n {
            let c = evaluate_profile(&profile(n, k), &net, &p).unwrap();
            let nash = is_nash(&c.state(), &net, &p, NASH_TOL).unwrap();
            prop_assert_eq!(c.consistent, nash.holds, "profile {}", k);
        }
    }

    #[test]
    fn round_robin_runs_are_fully_persistent(n in 2usize..10, seed in any::<u64>(), l in unit(), b in unit()) {
        let net = symmetric_net(n, seed);
        let p = params(n, l, b, AgentKind::AntiCoordinating, 0.0);
        let z0 = random_state(n, seed);
        let tr = simulate(&z0, &net, &p, &ActivationSchedule::round_robin(n), &SimOptions::for_agents(n)).unwrap();
        prop_assert!(tr.steps() >= n);
        prop_assert_eq!(persistence_of(&tr.active, n), coevo::dynamics::Persistence::Certified(n));
    }

    #[test]
    fn conditioned_graphs_pass_their_checker(seed in any::<u64>(), l in 0.55f64..0.95, b in 0.05f64..0.6) {
        let vp: Vec<usize> = (0..6).collect();
        let vn: Vec<usize> = (6..12).collect();
        let p = params(12, l, b, AgentKind::AntiCoordinating, 0.0);
        let g = condition_rescaled(coevo::analysis::TheoremId::Thm7, &vp, &vn, &p, seed);
        if let Ok(g) = g {
            prop_assert!(g.is_symmetric() && g.max_row_deviation() <= 1e-12);
            prop_assert!(vp.iter().all(|&i| g.mass_into(i, &vp) < coevo::analysis::thm7_interval(l, b).unwrap().1));
        } else {
            // infeasible parameter pairs must have an empty admissible interval
            let (lo, hi) = coevo::analysis::thm7_interval(l, b).map_or((1.0, 0.0), |t| t);
            prop_assert!(lo.max(0.0) >= hi.min(1.0));
        }
    }
}
