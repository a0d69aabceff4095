mod common;

use coevo::analysis::{is_nash, NASH_TOL};
use coevo::dynamics::{simulate, ActivationSchedule, SimOptions};
use coevo::AgentKind;
use common::*;

#[test]
fn anti_coordinators_settle_within_200n_steps() {
    for seed in 0..30u64 {
        let n = 13 + (seed as usize % 18);
        let net = symmetric_net(n, seed);
        let p = params(
            n,
            0.1 + 0.8 * (seed % 7) as f64 / 6.0,
            0.15 + 0.7 * (seed % 5) as f64 / 4.0,
            AgentKind::AntiCoordinating,
            0.0,
        );
        let mut opts = SimOptions::for_agents(n);
        opts.stop.max_steps = 200 * n;
        let tr = simulate(&random_state(n, seed + 50), &net, &p, &ActivationSchedule::round_robin(n), &opts).unwrap();
        assert!(tr.converged, "seed {seed}, n {n}");
        assert!(is_nash(tr.last(), &net, &p, NASH_TOL).unwrap().holds);
    }
}

#[test]
fn coordinators_converge_empirically() {
    for seed in 0..30u64 {
        let n = 3 + (seed as usize % 20);
        let net = two_layer_net(n, seed);
        let alpha = [0.0, 0.5, 2.0][seed as usize % 3];
        let p = params(
            n,
            0.2 + 0.6 * (seed % 4) as f64 / 3.0,
            0.3 + 0.4 * (seed % 3) as f64 / 2.0,
            AgentKind::Coordinating,
            alpha,
        );
        for schedule in [ActivationSchedule::round_robin(n), ActivationSchedule::uniform_random(n, seed)] {
            let mut opts = SimOptions::for_agents(n);
            opts.allow_unverified = true;
            let tr = simulate(&random_state(n, seed + 90), &net, &p, &schedule, &opts).unwrap();
            assert!(tr.converged, "seed {seed}, {}", schedule.label());
            assert!(is_nash(tr.last(), &net, &p, NASH_TOL).unwrap().holds, "seed {seed}");
        }
    }
}
