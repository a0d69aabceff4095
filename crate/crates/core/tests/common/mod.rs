#![allow(dead_code)]

use coevo::genesis::{initial_state, random_symmetric_stochastic, InitialKind};
use coevo::netcore::{AgentParams, PopulationState, TwoLayerNetwork};
use coevo::AgentKind;

pub type Net = TwoLayerNetwork<f64>;
pub type Params = AgentParams<f64>;
pub type State = PopulationState<f64>;

pub fn symmetric_net(n: usize, seed: u64) -> Net {
    TwoLayerNetwork::single(random_symmetric_stochastic(n, seed, true).unwrap()).unwrap()
}

/// Independent random layers for `A` and `W`.
pub fn two_layer_net(n: usize, seed: u64) -> Net {
    let a = random_symmetric_stochastic(n, seed, true).unwrap();
    let w = random_symmetric_stochastic(n, seed.wrapping_add(0x5151), true).unwrap();
    TwoLayerNetwork::new(a, w).unwrap()
}

pub fn params(n: usize, lambda: f64, beta: f64, kind: AgentKind, alpha: f64) -> Params {
    AgentParams::uniform(n, lambda, beta, kind, alpha).unwrap()
}

pub fn random_state(n: usize, seed: u64) -> State {
    initial_state(&InitialKind::Random, n, seed).unwrap()
}

pub fn kind_of(sign: bool) -> AgentKind {
    if sign {
        AgentKind::Coordinating
    } else {
        AgentKind::AntiCoordinating
    }
}
