//! Coevolution of binary actions and continuous opinions on two-layer networks
//! of coordinating and anti-coordinating agents.
//!
//! Every numeric type is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! at the crate root fix the scalar to `f64`, which is what the generators,
//! file formats, and tolerances are calibrated for.

pub mod analysis;
pub mod dynamics;
mod error;
pub mod genesis;
pub mod netcore;
pub mod oracle;
mod scalar;

pub use error::{Error, Result};
pub use netcore::{Action, AgentKind};
pub use scalar::Scalar;

pub type Graph = netcore::WeightedGraph<f64>;
pub type Network = netcore::TwoLayerNetwork<f64>;
pub type Params = netcore::AgentParams<f64>;
pub type State = netcore::PopulationState<f64>;
pub type Trace = dynamics::Trace<f64>;
pub type Report = analysis::TheoremReport<f64>;
pub type Candidate = oracle::EquilibriumCandidate<f64>;

pub type Graph32 = netcore::WeightedGraph<f32>;
pub type Network32 = netcore::TwoLayerNetwork<f32>;
pub type Params32 = netcore::AgentParams<f32>;
pub type State32 = netcore::PopulationState<f32>;
