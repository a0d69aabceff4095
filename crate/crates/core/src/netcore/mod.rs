//! Graphs, parameters, population states, and the set-level primitives
//! (partitions, cohesiveness) everything else is built on.

mod graph;
pub mod io;
mod params;
mod partition;
mod state;

pub use graph::{inspect_layer, LayerReport, WeightedGraph};
pub use params::{Action, AgentKind, AgentParams, Homogeneous};
pub use partition::{
    classify_state, cohesiveness, diffusiveness, internal_ratios, partition_state, Classification, Partition,
    CONSENSUS_TOL,
};
pub use state::{validate_layers, validate_network, PopulationState, TwoLayerNetwork, ValidationReport};
