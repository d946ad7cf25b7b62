//! Shared fixtures for the criterion benchmarks.

use wsnlife_core::{generate_network, preset, NetworkConfig, Rng, SensorNode};

pub fn scenario(name: &str, seed: u64) -> NetworkConfig {
    NetworkConfig { seed, ..preset(name).expect("known preset").config }
}

/// A freshly generated layout for `config`.
pub fn layout(config: &NetworkConfig) -> Vec<SensorNode> {
    generate_network(config, &mut Rng::new(config.seed))
}
