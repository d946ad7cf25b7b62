//! The four reference deployments.

use serde::Serialize;

use crate::config::NetworkConfig;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Preset {
    pub name: &'static str,
    pub config: NetworkConfig,
}

const SCENARIOS: [(&str, usize, f64, f64); 4] = [
    ("scenario1", 150, 3000.0, 0.156),
    ("scenario2", 100, 2000.0, 0.10),
    ("scenario3", 50, 1000.0, 0.20),
    ("scenario4", 50, 1500.0, 0.20),
];

/// Activity gates, ranges and lattice come from [`NetworkConfig::default`].
pub fn presets() -> Vec<Preset> {
    SCENARIOS
        .iter()
        .map(|&(name, n, side, p)| Preset {
            name,
            config: NetworkConfig {
                n_sensors: n,
                width: side,
                height: side,
                sink_probability: p,
                ..NetworkConfig::default()
            },
        })
        .collect()
}

pub fn preset(name: &str) -> Option<Preset> {
    presets().into_iter().find(|p| p.name == name)
}
