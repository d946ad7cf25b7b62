use serde::{Deserialize, Serialize};

use crate::config::NetworkConfig;
use crate::rng::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Regular,
    Sink,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Regular => "regular",
            Role::Sink => "sink",
        }
    }
}

/// One sensor. `id` is its index in the network and never changes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensorNode {
    pub id: usize,
    pub role: Role,
    pub x: f64,
    pub y: f64,
    pub energy: f64,
    pub alive: bool,
}

impl SensorNode {
    pub fn is_sink(&self) -> bool {
        self.role == Role::Sink
    }

    pub fn distance_sq(&self, x: f64, y: f64) -> f64 {
        let dx = self.x - x;
        let dy = self.y - y;
        dx * dx + dy * dy
    }
}

/// Places `n_sensors` nodes uniformly over the field.
///
/// Per node the draws are x, y, energy and then the sink gate, so a seed
/// fully determines the layout.
pub fn generate_network(config: &NetworkConfig, rng: &mut Rng) -> Vec<SensorNode> {
    (0..config.n_sensors)
        .map(|id| {
            let x = rng.uniform(0.0, config.width);
            let y = rng.uniform(0.0, config.height);
            let energy = rng.uniform(0.0, config.initial_energy_max);
            let role = if rng.chance(config.sink_probability) {
                Role::Sink
            } else {
                Role::Regular
            };
            SensorNode { id, role, x, y, energy, alive: true }
        })
        .collect()
}

/// Totals captured before any consumption; the death rule compares against these.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialTotals {
    pub n: usize,
    pub sinks: usize,
    pub total_power: f64,
}

impl InitialTotals {
    pub fn of(nodes: &[SensorNode]) -> Self {
        Self {
            n: nodes.len(),
            sinks: nodes.iter().filter(|n| n.is_sink()).count(),
            total_power: total_power(nodes),
        }
    }
}

/// Sum of remaining energy, accumulated in id order.
pub fn total_power(nodes: &[SensorNode]) -> f64 {
    nodes.iter().fold(0.0, |acc, n| acc + n.energy)
}

pub fn alive_count(nodes: &[SensorNode]) -> usize {
    nodes.iter().filter(|n| n.alive).count()
}

pub fn alive_sink_count(nodes: &[SensorNode]) -> usize {
    nodes.iter().filter(|n| n.alive && n.is_sink()).count()
}
