//! Per-cycle mobility and energy drain.

use serde::{Deserialize, Serialize};

use crate::config::NetworkConfig;
use crate::node::{Role, SensorNode};
use crate::rng::Rng;

/// What one cycle of [`step_cycle`] did to the network.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CycleOutcome {
    pub moved_count: usize,
    pub comm_count: usize,
    pub energy_spent_move: f64,
    pub energy_spent_comm: f64,
    /// Energy below zero erased when dying nodes were clamped to zero.
    pub overdraft_forgiven: f64,
    pub newly_dead: usize,
    pub messages_sent: usize,
}

impl CycleOutcome {
    pub fn energy_spent(&self) -> f64 {
        self.energy_spent_move + self.energy_spent_comm
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Move {
    pub x: f64,
    pub y: f64,
    /// Length of the attempted displacement, before clamping.
    pub distance: f64,
}

/// Applies a displacement, clamping the result into the field.
pub fn displace(node: &SensorNode, dx: f64, dy: f64, config: &NetworkConfig) -> Move {
    Move {
        x: (node.x + dx).clamp(0.0, config.width),
        y: (node.y + dy).clamp(0.0, config.height),
        distance: (dx * dx + dy * dy).sqrt(),
    }
}

/// Draws `dx` then `dy` from `[-move_range, move_range)` and displaces the node.
pub fn move_node(node: &SensorNode, rng: &mut Rng, config: &NetworkConfig) -> Move {
    debug_assert!(node.alive, "move_node on dead node {}", node.id);
    let r = config.move_range;
    let dx = rng.uniform(-r, r);
    let dy = rng.uniform(-r, r);
    displace(node, dx, dy, config)
}

pub fn comm_cost(role: Role, config: &NetworkConfig) -> f64 {
    match role {
        Role::Regular => config.comm_cost_regular,
        Role::Sink => config.comm_cost_sink,
    }
}

/// Advances every alive node by one cycle, in id order.
///
/// Each node draws its move gate, then `dx`/`dy` if it moves, then its
/// communication gate. A node whose energy ends the cycle at or below zero
/// is clamped to zero and marked dead. Dead nodes consume no draws.
pub fn step_cycle(nodes: &mut [SensorNode], rng: &mut Rng, config: &NetworkConfig) -> CycleOutcome {
    let mut out = CycleOutcome::default();
    for node in nodes.iter_mut().filter(|n| n.alive) {
        if rng.chance(config.p_move) {
            let m = move_node(node, rng, config);
            node.x = m.x;
            node.y = m.y;
            node.energy -= m.distance;
            out.moved_count += 1;
            out.energy_spent_move += m.distance;
        }
        if rng.chance(config.p_comm) {
            let cost = comm_cost(node.role, config);
            node.energy -= cost;
            out.comm_count += 1;
            out.messages_sent += 1;
            out.energy_spent_comm += cost;
        }
        if node.energy <= 0.0 {
            out.overdraft_forgiven += -node.energy;
            node.energy = 0.0;
            node.alive = false;
            out.newly_dead += 1;
        }
    }
    out
}
