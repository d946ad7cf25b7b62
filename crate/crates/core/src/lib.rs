//! Cycle-based lifetime simulation for wireless sensor networks.
//!
//! Nodes are scattered uniformly over a rectangle with random initial
//! energy. Each cycle an alive node may take a small random step, paying
//! the distance moved, and may send one message, paying a flat cost that
//! is higher for sinks. The network dies when remaining power, surviving
//! nodes or surviving sinks fall below fixed fractions of their starting
//! values.
//!
//! Alongside that rule, every cycle evaluates a catalog of liveliness
//! criteria (survival, k-coverage, sink reachability and others) and turns
//! each criterion's timeline into accumulated (`z_a`) and total (`z_t`)
//! lifetimes with a configurable tolerance for short outages.
//!
//! All randomness comes from one SplitMix64 stream, so a `(config, seed)`
//! pair reproduces a run exactly.

pub mod config;
pub mod dynamics;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod lifetime;
pub mod node;
pub mod presets;
pub mod rng;

pub use config::{NetworkConfig, StoppingThresholds};
pub use dynamics::{move_node, step_cycle, CycleOutcome};
pub use engine::{
    run_batch, run_simulation, BatchSummary, CycleRecord, EnergyLedger, Execution, Simulation, SimulationResult,
};
pub use error::ConfigError;
pub use geometry::{area_coverage, build_connectivity, target_coverage, ConnectivityResult, CoverageResult};
pub use lifetime::{
    compute_lifetimes, evaluate_criterion, stopping_check, Criterion, DeathCondition, LifetimeReport, Verdict,
};
pub use node::{generate_network, InitialTotals, Role, SensorNode};
pub use presets::{preset, presets, Preset};
pub use rng::Rng;
