use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

/// Every parameter of a simulation run.
///
/// Lengths are in meters, energies in abstract units and durations in
/// cycles. The energy, cost and threshold defaults are the model's
/// reference values; activity gates, ranges and the coverage lattice are
/// free parameters of the simulator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NetworkConfig {
    pub n_sensors: usize,
    pub width: f64,
    pub height: f64,
    pub sink_probability: f64,
    pub initial_energy_max: f64,
    pub move_range: f64,
    pub comm_cost_regular: f64,
    pub comm_cost_sink: f64,
    pub p_move: f64,
    pub p_comm: f64,
    pub power_threshold: f64,
    pub alive_threshold: f64,
    pub sink_threshold: f64,
    pub radio_range: f64,
    pub sensing_range: f64,
    pub grid_resolution: usize,
    /// Depth reported as `k_covered_fraction` in every cycle record.
    pub coverage_k: u32,
    /// Points of interest for target coverage. Empty means none.
    pub targets: Vec<[f64; 2]>,
    pub delta_t_sd: u64,
    pub max_cycles: u64,
    pub seed: u64,
}

impl Default for NetworkConfig {
    fn default() -> Self {
        Self {
            n_sensors: 100,
            width: 1000.0,
            height: 1000.0,
            sink_probability: 0.1,
            initial_energy_max: 100.0,
            move_range: 5.0,
            comm_cost_regular: 1.0,
            comm_cost_sink: 2.0,
            p_move: 0.25,
            p_comm: 0.5,
            power_threshold: 0.25,
            alive_threshold: 0.25,
            sink_threshold: 0.05,
            radio_range: 400.0,
            sensing_range: 250.0,
            grid_resolution: 64,
            coverage_k: 2,
            targets: Vec::new(),
            delta_t_sd: 0,
            max_cycles: 10_000,
            seed: 1,
        }
    }
}

fn unit(key: &'static str, value: f64) -> Result<(), ConfigError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(ConfigError::out_of_range(key, value, "must lie in [0, 1]"))
    }
}

fn positive(key: &'static str, value: f64) -> Result<(), ConfigError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(ConfigError::out_of_range(key, value, "must be finite and > 0"))
    }
}

fn non_negative(key: &'static str, value: f64) -> Result<(), ConfigError> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(ConfigError::out_of_range(key, value, "must be finite and >= 0"))
    }
}

impl NetworkConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_sensors == 0 {
            return Err(ConfigError::out_of_range("n_sensors", 0.0, "must be >= 1"));
        }
        positive("width", self.width)?;
        positive("height", self.height)?;
        unit("sink_probability", self.sink_probability)?;
        non_negative("initial_energy_max", self.initial_energy_max)?;
        non_negative("move_range", self.move_range)?;
        non_negative("comm_cost_regular", self.comm_cost_regular)?;
        non_negative("comm_cost_sink", self.comm_cost_sink)?;
        unit("p_move", self.p_move)?;
        unit("p_comm", self.p_comm)?;
        unit("power_threshold", self.power_threshold)?;
        unit("alive_threshold", self.alive_threshold)?;
        unit("sink_threshold", self.sink_threshold)?;
        positive("radio_range", self.radio_range)?;
        positive("sensing_range", self.sensing_range)?;
        if self.grid_resolution == 0 {
            return Err(ConfigError::out_of_range("grid_resolution", 0.0, "must be >= 1"));
        }
        if self.coverage_k == 0 {
            return Err(ConfigError::out_of_range("coverage_k", 0.0, "must be >= 1"));
        }
        if self.max_cycles == 0 {
            return Err(ConfigError::out_of_range("max_cycles", 0.0, "must be >= 1"));
        }
        for t in &self.targets {
            if !(t[0].is_finite() && t[1].is_finite()) {
                return Err(ConfigError::out_of_range("targets", f64::NAN, "coordinates must be finite"));
            }
        }
        Ok(())
    }

    /// The three ratios of the death rule, in precedence order.
    pub fn thresholds(&self) -> StoppingThresholds {
        StoppingThresholds {
            power: self.power_threshold,
            alive: self.alive_threshold,
            sinks: self.sink_threshold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StoppingThresholds {
    pub power: f64,
    pub alive: f64,
    pub sinks: f64,
}

impl Default for StoppingThresholds {
    fn default() -> Self {
        NetworkConfig::default().thresholds()
    }
}
