//! The simulation loop.
//!
//! A run records a cycle-0 baseline, then alternates one cycle of drain,
//! a geometry pass on the post-movement snapshot, a record, and the death
//! check, until the network dies or `max_cycles` is reached.

mod batch;

pub use batch::{replica_seeds, run_batch, BatchSummary, ConditionCount, CriterionStats, Execution, ReplicaOutcome, Stats};

use serde::{Deserialize, Serialize};

use crate::config::NetworkConfig;
use crate::dynamics::step_cycle;
use crate::error::ConfigError;
use crate::geometry::{area_coverage, build_connectivity, ConnectivityResult};
use crate::lifetime::{
    compute_lifetimes, evaluate_criterion, last_drop, record_data_gathering, stopping_check, Criterion,
    CriterionLifetime, DeathCondition, LifetimeReport, Snapshot, Verdict,
};
use crate::node::{alive_count, alive_sink_count, generate_network, total_power, InitialTotals, SensorNode};
use crate::rng::Rng;

/// One row of the per-cycle time series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub cycle: u64,
    pub total_power: f64,
    pub alive_count: usize,
    pub dead_count: usize,
    pub alive_sinks: usize,
    pub dead_sinks: usize,
    pub covered_fraction: f64,
    pub k_covered_fraction: f64,
    pub fraction_with_sink_path: f64,
    pub messages_cumulative: u64,
    /// One flag per configured criterion, in configuration order.
    pub criterion_flags: Vec<bool>,
}

/// Cumulative energy flows since cycle 0.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct EnergyLedger {
    pub spent_move: f64,
    pub spent_comm: f64,
    pub overdraft_forgiven: f64,
}

impl EnergyLedger {
    /// Relative error of `initial = remaining + spent - forgiven`.
    pub fn conservation_error(&self, initial: f64, remaining: f64) -> f64 {
        let rhs = remaining + self.spent_move + self.spent_comm - self.overdraft_forgiven;
        let diff = (initial - rhs).abs();
        if initial > 0.0 {
            diff / initial
        } else {
            diff
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub config: NetworkConfig,
    pub initial: InitialTotals,
    pub initial_nodes: Vec<SensorNode>,
    pub final_nodes: Vec<SensorNode>,
    /// Cycle 0 baseline through the death cycle.
    pub records: Vec<CycleRecord>,
    pub report: LifetimeReport,
    pub death_cycle: u64,
    pub energy: EnergyLedger,
}

/// A run in progress; use [`Simulation::step`] to observe it cycle by cycle.
#[derive(Debug, Clone)]
pub struct Simulation {
    config: NetworkConfig,
    criteria: Vec<Criterion>,
    rng: Rng,
    initial_nodes: Vec<SensorNode>,
    nodes: Vec<SensorNode>,
    initial: InitialTotals,
    records: Vec<CycleRecord>,
    energy: EnergyLedger,
    messages: u64,
    trips: u64,
    cycle: u64,
    death: Option<DeathCondition>,
}

impl Simulation {
    pub fn new(config: NetworkConfig) -> Result<Self, ConfigError> {
        let criteria = Criterion::catalog(config.coverage_k, config.thresholds());
        Self::with_criteria(config, criteria)
    }

    pub fn with_criteria(config: NetworkConfig, criteria: Vec<Criterion>) -> Result<Self, ConfigError> {
        config.validate()?;
        let mut rng = Rng::new(config.seed);
        let nodes = generate_network(&config, &mut rng);
        Ok(Self::start(config, criteria, rng, nodes))
    }

    /// Starts from a caller-built layout instead of a generated one. The
    /// RNG is still seeded from `config.seed` and drives the dynamics only.
    pub fn from_nodes(
        config: NetworkConfig,
        criteria: Vec<Criterion>,
        nodes: Vec<SensorNode>,
    ) -> Result<Self, ConfigError> {
        config.validate()?;
        if nodes.len() != config.n_sensors {
            return Err(ConfigError::OutOfRange {
                key: "n_sensors",
                value: nodes.len() as f64,
                reason: "must equal the number of supplied nodes",
            });
        }
        if nodes.iter().enumerate().any(|(i, n)| n.id != i || n.energy < 0.0) {
            return Err(ConfigError::OutOfRange {
                key: "n_sensors",
                value: nodes.len() as f64,
                reason: "supplied nodes need ids 0..n in order and non-negative energy",
            });
        }
        let rng = Rng::new(config.seed);
        Ok(Self::start(config, criteria, rng, nodes))
    }

    fn start(config: NetworkConfig, criteria: Vec<Criterion>, rng: Rng, nodes: Vec<SensorNode>) -> Self {
        let initial = InitialTotals::of(&nodes);
        let mut sim = Self {
            config,
            criteria,
            rng,
            initial_nodes: nodes.clone(),
            nodes,
            initial,
            records: Vec::new(),
            energy: EnergyLedger::default(),
            messages: 0,
            trips: 0,
            cycle: 0,
            death: None,
        };
        let (record, _) = sim.observe();
        sim.records.push(record);
        sim
    }

    pub fn config(&self) -> &NetworkConfig {
        &self.config
    }

    pub fn nodes(&self) -> &[SensorNode] {
        &self.nodes
    }

    pub fn initial(&self) -> &InitialTotals {
        &self.initial
    }

    pub fn energy(&self) -> &EnergyLedger {
        &self.energy
    }

    pub fn records(&self) -> &[CycleRecord] {
        &self.records
    }

    pub fn cycle(&self) -> u64 {
        self.cycle
    }

    pub fn is_finished(&self) -> bool {
        self.death.is_some()
    }

    fn observe(&self) -> (CycleRecord, ConnectivityResult) {
        let coverage = area_coverage(&self.nodes, &self.config, self.config.coverage_k);
        let connectivity = build_connectivity(&self.nodes, &self.config);
        let snap = Snapshot { nodes: &self.nodes, coverage: &coverage, connectivity: &connectivity };
        let criterion_flags = self
            .criteria
            .iter()
            .map(|c| evaluate_criterion(c, &snap, &self.initial))
            .collect();
        let alive = alive_count(&self.nodes);
        let alive_sinks = alive_sink_count(&self.nodes);
        let record = CycleRecord {
            cycle: self.cycle,
            total_power: total_power(&self.nodes),
            alive_count: alive,
            dead_count: self.nodes.len() - alive,
            alive_sinks,
            dead_sinks: self.initial.sinks - alive_sinks,
            covered_fraction: coverage.covered_fraction,
            k_covered_fraction: coverage.k_covered_fraction,
            fraction_with_sink_path: connectivity.fraction_with_sink_path,
            messages_cumulative: self.messages,
            criterion_flags,
        };
        (record, connectivity)
    }

    /// Runs one cycle and returns its record, or `None` once the run has ended.
    pub fn step(&mut self) -> Option<&CycleRecord> {
        if self.death.is_some() {
            return None;
        }
        self.cycle += 1;
        let out = step_cycle(&mut self.nodes, &mut self.rng, &self.config);
        self.energy.spent_move += out.energy_spent_move;
        self.energy.spent_comm += out.energy_spent_comm;
        self.energy.overdraft_forgiven += out.overdraft_forgiven;
        self.messages += out.messages_sent as u64;

        let (record, connectivity) = self.observe();
        self.trips += record_data_gathering(&connectivity);
        self.records.push(record);

        match stopping_check(&self.nodes, &self.initial, &self.config.thresholds()) {
            Verdict::Dead(cond) => self.death = Some(cond),
            Verdict::Alive if self.cycle >= self.config.max_cycles => {
                self.death = Some(DeathCondition::MaxCycles)
            }
            Verdict::Alive => {}
        }
        self.records.last()
    }

    /// Runs to the end and evaluates every criterion's lifetimes.
    pub fn finish(mut self) -> SimulationResult {
        while self.step().is_some() {}
        let death_condition = self.death.expect("run ended");
        // Lifetimes are measured over consumption cycles 1..=death_cycle.
        let criteria = self
            .criteria
            .iter()
            .enumerate()
            .map(|(ci, c)| {
                let timeline: Vec<bool> = self.records[1..].iter().map(|r| r.criterion_flags[ci]).collect();
                let lt = compute_lifetimes(&timeline, self.config.delta_t_sd);
                CriterionLifetime { name: c.name(), z_a: lt.z_a, z_t: lt.z_t, last_drop: last_drop(&timeline) }
            })
            .collect();
        let report = LifetimeReport {
            criteria,
            death_condition,
            death_cycle: self.cycle,
            total_messages: self.messages,
            data_gathering_trips: self.trips,
        };
        SimulationResult {
            config: self.config,
            initial: self.initial,
            initial_nodes: self.initial_nodes,
            final_nodes: self.nodes,
            records: self.records,
            report,
            death_cycle: self.cycle,
            energy: self.energy,
        }
    }
}

pub fn run_simulation(config: &NetworkConfig) -> Result<SimulationResult, ConfigError> {
    Ok(Simulation::new(config.clone())?.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifetime::verdict_from_totals;
    use crate::node::Role;

    fn small() -> NetworkConfig {
        NetworkConfig { n_sensors: 30, width: 500.0, height: 500.0, seed: 5, ..Default::default() }
    }

    #[test]
    fn records_span_baseline_to_death() {
        let r = run_simulation(&small()).unwrap();
        assert_eq!(r.records.len() as u64, r.death_cycle + 1);
        assert_eq!(r.records[0].cycle, 0);
        assert_eq!(r.records[0].messages_cumulative, 0);
        assert_eq!(r.records[0].total_power, r.initial.total_power);
        for (i, rec) in r.records.iter().enumerate() {
            assert_eq!(rec.cycle, i as u64);
            assert_eq!(rec.alive_count + rec.dead_count, 30);
        }
        assert_eq!(r.report.total_messages, r.records.last().unwrap().messages_cumulative);
    }

    #[test]
    fn final_record_carries_the_reported_condition() {
        let r = run_simulation(&small()).unwrap();
        let v = |rec: &CycleRecord| {
            verdict_from_totals(rec.total_power, rec.alive_count, rec.alive_sinks, &r.initial, &r.config.thresholds())
        };
        assert_eq!(v(r.records.last().unwrap()), Verdict::Dead(r.report.death_condition));
        for rec in &r.records[..r.records.len() - 1] {
            assert_eq!(v(rec), Verdict::Alive);
        }
    }

    #[test]
    fn equal_configs_give_equal_results() {
        assert_eq!(run_simulation(&small()).unwrap(), run_simulation(&small()).unwrap());
    }

    #[test]
    fn invalid_config_rejected() {
        let cfg = NetworkConfig { p_comm: 2.0, ..small() };
        assert_eq!(run_simulation(&cfg).unwrap_err().key(), "p_comm");
    }

    #[test]
    fn idle_network_hits_the_cap() {
        let cfg = NetworkConfig { p_move: 0.0, p_comm: 0.0, max_cycles: 40, ..small() };
        let r = run_simulation(&cfg).unwrap();
        // nodes that start with exactly zero energy would die; the rest never drain
        assert_eq!(r.report.death_condition, DeathCondition::MaxCycles);
        assert_eq!(r.death_cycle, 40);
    }

    #[test]
    fn zero_energy_node_dies_in_first_cycle() {
        let cfg = NetworkConfig { n_sensors: 1, initial_energy_max: 0.0, ..Default::default() };
        let r = run_simulation(&cfg).unwrap();
        assert_eq!(r.death_cycle, 1);
        assert!(matches!(
            r.report.death_condition,
            DeathCondition::PowerRatio | DeathCondition::AliveRatio
        ));
        assert!(!r.final_nodes[0].alive);
    }

    #[test]
    fn deterministic_drain_matches_closed_form() {
        for energy in [4.0, 10.0, 37.0, 100.0] {
            let n = 12;
            let nodes: Vec<SensorNode> = (0..n)
                .map(|id| SensorNode { id, role: Role::Regular, x: 10.0, y: 10.0, energy, alive: true })
                .collect();
            let cfg = NetworkConfig { n_sensors: n, p_move: 0.0, p_comm: 1.0, sink_probability: 0.0, ..small() };
            let r = Simulation::from_nodes(cfg.clone(), vec![], nodes).unwrap().finish();

            // brute-force replay of the drain arithmetic
            let (mut e, mut cycle) = (energy, 0u64);
            loop {
                cycle += 1;
                e -= 1.0;
                let power = n as f64 * e.max(0.0);
                if power / (n as f64 * energy) < 0.25 || e <= 0.0 {
                    break;
                }
            }
            assert_eq!(r.death_cycle, cycle, "E = {energy}");
            assert_eq!(r.death_cycle, (0.75 * energy).floor() as u64 + 1);
            assert_eq!(r.report.death_condition, DeathCondition::PowerRatio);
        }
    }

    #[test]
    fn lifetimes_within_run_length() {
        let r = run_simulation(&small()).unwrap();
        assert_eq!(r.report.criteria.len(), 13);
        for c in &r.report.criteria {
            assert!(c.z_a <= c.z_t && c.z_t <= r.death_cycle, "{c:?}");
        }
        // the death rule itself holds right up to the death cycle
        let rule = r.report.criteria.last().unwrap();
        assert_eq!((rule.z_a, rule.z_t), (r.death_cycle - 1, r.death_cycle - 1));
    }

    #[test]
    fn from_nodes_rejects_mismatched_layout() {
        let cfg = NetworkConfig { n_sensors: 2, ..Default::default() };
        let nodes = vec![SensorNode { id: 0, role: Role::Sink, x: 0.0, y: 0.0, energy: 1.0, alive: true }];
        assert!(Simulation::from_nodes(cfg, vec![], nodes).is_err());
    }
}
