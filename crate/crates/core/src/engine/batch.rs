use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::run_simulation;
use crate::config::NetworkConfig;
use crate::error::ConfigError;
use crate::lifetime::{DeathCondition, LifetimeReport};
use crate::rng::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Population statistics of one metric across replicas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
    pub median: f64,
}

impl Stats {
    /// Panics on an empty slice.
    pub fn of(values: &[f64]) -> Self {
        assert!(!values.is_empty(), "stats of empty sample");
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mid = sorted.len() / 2;
        let median = if sorted.len() % 2 == 1 {
            sorted[mid]
        } else {
            (sorted[mid - 1] + sorted[mid]) / 2.0
        };
        Self {
            mean,
            std: var.sqrt(),
            min: sorted[0],
            max: sorted[sorted.len() - 1],
            median,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionStats {
    pub name: String,
    pub z_a: Stats,
    pub z_t: Stats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCount {
    pub condition: DeathCondition,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicaOutcome {
    pub replica: usize,
    pub seed: u64,
    pub death_cycle: u64,
    pub death_condition: DeathCondition,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub replicas: usize,
    pub base_seed: u64,
    pub death_cycle: Stats,
    pub criteria: Vec<CriterionStats>,
    /// Every condition, including those that never occurred, in rule order.
    pub death_conditions: Vec<ConditionCount>,
    pub runs: Vec<ReplicaOutcome>,
}

impl BatchSummary {
    pub fn count(&self, condition: DeathCondition) -> usize {
        self.death_conditions
            .iter()
            .find(|c| c.condition == condition)
            .map_or(0, |c| c.count)
    }

    /// Most frequent death condition; ties go to the earlier condition in rule order.
    pub fn modal_condition(&self) -> DeathCondition {
        self.death_conditions
            .iter()
            .fold(None::<ConditionCount>, |best, c| match best {
                Some(b) if b.count >= c.count => Some(b),
                _ => Some(*c),
            })
            .map(|c| c.condition)
            .expect("condition table is never empty")
    }
}

/// Replica 0 uses `base_seed`; replica `i > 0` uses the `i`-th SplitMix64
/// output of a stream seeded with `base_seed`.
pub fn replica_seeds(base_seed: u64, replicas: usize) -> Vec<u64> {
    let mut rng = Rng::new(base_seed);
    std::iter::once(base_seed)
        .chain(std::iter::from_fn(|| Some(rng.next_u64())))
        .take(replicas)
        .collect()
}

/// Runs `replicas` independent simulations and aggregates them in replica order.
pub fn run_batch(
    config: &NetworkConfig,
    replicas: usize,
    base_seed: u64,
    execution: Execution,
) -> Result<BatchSummary, ConfigError> {
    if replicas == 0 {
        return Err(ConfigError::OutOfRange {
            key: "replicas",
            value: 0.0,
            reason: "must be >= 1",
        });
    }
    config.validate()?;
    let seeds = replica_seeds(base_seed, replicas);
    let run = |seed: &u64| -> LifetimeReport {
        let cfg = NetworkConfig { seed: *seed, ..config.clone() };
        run_simulation(&cfg).expect("validated config").report
    };
    let reports: Vec<LifetimeReport> = match execution {
        Execution::Sequential => seeds.iter().map(run).collect(),
        Execution::Parallel => seeds.par_iter().map(run).collect(),
    };
    Ok(summarize(base_seed, &seeds, &reports))
}

fn summarize(base_seed: u64, seeds: &[u64], reports: &[LifetimeReport]) -> BatchSummary {
    let death: Vec<f64> = reports.iter().map(|r| r.death_cycle as f64).collect();
    let criteria = reports[0]
        .criteria
        .iter()
        .enumerate()
        .map(|(ci, c)| {
            let z_a: Vec<f64> = reports.iter().map(|r| r.criteria[ci].z_a as f64).collect();
            let z_t: Vec<f64> = reports.iter().map(|r| r.criteria[ci].z_t as f64).collect();
            CriterionStats { name: c.name.clone(), z_a: Stats::of(&z_a), z_t: Stats::of(&z_t) }
        })
        .collect();
    let death_conditions = DeathCondition::ALL
        .iter()
        .map(|&condition| ConditionCount {
            condition,
            count: reports.iter().filter(|r| r.death_condition == condition).count(),
        })
        .collect();
    let runs = reports
        .iter()
        .zip(seeds)
        .enumerate()
        .map(|(replica, (r, &seed))| ReplicaOutcome {
            replica,
            seed,
            death_cycle: r.death_cycle,
            death_condition: r.death_condition,
        })
        .collect();
    BatchSummary {
        replicas: reports.len(),
        base_seed,
        death_cycle: Stats::of(&death),
        criteria,
        death_conditions,
        runs,
    }
}
