//! Liveliness criteria, the three-ratio death rule, and the accumulated
//! (`z_a`) and total (`z_t`) lifetime metrics.

use serde::{Deserialize, Serialize};

use crate::config::StoppingThresholds;
use crate::geometry::{ConnectivityResult, CoverageResult};
use crate::node::{alive_count, alive_sink_count, total_power, InitialTotals, SensorNode};

/// A liveliness predicate over one network snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Criterion {
    /// Holds until the first node dies.
    FirstNodeAlive,
    /// Holds until the first sink dies. Sinks stand in for cluster heads.
    FirstSinkAlive,
    SurvivingFraction { beta: f64 },
    AnyNodeAlive,
    KCoverage { k: u32, alpha: f64 },
    FullTargetCoverage,
    FullAreaCoverage,
    AlphaCoverage { alpha: f64 },
    /// Coverage and sink reachability (used as the delivery ratio) both above threshold.
    CoverageAndDelivery { alpha_cov: f64, alpha_del: f64 },
    SinkPathFraction { theta: f64 },
    ConnectedAndCovered,
    /// Largest component, surviving nodes and coverage all above their fractions.
    CompositeMin { c1: f64, c2: f64, c3: f64 },
    PaperStoppingRule(StoppingThresholds),
}

impl Criterion {
    /// The full catalog with the parameters used by the CLI.
    pub fn catalog(coverage_k: u32, thresholds: StoppingThresholds) -> Vec<Criterion> {
        vec![
            Criterion::FirstNodeAlive,
            Criterion::FirstSinkAlive,
            Criterion::SurvivingFraction { beta: 0.5 },
            Criterion::AnyNodeAlive,
            Criterion::KCoverage { k: coverage_k, alpha: 0.5 },
            Criterion::FullTargetCoverage,
            Criterion::FullAreaCoverage,
            Criterion::AlphaCoverage { alpha: 0.9 },
            Criterion::CoverageAndDelivery { alpha_cov: 0.9, alpha_del: 0.9 },
            Criterion::SinkPathFraction { theta: 0.9 },
            Criterion::ConnectedAndCovered,
            Criterion::CompositeMin { c1: 0.5, c2: 0.5, c3: 0.5 },
            Criterion::PaperStoppingRule(thresholds),
        ]
    }

    pub fn name(&self) -> String {
        match self {
            Criterion::FirstNodeAlive => "first_node_alive".into(),
            Criterion::FirstSinkAlive => "first_sink_alive".into(),
            Criterion::SurvivingFraction { beta } => format!("surviving_fraction({beta})"),
            Criterion::AnyNodeAlive => "any_node_alive".into(),
            Criterion::KCoverage { k, alpha } => format!("k_coverage({k},{alpha})"),
            Criterion::FullTargetCoverage => "full_target_coverage".into(),
            Criterion::FullAreaCoverage => "full_area_coverage".into(),
            Criterion::AlphaCoverage { alpha } => format!("alpha_coverage({alpha})"),
            Criterion::CoverageAndDelivery { alpha_cov, alpha_del } => {
                format!("coverage_and_delivery({alpha_cov},{alpha_del})")
            }
            Criterion::SinkPathFraction { theta } => format!("sink_path_fraction({theta})"),
            Criterion::ConnectedAndCovered => "connected_and_covered".into(),
            Criterion::CompositeMin { c1, c2, c3 } => format!("composite_min({c1},{c2},{c3})"),
            Criterion::PaperStoppingRule(t) => {
                format!("stopping_rule({},{},{})", t.power, t.alive, t.sinks)
            }
        }
    }

    /// True when the criterion only looks at who is alive and how much energy is left.
    pub fn is_node_count(&self) -> bool {
        matches!(
            self,
            Criterion::FirstNodeAlive
                | Criterion::FirstSinkAlive
                | Criterion::SurvivingFraction { .. }
                | Criterion::AnyNodeAlive
                | Criterion::PaperStoppingRule(_)
        )
    }
}

/// Everything a criterion may look at, computed on the same node state.
#[derive(Debug, Clone, Copy)]
pub struct Snapshot<'a> {
    pub nodes: &'a [SensorNode],
    pub coverage: &'a CoverageResult,
    pub connectivity: &'a ConnectivityResult,
}

/// Evaluates the criterion. Thresholds are fulfilled with `>=`.
pub fn evaluate_criterion(criterion: &Criterion, snap: &Snapshot<'_>, initial: &InitialTotals) -> bool {
    let alive = alive_count(snap.nodes);
    let cov = snap.coverage;
    let con = snap.connectivity;
    match *criterion {
        Criterion::FirstNodeAlive => alive == initial.n,
        Criterion::FirstSinkAlive => alive_sink_count(snap.nodes) == initial.sinks,
        Criterion::SurvivingFraction { beta } => alive as f64 / initial.n as f64 >= beta,
        Criterion::AnyNodeAlive => alive > 0,
        Criterion::KCoverage { k, alpha } => cov.fraction_at_least(k) >= alpha,
        Criterion::FullTargetCoverage => cov.all_targets_covered(),
        Criterion::FullAreaCoverage => cov.covered_fraction >= 1.0,
        Criterion::AlphaCoverage { alpha } => cov.covered_fraction >= alpha,
        Criterion::CoverageAndDelivery { alpha_cov, alpha_del } => {
            cov.covered_fraction >= alpha_cov && con.fraction_with_sink_path >= alpha_del
        }
        Criterion::SinkPathFraction { theta } => con.fraction_with_sink_path >= theta,
        Criterion::ConnectedAndCovered => con.is_fully_connected && cov.covered_fraction >= 1.0,
        Criterion::CompositeMin { c1, c2, c3 } => {
            con.largest_component_size as f64 >= c1 * alive as f64
                && alive as f64 >= c2 * initial.n as f64
                && cov.covered_fraction >= c3
        }
        Criterion::PaperStoppingRule(t) => stopping_check(snap.nodes, initial, &t) == Verdict::Alive,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DeathCondition {
    PowerRatio,
    AliveRatio,
    SinkRatio,
    MaxCycles,
}

impl DeathCondition {
    pub const ALL: [DeathCondition; 4] = [
        DeathCondition::PowerRatio,
        DeathCondition::AliveRatio,
        DeathCondition::SinkRatio,
        DeathCondition::MaxCycles,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Alive,
    Dead(DeathCondition),
}

/// The three-ratio death rule over aggregate totals.
///
/// Conditions are checked in the order power, alive, sinks and the first
/// that holds is reported. Each ratio is dead when strictly below its
/// threshold. The sink ratio is skipped when the network started without
/// sinks; a network that started with no energy has a power ratio of zero.
pub fn verdict_from_totals(
    remaining_power: f64,
    alive: usize,
    alive_sinks: usize,
    initial: &InitialTotals,
    thresholds: &StoppingThresholds,
) -> Verdict {
    let power_ratio = if initial.total_power > 0.0 {
        remaining_power / initial.total_power
    } else {
        0.0
    };
    if power_ratio < thresholds.power {
        return Verdict::Dead(DeathCondition::PowerRatio);
    }
    if (alive as f64 / initial.n as f64) < thresholds.alive {
        return Verdict::Dead(DeathCondition::AliveRatio);
    }
    if initial.sinks > 0 && (alive_sinks as f64 / initial.sinks as f64) < thresholds.sinks {
        return Verdict::Dead(DeathCondition::SinkRatio);
    }
    Verdict::Alive
}

pub fn stopping_check(nodes: &[SensorNode], initial: &InitialTotals, thresholds: &StoppingThresholds) -> Verdict {
    verdict_from_totals(
        total_power(nodes),
        alive_count(nodes),
        alive_sink_count(nodes),
        initial,
        thresholds,
    )
}

/// Accumulated and total lifetime of one criterion timeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lifetimes {
    pub z_a: u64,
    pub z_t: u64,
}

/// `timeline[i]` is the criterion value at time step `i`, one unit each.
///
/// An outage is tolerated while it lasts at most `delta_t_sd` steps. The
/// first outage longer than that ends the lifetime: `z_t` is the step at
/// which that outage began and `z_a` counts the fulfilled steps before it.
/// Without such an outage `z_t` is the timeline length.
pub fn compute_lifetimes(timeline: &[bool], delta_t_sd: u64) -> Lifetimes {
    let mut gap = 0u64;
    let mut gap_start = 0usize;
    let mut end = timeline.len();
    for (i, &ok) in timeline.iter().enumerate() {
        if ok {
            gap = 0;
            continue;
        }
        if gap == 0 {
            gap_start = i;
        }
        gap += 1;
        if gap > delta_t_sd {
            end = gap_start;
            break;
        }
    }
    Lifetimes {
        z_a: timeline[..end].iter().filter(|&&ok| ok).count() as u64,
        z_t: end as u64,
    }
}

/// Step of the final fulfilled-to-lost transition, found in hindsight.
pub fn last_drop(timeline: &[bool]) -> Option<u64> {
    timeline
        .windows(2)
        .rposition(|w| w[0] && !w[1])
        .map(|i| i as u64 + 1)
}

/// One successful data-gathering trip: every alive node reaches a sink.
pub fn record_data_gathering(connectivity: &ConnectivityResult) -> u64 {
    u64::from(connectivity.fraction_with_sink_path >= 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionLifetime {
    pub name: String,
    pub z_a: u64,
    pub z_t: u64,
    pub last_drop: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LifetimeReport {
    pub criteria: Vec<CriterionLifetime>,
    pub death_condition: DeathCondition,
    pub death_cycle: u64,
    pub total_messages: u64,
    pub data_gathering_trips: u64,
}
