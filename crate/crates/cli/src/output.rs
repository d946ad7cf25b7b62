//! CSV and JSON writers. All output uses LF line endings and is a pure
//! function of its input.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use wsnlife_core::{BatchSummary, SensorNode, SimulationResult};

pub const TIMESERIES_HEADER: &str = "cycle,total_power,alive_count,dead_count,alive_sinks,dead_sinks,\
covered_fraction,k_covered_fraction,fraction_with_sink_path,messages_cumulative";

pub const SNAPSHOT_HEADER: &str = "phase,id,role,x,y,energy,alive";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

pub fn write_timeseries_csv<W: Write>(result: &SimulationResult, mut w: W) -> io::Result<()> {
    writeln!(w, "{TIMESERIES_HEADER}")?;
    for r in &result.records {
        writeln!(
            w,
            "{},{:.6},{},{},{},{},{:.6},{:.6},{:.6},{}",
            r.cycle,
            r.total_power,
            r.alive_count,
            r.dead_count,
            r.alive_sinks,
            r.dead_sinks,
            r.covered_fraction,
            r.k_covered_fraction,
            r.fraction_with_sink_path,
            r.messages_cumulative
        )?;
    }
    Ok(())
}

fn write_json<T: Serialize + ?Sized, W: Write>(value: &T, mut w: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)
}

pub fn write_timeseries_json<W: Write>(result: &SimulationResult, w: W) -> io::Result<()> {
    write_json(&result.records, w)
}

fn snapshot_rows<W: Write>(phase: &str, nodes: &[SensorNode], w: &mut W) -> io::Result<()> {
    for n in nodes {
        writeln!(
            w,
            "{phase},{},{},{:.6},{:.6},{:.6},{}",
            n.id,
            n.role.as_str(),
            n.x,
            n.y,
            n.energy,
            n.alive
        )?;
    }
    Ok(())
}

/// Initial and final node states, one row per node per phase.
pub fn write_snapshots_csv<W: Write>(result: &SimulationResult, mut w: W) -> io::Result<()> {
    writeln!(w, "{SNAPSHOT_HEADER}")?;
    snapshot_rows("initial", &result.initial_nodes, &mut w)?;
    snapshot_rows("final", &result.final_nodes, &mut w)
}

pub fn write_report_json<W: Write>(result: &SimulationResult, w: W) -> io::Result<()> {
    write_json(&result.report, w)
}

pub fn write_replicas_csv<W: Write>(summary: &BatchSummary, mut w: W) -> io::Result<()> {
    writeln!(w, "replica,seed,death_cycle,death_condition")?;
    for r in &summary.runs {
        writeln!(w, "{},{},{},{:?}", r.replica, r.seed, r.death_cycle, r.death_condition)?;
    }
    Ok(())
}

fn to_file(path: &Path, write: impl FnOnce(&mut io::BufWriter<fs::File>) -> io::Result<()>) -> io::Result<()> {
    let mut w = io::BufWriter::new(fs::File::create(path)?);
    write(&mut w)?;
    w.flush()
}

pub fn emit_timeseries(result: &SimulationResult, format: Format, path: &Path) -> io::Result<()> {
    to_file(path, |w| match format {
        Format::Csv => write_timeseries_csv(result, w),
        Format::Json => write_timeseries_json(result, w),
    })
}

pub fn emit_snapshots(result: &SimulationResult, path: &Path) -> io::Result<()> {
    to_file(path, |w| write_snapshots_csv(result, w))
}

pub fn emit_report(result: &SimulationResult, path: &Path) -> io::Result<()> {
    to_file(path, |w| write_report_json(result, w))
}

pub fn emit_json<T: Serialize + ?Sized>(value: &T, path: &Path) -> io::Result<()> {
    to_file(path, |w| write_json(value, w))
}

pub fn emit_replicas(summary: &BatchSummary, format: Format, path: &Path) -> io::Result<()> {
    to_file(path, |w| match format {
        Format::Csv => write_replicas_csv(summary, w),
        Format::Json => write_json(&summary.runs, w),
    })
}
