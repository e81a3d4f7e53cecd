//! Benchmark matrix: every instance against every backend configuration,
//! repeated, collected into CSV rows.

use std::collections::BTreeMap;
use std::io::Write;

use monoqueue::batch::{map, with_threads, Execution};
use monoqueue::sssp::{solve, Graph};
use serde::Serialize;

use crate::config::{BackendSpec, BenchConfig};
use crate::error::CliError;

pub const HEADER: &str = "instance,n,m,C,backend,k,delta,t,p,rep,wall_ns,inserts,extracts,decreases,empty_scans,expansions,moves,heap_ops,dist_checksum";

/// One solver run. Parameters a backend does not use are left empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    #[serde(rename = "C")]
    pub c: u64,
    pub backend: String,
    pub k: Option<u32>,
    pub delta: Option<u64>,
    pub t: Option<usize>,
    pub p: Option<u64>,
    pub rep: usize,
    pub wall_ns: u128,
    pub inserts: u64,
    pub extracts: u64,
    pub decreases: u64,
    pub empty_scans: u64,
    pub expansions: u64,
    pub moves: u64,
    pub heap_ops: u64,
    pub dist_checksum: String,
}

struct Task<'a> {
    instance: &'a str,
    graph: &'a Graph,
    spec: BackendSpec,
    rep: usize,
}

fn run_task(task: &Task<'_>, source: usize) -> Result<BenchRow, CliError> {
    let Task {
        instance,
        graph: g,
        spec,
        rep,
    } = *task;
    let r = solve(g, source, spec.backend, &spec.params)
        .map_err(|e| CliError::from(e).context(format!("{instance} / {}", spec.backend)))?;
    let cfg = spec.params.config_for(g);
    let b = spec.backend;
    let c = r.counters;
    Ok(BenchRow {
        instance: instance.to_string(),
        n: g.n(),
        m: g.m(),
        c: g.max_weight(),
        backend: b.name().to_string(),
        k: b.uses_levels().then_some(spec.params.levels),
        delta: b.uses_delta().then_some(spec.params.delta),
        t: b.uses_threshold().then(|| cfg.threshold()),
        p: b.uses_width().then_some(spec.params.width),
        rep,
        wall_ns: r.wall_time.as_nanos(),
        inserts: c.inserts,
        extracts: c.extracts,
        decreases: c.decreases,
        empty_scans: c.empty_scan_steps,
        expansions: c.expansions,
        moves: c.element_moves,
        heap_ops: c.heap_ops,
        dist_checksum: format!("{:016x}", r.checksum()),
    })
}

/// Runs the whole matrix. Rows come back in (instance, backend, rep) order
/// regardless of how many threads ran them.
pub fn run(cfg: &BenchConfig, threads: Option<usize>) -> Result<Vec<BenchRow>, CliError> {
    let graphs: Vec<Graph> = cfg
        .instances
        .iter()
        .map(|i| {
            i.load()
                .map_err(|e| e.context(format!("instance {}", i.name)))
        })
        .collect::<Result<_, _>>()?;
    for (inst, g) in cfg.instances.iter().zip(&graphs) {
        if cfg.source >= g.n() {
            return Err(CliError::invalid(format!(
                "source {} is not a vertex of {} ({} vertices)",
                cfg.source + 1,
                inst.name,
                g.n()
            )));
        }
        for spec in &cfg.backends {
            spec.params
                .config_for(g)
                .validate(spec.backend)
                .map_err(|e| CliError::invalid(format!("{} / {}: {e}", inst.name, spec.backend)))?;
        }
    }
    let mut tasks = Vec::new();
    for (inst, g) in cfg.instances.iter().zip(&graphs) {
        for &spec in &cfg.backends {
            for rep in 1..=cfg.repetitions {
                tasks.push(Task {
                    instance: &inst.name,
                    graph: g,
                    spec,
                    rep,
                });
            }
        }
    }
    let threads = threads.or(cfg.threads);
    let exec = if threads == Some(1) {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let source = cfg.source;
    let rows = with_threads(threads, || map(exec, &tasks, |t| run_task(t, source)));
    let rows: Vec<BenchRow> = rows.into_iter().collect::<Result<_, _>>()?;
    check_rows(&rows)?;
    Ok(rows)
}

/// Every run of one instance must produce the same distances, and stay
/// within the per-run operation budgets.
pub fn check_rows(rows: &[BenchRow]) -> Result<(), CliError> {
    let mut seen: BTreeMap<&str, &BenchRow> = BTreeMap::new();
    for row in rows {
        if row.inserts > row.n as u64 || row.extracts > row.n as u64 || row.decreases > row.m as u64
        {
            return Err(CliError::Verification(format!(
                "{} / {}: counters exceed n = {}, m = {}",
                row.instance, row.backend, row.n, row.m
            )));
        }
        let first = *seen.entry(&row.instance).or_insert(row);
        if first.dist_checksum != row.dist_checksum {
            return Err(CliError::Verification(format!(
                "{}: {} (rep {}) produced checksum {} but {} (rep {}) produced {}",
                row.instance,
                row.backend,
                row.rep,
                row.dist_checksum,
                first.backend,
                first.rep,
                first.dist_checksum
            )));
        }
    }
    Ok(())
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(HEADER.split(','))?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
