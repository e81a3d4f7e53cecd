use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use monoqueue::sssp::{
    bellman_ford, gen_grid, gen_path, gen_random, solve, verify, write_dimacs, QueueParams,
};
use monoqueue::Backend;
use monoqueue_cli::bench::{self, write_csv};
use monoqueue_cli::config::BenchConfig;
use monoqueue_cli::error::{read_graph, write_file};
use monoqueue_cli::plot::{plot, PlotOptions};
use monoqueue_cli::CliError;

const THREADS_VAR: &str = "MONOQUEUE_THREADS";

#[derive(Parser)]
#[command(
    name = "monoqueue",
    version,
    about = "Monotone priority queues for shortest paths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph in DIMACS format.
    Gen(GenArgs),
    /// Solve single-source shortest paths and print `d <vertex> <dist>` lines.
    Solve(SolveArgs),
    /// Run a benchmark matrix from a config file and write CSV.
    Bench(BenchArgs),
    /// Plot benchmark CSV columns as SVG.
    Plot(PlotArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("kind").required(true).args(["path", "random", "grid"])))]
struct GenArgs {
    /// Path 1 -> 2 -> ... -> n with constant weight --w.
    #[arg(long)]
    path: bool,
    /// --m distinct random arcs over --n vertices.
    #[arg(long)]
    random: bool,
    /// --rows x --cols grid with right and down arcs.
    #[arg(long)]
    grid: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    w: Option<u64>,
    #[arg(long, default_value_t = 1)]
    wmin: u64,
    #[arg(long)]
    wmax: Option<u64>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// DIMACS `.gr` file.
    graph: PathBuf,
    /// 1-based source vertex.
    #[arg(long, default_value_t = 1)]
    source: usize,
    #[arg(long, default_value = "mlb")]
    backend: Backend,
    /// Levels for mlb and hot.
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Inner buckets per bucket for radix2.
    #[arg(long, default_value_t = 4)]
    delta: u64,
    /// Hot-queue threshold, or `default`.
    #[arg(long, default_value = "default")]
    t: String,
    /// Wide-bucket multiplier for mlb and hot; at most the minimum arc weight.
    #[arg(long, default_value_t = 1)]
    p: u64,
    /// Check the result and cross-check against Bellman-Ford.
    #[arg(long)]
    verify: bool,
    /// Print operation counters to standard error.
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct BenchArgs {
    config: PathBuf,
    /// Overrides the config's `output`.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Worker threads; overrides the environment and the config.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct PlotArgs {
    csv: PathBuf,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
    #[arg(long, default_value = "backend")]
    group: String,
    #[arg(long)]
    log_log: bool,
    /// Output SVG; defaults to the CSV path with an `.svg` extension.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

fn need<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::invalid(format!("--{kind} needs --{flag}")))
}

fn cmd_gen(a: GenArgs) -> Result<(), CliError> {
    let (g, desc) = if a.path {
        let (n, w) = (need(a.n, "n", "path")?, need(a.w, "w", "path")?);
        (
            gen_path(n, w, a.seed)?,
            format!("path n={n} w={w} seed={}", a.seed),
        )
    } else if a.random {
        let (n, m) = (need(a.n, "n", "random")?, need(a.m, "m", "random")?);
        let wmax = need(a.wmax, "wmax", "random")?;
        (
            gen_random(n, m, a.wmin, wmax, a.seed)?,
            format!(
                "random n={n} m={m} wmin={} wmax={wmax} seed={}",
                a.wmin, a.seed
            ),
        )
    } else {
        let (rows, cols) = (need(a.rows, "rows", "grid")?, need(a.cols, "cols", "grid")?);
        let wmax = need(a.wmax, "wmax", "grid")?;
        (
            gen_grid(rows, cols, wmax, a.seed)?,
            format!("grid rows={rows} cols={cols} wmax={wmax} seed={}", a.seed),
        )
    };
    let text = write_dimacs(&g, Some(&format!("monoqueue gen {desc}")));
    match a.out {
        Some(path) => write_file(&path, text.as_bytes()),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn cmd_solve(a: SolveArgs) -> Result<(), CliError> {
    let g = read_graph(&a.graph)?;
    if a.source == 0 || a.source > g.n() {
        return Err(CliError::invalid(format!(
            "source {} outside [1, {}]",
            a.source,
            g.n()
        )));
    }
    let source = a.source - 1;
    let threshold = match a.t.as_str() {
        "default" => None,
        t => Some(t.parse().map_err(|_| {
            CliError::invalid(format!("--t expects a number or `default`, got `{t}`"))
        })?),
    };
    let params = QueueParams {
        levels: a.k,
        delta: a.delta,
        threshold,
        width: a.p,
    };
    let r = solve(&g, source, a.backend, &params)?;
    if a.verify {
        let mut problems: Vec<String> = verify(&g, source, &r)
            .iter()
            .map(|v| v.to_string())
            .collect();
        let oracle = bellman_ford(&g, source)?;
        problems.extend(
            (0..g.n())
                .filter(|&v| oracle.dist[v] != r.dist[v])
                .take(20)
                .map(|v| {
                    format!(
                        "vertex {}: Bellman-Ford distance {:?}, got {:?}",
                        v + 1,
                        oracle.dist[v],
                        r.dist[v]
                    )
                }),
        );
        if !problems.is_empty() {
            for p in &problems {
                eprintln!("violation: {p}");
            }
            return Err(CliError::Verification(format!(
                "{} violations",
                problems.len()
            )));
        }
    }
    if a.stats {
        let c = r.counters;
        eprintln!(
            "backend={} wall_ns={} inserts={} extracts={} decreases={} empty_scans={} expansions={} moves={} heap_ops={}",
            a.backend,
            r.wall_time.as_nanos(),
            c.inserts,
            c.extracts,
            c.decreases,
            c.empty_scan_steps,
            c.expansions,
            c.element_moves,
            c.heap_ops
        );
    }
    let mut out = BufWriter::new(io::stdout().lock());
    r.write_dump(&mut out)
        .and_then(|()| out.flush())
        .map_err(|e| CliError::io("<stdout>", e))
}

fn env_threads() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(CliError::invalid(format!(
                "{THREADS_VAR} must be a positive integer, got `{v}`"
            ))),
        },
    }
}

fn cmd_bench(a: BenchArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&a.config).map_err(|e| CliError::io(&a.config, e))?;
    let cfg = BenchConfig::parse(&text)?;
    if a.threads == Some(0) {
        return Err(CliError::invalid("--threads must be at least 1"));
    }
    let threads = a.threads.or(env_threads()?);
    let rows = bench::run(&cfg, threads)?;
    let path = a
        .output
        .or_else(|| cfg.output.clone())
        .unwrap_or_else(|| PathBuf::from("bench.csv"));
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf).map_err(|e| CliError::io(&path, io::Error::other(e)))?;
    write_file(&path, &buf)?;
    eprintln!("wrote {} rows to {}", rows.len(), path.display());
    Ok(())
}

fn cmd_plot(a: PlotArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&a.csv).map_err(|e| CliError::io(&a.csv, e))?;
    let opts = PlotOptions {
        x: a.x,
        y: a.y,
        group: a.group,
        log_log: a.log_log,
    };
    let svg = plot(&text, &opts).map_err(|e| e.context(a.csv.display().to_string()))?;
    let out = a.out.unwrap_or_else(|| a.csv.with_extension("svg"));
    write_file(&out, svg.as_bytes())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Plot(a) => cmd_plot(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
