//! Benchmark configuration: flat `key = value` lines, `#` comments.
//!
//! ```text
//! instance = random n=1000 m=8000 wmin=1 wmax=100 seed=1
//! instance = grid rows=40 cols=40 wmax=1000 seed=2
//! instance = path n=2000 w=64
//! instance = file graphs/road.gr
//! backend = dial
//! backend = mlb k=2
//! backend = hot k=3 t=default
//! backend = radix2 delta=4
//! source = 1
//! repetitions = 3
//! output = results.csv
//! threads = 4
//! ```
//!
//! `instance` and `backend` may repeat. Any instance line accepts an extra
//! `name=<id>` used in the CSV.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use monoqueue::sssp::{gen_grid, gen_path, gen_random, Graph, QueueParams};
use monoqueue::Backend;

use crate::error::{read_graph, CliError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceSpec {
    Random {
        n: usize,
        m: usize,
        w_min: u64,
        w_max: u64,
        seed: u64,
    },
    Grid {
        rows: usize,
        cols: usize,
        w_max: u64,
        seed: u64,
    },
    Path {
        n: usize,
        w: u64,
    },
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub spec: InstanceSpec,
}

impl Instance {
    pub fn load(&self) -> Result<Graph, CliError> {
        Ok(match &self.spec {
            InstanceSpec::Random {
                n,
                m,
                w_min,
                w_max,
                seed,
            } => gen_random(*n, *m, *w_min, *w_max, *seed)?,
            InstanceSpec::Grid {
                rows,
                cols,
                w_max,
                seed,
            } => gen_grid(*rows, *cols, *w_max, *seed)?,
            InstanceSpec::Path { n, w } => gen_path(*n, *w, 0)?,
            InstanceSpec::File(path) => read_graph(path)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BackendSpec {
    pub backend: Backend,
    pub params: QueueParams,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub instances: Vec<Instance>,
    pub backends: Vec<BackendSpec>,
    /// 0-based source vertex.
    pub source: usize,
    pub repetitions: usize,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
}

fn number<T: FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("`{key}` expects a non-negative integer, got `{value}`"))
}

/// `key=value` words after the leading kind.
struct Args<'a> {
    map: BTreeMap<&'a str, &'a str>,
}

impl<'a> Args<'a> {
    fn parse(words: impl Iterator<Item = &'a str>) -> Result<Self, String> {
        let mut map = BTreeMap::new();
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got `{w}`"))?;
            if map.insert(k, v).is_some() {
                return Err(format!("`{k}` given twice"));
            }
        }
        Ok(Args { map })
    }

    fn take<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, String> {
        self.map.remove(key).map(|v| number(key, v)).transpose()
    }

    fn need<T: FromStr>(&mut self, key: &str) -> Result<T, String> {
        self.take(key)?.ok_or_else(|| format!("missing `{key}=`"))
    }

    fn finish(self) -> Result<(), String> {
        match self.map.keys().next() {
            Some(k) => Err(format!("unexpected `{k}=`")),
            None => Ok(()),
        }
    }
}

fn parse_instance(value: &str) -> Result<Instance, String> {
    let mut words = value.split_whitespace();
    let kind = words.next().ok_or("empty instance")?;
    if kind == "file" {
        let path = words.next().ok_or("`file` needs a path")?;
        let mut args = Args::parse(words)?;
        let name = args
            .map
            .remove("name")
            .map(str::to_string)
            .unwrap_or_else(|| {
                Path::new(path)
                    .file_stem()
                    .map_or_else(|| path.to_string(), |s| s.to_string_lossy().into_owned())
            });
        args.finish()?;
        return Ok(Instance {
            name,
            spec: InstanceSpec::File(PathBuf::from(path)),
        });
    }
    let mut args = Args::parse(words)?;
    let name = args.map.remove("name").map(str::to_string);
    let (default_name, spec) = match kind {
        "random" => {
            let (n, m) = (args.need("n")?, args.need("m")?);
            let w_min = args.take("wmin")?.unwrap_or(1);
            let w_max = args.need("wmax")?;
            let seed = args.take("seed")?.unwrap_or(0);
            (
                format!("random-n{n}-m{m}-w{w_min}-{w_max}-s{seed}"),
                InstanceSpec::Random {
                    n,
                    m,
                    w_min,
                    w_max,
                    seed,
                },
            )
        }
        "grid" => {
            let (rows, cols) = (args.need("rows")?, args.need("cols")?);
            let w_max = args.need("wmax")?;
            let seed = args.take("seed")?.unwrap_or(0);
            (
                format!("grid-{rows}x{cols}-w{w_max}-s{seed}"),
                InstanceSpec::Grid {
                    rows,
                    cols,
                    w_max,
                    seed,
                },
            )
        }
        "path" => {
            let (n, w) = (args.need("n")?, args.need("w")?);
            (format!("path-n{n}-w{w}"), InstanceSpec::Path { n, w })
        }
        other => {
            return Err(format!(
                "unknown instance kind `{other}` (random, grid, path, file)"
            ))
        }
    };
    args.finish()?;
    Ok(Instance {
        name: name.unwrap_or(default_name),
        spec,
    })
}

pub fn parse_backend(value: &str) -> Result<BackendSpec, String> {
    let mut words = value.split_whitespace();
    let backend: Backend = words
        .next()
        .ok_or("empty backend")?
        .parse()
        .map_err(|e: monoqueue::ConfigError| e.to_string())?;
    let mut args = Args::parse(words)?;
    let mut params = QueueParams::default();
    if backend.uses_levels() {
        params.levels = args.take("k")?.unwrap_or(params.levels);
        if params.levels == 0 {
            return Err("k must be at least 1".into());
        }
    }
    if backend.uses_delta() {
        params.delta = args.take("delta")?.unwrap_or(params.delta);
        if params.delta < 2 {
            return Err("delta must be at least 2".into());
        }
    }
    if backend.uses_threshold() {
        params.threshold = match args.map.remove("t") {
            None | Some("default") => None,
            Some(v) => Some(number("t", v)?),
        };
    }
    if backend.uses_width() {
        params.width = args.take("p")?.unwrap_or(1);
        if params.width == 0 {
            return Err("p must be at least 1".into());
        }
    }
    args.finish()
        .map_err(|e| format!("{e} for backend {backend}"))?;
    Ok(BackendSpec { backend, params })
}

impl BenchConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = BenchConfig {
            instances: Vec::new(),
            backends: Vec::new(),
            source: 0,
            repetitions: 1,
            output: None,
            threads: None,
        };
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fail = |msg: String| CliError::Invalid(format!("config line {}: {msg}", i + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| fail(format!("expected `key = value`, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "instance" => cfg.instances.push(parse_instance(value).map_err(fail)?),
                "backend" => cfg.backends.push(parse_backend(value).map_err(fail)?),
                "source" => {
                    let s: usize = number(key, value).map_err(fail)?;
                    if s == 0 {
                        return Err(fail("source is 1-based".into()));
                    }
                    cfg.source = s - 1;
                }
                "repetitions" => {
                    cfg.repetitions = number(key, value).map_err(fail)?;
                    if cfg.repetitions == 0 {
                        return Err(fail("repetitions must be at least 1".into()));
                    }
                }
                "output" => cfg.output = Some(PathBuf::from(value)),
                "threads" => {
                    let t: usize = number(key, value).map_err(fail)?;
                    cfg.threads = Some(t.max(1));
                }
                other => return Err(fail(format!("unknown key `{other}`"))),
            }
        }
        if cfg.instances.is_empty() {
            return Err(CliError::invalid("config lists no `instance`"));
        }
        if cfg.backends.is_empty() {
            return Err(CliError::invalid("config lists no `backend`"));
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config() {
        let cfg = BenchConfig::parse(
            "# matrix\ninstance = random n=10 m=20 wmax=5 seed=3\ninstance = path n=4 w=2 name=p4\n\
             backend = dial\nbackend = hot k=3 t=5 p=2\nbackend = radix2 delta=8\n\
             source = 2\nrepetitions = 3\noutput = out.csv # trailing\nthreads = 2\n",
        )
        .unwrap();
        assert_eq!(cfg.instances[0].name, "random-n10-m20-w1-5-s3");
        assert_eq!(cfg.instances[1].name, "p4");
        assert_eq!(
            cfg.backends[1].params,
            QueueParams {
                levels: 3,
                delta: 4,
                threshold: Some(5),
                width: 2
            }
        );
        assert_eq!(cfg.backends[2].params.delta, 8);
        assert_eq!((cfg.source, cfg.repetitions, cfg.threads), (1, 3, Some(2)));
        assert_eq!(cfg.output, Some(PathBuf::from("out.csv")));
    }

    #[test]
    fn rejects_bad_lines() {
        for text in [
            "instance = path n=4\nbackend = dial\n",
            "instance = path n=4 w=1\nbackend = dial k=2\n",
            "instance = path n=4 w=1\nbackend = fib\n",
            "instance = path n=4 w=1\nbackend = dial\nrepetitions = 0\n",
            "instance = path n=4 w=1\nbackend = radix2 delta=1\n",
            "instance = cube n=4\nbackend = dial\n",
            "instance = path n=4 w=1\n",
            "backend = dial\n",
            "colour = blue\n",
        ] {
            assert!(
                matches!(BenchConfig::parse(text), Err(CliError::Invalid(_))),
                "{text}"
            );
        }
    }
}
