use std::io::{self, Write};
use std::time::{Duration, Instant};

use thiserror::Error;

use super::Graph;
use crate::queue::{
    Backend, ConfigError, Element, MonotoneQueue, OpCounters, QueueConfig, QueueError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SsspError {
    #[error("source {vertex} is not a vertex of a graph with {n} vertices")]
    SourceOutOfRange { vertex: usize, n: usize },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("queue rejected an operation: {0}")]
    Queue(#[from] QueueError),
}

/// Backend parameters that do not depend on the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueueParams {
    pub levels: u32,
    pub delta: u64,
    pub threshold: Option<usize>,
    pub width: u64,
}

impl Default for QueueParams {
    fn default() -> Self {
        QueueParams {
            levels: 2,
            delta: 4,
            threshold: None,
            width: 1,
        }
    }
}

impl QueueParams {
    /// Queue configuration for `g`: span `C`, keys up to `n * C`.
    pub fn config_for(&self, g: &Graph) -> QueueConfig {
        QueueConfig::for_graph(g.n(), g.max_weight())
            .with_levels(self.levels)
            .with_delta(self.delta)
            .with_threshold(self.threshold)
            .with_width(self.width)
    }
}

/// Shortest-path labels and the statistics of the run that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SsspResult {
    /// `None` marks an unreachable vertex.
    pub dist: Vec<Option<u64>>,
    pub parent: Vec<Option<usize>>,
    pub counters: OpCounters,
    pub max_placements: u32,
    pub wall_time: Duration,
    /// Vertices in the order they were settled.
    pub order: Vec<usize>,
}

impl SsspResult {
    pub fn max_dist(&self) -> Option<u64> {
        self.dist.iter().flatten().copied().max()
    }

    pub fn reachable(&self) -> usize {
        self.dist.iter().filter(|d| d.is_some()).count()
    }

    /// FNV-1a over the distance array; unreachable vertices hash as `u64::MAX`.
    pub fn checksum(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for d in &self.dist {
            for b in d.unwrap_or(u64::MAX).to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        h
    }

    /// One `d <vertex> <dist|UNREACHABLE>` line per vertex, 1-based.
    pub fn write_dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (v, d) in self.dist.iter().enumerate() {
            match d {
                Some(d) => writeln!(out, "d {} {d}", v + 1)?,
                None => writeln!(out, "d {} UNREACHABLE", v + 1)?,
            }
        }
        Ok(())
    }

    pub fn dump(&self) -> String {
        let mut buf = Vec::new();
        self.write_dump(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }
}

/// Label-setting Dijkstra over any monotone queue. A vertex enters the
/// queue when its label first becomes finite; later improvements use
/// decrease-key. The queue must be empty and sized for `g`.
pub fn dijkstra<Q: MonotoneQueue + ?Sized>(
    g: &Graph,
    source: usize,
    queue: &mut Q,
) -> Result<SsspResult, SsspError> {
    let n = g.n();
    if source >= n {
        return Err(SsspError::SourceOutOfRange { vertex: source, n });
    }
    let start = Instant::now();
    let mut dist: Vec<Option<u64>> = vec![None; n];
    let mut parent = vec![None; n];
    let mut settled = vec![false; n];
    let mut order = Vec::with_capacity(n);

    dist[source] = Some(0);
    queue.insert(source, 0)?;
    while let Some(Element { id: u, key: du }) = queue.extract_min() {
        settled[u] = true;
        order.push(u);
        for (v, w) in g.out_arcs(u) {
            if settled[v] {
                continue;
            }
            let candidate = du + w;
            match dist[v] {
                None => {
                    dist[v] = Some(candidate);
                    parent[v] = Some(u);
                    queue.insert(v, candidate)?;
                }
                Some(dv) if candidate < dv => {
                    dist[v] = Some(candidate);
                    parent[v] = Some(u);
                    queue.decrease_key(v, candidate)?;
                }
                _ => {}
            }
        }
    }
    Ok(SsspResult {
        dist,
        parent,
        counters: queue.counters(),
        max_placements: queue.max_placements(),
        wall_time: start.elapsed(),
        order,
    })
}

/// Builds the requested backend for `g` and runs [`dijkstra`].
pub fn solve(
    g: &Graph,
    source: usize,
    backend: Backend,
    params: &QueueParams,
) -> Result<SsspResult, SsspError> {
    if params.width > 1 {
        if let Some(min_weight) = g.min_weight() {
            if params.width > min_weight {
                return Err(ConfigError::WidthAboveMinWeight {
                    p: params.width,
                    min_weight,
                }
                .into());
            }
        }
    }
    let mut queue = params.config_for(g).build(backend)?;
    dijkstra(g, source, &mut queue)
}

/// Exact distances by at most `n - 1` rounds of relaxing every arc,
/// stopping early once a round changes nothing.
pub fn bellman_ford(g: &Graph, source: usize) -> Result<SsspResult, SsspError> {
    let n = g.n();
    if source >= n {
        return Err(SsspError::SourceOutOfRange { vertex: source, n });
    }
    let start = Instant::now();
    let mut dist: Vec<Option<u64>> = vec![None; n];
    let mut parent = vec![None; n];
    dist[source] = Some(0);
    for _ in 1..n {
        let mut changed = false;
        for (u, v, w) in g.arcs() {
            let Some(du) = dist[u] else { continue };
            if dist[v].is_none_or(|dv| du + w < dv) {
                dist[v] = Some(du + w);
                parent[v] = Some(u);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(SsspResult {
        dist,
        parent,
        counters: OpCounters::default(),
        max_placements: 0,
        wall_time: start.elapsed(),
        order: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_arcs(3, &[(0, 1, 2), (0, 2, 5), (1, 2, 1)]).unwrap()
    }

    #[test]
    fn triangle_every_backend() {
        for b in Backend::ALL {
            let r = solve(&triangle(), 0, b, &QueueParams::default()).unwrap();
            assert_eq!(r.dist, vec![Some(0), Some(2), Some(3)], "{b}");
            assert_eq!(r.parent, vec![None, Some(0), Some(1)], "{b}");
            assert_eq!(r.counters.decreases, 1, "{b}");
        }
        assert_eq!(
            bellman_ford(&triangle(), 0).unwrap().dist,
            vec![Some(0), Some(2), Some(3)]
        );
    }

    #[test]
    fn single_vertex() {
        let g = Graph::from_arcs(1, &[]).unwrap();
        let r = solve(&g, 0, Backend::Mlb, &QueueParams::default()).unwrap();
        assert_eq!(r.dist, vec![Some(0)]);
        assert_eq!(r.counters.extracts, 1);
    }

    #[test]
    fn unreachable_vertex() {
        let g = Graph::from_arcs(3, &[(0, 1, 3)]).unwrap();
        let r = solve(&g, 0, Backend::Dial, &QueueParams::default()).unwrap();
        assert_eq!(r.dist, vec![Some(0), Some(3), None]);
        assert_eq!(r.dump(), "d 1 0\nd 2 3\nd 3 UNREACHABLE\n");
        assert_eq!(bellman_ford(&g, 0).unwrap().dist, r.dist);
    }

    #[test]
    fn rejects_bad_source_and_width() {
        let g = triangle();
        assert_eq!(
            solve(&g, 3, Backend::Dial, &QueueParams::default()),
            Err(SsspError::SourceOutOfRange { vertex: 3, n: 3 })
        );
        let wide = QueueParams {
            width: 2,
            ..QueueParams::default()
        };
        assert_eq!(
            solve(&g, 0, Backend::Mlb, &wide),
            Err(SsspError::Config(ConfigError::WidthAboveMinWeight {
                p: 2,
                min_weight: 1
            }))
        );
        assert!(solve(&g, 0, Backend::Radix1, &QueueParams { width: 1, ..wide }).is_ok());
    }

    #[test]
    fn checksum_tracks_distances() {
        let g = triangle();
        let a = solve(&g, 0, Backend::Dial, &QueueParams::default()).unwrap();
        let b = solve(&g, 0, Backend::Radix2, &QueueParams::default()).unwrap();
        assert_eq!(a.checksum(), b.checksum());
        let c = solve(&g, 1, Backend::Dial, &QueueParams::default()).unwrap();
        assert_ne!(a.checksum(), c.checksum());
    }
}
