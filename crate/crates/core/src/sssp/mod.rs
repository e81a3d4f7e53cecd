//! Single-source shortest paths over the monotone queues: graphs, DIMACS
//! I/O, seeded generators, Dijkstra, a Bellman-Ford oracle and a result
//! verifier.

mod dijkstra;
mod dimacs;
mod generate;
mod graph;
mod verify;

pub use dijkstra::{bellman_ford, dijkstra, solve, QueueParams, SsspError, SsspResult};
pub use dimacs::{parse_dimacs, write_dimacs, ParseError, ParseErrorKind};
pub use generate::{gen_grid, gen_path, gen_random, GenError};
pub use graph::{Graph, GraphError};
pub use verify::{verify, Violation};
