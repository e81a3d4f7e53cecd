use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("arc {arc} references vertex {vertex}, but the graph has {n} vertices")]
    VertexOutOfRange { arc: usize, vertex: usize, n: usize },
    #[error("arc {arc} is a self-loop on vertex {vertex}")]
    SelfLoop { arc: usize, vertex: usize },
}

/// Directed graph with non-negative integer weights in compressed
/// adjacency form. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<u64>,
    max_weight: u64,
    min_weight: Option<u64>,
}

impl Graph {
    /// Builds from `(tail, head, weight)` triples. Arcs leaving the same
    /// vertex keep their input order.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize, u64)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut offsets = vec![0usize; n + 1];
        for (arc, &(u, v, _)) in arcs.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { arc, vertex, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { arc, vertex: u });
            }
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut next = offsets.clone();
        let mut targets = vec![0; arcs.len()];
        let mut weights = vec![0; arcs.len()];
        for &(u, v, w) in arcs {
            targets[next[u]] = v;
            weights[next[u]] = w;
            next[u] += 1;
        }
        Ok(Graph {
            n,
            offsets,
            max_weight: weights.iter().copied().max().unwrap_or(0),
            min_weight: weights.iter().copied().min(),
            targets,
            weights,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.targets.len()
    }

    /// Largest arc weight, C. Zero for a graph without arcs.
    pub fn max_weight(&self) -> u64 {
        self.max_weight
    }

    pub fn min_weight(&self) -> Option<u64> {
        self.min_weight
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Outgoing `(head, weight)` pairs of `u`.
    pub fn out_arcs(&self, u: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        let range = self.offsets[u]..self.offsets[u + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.weights[range].iter().copied())
    }

    /// All arcs as `(tail, head, weight)`, grouped by tail.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        (0..self.n).flat_map(move |u| self.out_arcs(u).map(move |(v, w)| (u, v, w)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compressed_layout() {
        let g = Graph::from_arcs(3, &[(1, 2, 4), (0, 1, 2), (0, 2, 7)]).unwrap();
        assert_eq!(g.offsets(), &[0, 2, 3, 3]);
        assert_eq!(g.targets(), &[1, 2, 2]);
        assert_eq!(g.weights(), &[2, 7, 4]);
        assert_eq!((g.max_weight(), g.min_weight()), (7, Some(2)));
        let arcs: Vec<_> = g.arcs().collect();
        assert_eq!(arcs, vec![(0, 1, 2), (0, 2, 7), (1, 2, 4)]);
    }

    #[test]
    fn rejects_bad_arcs() {
        assert_eq!(Graph::from_arcs(0, &[]), Err(GraphError::NoVertices));
        assert_eq!(
            Graph::from_arcs(2, &[(0, 2, 1)]),
            Err(GraphError::VertexOutOfRange {
                arc: 0,
                vertex: 2,
                n: 2
            })
        );
        assert_eq!(
            Graph::from_arcs(2, &[(0, 1, 1), (1, 1, 3)]),
            Err(GraphError::SelfLoop { arc: 1, vertex: 1 })
        );
    }

    #[test]
    fn arcless_graph() {
        let g = Graph::from_arcs(4, &[]).unwrap();
        assert_eq!((g.m(), g.max_weight(), g.min_weight()), (0, 0, None));
    }
}
