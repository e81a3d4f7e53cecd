//! Seeded instance generators. The same arguments always produce the same
//! graph.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("{m} arcs requested but only {max} distinct non-loop arcs exist")]
    TooManyArcs { m: usize, max: usize },
    #[error("weight range [{min}, {max}] is empty")]
    EmptyWeightRange { min: u64, max: u64 },
    #[error("grid needs at least one row and one column")]
    EmptyGrid,
    #[error("{0} vertices do not fit in memory")]
    TooLarge(u128),
}

/// `m` distinct arcs drawn uniformly from the `n(n-1)` non-loop pairs,
/// weights uniform in `[w_min, w_max]`.
pub fn gen_random(
    n: usize,
    m: usize,
    w_min: u64,
    w_max: u64,
    seed: u64,
) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::NoVertices);
    }
    if w_min > w_max {
        return Err(GenError::EmptyWeightRange {
            min: w_min,
            max: w_max,
        });
    }
    let pairs = n
        .checked_mul(n - 1)
        .ok_or(GenError::TooLarge(n as u128 * (n as u128 - 1)))?;
    if m > pairs {
        return Err(GenError::TooManyArcs { m, max: pairs });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = index::sample(&mut rng, pairs, m);
    let arcs: Vec<(usize, usize, u64)> = picks
        .iter()
        .map(|idx| {
            let u = idx / (n - 1);
            let r = idx % (n - 1);
            let v = if r >= u { r + 1 } else { r };
            (u, v, rng.random_range(w_min..=w_max))
        })
        .collect();
    Ok(Graph::from_arcs(n, &arcs).expect("generated arcs are valid"))
}

/// `rows x cols` grid with arcs to the right and downward neighbours,
/// weights uniform in `[1, w_max]`. Vertex `(r, c)` is `r * cols + c`.
pub fn gen_grid(rows: usize, cols: usize, w_max: u64, seed: u64) -> Result<Graph, GenError> {
    if rows == 0 || cols == 0 {
        return Err(GenError::EmptyGrid);
    }
    if w_max == 0 {
        return Err(GenError::EmptyWeightRange { min: 1, max: 0 });
    }
    let n = rows
        .checked_mul(cols)
        .ok_or(GenError::TooLarge(rows as u128 * cols as u128))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::with_capacity(2 * n);
    for r in 0..rows {
        for c in 0..cols {
            let u = r * cols + c;
            if c + 1 < cols {
                arcs.push((u, u + 1, rng.random_range(1..=w_max)));
            }
            if r + 1 < rows {
                arcs.push((u, u + cols, rng.random_range(1..=w_max)));
            }
        }
    }
    Ok(Graph::from_arcs(n, &arcs).expect("generated arcs are valid"))
}

/// Path `0 -> 1 -> ... -> n-1` with every arc of weight `w`. The seed is
/// accepted for a uniform generator interface; the output does not depend
/// on it.
pub fn gen_path(n: usize, w: u64, _seed: u64) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::NoVertices);
    }
    let arcs: Vec<_> = (1..n).map(|v| (v - 1, v, w)).collect();
    Ok(Graph::from_arcs(n, &arcs).expect("generated arcs are valid"))
}
