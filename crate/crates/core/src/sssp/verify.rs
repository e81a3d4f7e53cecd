use thiserror::Error;

use super::{Graph, SsspResult};

/// A way in which a result fails to be an exact shortest-path tree.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("result has {found} labels for {expected} vertices")]
    WrongLength { expected: usize, found: usize },
    #[error("source distance is {0:?}, expected 0")]
    SourceDistance(Option<u64>),
    #[error("source has parent {0}")]
    SourceParent(usize),
    #[error("vertex {v} has distance {dist} but no parent")]
    MissingParent { v: usize, dist: u64 },
    #[error("unreachable vertex {v} has parent {parent}")]
    UnreachableWithParent { v: usize, parent: usize },
    #[error("vertex {v}: no arc {parent} -> {v} accounts for distance {dist} (parent distance {parent_dist:?})")]
    ParentMismatch {
        v: usize,
        parent: usize,
        dist: u64,
        parent_dist: Option<u64>,
    },
    #[error("arc {u} -> {v} (weight {w}) is not slack: d({u}) = {du}, d({v}) = {dv:?}")]
    Slackness {
        u: usize,
        v: usize,
        w: u64,
        du: u64,
        dv: Option<u64>,
    },
}

/// Checks the source condition, parent consistency and slackness of every
/// arc. Together these certify exact distances for non-negative weights.
pub fn verify(g: &Graph, source: usize, r: &SsspResult) -> Vec<Violation> {
    let n = g.n();
    for found in [r.dist.len(), r.parent.len()] {
        if found != n {
            return vec![Violation::WrongLength { expected: n, found }];
        }
    }
    let mut out = Vec::new();
    if source < n {
        if r.dist[source] != Some(0) {
            out.push(Violation::SourceDistance(r.dist[source]));
        }
        if let Some(p) = r.parent[source] {
            out.push(Violation::SourceParent(p));
        }
    }
    for v in (0..n).filter(|&v| v != source) {
        match (r.dist[v], r.parent[v]) {
            (None, Some(parent)) => out.push(Violation::UnreachableWithParent { v, parent }),
            (Some(dist), None) => out.push(Violation::MissingParent { v, dist }),
            (Some(dist), Some(parent)) => {
                let parent_dist = r.dist.get(parent).copied().flatten();
                let ok = parent < n
                    && parent_dist.is_some_and(|pd| {
                        g.out_arcs(parent)
                            .any(|(x, w)| x == v && pd.checked_add(w) == Some(dist))
                    });
                if !ok {
                    out.push(Violation::ParentMismatch {
                        v,
                        parent,
                        dist,
                        parent_dist,
                    });
                }
            }
            (None, None) => {}
        }
    }
    for (u, v, w) in g.arcs() {
        let Some(du) = r.dist[u] else { continue };
        let bound = du.saturating_add(w);
        if r.dist[v].is_none_or(|dv| dv > bound) {
            out.push(Violation::Slackness {
                u,
                v,
                w,
                du,
                dv: r.dist[v],
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sssp::{bellman_ford, gen_path};

    #[test]
    fn valid_result_has_no_violations() {
        let g = gen_path(5, 2, 0).unwrap();
        let r = bellman_ford(&g, 0).unwrap();
        assert_eq!(r.dist, vec![Some(0), Some(2), Some(4), Some(6), Some(8)]);
        assert!(verify(&g, 0, &r).is_empty());
    }

    #[test]
    fn raised_label_breaks_parent_arc() {
        let g = gen_path(4, 2, 0).unwrap();
        let mut r = bellman_ford(&g, 0).unwrap();
        r.dist[2] = Some(5);
        let v = verify(&g, 0, &r);
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::ParentMismatch { v: 2, .. })));
        assert!(v.contains(&Violation::Slackness {
            u: 1,
            v: 2,
            w: 2,
            du: 2,
            dv: Some(5)
        }));
    }

    #[test]
    fn lowered_label_breaks_parent_and_outgoing_arc() {
        let g = gen_path(4, 2, 0).unwrap();
        let mut r = bellman_ford(&g, 0).unwrap();
        r.dist[2] = Some(3);
        let v = verify(&g, 0, &r);
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::ParentMismatch { v: 2, .. })));
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::ParentMismatch { v: 3, .. })));
        assert!(v.contains(&Violation::Slackness {
            u: 2,
            v: 3,
            w: 2,
            du: 3,
            dv: Some(6)
        }));
    }

    #[test]
    fn source_and_reachability_checks() {
        let g = Graph::from_arcs(3, &[(0, 1, 1)]).unwrap();
        let mut r = bellman_ford(&g, 0).unwrap();
        r.dist[0] = Some(1);
        r.parent[2] = Some(0);
        r.dist[1] = None;
        let v = verify(&g, 0, &r);
        assert!(v.contains(&Violation::SourceDistance(Some(1))));
        assert!(v.contains(&Violation::UnreachableWithParent { v: 2, parent: 0 }));
        assert!(v.contains(&Violation::Slackness {
            u: 0,
            v: 1,
            w: 1,
            du: 1,
            dv: None
        }));
    }
}
