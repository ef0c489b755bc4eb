//! Exact girth by breadth-first search from every vertex.

use super::{BipartiteGraph, Girth, Graph};
use std::collections::VecDeque;

/// Length of the shortest cycle, or [`Girth::Infinite`] for forests.
///
/// BFS from each start vertex; a non-tree edge (u, w) seen while expanding u
/// closes a cycle of length dist(u) + dist(w) + 1 through the start. The
/// shortest cycle is found from any of its vertices, so the minimum over all
/// starts is exact.
pub fn girth(g: &Graph) -> Girth {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();

    for start in 0..n {
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        queue.clear();
        dist[start] = 0;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            // Nothing reachable from here can beat the current best.
            if let Some(b) = best {
                if 2 * dist[u] + 1 >= b {
                    break;
                }
            }
            for w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if w != parent[u] {
                    let c = dist[u] + dist[w] + 1;
                    if best.is_none_or(|b| c < b) {
                        best = Some(c);
                    }
                }
            }
        }
    }
    match best {
        Some(b) => Girth::Finite(b),
        None => Girth::Infinite,
    }
}

/// Girth of the underlying graph of a bipartite graph (even or infinite).
pub fn girth_bipartite(g: &BipartiteGraph) -> Girth {
    girth(&g.to_graph())
}
