//! Subgraph containment searches.
//!
//! [`embeds_side_respecting`] decides bipartite pattern containment with the
//! sides distinguished: the pattern's left part must map into the host's left
//! part and its right part into the host's right part, both injectively, with
//! every pattern edge landing on a host edge. Containment is up to arbitrary
//! row and column order (the matrix view: the pattern's incidence matrix must
//! appear as a submatrix after choosing rows and columns in any order), and
//! non-induced: pattern non-edges are unconstrained. This is NOT the
//! ordered-submatrix problem.
//!
//! [`find_subgraph`] is the general-graph analogue: an injective map sending
//! edges to edges.

use super::{BipartiteGraph, Graph};
use crate::bitset::Bits;

/// A witness for side-respecting containment: `left_map[i]` is the host left
/// vertex for pattern left `i`, `right_map[r]` the host right vertex for
/// pattern right `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideEmbedding {
    pub left_map: Vec<usize>,
    pub right_map: Vec<usize>,
}

impl SideEmbedding {
    /// Checks that every pattern edge maps to a host edge and both maps are
    /// injective.
    pub fn verify(&self, pattern: &BipartiteGraph, host: &BipartiteGraph) -> bool {
        let mut seen_l = std::collections::HashSet::new();
        let mut seen_r = std::collections::HashSet::new();
        if !self.left_map.iter().all(|&h| seen_l.insert(h))
            || !self.right_map.iter().all(|&h| seen_r.insert(h))
        {
            return false;
        }
        pattern
            .edges()
            .all(|(l, r)| host.has_edge(self.left_map[l], self.right_map[r]))
    }
}

struct SideSearch<'a> {
    pattern: &'a BipartiteGraph,
    host_rows: Vec<Bits>,
    left_order: Vec<usize>,
    host_left_deg: Vec<usize>,
    left_map: Vec<usize>,
    used_left: Bits,
    cand: Vec<Bits>,
}

impl<'a> SideSearch<'a> {
    fn run(mut self) -> Option<SideEmbedding> {
        if self.assign(0) {
            let right_map = self.right_matching().expect("matching vanished");
            Some(SideEmbedding {
                left_map: self.left_map.clone(),
                right_map,
            })
        } else {
            None
        }
    }

    fn assign(&mut self, depth: usize) -> bool {
        if depth == self.left_order.len() {
            return self.right_matching().is_some();
        }
        let pl = self.left_order[depth];
        let need = self.pattern.left_degree(pl);
        for h in 0..self.host_rows.len() {
            if self.used_left.get(h) || self.host_left_deg[h] < need {
                continue;
            }
            // Restrict the candidates of pl's right-neighbors to N(h).
            let saved: Vec<(usize, Bits)> = self
                .pattern
                .left_neighbors(pl)
                .iter()
                .map(|&r| (r as usize, self.cand[r as usize].clone()))
                .collect();
            let mut ok = true;
            for &(r, _) in &saved {
                self.cand[r].and_with(&self.host_rows[h]);
                if self.cand[r].is_empty() {
                    ok = false;
                    break;
                }
            }
            if ok && self.right_matching().is_some() {
                self.used_left.set(h);
                self.left_map[pl] = h;
                if self.assign(depth + 1) {
                    return true;
                }
                self.used_left.clear(h);
            }
            for (r, bits) in saved {
                self.cand[r] = bits;
            }
        }
        false
    }

    /// Injective assignment of pattern rights into their candidate sets
    /// (Kuhn's augmenting paths). Doubles as an exact Hall-condition prune.
    fn right_matching(&self) -> Option<Vec<usize>> {
        let pr = self.pattern.right_count();
        let hr = self.cand.first().map_or(0, Bits::len);
        if pr == 0 {
            return Some(Vec::new());
        }
        if pr > hr {
            return None;
        }
        let mut match_of_host: Vec<Option<usize>> = vec![None; hr];
        let mut match_of_pat: Vec<Option<usize>> = vec![None; pr];
        // Tightest candidate sets first makes augmentation cheap.
        let mut order: Vec<usize> = (0..pr).collect();
        order.sort_by_key(|&r| (self.cand[r].count(), r));
        for &r in &order {
            let mut visited = Bits::new(hr);
            if !augment(
                &self.cand,
                r,
                &mut visited,
                &mut match_of_host,
                &mut match_of_pat,
            ) {
                return None;
            }
        }
        Some(match_of_pat.into_iter().map(Option::unwrap).collect())
    }
}

fn augment(
    cand: &[Bits],
    r: usize,
    visited: &mut Bits,
    match_of_host: &mut [Option<usize>],
    match_of_pat: &mut [Option<usize>],
) -> bool {
    for h in cand[r].iter_ones() {
        if visited.get(h) {
            continue;
        }
        visited.set(h);
        if match_of_host[h].is_none()
            || augment(
                cand,
                match_of_host[h].unwrap(),
                visited,
                match_of_host,
                match_of_pat,
            )
        {
            match_of_host[h] = Some(r);
            match_of_pat[r] = Some(h);
            return true;
        }
    }
    false
}

/// Side-respecting containment of `pattern` in `host`, with a witness pair
/// of injections on success.
pub fn embeds_side_respecting(
    pattern: &BipartiteGraph,
    host: &BipartiteGraph,
) -> Option<SideEmbedding> {
    if pattern.left_count() > host.left_count() || pattern.right_count() > host.right_count() {
        return None;
    }
    let host_rows = host.left_rows_bits();
    // Pattern lefts by degree descending (id tiebreak): high-degree parts
    // constrain right candidates fastest.
    let mut left_order: Vec<usize> = (0..pattern.left_count()).collect();
    left_order.sort_by_key(|&l| (std::cmp::Reverse(pattern.left_degree(l)), l));
    let cand = (0..pattern.right_count())
        .map(|r| {
            let need = pattern.right_degree(r);
            let mut b = Bits::new(host.right_count());
            for w in 0..host.right_count() {
                if host.right_degree(w) >= need {
                    b.set(w);
                }
            }
            b
        })
        .collect();
    let search = SideSearch {
        pattern,
        host_left_deg: (0..host.left_count())
            .map(|h| host.left_degree(h))
            .collect(),
        host_rows,
        left_order,
        left_map: vec![usize::MAX; pattern.left_count()],
        used_left: Bits::new(host.left_count()),
        cand,
    };
    let result = search.run();
    if let Some(ref e) = result {
        assert!(
            e.verify(pattern, host),
            "embedding witness failed verification"
        );
    }
    result
}

/// Searches for a (non-induced) copy of `pattern` in `host`; returns the
/// vertex map on success.
pub fn find_subgraph(pattern: &Graph, host: &Graph) -> Option<Vec<usize>> {
    let np = pattern.vertex_count();
    let nh = host.vertex_count();
    if np > nh {
        return None;
    }
    if np == 0 {
        return Some(Vec::new());
    }
    // Order pattern vertices so each (after the first of its component) has
    // a previously ordered neighbor.
    let order = connectivity_order(pattern);
    let mut map = vec![usize::MAX; np];
    let mut used = Bits::new(nh);
    if assign_general(pattern, host, &order, 0, &mut map, &mut used) {
        debug_assert!(pattern.edges().all(|(u, v)| host.has_edge(map[u], map[v])));
        Some(map)
    } else {
        None
    }
}

fn connectivity_order(pattern: &Graph) -> Vec<usize> {
    let np = pattern.vertex_count();
    let mut order = Vec::with_capacity(np);
    let mut placed = Bits::new(np);
    while order.len() < np {
        // Next vertex: most already-placed neighbors, then degree, then id.
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..np {
            if placed.get(v) {
                continue;
            }
            let anchored = pattern.neighbors(v).filter(|&u| placed.get(u)).count();
            let key = (anchored, pattern.degree(v), np - v);
            if best.is_none_or(|(a, d, i)| key > (a, d, i)) {
                best = Some(key);
            }
        }
        let (_, _, inv_id) = best.unwrap();
        let v = np - inv_id;
        placed.set(v);
        order.push(v);
    }
    order
}

fn assign_general(
    pattern: &Graph,
    host: &Graph,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut Bits,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let pv = order[depth];
    let need = pattern.degree(pv);
    let anchors: Vec<usize> = pattern
        .neighbors(pv)
        .filter(|&u| map[u] != usize::MAX)
        .map(|u| map[u])
        .collect();
    let mut candidates = if let Some((&first, rest)) = anchors.split_first() {
        let mut c = host.neighbors_bits(first).clone();
        for &a in rest {
            c.and_with(host.neighbors_bits(a));
        }
        c
    } else {
        Bits::full(host.vertex_count())
    };
    candidates.and_not_with(used);
    for h in candidates.iter_ones() {
        if host.degree(h) < need {
            continue;
        }
        map[pv] = h;
        used.set(h);
        if assign_general(pattern, host, order, depth + 1, map, used) {
            return true;
        }
        used.clear(h);
        map[pv] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_embeds_anywhere() {
        let pat = BipartiteGraph::from_rows(&[vec![1]]);
        let host = BipartiteGraph::from_rows(&[vec![0, 1], vec![0, 0]]);
        let e = embeds_side_respecting(&pat, &host).unwrap();
        assert_eq!(e.left_map, vec![0]);
        assert_eq!(e.right_map, vec![1]);
    }

    #[test]
    fn subdivision_of_p3_in_all_ones() {
        let pat = BipartiteGraph::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let host = BipartiteGraph::from_rows(&vec![vec![1; 3]; 3]);
        assert!(embeds_side_respecting(&pat, &host).is_some());
    }

    #[test]
    fn c4_needs_two_shared_columns() {
        let c4 = BipartiteGraph::c4_pattern();
        // Rows share only one column: no C4.
        let host = BipartiteGraph::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]]);
        assert!(embeds_side_respecting(&c4, &host).is_none());
        let host2 = BipartiteGraph::from_rows(&[vec![1, 1, 0], vec![1, 1, 1]]);
        assert!(embeds_side_respecting(&c4, &host2).is_some());
    }

    #[test]
    fn orientation_is_respected() {
        // 1x3 row of ones fits only if some LEFT vertex has degree 3.
        let row = BipartiteGraph::from_rows(&[vec![1, 1, 1]]);
        let host = BipartiteGraph::from_rows(&[vec![1], vec![1], vec![1]]);
        assert!(embeds_side_respecting(&row, &host).is_none());
        assert!(embeds_side_respecting(&row, &host.transpose()).is_some());
    }

    #[test]
    fn isolated_right_vertices_need_room() {
        // Pattern with 1 left, 1 edge, 2 right vertices (one isolated).
        let pat = BipartiteGraph::from_rows(&[vec![1, 0]]);
        let tight = BipartiteGraph::from_rows(&[vec![1]]);
        assert!(embeds_side_respecting(&pat, &tight).is_none());
        let roomy = BipartiteGraph::from_rows(&[vec![1, 0]]);
        assert!(embeds_side_respecting(&pat, &roomy).is_some());
    }

    #[test]
    fn triangle_in_k4_but_not_in_c5() {
        let tri = Graph::cycle(3);
        assert!(find_subgraph(&tri, &Graph::complete(4)).is_some());
        assert!(find_subgraph(&tri, &Graph::cycle(5)).is_none());
    }

    #[test]
    fn c5_in_petersen_like_host() {
        let c5 = Graph::cycle(5);
        let host = Graph::cycle(5);
        let map = find_subgraph(&c5, &host).unwrap();
        assert_eq!(map.len(), 5);
        // C5 does not fit in C6 (no odd cycle in a bipartite host).
        assert!(find_subgraph(&c5, &Graph::cycle(6)).is_none());
    }

    #[test]
    fn disconnected_pattern() {
        let mut two_edges = Graph::new(4);
        two_edges.add_edge(0, 1);
        two_edges.add_edge(2, 3);
        let mut host = Graph::new(5);
        host.add_edge(0, 1);
        host.add_edge(1, 2);
        // Two disjoint edges need 4 distinct vertices with 2 disjoint host edges.
        assert!(find_subgraph(&two_edges, &host).is_none());
        host.add_edge(3, 4);
        assert!(find_subgraph(&two_edges, &host).is_some());
    }
}
