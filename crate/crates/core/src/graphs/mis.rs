//! Exact and heuristic maximum independent set, and exact counting of
//! independent sets of a given size.
//!
//! The exact solver is branch-and-bound maximum clique on the complement
//! with greedy-coloring upper bounds and bitset candidate sets. Vertex order
//! is deterministic (degree descending, id tiebreak, by default) so results
//! are reproducible; alternative orders allow independent re-solves.

use super::Graph;
use crate::bitset::Bits;
use crate::budget::{Budget, Meter, SearchStatus};
use serde::{Deserialize, Serialize};

/// Initial vertex order for the exact solver. Degrees refer to the input
/// graph, ties broken by vertex id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexOrder {
    DegreeDesc,
    DegreeAsc,
    Id,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MisResult {
    pub size: usize,
    pub set: Vec<usize>,
    pub status: SearchStatus,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResult {
    pub count: u64,
    pub status: SearchStatus,
    pub nodes: u64,
}

pub fn verify_independent(g: &Graph, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &u)| set[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
}

/// Exact independence number (default order). Budget exhaustion downgrades
/// the status to `LowerBound` and returns the best set found.
pub fn independence_number(g: &Graph, budget: Budget) -> MisResult {
    independence_number_ordered(g, VertexOrder::DegreeDesc, budget)
}

pub fn independence_number_ordered(g: &Graph, order: VertexOrder, budget: Budget) -> MisResult {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    match order {
        VertexOrder::DegreeDesc => perm.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v)),
        VertexOrder::DegreeAsc => perm.sort_by_key(|&v| (g.degree(v), v)),
        VertexOrder::Id => {}
    }
    // Max clique on the complement, in permuted vertex space.
    let mut comp = vec![Bits::new(n); n];
    for (i, &u) in perm.iter().enumerate() {
        for (j, &v) in perm.iter().enumerate() {
            if i != j && !g.has_edge(u, v) {
                comp[i].set(j);
            }
        }
    }
    let mut meter = Meter::new(budget);
    // Warm start: greedy clique in the complement.
    let mut best = greedy_clique(&comp);
    let mut current = Vec::new();
    let mut p = Bits::full(n);
    expand(&comp, &mut current, &mut p, &mut best, &mut meter);

    let set: Vec<usize> = {
        let mut s: Vec<usize> = best.iter().map(|&i| perm[i]).collect();
        s.sort_unstable();
        s
    };
    assert!(
        verify_independent(g, &set),
        "solver returned a dependent set"
    );
    MisResult {
        size: set.len(),
        set,
        status: meter.status(),
        nodes: meter.nodes(),
    }
}

fn greedy_clique(comp: &[Bits]) -> Vec<usize> {
    let n = comp.len();
    let mut best = Vec::new();
    if n == 0 {
        return best;
    }
    let mut cand = Bits::full(n);
    while let Some(v) = cand.first_one() {
        best.push(v);
        cand.and_with(&comp[v]);
    }
    best
}

fn expand(
    comp: &[Bits],
    current: &mut Vec<usize>,
    p: &mut Bits,
    best: &mut Vec<usize>,
    meter: &mut Meter,
) {
    if !meter.tick() {
        return;
    }
    if p.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    // Greedy coloring of p; vertices come back ordered by color ascending.
    let colored = color_sort(comp, p);
    for &(v, color) in colored.iter().rev() {
        if current.len() + color <= best.len() {
            return;
        }
        let mut p2 = p.clone();
        p2.and_with(&comp[v]);
        current.push(v);
        expand(comp, current, &mut p2, best, meter);
        current.pop();
        p.clear(v);
        if meter.exhausted() {
            return;
        }
    }
}

/// Greedy coloring of the candidate set; returns (vertex, color) pairs with
/// colors ascending. A clique can use at most one vertex per color class, so
/// `color` bounds the clique size extendable from prefix candidates.
fn color_sort(comp: &[Bits], p: &Bits) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(p.count());
    let mut uncolored = p.clone();
    let mut color = 0;
    while let Some(first) = uncolored.first_one() {
        color += 1;
        // One color class: a greedy independent set in the complement graph,
        // i.e. mutually non-adjacent in `comp`.
        let mut class_candidates = uncolored.clone();
        let mut v = first;
        loop {
            out.push((v, color));
            uncolored.clear(v);
            class_candidates.clear(v);
            class_candidates.and_not_with(&comp[v]);
            match class_candidates.first_one() {
                Some(next) => v = next,
                None => break,
            }
        }
    }
    out.sort_by_key(|&(_, c)| c);
    out
}

/// Greedy minimum-degree independent set followed by (1,2)-swap local
/// search. Always a valid lower bound.
pub fn independence_heuristic(g: &Graph, budget: Budget) -> MisResult {
    let n = g.vertex_count();
    let mut meter = Meter::new(budget);
    let mut alive = Bits::full(n);
    let mut set: Vec<usize> = Vec::new();
    while !alive.is_empty() {
        meter.tick();
        let v = alive
            .iter_ones()
            .min_by_key(|&v| (g.neighbors_bits(v).intersection_count(&alive), v))
            .unwrap();
        set.push(v);
        alive.clear(v);
        alive.and_not_with(g.neighbors_bits(v));
    }
    // (1,2)-swaps: remove one set vertex, insert two of its exclusive
    // non-adjacent outside neighbors.
    let mut improved = true;
    while improved && !meter.exhausted() {
        improved = false;
        let in_set = {
            let mut b = Bits::new(n);
            for &v in &set {
                b.set(v);
            }
            b
        };
        'outer: for idx in 0..set.len() {
            let v = set[idx];
            if !meter.tick() {
                break;
            }
            // Vertices whose only set-neighbor is v.
            let mut exclusive = Vec::new();
            for x in 0..n {
                if in_set.get(x) {
                    continue;
                }
                let conflicts = g.neighbors_bits(x).intersection_count(&in_set);
                if conflicts == 1 && g.has_edge(x, v) {
                    exclusive.push(x);
                } else if conflicts == 0 {
                    // Free vertex: plain insertion (can happen mid-search).
                    set.push(x);
                    improved = true;
                    break 'outer;
                }
            }
            for (i, &x) in exclusive.iter().enumerate() {
                for &y in &exclusive[i + 1..] {
                    if !g.has_edge(x, y) {
                        set.swap_remove(idx);
                        set.push(x);
                        set.push(y);
                        improved = true;
                        break 'outer;
                    }
                }
            }
        }
    }
    set.sort_unstable();
    assert!(
        verify_independent(g, &set),
        "heuristic returned a dependent set"
    );
    MisResult {
        size: set.len(),
        set,
        status: SearchStatus::LowerBound,
        nodes: meter.nodes(),
    }
}

/// Exact number of independent sets of size exactly `t`, by backtracking
/// over vertices in id order. On budget exhaustion the returned count is a
/// lower bound.
pub fn count_independent_sets(g: &Graph, t: usize, budget: Budget) -> CountResult {
    let n = g.vertex_count();
    if t == 0 {
        return CountResult {
            count: 1,
            status: SearchStatus::Exact,
            nodes: 0,
        };
    }
    if t > n {
        return CountResult {
            count: 0,
            status: SearchStatus::Exact,
            nodes: 0,
        };
    }
    let non_adj: Vec<Bits> = (0..n)
        .map(|v| {
            let mut b = Bits::full(n);
            b.and_not_with(g.neighbors_bits(v));
            b.clear(v);
            b
        })
        .collect();
    let mut meter = Meter::new(budget);
    let cand = Bits::full(n);
    let count = count_rec(&non_adj, &cand, t, &mut meter);
    CountResult {
        count,
        status: meter.status(),
        nodes: meter.nodes(),
    }
}

fn count_rec(non_adj: &[Bits], cand: &Bits, remaining: usize, meter: &mut Meter) -> u64 {
    if remaining == 0 {
        return 1;
    }
    if cand.count() < remaining {
        return 0;
    }
    let mut total = 0u64;
    for v in cand.iter_ones() {
        if !meter.tick() {
            break;
        }
        if remaining == 1 {
            total += 1;
            continue;
        }
        let mut next = cand.clone();
        next.and_with(&non_adj[v]);
        // Only vertices after v, so each set is counted once.
        for u in 0..=v {
            if next.get(u) {
                next.clear(u);
            }
        }
        total += count_rec(non_adj, &next, remaining - 1, meter);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_has_alpha_one() {
        let r = independence_number(&Graph::complete(7), Budget::UNLIMITED);
        assert_eq!((r.size, r.status), (1, SearchStatus::Exact));
    }

    #[test]
    fn empty_graph_takes_everything() {
        let r = independence_number(&Graph::new(9), Budget::UNLIMITED);
        assert_eq!(r.size, 9);
    }

    #[test]
    fn five_cycle() {
        let r = independence_number(&Graph::cycle(5), Budget::UNLIMITED);
        assert_eq!(r.size, 2);
        let h = independence_heuristic(&Graph::cycle(5), Budget::UNLIMITED);
        assert_eq!(h.size, 2);
        assert_eq!(h.status, SearchStatus::LowerBound);
    }

    #[test]
    fn orders_agree() {
        let g = Graph::cycle(9);
        for order in [
            VertexOrder::DegreeDesc,
            VertexOrder::DegreeAsc,
            VertexOrder::Id,
        ] {
            assert_eq!(
                independence_number_ordered(&g, order, Budget::UNLIMITED).size,
                4
            );
        }
    }

    #[test]
    fn budget_downgrades_status() {
        // A zero-node budget cuts the search immediately; the greedy warm
        // start is still returned as a verified lower bound.
        let mut g = Graph::new(30);
        for u in 0..30 {
            for v in (u + 1)..30 {
                if (u * 7 + v * 13) % 3 == 0 {
                    g.add_edge(u, v);
                }
            }
        }
        let r = independence_number(&g, Budget::nodes(0));
        assert_eq!(r.status, SearchStatus::LowerBound);
        assert!(r.size >= 1);
        assert!(verify_independent(&g, &r.set));
    }

    #[test]
    fn counting_budget_gives_partial_lower_bound() {
        let g = Graph::new(12); // empty graph: C(12,3) = 220 triples
        let full = count_independent_sets(&g, 3, Budget::UNLIMITED);
        assert_eq!((full.count, full.status), (220, SearchStatus::Exact));
        let partial = count_independent_sets(&g, 3, Budget::nodes(20));
        assert_eq!(partial.status, SearchStatus::LowerBound);
        assert!(partial.count <= full.count);
    }

    #[test]
    fn counting_examples() {
        assert_eq!(
            count_independent_sets(&Graph::new(4), 2, Budget::UNLIMITED).count,
            6
        );
        assert_eq!(
            count_independent_sets(&Graph::complete(4), 2, Budget::UNLIMITED).count,
            0
        );
        assert_eq!(
            count_independent_sets(&Graph::cycle(5), 2, Budget::UNLIMITED).count,
            5
        );
        assert_eq!(
            count_independent_sets(&Graph::cycle(5), 1, Budget::UNLIMITED).count,
            5
        );
        assert_eq!(
            count_independent_sets(&Graph::cycle(5), 0, Budget::UNLIMITED).count,
            1
        );
    }
}
