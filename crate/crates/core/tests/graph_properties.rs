//! Property tests and oracle cross-checks for the graph machinery: girth,
//! graph6, side-respecting embedding, and independent-set search/counting.

use proptest::prelude::*;
use ramsey_core::bitset::Bits;
use ramsey_core::budget::Budget;
use ramsey_core::geometry::projective_plane;
use ramsey_core::graphs::{
    count_independent_sets, decode_graph6, embeds_side_respecting, encode_graph6, girth,
    independence_heuristic, independence_number, verify_independent, BipartiteGraph, Girth, Graph,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Independent girth oracle: remove each edge and find the shortest path
/// between its endpoints.
fn girth_oracle(g: &Graph) -> Girth {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    for (u, v) in g.edges() {
        // BFS from u to v avoiding the edge (u, v).
        let mut dist = vec![usize::MAX; n];
        dist[u] = 0;
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for y in g.neighbors(x) {
                if (x == u && y == v) || (x == v && y == u) {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if dist[v] != usize::MAX {
            let cycle = dist[v] + 1;
            if best.is_none_or(|b| cycle < b) {
                best = Some(cycle);
            }
        }
    }
    best.map_or(Girth::Infinite, Girth::Finite)
}

/// Exhaustive maximum independent set by branch recursion, no bounds.
fn mis_oracle(g: &Graph) -> usize {
    fn rec(g: &Graph, cand: Bits, current: usize) -> usize {
        match cand.first_one() {
            None => current,
            Some(v) => {
                let mut without = cand.clone();
                without.clear(v);
                let skip = rec(g, without.clone(), current);
                without.and_not_with(g.neighbors_bits(v));
                let take = rec(g, without, current + 1);
                skip.max(take)
            }
        }
    }
    rec(g, Bits::full(g.vertex_count()), 0)
}

/// Exhaustive side-respecting containment over all injection pairs.
fn embeds_oracle(pattern: &BipartiteGraph, host: &BipartiteGraph) -> bool {
    fn assign_left(
        pattern: &BipartiteGraph,
        host: &BipartiteGraph,
        l: usize,
        lmap: &mut Vec<usize>,
    ) -> bool {
        if l == pattern.left_count() {
            let mut rmap = Vec::new();
            return assign_right(pattern, host, 0, lmap, &mut rmap);
        }
        for h in 0..host.left_count() {
            if lmap.contains(&h) {
                continue;
            }
            lmap.push(h);
            if assign_left(pattern, host, l + 1, lmap) {
                return true;
            }
            lmap.pop();
        }
        false
    }
    fn assign_right(
        pattern: &BipartiteGraph,
        host: &BipartiteGraph,
        r: usize,
        lmap: &[usize],
        rmap: &mut Vec<usize>,
    ) -> bool {
        if r == pattern.right_count() {
            return true;
        }
        for h in 0..host.right_count() {
            if rmap.contains(&h) {
                continue;
            }
            let consistent = pattern
                .right_neighbors(r)
                .iter()
                .all(|&pl| host.has_edge(lmap[pl as usize], h));
            if consistent {
                rmap.push(h);
                if assign_right(pattern, host, r + 1, lmap, rmap) {
                    return true;
                }
                rmap.pop();
            }
        }
        false
    }
    if pattern.left_count() > host.left_count() || pattern.right_count() > host.right_count() {
        return false;
    }
    assign_left(pattern, host, 0, &mut Vec::new())
}

fn random_bipartite(rng: &mut StdRng, m: usize, n: usize, p: f64) -> BipartiteGraph {
    let mut g = BipartiteGraph::new(m, n);
    for l in 0..m {
        for r in 0..n {
            if rng.gen_bool(p) {
                g.add_edge(l, r);
            }
        }
    }
    g
}

#[test]
fn girth_matches_oracle_on_random_corpus() {
    let mut rng = StdRng::seed_from_u64(11);
    for trial in 0..60 {
        let n = 3 + (trial % 10);
        let g = random_graph(&mut rng, n, 0.3);
        assert_eq!(girth(&g), girth_oracle(&g), "graph6 {}", encode_graph6(&g));
    }
}

#[test]
fn no_c4_in_a_projective_plane_incidence() {
    // Two points lie on at most one line, so the 2x2 all-ones pattern never
    // embeds side-respectingly.
    let c4 = BipartiteGraph::c4_pattern();
    let fano = projective_plane(2).unwrap();
    assert!(embeds_side_respecting(&c4, fano.incidence()).is_none());
}

#[test]
fn heawood_graph_certificates() {
    let heawood = projective_plane(2).unwrap().incidence().to_graph();
    assert_eq!(heawood.vertex_count(), 14);
    assert_eq!(girth(&heawood), Girth::Finite(6));
    assert_eq!(girth_oracle(&heawood), Girth::Finite(6));
    let alpha = independence_number(&heawood, Budget::UNLIMITED);
    assert_eq!(alpha.size, 7);
    assert!(alpha.status.is_exact());
}

#[test]
fn graph6_round_trips_on_random_corpus() {
    let mut rng = StdRng::seed_from_u64(5);
    for trial in 0..100 {
        let n = trial % 40;
        let g = random_graph(&mut rng, n, 0.4);
        let s = encode_graph6(&g);
        assert_eq!(decode_graph6(&s).unwrap(), g);
    }
}

#[test]
fn embedding_matches_injection_oracle() {
    let mut rng = StdRng::seed_from_u64(23);
    let mut embeds_seen = 0;
    let mut rejects_seen = 0;
    for trial in 0..300 {
        let pm = 1 + trial % 4;
        let pn = 1 + (trial / 2) % 4;
        let hm = pm + trial % 3;
        let hn = pn + (trial / 3) % 3;
        let pattern = random_bipartite(&mut rng, pm, pn, 0.5);
        let host = random_bipartite(&mut rng, hm, hn, 0.45);
        let fast = embeds_side_respecting(&pattern, &host);
        let slow = embeds_oracle(&pattern, &host);
        assert_eq!(fast.is_some(), slow, "trial {trial}");
        match fast {
            Some(_) => embeds_seen += 1,
            None => rejects_seen += 1,
        }
    }
    // The corpus must exercise both outcomes to mean anything.
    assert!(embeds_seen > 20 && rejects_seen > 20);
}

#[test]
fn embedding_oracle_at_spec_sizes() {
    let mut rng = StdRng::seed_from_u64(99);
    for trial in 0..40 {
        let pattern = random_bipartite(&mut rng, 5, 5, 0.35);
        let host = random_bipartite(&mut rng, 8, 8, 0.5);
        assert_eq!(
            embeds_side_respecting(&pattern, &host).is_some(),
            embeds_oracle(&pattern, &host),
            "trial {trial}"
        );
    }
}

#[test]
fn mis_matches_brute_force_up_to_20_vertices() {
    let mut rng = StdRng::seed_from_u64(37);
    for trial in 0..40 {
        let n = 1 + trial % 20;
        let p = 0.15 + 0.6 * ((trial % 7) as f64 / 7.0);
        let g = random_graph(&mut rng, n, p);
        let exact = independence_number(&g, Budget::UNLIMITED);
        assert!(exact.status.is_exact());
        assert_eq!(exact.size, mis_oracle(&g), "graph6 {}", encode_graph6(&g));
        assert!(verify_independent(&g, &exact.set));
        let heur = independence_heuristic(&g, Budget::UNLIMITED);
        assert!(heur.size <= exact.size);
        assert!(verify_independent(&g, &heur.set));
    }
}

#[test]
fn counts_sum_to_total_independent_sets() {
    let mut rng = StdRng::seed_from_u64(61);
    for trial in 0..10 {
        let n = 4 + trial;
        let g = random_graph(&mut rng, n, 0.35);
        // Brute-force total: every subset checked for independence.
        let mut total = 0u64;
        for mask in 0u32..(1 << n) {
            let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if verify_independent(&g, &verts) {
                total += 1;
            }
        }
        let summed: u64 = (0..=n)
            .map(|t| {
                let c = count_independent_sets(&g, t, Budget::UNLIMITED);
                assert!(c.status.is_exact());
                c.count
            })
            .sum();
        assert_eq!(summed, total);
        assert_eq!(
            count_independent_sets(&g, 1, Budget::UNLIMITED).count,
            n as u64
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn girth_is_permutation_invariant(seed in 0u64..1000, n in 3usize..12, p in 0.1f64..0.7) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, p);
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            perm.swap(i, j);
        }
        prop_assert_eq!(girth(&g), girth(&g.relabel(&perm)));
    }

    #[test]
    fn graph6_round_trip(seed in 0u64..10_000, n in 0usize..30, p in 0.0f64..1.0) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, p);
        prop_assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g);
    }
}
