//! Oracle cross-checks for the forbidden-family machinery: decomposition
//! enumeration versus a brute-force set-partition filter, dedupe soundness,
//! and agreement between the girth shortcut and the full freeness search.

use ramsey_core::budget::Budget;
use ramsey_core::geometry::{split_cayley_hexagon, symplectic_quadrangle};
use ramsey_core::graphs::{embeds_side_respecting, girth_bipartite, BipartiteGraph, Graph};
use ramsey_core::lfamily::{
    build_pattern, canonical_key, decomposition_is_valid, enumerate_decompositions,
    girth_shortcut_lfree, is_lfree, lfamily, side_isomorphic, EdgeDecomposition, FreenessOptions,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Brute-force oracle: every set partition of the edge list (by
/// restricted-growth strings, no pruning), filtered by independently coded
/// conditions: each part bipartite, parts pairwise sharing at most one
/// vertex.
fn decompositions_oracle(f: &Graph) -> Vec<EdgeDecomposition> {
    let edges: Vec<(usize, usize)> = f.edges().collect();
    let k = edges.len();
    let mut out = Vec::new();
    let mut assignment = vec![0usize; k];
    loop {
        let parts_count = assignment.iter().copied().max().map_or(0, |m| m + 1);
        let mut parts: Vec<Vec<(usize, usize)>> = vec![Vec::new(); parts_count];
        for (i, &p) in assignment.iter().enumerate() {
            parts[p].push(edges[i]);
        }
        let candidate = EdgeDecomposition { parts };
        if ok_oracle(&candidate) {
            out.push(candidate);
        }
        // Next restricted-growth string.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            let cap = assignment[..i].iter().copied().max().map_or(0, |m| m + 1);
            if assignment[i] < cap {
                assignment[i] += 1;
                for a in assignment[i + 1..].iter_mut() {
                    *a = 0;
                }
                break;
            }
            assignment[i] = 0;
        }
        if k == 0 {
            return out;
        }
    }
}

fn ok_oracle(d: &EdgeDecomposition) -> bool {
    // Bipartite parts: 2-colorable by brute force over colorings.
    for part in &d.parts {
        let mut verts: Vec<usize> = part.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let k = verts.len();
        let colorable = (0u32..(1 << k)).any(|mask| {
            part.iter().all(|&(u, v)| {
                let cu = mask >> verts.binary_search(&u).unwrap() & 1;
                let cv = mask >> verts.binary_search(&v).unwrap() & 1;
                cu != cv
            })
        });
        if !colorable {
            return false;
        }
    }
    let vsets = d.part_vertices();
    for (i, a) in vsets.iter().enumerate() {
        for b in vsets.iter().skip(i + 1) {
            if a.iter().filter(|x| b.contains(x)).count() > 1 {
                return false;
            }
        }
    }
    true
}

/// Unordered-partition equality between two decomposition lists.
fn same_decompositions(a: &[EdgeDecomposition], b: &[EdgeDecomposition]) -> bool {
    let norm = |d: &EdgeDecomposition| {
        let mut parts: Vec<Vec<(usize, usize)>> = d
            .parts
            .iter()
            .map(|p| {
                let mut p = p.clone();
                p.sort_unstable();
                p
            })
            .collect();
        parts.sort();
        parts
    };
    let mut na: Vec<_> = a.iter().map(norm).collect();
    let mut nb: Vec<_> = b.iter().map(norm).collect();
    na.sort();
    nb.sort();
    na == nb
}

#[test]
fn c5_decompositions_match_oracle() {
    let c5 = Graph::cycle(5);
    let fast = enumerate_decompositions(&c5, Budget::UNLIMITED).unwrap();
    assert!(fast.status.is_exact());
    let slow = decompositions_oracle(&c5);
    assert!(same_decompositions(&fast.decompositions, &slow));
    for d in &fast.decompositions {
        assert!(decomposition_is_valid(&c5, d));
        assert_eq!(d.edge_count(), 5);
    }
    // Parts of a cycle must be arcs; a split into exactly 2 arcs is invalid
    // (the arcs share both cut vertices), leaving C(5,k) cut sets for
    // k = 3, 4, 5.
    assert_eq!(fast.decompositions.len(), 10 + 5 + 1);
}

#[test]
fn k4_and_paw_decompositions_match_oracle() {
    let k4 = Graph::complete(4);
    let fast = enumerate_decompositions(&k4, Budget::UNLIMITED).unwrap();
    let slow = decompositions_oracle(&k4);
    assert!(same_decompositions(&fast.decompositions, &slow));

    // Triangle with a pendant edge.
    let mut paw = Graph::new(4);
    paw.add_edge(0, 1);
    paw.add_edge(1, 2);
    paw.add_edge(2, 0);
    paw.add_edge(0, 3);
    let fast = enumerate_decompositions(&paw, Budget::UNLIMITED).unwrap();
    let slow = decompositions_oracle(&paw);
    assert!(same_decompositions(&fast.decompositions, &slow));
}

#[test]
fn family_matches_oracle_families() {
    for f in [Graph::cycle(5), Graph::complete(4), Graph::path(4)] {
        let fam = lfamily(&f, Budget::UNLIMITED).unwrap().family;
        // Oracle family: C4 plus every oracle-decomposition pattern, deduped
        // by pairwise isomorphism.
        let mut oracle: Vec<BipartiteGraph> = vec![BipartiteGraph::c4_pattern()];
        for d in decompositions_oracle(&f) {
            let p = build_pattern(&f, &d);
            if !oracle.iter().any(|q| side_isomorphic(q, &p)) {
                oracle.push(p);
            }
        }
        assert_eq!(fam.len(), oracle.len());
        for p in oracle {
            assert!(
                fam.patterns().iter().any(|q| side_isomorphic(q, &p)),
                "pattern missing from family"
            );
        }
    }
}

#[test]
fn dedupe_is_sound_and_order_deterministic() {
    let mut k4_plus_pendant = Graph::new(5);
    for (u, v) in Graph::complete(4).edges() {
        k4_plus_pendant.add_edge(u, v);
    }
    k4_plus_pendant.add_edge(3, 4);
    for f in [
        Graph::cycle(5),
        Graph::complete(4),
        Graph::cycle(7),
        Graph::path(6),
        k4_plus_pendant,
    ] {
        let fam = lfamily(&f, Budget::UNLIMITED).unwrap().family;
        let ps = fam.patterns();
        for (i, a) in ps.iter().enumerate() {
            for b in ps.iter().skip(i + 1) {
                assert!(!side_isomorphic(a, b), "duplicate patterns emitted");
            }
        }
        // Order: by left size, right size, canonical bytes.
        let keys: Vec<_> = ps.iter().map(|p| canonical_key(p).unwrap()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        // Every left vertex of every pattern has degree >= 2.
        for p in ps {
            for l in 0..p.left_count() {
                assert!(p.left_degree(l) >= 2);
            }
        }
    }
}

#[test]
fn hexagon_is_c5_family_free_by_full_search() {
    let fam = lfamily(&Graph::cycle(5), Budget::UNLIMITED).unwrap().family;
    let hex = split_cayley_hexagon(2).unwrap();
    let report = is_lfree(hex.incidence(), &fam, FreenessOptions::default());
    assert!(report.lfree);
    // Consistent with the girth shortcut: girth 12 > 10.
    assert!(girth_shortcut_lfree(hex.incidence(), 2));
}

#[test]
fn quadrangle_fails_the_c5_shortcut_but_passes_c3_level() {
    let w = symplectic_quadrangle(2).unwrap();
    assert!(!girth_shortcut_lfree(w.incidence(), 2)); // girth 8, need > 10
    assert!(girth_shortcut_lfree(w.incidence(), 1)); // girth 8 > 6
}

#[test]
fn high_girth_random_subgraphs_are_family_free() {
    // Subgraphs inherit girth lower bounds, so random edge-deletions of the
    // hexagon stay above the shortcut threshold; the full search must agree.
    let hex = split_cayley_hexagon(2).unwrap();
    let fam_c5 = lfamily(&Graph::cycle(5), Budget::UNLIMITED).unwrap().family;
    let fam_c3 = lfamily(&Graph::cycle(3), Budget::UNLIMITED).unwrap().family;
    let edges: Vec<(usize, usize)> = hex.incidence().edges().collect();
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..8 {
        let mut g = BipartiteGraph::new(63, 63);
        for &(l, r) in &edges {
            if rng.gen_bool(0.8) {
                g.add_edge(l, r);
            }
        }
        assert!(girth_bipartite(&g).is_greater_than(10));
        assert!(is_lfree(&g, &fam_c5, FreenessOptions::default()).lfree);
        assert!(is_lfree(&g, &fam_c3, FreenessOptions::default()).lfree);
    }
}

#[test]
fn fano_contains_the_k2_row_pattern() {
    let fam = lfamily(&Graph::complete(2), Budget::UNLIMITED)
        .unwrap()
        .family;
    let fano = ramsey_core::geometry::projective_plane(2).unwrap();
    let report = is_lfree(fano.incidence(), &fam, FreenessOptions::default());
    assert!(!report.lfree);
    let v = report.violation.unwrap();
    // The 1x2 row embeds (every line holds >= 2 points); witness checks out.
    let pattern = &fam.patterns()[v.pattern_index];
    assert!(embeds_side_respecting(pattern, fano.incidence()).is_some());
}

#[test]
fn perfect_matching_is_p3_family_free() {
    let fam = lfamily(&Graph::path(3), Budget::UNLIMITED).unwrap().family;
    let mut matching = BipartiteGraph::new(3, 3);
    for i in 0..3 {
        matching.add_edge(i, i);
    }
    assert!(is_lfree(&matching, &fam, FreenessOptions::default()).lfree);
}

#[test]
fn transpose_orientation_flag() {
    // Host with a high-degree RIGHT vertex only: the 1x3 row pattern embeds
    // with its left side in the host's right part, not in the default
    // orientation.
    let host = BipartiteGraph::from_rows(&[vec![1], vec![1], vec![1]]);
    let row3 = BipartiteGraph::from_rows(&[vec![1, 1, 1]]);
    assert!(embeds_side_respecting(&row3, &host).is_none());
    assert!(embeds_side_respecting(&row3, &host.transpose()).is_some());
    // The K2 family's 1x2 row behaves the same against a 2x1 column host.
    let column = BipartiteGraph::from_rows(&[vec![1], vec![1]]);
    let fam = lfamily(&Graph::complete(2), Budget::UNLIMITED)
        .unwrap()
        .family;
    let default = is_lfree(&column, &fam, FreenessOptions::default());
    assert!(default.lfree);
    let both = is_lfree(
        &column,
        &fam,
        FreenessOptions {
            check_transpose: true,
        },
    );
    assert!(!both.lfree);
    assert!(both.violation.unwrap().transposed);
}
