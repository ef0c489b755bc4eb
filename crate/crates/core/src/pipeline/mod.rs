//! The witness construction: clique graph of a four-cycle-free incidence
//! structure, per-clique random bipartite sparsification, edge-distribution
//! audits, vertex sampling, and certification of the resulting forbidden-
//! subgraph-free graph.

mod audit;
mod rng;
mod witness;

pub use audit::{
    container_audit, distribution_audit, lemma1_bound, AuditConfig, AuditReport, ContainerAudit,
    ContainerRow, DyadicClass, Lemma1Report,
};
pub use rng::{audit_rng, clique_rng, vertex_sample_rng, RNG_CONTRACT};
pub use witness::{
    end_to_end, sample_and_certify, AlphaReport, ForbiddenInfo, FormulaValues, GateMethod,
    GateReport, ParamProfile, PipelineParams, WitnessGraph, WitnessReport,
};

use crate::bitset::Bits;
use crate::geometry::{GeometryError, IncidenceStructure, StructureParams};
use crate::graphs::Graph;
use crate::lfamily::{FreenessViolation, LFamilyError};
use rand::Rng;
use rayon::prelude::*;
use std::collections::HashMap;
use thiserror::Error;

/// Cap on the number of clique-graph edges we are willing to materialize.
const MAX_CLIQUE_GRAPH_EDGES: usize = 50_000_000;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("incidence structure is not four-cycle-free: lines {lines:?} share points {points:?}")]
    C4Found {
        lines: (usize, usize),
        points: (usize, usize),
    },
    #[error("clique graph would have {0} edges, over the {MAX_CLIQUE_GRAPH_EDGES} cap")]
    TooLarge(usize),
    #[error("geometry is not pattern-free for the forbidden graph: pattern {} embeds", .0.pattern_index)]
    FreenessGate(FreenessViolation),
    #[error("sampling probability {0} outside [0, 1]")]
    ProbabilityRange(f64),
    #[error("sampled witness contains the forbidden subgraph; construction invariant violated")]
    WitnessContainsForbidden,
    #[error("clique multiset is not edge-disjoint: cliques {0} and {1} share two vertices")]
    NotEdgeDisjoint(usize, usize),
    #[error("container audit needs at most {max} vertices, graph has {found}")]
    ContainerTooLarge { max: usize, found: usize },
    #[error("container audit: delta is zero and R < n leaves no valid r")]
    ContainerNoValidR,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    LFamily(#[from] LFamilyError),
}

/// An n-vertex graph given as m edge-disjoint cliques of order b with every
/// vertex in exactly a of them; the point-side distance-two graph of a
/// four-cycle-free incidence structure.
#[derive(Clone, Debug)]
pub struct CliqueGraph {
    graph: Graph,
    cliques: Vec<Vec<u32>>,
    membership: Vec<Vec<u32>>,
    params: StructureParams,
}

impl CliqueGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cliques(&self) -> &[Vec<u32>] {
        &self.cliques
    }

    pub fn membership(&self) -> &[Vec<u32>] {
        &self.membership
    }

    pub fn params(&self) -> StructureParams {
        self.params
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }
}

/// Builds the clique graph: one clique per line (its point neighborhood).
/// Rejects structures containing a four-cycle, returning the violating
/// line and point pairs.
pub fn clique_graph(structure: &IncidenceStructure) -> Result<CliqueGraph, PipelineError> {
    let inc = structure.incidence();
    let params = structure.params();
    // Two lines sharing two points form a four-cycle; find any such pair by
    // walking line pairs through every point.
    let mut seen: HashMap<(u32, u32), u32> = HashMap::new();
    for point in 0..inc.right_count() {
        let lines = inc.right_neighbors(point);
        for (i, &l1) in lines.iter().enumerate() {
            for &l2 in &lines[i + 1..] {
                let key = (l1.min(l2), l1.max(l2));
                if let Some(&first_point) = seen.get(&key) {
                    return Err(PipelineError::C4Found {
                        lines: (key.0 as usize, key.1 as usize),
                        points: (first_point as usize, point),
                    });
                }
                seen.insert(key, point as u32);
            }
        }
    }
    let b = params.b;
    let expected_edges = params.m * b * (b.saturating_sub(1)) / 2;
    if expected_edges > MAX_CLIQUE_GRAPH_EDGES {
        return Err(PipelineError::TooLarge(expected_edges));
    }
    let mut graph = Graph::new(params.n);
    let mut cliques = Vec::with_capacity(params.m);
    for line in 0..inc.left_count() {
        let members: Vec<u32> = inc.left_neighbors(line).to_vec();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                graph.add_edge(u as usize, v as usize);
            }
        }
        cliques.push(members);
    }
    // Edge-disjointness makes the clique edge counts add up exactly.
    assert_eq!(graph.edge_count(), expected_edges);
    let membership: Vec<Vec<u32>> = (0..params.n)
        .map(|p| inc.right_neighbors(p).to_vec())
        .collect();
    debug_assert!(cliques.iter().all(|c| c.len() == params.b));
    debug_assert!(membership.iter().all(|m| m.len() == params.a));
    Ok(CliqueGraph {
        graph,
        cliques,
        membership,
        params,
    })
}

/// The sparsified graph: inside every clique only the edges crossing that
/// clique's random bipartition survive.
#[derive(Clone, Debug)]
pub struct SparsifiedGraph {
    graph: Graph,
    cut_labels: Vec<Vec<bool>>,
    seed: u64,
}

impl SparsifiedGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Per (clique, member-position) bipartition side.
    pub fn cut_labels(&self) -> &[Vec<bool>] {
        &self.cut_labels
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Per-clique cut labels and the edges that cross the cut.
type CliqueCut = (Vec<bool>, Vec<(u32, u32)>);

/// Labels each clique member by an independent fair coin from the clique's
/// own substream; an edge survives iff its endpoints disagree in the unique
/// clique containing it. Deterministic for a given seed, independent of
/// scheduling.
pub fn sparsify(h: &CliqueGraph, seed: u64) -> SparsifiedGraph {
    let labeled: Vec<CliqueCut> = h
        .cliques
        .par_iter()
        .enumerate()
        .map(|(c, members)| {
            let mut rng = rng::clique_rng(seed, c as u64);
            let labels: Vec<bool> = members.iter().map(|_| rng.gen_bool(0.5)).collect();
            let mut surviving = Vec::new();
            for (i, &u) in members.iter().enumerate() {
                for (j, &v) in members.iter().enumerate().skip(i + 1) {
                    if labels[i] != labels[j] {
                        surviving.push((u, v));
                    }
                }
            }
            (labels, surviving)
        })
        .collect();
    let mut graph = Graph::new(h.vertex_count());
    let mut cut_labels = Vec::with_capacity(labeled.len());
    for (labels, edges) in labeled {
        for (u, v) in edges {
            graph.add_edge(u as usize, v as usize);
        }
        cut_labels.push(labels);
    }
    SparsifiedGraph {
        graph,
        cut_labels,
        seed,
    }
}

/// A multiset of cliques (as vertex sets) with the counting statistics of
/// the edge-distribution argument: |S|, v(S) = total vertex incidences,
/// e(S) = total edges (exact for edge-disjoint cliques).
#[derive(Clone, Debug)]
pub struct CliqueMultiset {
    cliques: Vec<Vec<u32>>,
}

impl CliqueMultiset {
    /// Validates pairwise edge-disjointness (no two cliques share two
    /// vertices).
    pub fn new(cliques: Vec<Vec<u32>>) -> Result<Self, PipelineError> {
        for (i, a) in cliques.iter().enumerate() {
            for (j, b) in cliques.iter().enumerate().skip(i + 1) {
                let common = a.iter().filter(|x| b.contains(x)).count();
                if common > 1 {
                    return Err(PipelineError::NotEdgeDisjoint(i, j));
                }
            }
        }
        Ok(CliqueMultiset { cliques })
    }

    /// The restriction multiset T_X: every clique meeting `x`, restricted to
    /// it. Cliques meeting `x` in a single vertex are kept (they contribute
    /// incidences but no edges). Edge-disjointness is inherited.
    pub fn restriction(h: &CliqueGraph, x: &[usize]) -> CliqueMultiset {
        let mut in_x = Bits::new(h.vertex_count());
        for &v in x {
            in_x.set(v);
        }
        let cliques = h
            .cliques
            .iter()
            .filter_map(|members| {
                let kept: Vec<u32> = members
                    .iter()
                    .copied()
                    .filter(|&v| in_x.get(v as usize))
                    .collect();
                if kept.is_empty() {
                    None
                } else {
                    Some(kept)
                }
            })
            .collect();
        CliqueMultiset { cliques }
    }

    pub fn cliques(&self) -> &[Vec<u32>] {
        &self.cliques
    }

    pub fn size(&self) -> usize {
        self.cliques.len()
    }

    /// v(S): the number of (vertex, clique) incidences.
    pub fn vertex_incidences(&self) -> u64 {
        self.cliques.iter().map(|c| c.len() as u64).sum()
    }

    /// e(S) = sum of C(|V(T)|, 2); exact under edge-disjointness.
    pub fn edge_count(&self) -> u64 {
        self.cliques
            .iter()
            .map(|c| (c.len() * c.len().saturating_sub(1) / 2) as u64)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{projective_plane, symplectic_quadrangle};

    #[test]
    fn plane_clique_graph_is_complete() {
        let h = clique_graph(&projective_plane(2).unwrap()).unwrap();
        assert_eq!(h.vertex_count(), 7);
        assert_eq!(h.graph().edge_count(), 21); // K7
        assert_eq!(h.cliques().len(), 7);
        assert!(h.membership().iter().all(|m| m.len() == 3));
    }

    #[test]
    fn quadrangle_clique_graph_counts() {
        let h = clique_graph(&symplectic_quadrangle(2).unwrap()).unwrap();
        assert_eq!(h.vertex_count(), 15);
        assert_eq!(h.cliques().len(), 15);
        assert_eq!(h.graph().edge_count(), 45); // 15 triangles, edge-disjoint
    }

    #[test]
    fn c4_rejected_with_witness() {
        // K_{2,2}: two lines through the same two points, biregular.
        let mut g = crate::graphs::BipartiteGraph::new(2, 2);
        for l in 0..2 {
            g.add_edge(l, 0);
            g.add_edge(l, 1);
        }
        let s = IncidenceStructure::from_bipartite(
            g,
            "test",
            None,
            None,
            crate::geometry::LoadOptions::default(),
        )
        .unwrap();
        match clique_graph(&s) {
            Err(PipelineError::C4Found { lines, points }) => {
                assert_eq!(lines, (0, 1));
                assert_eq!(points, (0, 1));
            }
            other => panic!("expected C4Found, got {other:?}"),
        }
    }

    #[test]
    fn sparsify_is_deterministic_and_contained() {
        let h = clique_graph(&symplectic_quadrangle(2).unwrap()).unwrap();
        let a = sparsify(&h, 42);
        let b = sparsify(&h, 42);
        assert_eq!(a.graph(), b.graph());
        assert_eq!(a.cut_labels(), b.cut_labels());
        let c = sparsify(&h, 43);
        assert_ne!(a.graph(), c.graph());
        // H* is a subgraph of H.
        for (u, v) in a.graph().edges() {
            assert!(h.graph().has_edge(u, v));
        }
        // Surviving edges cross their clique's cut.
        for (ci, members) in h.cliques().iter().enumerate() {
            let labels = &a.cut_labels()[ci];
            for (i, &u) in members.iter().enumerate() {
                for (j, &v) in members.iter().enumerate().skip(i + 1) {
                    assert_eq!(
                        a.graph().has_edge(u as usize, v as usize),
                        labels[i] != labels[j]
                    );
                }
            }
        }
    }

    #[test]
    fn multiset_statistics() {
        let s = CliqueMultiset::new(vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(s.size(), 2);
        assert_eq!(s.vertex_incidences(), 6);
        assert_eq!(s.edge_count(), 6);
        assert!(matches!(
            CliqueMultiset::new(vec![vec![0, 1, 2], vec![1, 2, 3]]),
            Err(PipelineError::NotEdgeDisjoint(0, 1))
        ));
    }

    #[test]
    fn restriction_keeps_singletons() {
        let h = clique_graph(&projective_plane(2).unwrap()).unwrap();
        let t = CliqueMultiset::restriction(&h, &[0]);
        // Vertex 0 lies in exactly 3 lines of the Fano plane.
        assert_eq!(t.size(), 3);
        assert_eq!(t.vertex_incidences(), 3);
        assert_eq!(t.edge_count(), 0);
        // v(T_X) = a |X| in general.
        let t2 = CliqueMultiset::restriction(&h, &[0, 1, 2, 3]);
        assert_eq!(t2.vertex_incidences(), 3 * 4);
    }
}
