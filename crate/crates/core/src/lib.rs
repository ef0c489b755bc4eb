//! Construction and certification of Ramsey lower-bound witnesses from
//! finite-geometry incidence graphs.
//!
//! The library is organized around a single workflow:
//!
//! 1. [`geometry`] builds high-girth biregular incidence structures
//!    (projective planes, symplectic quadrangles, split Cayley hexagons,
//!    Hermitian secant graphs) over finite fields, each certified by its own
//!    regularity and girth checks.
//! 2. [`lfamily`] derives the forbidden pattern family of a graph `F`: all
//!    bipartite "parts vs vertices" patterns of edge decompositions of `F`
//!    into bipartite pieces meeting pairwise in at most one vertex, plus the
//!    four-cycle.
//! 3. [`pipeline`] turns a four-cycle-free incidence structure into an
//!    edge-disjoint clique graph, sparsifies every clique by a seeded random
//!    bipartition, audits the edge distribution, and certifies an `F`-free
//!    witness graph together with its exact independence number.
//! 4. [`zarankiewicz`] solves the forbidden-submatrix extremal problem
//!    exactly at small scale, and [`bounds`] evaluates every closed-form
//!    exponent and counting bound attached to the construction.
//!
//! [`graphs`] supplies the shared machinery: bitset graphs, girth,
//! side-respecting bipartite embedding, exact independent-set search and
//! counting, graph6 and JSON serialization.

pub mod bitset;
pub mod bounds;
pub mod budget;
pub mod geometry;
pub mod graphs;
pub mod lfamily;
pub mod pipeline;
pub mod zarankiewicz;

/// Version of every JSON artifact schema produced by this crate.
pub const SCHEMA_VERSION: u32 = 1;
