//! Finite-geometry incidence structures: projective planes, symplectic
//! quadrangles, split Cayley hexagons, Hermitian secant graphs, and a loader
//! for external incidence files.
//!
//! Every builder certifies its own output (exact biregularity, vertex and
//! degree counts, girth) and embeds the result in the structure's
//! provenance, so a construction bug surfaces as a failed certificate rather
//! than silent bad data.

mod builders;
pub mod field;
mod octonion;

pub use builders::{
    hermitian_secant_graph, projective_plane, split_cayley_hexagon, symplectic_quadrangle,
};
pub use field::{prime_power, FiniteField};

use crate::graphs::{girth_bipartite, BipartiteGraph, Girth, JsonFormatError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("q={q} exceeds the supported maximum {max}")]
    QTooLarge { q: u32, max: u32 },
    #[error("{side} vertex {index} has degree 0")]
    DegreeZero { side: &'static str, index: usize },
    #[error("input is not biregular: {report}")]
    NotBiregular { report: String },
    #[error("degrees outside the (a/2, a] relaxation: {report}")]
    DegreesOutsideInterval { report: String },
    #[error("certificate failed for {builder}: {detail}")]
    Certificate { builder: String, detail: String },
    #[error(transparent)]
    Format(#[from] JsonFormatError),
    #[error("io error reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// The (m, n, a, b) parameters: m lines of degree b, n points of degree a,
/// normalized so m <= n (and hence a <= b for exact biregular structures).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureParams {
    pub m: usize,
    pub n: usize,
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Provenance {
    pub builder: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub params: StructureParams,
    pub girth: Girth,
    pub dualized: bool,
    pub relaxed_degrees: bool,
}

/// A certified biregular bipartite incidence structure. The left part
/// ("lines", size m, degree b) indexes the cliques of the downstream clique
/// graph; the right part ("points", size n, degree a) becomes its vertex
/// set.
#[derive(Clone, Debug)]
pub struct IncidenceStructure {
    incidence: BipartiteGraph,
    params: StructureParams,
    provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct IncidenceJson {
    m: usize,
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<serde_json::Map<String, serde_json::Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct LoadOptions {
    /// Accept right-part degrees anywhere in (a/2, a] with a the maximum,
    /// taking b as the mean left degree (rounded).
    pub allow_degree_interval: bool,
}

impl IncidenceStructure {
    /// Validates and normalizes a bipartite graph into a structure: dualize
    /// so m <= n, reject degree-0 vertices, require exact biregularity (or
    /// the degree-interval relaxation when allowed), record girth.
    pub fn from_bipartite(
        incidence: BipartiteGraph,
        builder: &str,
        q: Option<u32>,
        source: Option<String>,
        opts: LoadOptions,
    ) -> Result<Self, GeometryError> {
        let mut incidence = incidence;
        let mut dualized = false;
        if incidence.left_count() > incidence.right_count() {
            incidence = incidence.transpose();
            dualized = true;
        }
        let profile = incidence.degree_profile();
        for (i, &d) in profile.left_degrees.iter().enumerate() {
            if d == 0 {
                return Err(GeometryError::DegreeZero {
                    side: "line",
                    index: i,
                });
            }
        }
        for (i, &d) in profile.right_degrees.iter().enumerate() {
            if d == 0 {
                return Err(GeometryError::DegreeZero {
                    side: "point",
                    index: i,
                });
            }
        }
        let (a, b, relaxed) = match profile.biregular() {
            Some((a, b)) => (a, b, false),
            None if opts.allow_degree_interval => {
                let a = *profile.right_degrees.iter().max().unwrap();
                if let Some((i, &d)) = profile
                    .right_degrees
                    .iter()
                    .enumerate()
                    .find(|&(_, &d)| 2 * d <= a)
                {
                    return Err(GeometryError::DegreesOutsideInterval {
                        report: format!("point {i} has degree {d}, not in ({}/2, {}]", a, a),
                    });
                }
                let mean_b = profile.left_degrees.iter().sum::<usize>() as f64
                    / profile.left_degrees.len() as f64;
                (a, mean_b.round() as usize, true)
            }
            None => {
                return Err(GeometryError::NotBiregular {
                    report: degree_report(&profile),
                })
            }
        };
        let params = StructureParams {
            m: incidence.left_count(),
            n: incidence.right_count(),
            a,
            b,
        };
        if !relaxed {
            debug_assert_eq!(params.n * params.a, params.m * params.b);
        }
        let girth = girth_bipartite(&incidence);
        Ok(IncidenceStructure {
            incidence,
            params,
            provenance: Provenance {
                builder: builder.to_string(),
                q,
                source,
                params,
                girth,
                dualized,
                relaxed_degrees: relaxed,
            },
        })
    }

    /// Builder path: additionally checks the claimed parameters and girth.
    pub(crate) fn certified(
        incidence: BipartiteGraph,
        builder: &str,
        q: u32,
        expected: StructureParams,
        expected_girth: Girth,
    ) -> Result<Self, GeometryError> {
        let s = Self::from_bipartite(incidence, builder, Some(q), None, LoadOptions::default())?;
        if s.params != expected {
            return Err(GeometryError::Certificate {
                builder: builder.to_string(),
                detail: format!("parameters {:?}, expected {:?}", s.params, expected),
            });
        }
        if s.girth() != expected_girth {
            return Err(GeometryError::Certificate {
                builder: builder.to_string(),
                detail: format!("girth {}, expected {}", s.girth(), expected_girth),
            });
        }
        Ok(s)
    }

    pub fn incidence(&self) -> &BipartiteGraph {
        &self.incidence
    }

    pub fn params(&self) -> StructureParams {
        self.params
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn girth(&self) -> Girth {
        self.provenance.girth
    }

    /// Incidence is four-cycle-free exactly when the girth exceeds 4.
    pub fn is_c4_free(&self) -> bool {
        self.girth().is_greater_than(4)
    }

    pub fn to_json(&self) -> String {
        let doc = IncidenceJson {
            m: self.params.m,
            n: self.params.n,
            edges: self.incidence.edges().collect(),
            labels: None,
            provenance: Some(self.provenance.clone()),
        };
        serde_json::to_string_pretty(&doc).unwrap()
    }
}

fn degree_report(profile: &crate::graphs::DegreeProfile) -> String {
    let side = |name: &str, degs: &[usize]| {
        let min = degs.iter().copied().min().unwrap_or(0);
        let max = degs.iter().copied().max().unwrap_or(0);
        let argmin = degs.iter().position(|&d| d == min).unwrap_or(0);
        let argmax = degs.iter().position(|&d| d == max).unwrap_or(0);
        format!("{name} degrees in [{min} (vertex {argmin}), {max} (vertex {argmax})]")
    };
    format!(
        "{}; {}",
        side("line", &profile.left_degrees),
        side("point", &profile.right_degrees)
    )
}

/// Parses an incidence structure from the JSON incidence format, validating
/// and normalizing it. Accepts both the plain document and a report
/// envelope holding the document under a "result" key.
pub fn load_incidence_str(
    input: &str,
    source: Option<String>,
    opts: LoadOptions,
) -> Result<IncidenceStructure, GeometryError> {
    let syntax = |e: &serde_json::Error| {
        let (line, column) = (e.line(), e.column());
        JsonFormatError::Syntax {
            offset: crate::graphs::byte_offset_of(input, line, column),
            line,
            column,
            message: e.to_string(),
        }
    };
    let doc: IncidenceJson = match serde_json::from_str(input) {
        Ok(doc) => doc,
        Err(first_err) => {
            let value: serde_json::Value = serde_json::from_str(input).map_err(|e| syntax(&e))?;
            match value.get("result") {
                Some(inner) => serde_json::from_value(inner.clone()).map_err(|e| syntax(&e))?,
                None => return Err(syntax(&first_err).into()),
            }
        }
    };
    let mut g = BipartiteGraph::new(doc.m, doc.n);
    for &(l, r) in &doc.edges {
        g.try_add_edge(l, r)
            .map_err(|_| JsonFormatError::EdgeOutOfRange {
                l,
                r,
                m: doc.m,
                n: doc.n,
            })?;
    }
    IncidenceStructure::from_bipartite(g, "file", None, source, opts)
}

pub fn load_incidence(
    path: &std::path::Path,
    opts: LoadOptions,
) -> Result<IncidenceStructure, GeometryError> {
    let text = std::fs::read_to_string(path).map_err(|source| GeometryError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_incidence_str(&text, Some(path.display().to_string()), opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_input_is_dualized() {
        // 9 "lines" of degree 1 over 3 "points" of degree 3: m > n, so the
        // loader swaps sides.
        let mut g = BipartiteGraph::new(9, 3);
        for l in 0..9 {
            g.add_edge(l, l / 3);
        }
        let s = IncidenceStructure::from_bipartite(g, "file", None, None, LoadOptions::default())
            .unwrap();
        assert!(s.provenance().dualized);
        assert_eq!(
            s.params(),
            StructureParams {
                m: 3,
                n: 9,
                a: 1,
                b: 3
            }
        );
        assert_eq!(s.girth(), Girth::Infinite);
    }

    #[test]
    fn degree_zero_rejected() {
        let mut g = BipartiteGraph::new(2, 3);
        g.add_edge(0, 0);
        g.add_edge(0, 1);
        g.add_edge(1, 0);
        g.add_edge(1, 1);
        let err = IncidenceStructure::from_bipartite(g, "file", None, None, LoadOptions::default())
            .unwrap_err();
        assert!(matches!(
            err,
            GeometryError::DegreeZero {
                side: "point",
                index: 2
            }
        ));
    }

    #[test]
    fn irregular_rejected_unless_relaxed() {
        // Point degrees {2, 3, 3} with a = 3 all lie in (3/2, 3]: accepted
        // under the relaxation only. Degrees {2, 1} with a = 2 fail it.
        let g = BipartiteGraph::from_rows(&[vec![1, 1, 1], vec![1, 1, 1], vec![0, 1, 1]]);
        let strict = IncidenceStructure::from_bipartite(
            g.clone(),
            "file",
            None,
            None,
            LoadOptions::default(),
        );
        assert!(matches!(strict, Err(GeometryError::NotBiregular { .. })));
        let relaxed = IncidenceStructure::from_bipartite(
            g,
            "file",
            None,
            None,
            LoadOptions {
                allow_degree_interval: true,
            },
        )
        .unwrap();
        assert!(relaxed.provenance().relaxed_degrees);
        assert_eq!(relaxed.params().a, 3);
        let bad = BipartiteGraph::from_rows(&[vec![1, 1], vec![1, 0]]);
        let err = IncidenceStructure::from_bipartite(
            bad,
            "file",
            None,
            None,
            LoadOptions {
                allow_degree_interval: true,
            },
        )
        .unwrap_err();
        assert!(matches!(err, GeometryError::DegreesOutsideInterval { .. }));
    }

    #[test]
    fn json_round_trip() {
        let s = projective_plane(2).unwrap();
        let text = s.to_json();
        let back = load_incidence_str(&text, None, LoadOptions::default()).unwrap();
        assert_eq!(back.params(), s.params());
        assert_eq!(back.girth(), s.girth());
        assert_eq!(back.incidence(), s.incidence());
    }
}
