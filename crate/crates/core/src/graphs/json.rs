//! The JSON incidence format for bipartite graphs:
//! `{"m": int, "n": int, "edges": [[l, r], ...], "labels": {...optional}}`,
//! UTF-8, edges sorted lexicographically on output.

use super::BipartiteGraph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonFormatError {
    #[error("malformed JSON at byte {offset} (line {line}, column {column}): {message}")]
    Syntax {
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("edge [{l}, {r}] out of range for m={m}, n={n}")]
    EdgeOutOfRange {
        l: usize,
        r: usize,
        m: usize,
        n: usize,
    },
}

#[derive(Serialize, Deserialize)]
pub struct BipartiteJson {
    pub m: usize,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<serde_json::Map<String, serde_json::Value>>,
}

impl BipartiteJson {
    pub fn from_graph(
        g: &BipartiteGraph,
        labels: Option<serde_json::Map<String, serde_json::Value>>,
    ) -> Self {
        BipartiteJson {
            m: g.left_count(),
            n: g.right_count(),
            edges: g.edges().collect(),
            labels,
        }
    }

    pub fn into_graph(self) -> Result<BipartiteGraph, JsonFormatError> {
        let mut g = BipartiteGraph::new(self.m, self.n);
        for &(l, r) in &self.edges {
            g.try_add_edge(l, r)
                .map_err(|_| JsonFormatError::EdgeOutOfRange {
                    l,
                    r,
                    m: self.m,
                    n: self.n,
                })?;
        }
        Ok(g)
    }
}

pub fn bipartite_to_json(g: &BipartiteGraph) -> String {
    serde_json::to_string_pretty(&BipartiteJson::from_graph(g, None)).unwrap()
}

pub fn bipartite_from_json(input: &str) -> Result<BipartiteGraph, JsonFormatError> {
    let parsed: BipartiteJson = serde_json::from_str(input).map_err(|e| {
        let (line, column) = (e.line(), e.column());
        JsonFormatError::Syntax {
            offset: byte_offset_of(input, line, column),
            line,
            column,
            message: e.to_string(),
        }
    })?;
    parsed.into_graph()
}

/// Byte offset of a 1-based (line, column) position.
pub fn byte_offset_of(input: &str, line: usize, column: usize) -> usize {
    let mut offset = 0;
    for (i, l) in input.split('\n').enumerate() {
        if i + 1 == line {
            return offset + column.saturating_sub(1).min(l.len());
        }
        offset += l.len() + 1;
    }
    input.len()
}
