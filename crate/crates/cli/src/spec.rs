//! Parsers for the compact command-line specs: geometries like
//! "hexagon:q=2" or a file path, forbidden graphs like "C5", "K4" or a
//! graph6 literal, budgets like "60s".

use anyhow::{anyhow, bail, Context, Result};
use ramsey_core::budget::Budget;
use ramsey_core::geometry::{
    hermitian_secant_graph, load_incidence, projective_plane, split_cayley_hexagon,
    symplectic_quadrangle, IncidenceStructure, LoadOptions,
};
use ramsey_core::graphs::{decode_graph6, Graph};
use std::path::{Path, PathBuf};

/// Builds a geometry from "plane:q=2" / "quadrangle:q=3" / "hexagon:q=2" /
/// "hermitian:q=2" / "file:PATH" / a bare path to an incidence JSON file.
pub fn parse_geometry(spec: &str, relax: bool) -> Result<IncidenceStructure> {
    let opts = LoadOptions {
        allow_degree_interval: relax,
    };
    if let Some(path) = spec.strip_prefix("file:") {
        return Ok(load_incidence(Path::new(path), opts)?);
    }
    if let Some((family, rest)) = spec.split_once(':') {
        let q: u32 = rest
            .strip_prefix("q=")
            .unwrap_or(rest)
            .parse()
            .with_context(|| format!("cannot parse q in geometry spec '{spec}'"))?;
        return build_family(family, q);
    }
    if spec.ends_with(".json") || spec.contains('/') {
        return Ok(load_incidence(Path::new(spec), opts)?);
    }
    bail!("geometry spec '{spec}' is neither FAMILY:q=N nor a .json path")
}

pub fn build_family(family: &str, q: u32) -> Result<IncidenceStructure> {
    let s = match family.to_ascii_lowercase().as_str() {
        "plane" | "pg" | "projective" => projective_plane(q)?,
        "quadrangle" | "w" | "symplectic" => symplectic_quadrangle(q)?,
        "hexagon" | "h" | "split-cayley" => split_cayley_hexagon(q)?,
        "hermitian" | "mv" | "secant" => hermitian_secant_graph(q)?,
        other => bail!(
            "unknown geometry family '{other}' (expected plane, quadrangle, hexagon, hermitian)"
        ),
    };
    Ok(s)
}

/// Parses a forbidden graph: a named small graph (C3..C11, K2..K6, P2..P6),
/// "g6:STRING" for a graph6 literal, or "@PATH" for a graph6 file. Returns
/// the graph and its display name.
pub fn parse_forbidden(spec: &str) -> Result<(Graph, String)> {
    if let Some(lit) = spec.strip_prefix("g6:") {
        let g = decode_graph6(lit)?;
        return Ok((g, format!("g6:{lit}")));
    }
    if let Some(path) = spec.strip_prefix('@') {
        return forbidden_from_g6_file(path);
    }
    if spec.ends_with(".g6") {
        return forbidden_from_g6_file(spec);
    }
    let upper = spec.to_ascii_uppercase();
    let (kind, num) = upper.split_at(1);
    let n: usize = num
        .parse()
        .map_err(|_| anyhow!("cannot parse forbidden graph spec '{spec}'"))?;
    let g = match kind {
        "C" if n >= 3 => Graph::cycle(n),
        "K" if n >= 1 => Graph::complete(n),
        "P" if n >= 1 => Graph::path(n),
        _ => bail!("unknown forbidden graph '{spec}' (try C5, K4, P3, g6:..., @file)"),
    };
    Ok((g, upper))
}

fn forbidden_from_g6_file(path: &str) -> Result<(Graph, String)> {
    let text = std::fs::read_to_string(PathBuf::from(path))
        .with_context(|| format!("reading graph6 file {path}"))?;
    let line = text.lines().next().unwrap_or("").trim();
    let g = decode_graph6(line)?;
    Ok((g, line.to_string()))
}

/// Parses "500ms", "60s" or "5m" into a wall-clock budget.
pub fn parse_budget(spec: &str) -> Result<Budget> {
    let (digits, unit): (String, String) = spec.chars().partition(|c| c.is_ascii_digit());
    let value: u64 = digits
        .parse()
        .with_context(|| format!("cannot parse budget '{spec}'"))?;
    let millis = match unit.as_str() {
        "ms" => value,
        "s" | "" => value * 1000,
        "m" => value * 60_000,
        other => bail!("unknown budget unit '{other}' (use ms, s or m)"),
    };
    Ok(Budget::millis(millis))
}

/// "lfamily:C5" expands the forbidden family of C5; "c4" is just the
/// four-cycle pattern.
pub fn parse_pattern_family(
    spec: &str,
    budget: Budget,
) -> Result<(Vec<ramsey_core::graphs::BipartiteGraph>, String)> {
    if spec.eq_ignore_ascii_case("c4") {
        return Ok((
            vec![ramsey_core::graphs::BipartiteGraph::c4_pattern()],
            "{C4}".to_string(),
        ));
    }
    if let Some(rest) = spec.strip_prefix("lfamily:") {
        let (f, name) = parse_forbidden(rest)?;
        let fam = ramsey_core::lfamily::lfamily(&f, budget)?;
        if !fam.status.is_exact() {
            bail!("family enumeration for {name} hit its budget; results incomplete");
        }
        return Ok((fam.family.patterns().to_vec(), format!("lfamily:{name}")));
    }
    bail!("family spec '{spec}' is neither 'c4' nor 'lfamily:<graph>'")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_specs() {
        let s = parse_geometry("plane:q=2", false).unwrap();
        assert_eq!(s.params().m, 7);
        let s = parse_geometry("hexagon:2", false).unwrap();
        assert_eq!(s.params().m, 63);
        assert!(parse_geometry("plane:q=6", false).is_err());
        assert!(parse_geometry("nonsense", false).is_err());
    }

    #[test]
    fn forbidden_specs() {
        let (g, name) = parse_forbidden("C5").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 5));
        assert_eq!(name, "C5");
        let (g, _) = parse_forbidden("k4").unwrap();
        assert_eq!(g.edge_count(), 6);
        let (g, _) = parse_forbidden("g6:A_").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert!(parse_forbidden("X9").is_err());
    }

    #[test]
    fn budgets() {
        assert_eq!(parse_budget("60s").unwrap().max_millis, 60_000);
        assert_eq!(parse_budget("500ms").unwrap().max_millis, 500);
        assert_eq!(parse_budget("2m").unwrap().max_millis, 120_000);
        assert!(parse_budget("2h").is_err());
    }

    #[test]
    fn family_specs() {
        let (ps, name) = parse_pattern_family("lfamily:K2", Budget::UNLIMITED).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(name, "lfamily:K2");
        let (ps, _) = parse_pattern_family("c4", Budget::UNLIMITED).unwrap();
        assert_eq!(ps.len(), 1);
    }
}
