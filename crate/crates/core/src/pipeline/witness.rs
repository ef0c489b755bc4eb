//! Vertex sampling and witness certification, and the end-to-end
//! composition of the whole construction.

use super::{
    audit, clique_graph, rng, sparsify, AuditConfig, CliqueGraph, PipelineError, SparsifiedGraph,
};
use crate::bounds::{self, Theorem1Values};
use crate::budget::{Budget, SearchStatus};
use crate::geometry::{IncidenceStructure, Provenance, StructureParams};
use crate::graphs::{
    encode_graph6, find_subgraph, independence_heuristic, independence_number_ordered, Graph,
    VertexOrder,
};
use crate::lfamily::{self, FreenessOptions};
use crate::SCHEMA_VERSION;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamProfile {
    Paper,
    Desk,
}

/// The four construction constants. Paper defaults: R-coefficient 2^10,
/// S-coefficient 2^-8, t-coefficient 2^8, sampling coefficient 2^-13. The
/// desk profile sets all four to 1: the paper-profile values make every
/// desk-scale instance vacuous, since the asymptotic guarantee needs
/// a >= 2^12 (log n)^3.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PipelineParams {
    pub profile: ParamProfile,
    pub c_r: f64,
    pub c_s: f64,
    pub c_t: f64,
    pub c_p: f64,
    /// Largest sample for which the independence number is solved exactly.
    pub exact_alpha_limit: usize,
    pub alpha_budget: Budget,
}

impl PipelineParams {
    pub fn paper() -> Self {
        PipelineParams {
            profile: ParamProfile::Paper,
            c_r: 1024.0,
            c_s: 1.0 / 256.0,
            c_t: 256.0,
            c_p: 1.0 / 8192.0,
            exact_alpha_limit: 400,
            alpha_budget: Budget::UNLIMITED,
        }
    }

    pub fn desk() -> Self {
        PipelineParams {
            profile: ParamProfile::Desk,
            c_r: 1.0,
            c_s: 1.0,
            c_t: 1.0,
            c_p: 1.0,
            ..Self::paper()
        }
    }
}

/// The construction formulas evaluated at one set of constants for one
/// parameter tuple (m, n, a, b). Logs are base 2.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct FormulaValues {
    pub c_r: f64,
    pub c_s: f64,
    pub c_t: f64,
    pub c_p: f64,
    /// R = c_r m log n / a
    pub big_r: f64,
    /// delta = c_s a^2 / m; S = delta |X|^2
    pub delta: f64,
    /// t = c_t n (log n)^2 / (a b)
    pub t: f64,
    /// r = t / log n
    pub r: f64,
    /// p = c_p a t / (m log n), clamped into [0, 1]
    pub sample_p: f64,
    /// b t / log n
    pub lower_bound: f64,
}

impl FormulaValues {
    pub fn evaluate(params: StructureParams, c: &PipelineParams) -> FormulaValues {
        let (m, n, a, b) = (
            params.m as f64,
            params.n as f64,
            params.a as f64,
            params.b as f64,
        );
        let log_n = if params.n >= 2 { n.log2() } else { 0.0 };
        let t = if log_n > 0.0 {
            c.c_t * n * log_n * log_n / (a * b)
        } else {
            0.0
        };
        let big_r = if log_n > 0.0 {
            c.c_r * m * log_n / a
        } else {
            0.0
        };
        let r = if log_n > 0.0 { t / log_n } else { 0.0 };
        let sample_p = if log_n > 0.0 {
            (c.c_p * a * t / (m * log_n)).clamp(0.0, 1.0)
        } else {
            0.0
        };
        FormulaValues {
            c_r: c.c_r,
            c_s: c.c_s,
            c_t: c.c_t,
            c_p: c.c_p,
            big_r,
            delta: c.c_s * a * a / m,
            t,
            r,
            sample_p,
            lower_bound: if log_n > 0.0 { b * t / log_n } else { 0.0 },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateMethod {
    GirthShortcut,
    EmbeddingSearch,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GateReport {
    pub method: GateMethod,
    pub lfree: bool,
    pub girth: crate::graphs::Girth,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shortcut_l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family_size: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ForbiddenInfo {
    pub name: String,
    pub graph6: String,
    pub vertices: usize,
    pub edges: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessGraph {
    pub order: usize,
    pub edges: usize,
    /// graph6 of the witness; omitted above 10000 vertices.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph6: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph6_omitted_reason: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlphaReport {
    pub value: usize,
    pub status: SearchStatus,
    pub method: String,
    pub vertex_order: VertexOrder,
    /// Exact solves are re-run under a second deterministic vertex order and
    /// must agree.
    pub double_checked: bool,
    pub solver_nodes: u64,
}

/// The certified output: an F-free graph, its order, its independence
/// number, and the implied Ramsey statement, with full provenance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessReport {
    pub schema_version: u32,
    pub rng_contract: String,
    pub geometry: Provenance,
    pub forbidden: ForbiddenInfo,
    pub seed: u64,
    pub sample_p: f64,
    pub gate: GateReport,
    pub params_configured: FormulaValues,
    pub params_paper: FormulaValues,
    pub theorem1_paper: Theorem1Values,
    pub witness: WitnessGraph,
    pub alpha: AlphaReport,
    pub f_free_verified: bool,
    pub ramsey_statement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<audit::AuditReport>,
}

const WITNESS_GRAPH6_LIMIT: usize = 10_000;

/// Samples vertices of the sparsified graph independently with probability
/// `p`, verifies the induced graph is F-free by direct subgraph search,
/// solves its independence number, and certifies
/// r(F, alpha+1) > order.
#[allow(clippy::too_many_arguments)]
pub fn sample_and_certify(
    hs: &SparsifiedGraph,
    base: &CliqueGraph,
    forbidden: &Graph,
    forbidden_name: &str,
    p: f64,
    params: &PipelineParams,
    gate: GateReport,
    geometry: Provenance,
    audit_report: Option<audit::AuditReport>,
) -> Result<WitnessReport, PipelineError> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(PipelineError::ProbabilityRange(p));
    }
    let n = hs.graph().vertex_count();
    let mut sample_rng = rng::vertex_sample_rng(hs.seed());
    let sampled: Vec<usize> = (0..n).filter(|_| sample_rng.gen_bool(p)).collect();
    let induced = hs.graph().induced(&sampled);

    if find_subgraph(forbidden, &induced).is_some() {
        return Err(PipelineError::WitnessContainsForbidden);
    }

    let exact = induced.vertex_count() <= params.exact_alpha_limit;
    let (alpha, double_checked) = if exact {
        let first =
            independence_number_ordered(&induced, VertexOrder::DegreeDesc, params.alpha_budget);
        let double_checked = if first.status.is_exact() {
            let second =
                independence_number_ordered(&induced, VertexOrder::DegreeAsc, params.alpha_budget);
            assert!(
                !second.status.is_exact() || second.size == first.size,
                "independent re-solve disagrees: {} vs {}",
                first.size,
                second.size
            );
            second.status.is_exact()
        } else {
            false
        };
        (first, double_checked)
    } else {
        (independence_heuristic(&induced, params.alpha_budget), false)
    };

    let order = induced.vertex_count();
    let statement = format!("r({}, {}) > {}", forbidden_name, alpha.size + 1, order);
    let structure_params = base.params();
    let (graph6, omitted) = if order <= WITNESS_GRAPH6_LIMIT {
        (Some(encode_graph6(&induced)), None)
    } else {
        (
            None,
            Some(format!(
                "order {order} exceeds the {WITNESS_GRAPH6_LIMIT}-vertex cap"
            )),
        )
    };
    Ok(WitnessReport {
        schema_version: SCHEMA_VERSION,
        rng_contract: rng::RNG_CONTRACT.to_string(),
        geometry,
        forbidden: ForbiddenInfo {
            name: forbidden_name.to_string(),
            graph6: encode_graph6(forbidden),
            vertices: forbidden.vertex_count(),
            edges: forbidden.edge_count(),
        },
        seed: hs.seed(),
        sample_p: p,
        gate,
        params_configured: FormulaValues::evaluate(structure_params, params),
        params_paper: FormulaValues::evaluate(structure_params, &PipelineParams::paper()),
        theorem1_paper: bounds::theorem1_values(
            structure_params.m as u64,
            structure_params.n as u64,
            structure_params.a as u64,
            structure_params.b as u64,
        ),
        witness: WitnessGraph {
            order,
            edges: induced.edge_count(),
            graph6,
            graph6_omitted_reason: omitted,
        },
        alpha: AlphaReport {
            value: alpha.size,
            status: alpha.status,
            method: if exact { "exact" } else { "heuristic" }.to_string(),
            vertex_order: VertexOrder::DegreeDesc,
            double_checked,
            solver_nodes: alpha.nodes,
        },
        f_free_verified: true,
        ramsey_statement: statement,
        audit: audit_report,
    })
}

/// Runs the full construction: pattern-freeness gate (girth shortcut for odd
/// cycles when it applies, full embedding search otherwise), clique graph,
/// sparsification, optional distribution audit, vertex sampling, and
/// certification.
#[allow(clippy::too_many_arguments)]
pub fn end_to_end(
    geometry: &IncidenceStructure,
    forbidden: &Graph,
    forbidden_name: &str,
    seed: u64,
    p_override: Option<f64>,
    params: &PipelineParams,
    audit_cfg: Option<AuditConfig>,
) -> Result<WitnessReport, PipelineError> {
    let girth = geometry.girth();
    let gate = match lfamily::odd_cycle_parameter(forbidden) {
        Some(l) if lfamily::girth_shortcut_lfree(geometry.incidence(), l) => GateReport {
            method: GateMethod::GirthShortcut,
            lfree: true,
            girth,
            shortcut_l: Some(l),
            family_size: None,
        },
        _ => {
            let fam = lfamily::lfamily(forbidden, Budget::UNLIMITED)?;
            let report = lfamily::is_lfree(
                geometry.incidence(),
                &fam.family,
                FreenessOptions::default(),
            );
            if let Some(violation) = report.violation {
                return Err(PipelineError::FreenessGate(violation));
            }
            GateReport {
                method: GateMethod::EmbeddingSearch,
                lfree: true,
                girth,
                shortcut_l: None,
                family_size: Some(fam.family.len()),
            }
        }
    };

    let h = clique_graph(geometry)?;
    let hs = sparsify(&h, seed);
    let audit_report = audit_cfg.map(|cfg| audit::distribution_audit(&hs, &h, cfg, params.c_s));
    let p = p_override.unwrap_or_else(|| FormulaValues::evaluate(h.params(), params).sample_p);
    sample_and_certify(
        &hs,
        &h,
        forbidden,
        forbidden_name,
        p,
        params,
        gate,
        geometry.provenance().clone(),
        audit_report,
    )
}
