//! Aggregated, serializable analysis of a configuration.

use serde::Serialize;

use crate::config::Configuration;
use crate::discrete::{face_cycles, minimal_edges};
use crate::embed::{classify, detect_line_arrangement, EmbeddednessVerdict, DEFAULT_PROBES};
use crate::horizontal::{self, certify_rigidity_simple_seeded, RigidityCertificate};
use crate::model::{classify_vertex, orientation, parallel_classes, VertexClass};
use crate::vertical::{default_k, is_tree, phase_residual, vertical_rigidity_with};

#[derive(Clone, Debug, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub closed_edges: usize,
    pub rays: usize,
    pub faces: usize,
    /// `|V| - |E| + |R| + |F|`, which must be 1.
    pub euler: i64,
    pub orientable: bool,
    pub vertex_classes: Vec<VertexClass>,
    /// Classes of closed edges (by edge index) with identical images.
    pub parallel_edges: Vec<Vec<usize>>,
    /// Classes of parallel rays (by ray half-edge).
    pub parallel_rays: Vec<Vec<usize>>,
    pub tree: bool,
    pub line_arrangement: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HorizontalReport {
    pub balance_residual: f64,
    pub balanced: bool,
    pub rank: usize,
    pub expected_rank: usize,
    pub dim_d: usize,
    pub rigid: bool,
    /// `"svd"`, plus `"certificate"` when one was issued.
    pub rigidity_source: Vec<String>,
    pub certificate: Option<RigidityCertificate>,
    pub certificate_error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerticalReport {
    /// `K_h` per half-edge (zero on rays).
    pub k: Vec<f64>,
    pub phase_residual: f64,
    pub rank: usize,
    pub columns: usize,
    pub kernel_dim: usize,
    pub rigid: bool,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub graph: GraphSummary,
    pub horizontal: HorizontalReport,
    pub vertical: Result<VerticalReport, String>,
    pub embeddedness: Result<EmbeddednessVerdict, String>,
}

pub fn summarize(config: &Configuration) -> GraphSummary {
    let g = &config.graph;
    let pc = parallel_classes(g);
    GraphSummary {
        vertices: g.n_vertices(),
        closed_edges: g.n_closed_edges(),
        rays: g.n_rays(),
        faces: g.n_faces(),
        euler: g.euler_characteristic(),
        orientable: orientation(g).is_some(),
        vertex_classes: (0..g.n_vertices()).map(|v| classify_vertex(g, v)).collect(),
        parallel_edges: pc.nontrivial_closed().cloned().collect(),
        parallel_rays: pc.nontrivial_rays().cloned().collect(),
        tree: is_tree(g),
        line_arrangement: detect_line_arrangement(g),
    }
}

fn horizontal_report(config: &Configuration, certify: bool, seed: u64) -> HorizontalReport {
    let g = &config.graph;
    let j = horizontal::jacobian(g);
    let balance_residual = horizontal::balance_residual(g);
    let dim_d = j.kernel.ncols();
    let rigid = j.is_surjective();
    let mut source = vec!["svd".to_string()];
    let (certificate, certificate_error) = if certify {
        match certify_rigidity_simple_seeded(g, seed) {
            Ok(c) => {
                source.push("certificate".into());
                (Some(c), None)
            }
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    HorizontalReport {
        balance_residual,
        balanced: balance_residual <= horizontal::BALANCE_TOL,
        rank: j.rank,
        expected_rank: j.expected_rank(),
        dim_d,
        rigid,
        rigidity_source: source,
        certificate,
        certificate_error,
    }
}

fn vertical_report(config: &Configuration) -> crate::Result<VerticalReport> {
    let g = &config.graph;
    let (k, note) = default_k(config);
    let m = minimal_edges(g)?;
    let faces = face_cycles(g.prs());
    let residual = phase_residual(g, &m, &faces, &config.phase, &k);
    let r = vertical_rigidity_with(config, &config.phase, &k)?;
    let mut diagnostics: Vec<String> = note.into_iter().collect();
    diagnostics.extend(r.diagnostics);
    Ok(VerticalReport {
        k,
        phase_residual: residual,
        rank: r.rank,
        columns: r.columns,
        kernel_dim: r.kernel_dim,
        rigid: r.is_rigid,
        diagnostics,
    })
}

/// Full report; module errors are recorded in the corresponding field.
/// `seed` drives the certificate's random rotation.
pub fn analyze(config: &Configuration, certify: bool, seed: u64) -> AnalysisReport {
    AnalysisReport {
        graph: summarize(config),
        horizontal: horizontal_report(config, certify, seed),
        vertical: vertical_report(config).map_err(|e| e.to_string()),
        embeddedness: classify(config, &DEFAULT_PROBES).map_err(|e| e.to_string()),
    }
}
