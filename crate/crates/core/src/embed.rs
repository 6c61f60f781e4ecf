//! Tiered embeddedness classification of parallel Scherk ends, line
//! arrangements, and the deformed graph used for rendering.

use std::collections::VecDeque;

use num_complex::Complex64;
use serde::Serialize;

use crate::config::{Configuration, DeformationVector};
use crate::error::{Error, Result};
use crate::geom::{wrap_2pi, wrap_pi, ANGLE_TOL};
use crate::horizontal::{self, continuation_solve_with, solve_zeta_dot, solve_zeta_hat_with, NEWTON_TOL};
use crate::model::GeometricGraph;
use crate::vertical::{check_phase_balanced, k_values, vertical_rigidity_with};

pub const DEFAULT_PROBES: [f64; 3] = [0.08, 0.04, 0.02];
/// Separations at or below this count as ties at first and flat order.
pub const TIE_TOL: f64 = 1e-10;
/// Continuation separations must exceed this at every probe.
pub const TAYLOR_TOL: f64 = 10.0 * NEWTON_TOL;
/// Beyond this value of `l_min / eps^2` the flat scale underflows to zero.
pub const FLAT_EXPONENT_LIMIT: f64 = 300.0;

/// Rays labelled anticlockwise from the smallest direction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RayOrder {
    /// Ray half-edges; position `i` carries label `i + 1`.
    pub labels: Vec<usize>,
    /// Adjacent parallel pairs `(r, r_next)` as ray half-edges.
    pub pairs: Vec<(usize, usize)>,
}

pub fn ray_order(graph: &GeometricGraph) -> RayOrder {
    let prs = graph.prs();
    let rays = prs.rays();
    if rays.is_empty() {
        return RayOrder { labels: vec![], pairs: vec![] };
    }
    let min = rays.iter().map(|&r| wrap_2pi(graph.theta(r))).fold(f64::INFINITY, f64::min);
    let offset = |r: usize| wrap_2pi(graph.theta(r) - min);
    let mut sorted: Vec<usize> = rays.to_vec();
    sorted.sort_by(|&a, &b| offset(a).total_cmp(&offset(b)));

    let mut labels = Vec::with_capacity(sorted.len());
    let mut pairs = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && offset(sorted[j]) - offset(sorted[i]) <= ANGLE_TOL {
            j += 1;
        }
        let group = order_parallel_group(graph, &sorted[i..j]);
        for w in group.windows(2) {
            pairs.push((w[0], w[1]));
        }
        labels.extend(group);
        i = j;
    }
    RayOrder { labels, pairs }
}

/// Parallel rays in anticlockwise order at infinity: right to left as seen
/// along their direction, and by `sigma` at a common vertex.
fn order_parallel_group(graph: &GeometricGraph, group: &[usize]) -> Vec<usize> {
    let prs = graph.prs();
    let side = |r: usize| {
        let p = graph.position(prs.vertex_of(r));
        let normal = Complex64::i() * graph.unit(r);
        (p * normal.conj()).re
    };
    let mut g = group.to_vec();
    g.sort_by(|&a, &b| side(a).total_cmp(&side(b)));
    let mut out = Vec::with_capacity(g.len());
    let mut i = 0;
    while i < g.len() {
        let v = prs.vertex_of(g[i]);
        let mut j = i + 1;
        while j < g.len() && prs.vertex_of(g[j]) == v {
            j += 1;
        }
        let at_v = &g[i..j];
        // Start from the member whose sigma-predecessor is outside the group.
        let hs = prs.vertex(v);
        let pred = |h: usize| {
            let k = hs.iter().position(|&x| x == h).unwrap();
            hs[(k + hs.len() - 1) % hs.len()]
        };
        let mut cur = *at_v.iter().find(|&&h| !at_v.contains(&pred(h))).unwrap_or(&at_v[0]);
        for _ in 0..at_v.len() {
            out.push(cur);
            cur = prs.sigma(cur);
        }
        i = j;
    }
    out
}

/// Every vertex is 4-valent with `sigma^2` reversing each direction, and the
/// resulting straight chains run from ray to ray.
pub fn detect_line_arrangement(graph: &GeometricGraph) -> bool {
    let prs = graph.prs();
    for v in 0..prs.n_vertices() {
        if prs.degree(v) != 4 {
            return false;
        }
        for &h in prs.vertex(v) {
            let o = prs.sigma(prs.sigma(h));
            if (wrap_pi(graph.theta(o) - graph.theta(h)).abs() - std::f64::consts::PI).abs() > ANGLE_TOL {
                return false;
            }
        }
    }
    for &r in prs.rays() {
        let mut h = prs.sigma(prs.sigma(r));
        let mut steps = 0;
        while !prs.is_ray(h) {
            h = prs.sigma(prs.sigma(prs.iota(h)));
            steps += 1;
            if steps > prs.n_half_edges() {
                return false;
            }
        }
    }
    true
}

/// `max |wrap(theta_{sigma^2(eta)} - theta_eta - pi)|` over all half-edges,
/// for half-edge angles `theta` (one per half-edge).
pub fn lemma_lines_residual(graph: &GeometricGraph, theta: &[f64]) -> Result<f64> {
    if !detect_line_arrangement(graph) {
        return Err(Error::NotLineArrangement);
    }
    let prs = graph.prs();
    Ok((0..prs.n_half_edges())
        .map(|h| wrap_pi(theta[prs.sigma(prs.sigma(h))] - theta[h] - std::f64::consts::PI).abs())
        .fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Tier {
    DistinctRays,
    FirstOrder,
    Taylor,
    FlatOrder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Embedded,
    NotEmbedded,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolution {
    Outward,
    Inward,
    Tied,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairEvidence {
    /// Labels `r` and `r + 1` in the anticlockwise order.
    pub labels: (usize, usize),
    /// Ray half-edges.
    pub rays: (usize, usize),
    /// Tier at which the pair was decided (the last tier tried if tied).
    pub tier: Tier,
    pub resolution: Resolution,
    /// `theta_{r+1} - theta_r` in the quantity of that tier.
    pub separation: f64,
    /// Separations at each probe `eps` when the Taylor tier was consulted.
    pub probe_separations: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddednessVerdict {
    pub tier: Tier,
    pub outcome: Outcome,
    /// Set when the flat-order tier ran on a graph that is not a line
    /// arrangement.
    pub heuristic: bool,
    pub line_arrangement: bool,
    pub pairs: Vec<PairEvidence>,
    pub diagnostics: Vec<String>,
}

pub fn classify(config: &Configuration, probes: &[f64]) -> Result<EmbeddednessVerdict> {
    classify_with(config, &config.xi, probes)
}

pub fn classify_with(config: &Configuration, xi: &DeformationVector, probes: &[f64]) -> Result<EmbeddednessVerdict> {
    let g = &config.graph;
    let prs = g.prs();
    let order = ray_order(g);
    let line_arrangement = detect_line_arrangement(g);
    if order.pairs.is_empty() {
        return Ok(EmbeddednessVerdict {
            tier: Tier::DistinctRays,
            outcome: Outcome::Embedded,
            heuristic: false,
            line_arrangement,
            pairs: vec![],
            diagnostics: vec![],
        });
    }

    let zd = solve_zeta_dot(config)?;
    let chi_dot = xi + &zd;
    let k = k_values(config, &chi_dot);
    check_phase_balanced(config, &k)?;
    let vr = vertical_rigidity_with(config, &config.phase, &k)?;
    if !vr.is_rigid {
        return Err(Error::NotVerticallyRigid { rank: vr.rank, expected: vr.columns });
    }
    let mut diagnostics = vr.diagnostics;

    let label = |r: usize| order.labels.iter().position(|&x| x == r).unwrap() + 1;
    let theta_of = |d: &DeformationVector, r: usize| d.theta_of_ray(prs, r);
    let mut pairs: Vec<PairEvidence> = order
        .pairs
        .iter()
        .map(|&(a, b)| {
            let sep = theta_of(&chi_dot, b) - theta_of(&chi_dot, a);
            PairEvidence {
                labels: (label(a), label(b)),
                rays: (a, b),
                tier: Tier::FirstOrder,
                resolution: resolve(sep, TIE_TOL),
                separation: sep,
                probe_separations: vec![],
            }
        })
        .collect();

    if pairs.iter().any(|p| p.resolution == Resolution::Tied) {
        let mut conts = Vec::new();
        for &eps in probes {
            match continuation_solve_with(config, eps, xi) {
                Ok(c) => conts.push(c),
                Err(e) => diagnostics.push(format!("continuation at eps = {eps}: {e}")),
            }
        }
        for p in pairs.iter_mut().filter(|p| p.resolution == Resolution::Tied) {
            p.tier = Tier::Taylor;
            let seps: Vec<f64> = conts
                .iter()
                .map(|c| wrap_pi(theta_of(&c.chi, p.rays.1) - theta_of(&c.chi, p.rays.0)))
                .collect();
            let persistent = !seps.is_empty()
                && conts.len() == probes.len()
                && seps.iter().all(|&s| s.abs() > TAYLOR_TOL)
                && (seps.iter().all(|&s| s > 0.0) || seps.iter().all(|&s| s < 0.0));
            if persistent {
                p.resolution = resolve(seps[seps.len() - 1], 0.0);
                p.separation = seps[seps.len() - 1];
            } else {
                p.separation = seps.last().copied().unwrap_or(0.0);
            }
            p.probe_separations = seps;
        }
    }

    let mut heuristic = false;
    if pairs.iter().any(|p| p.resolution == Resolution::Tied) {
        let zh = solve_zeta_hat_with(config, &k)?;
        heuristic = !line_arrangement;
        if heuristic {
            diagnostics.push("flat-order comparison on a graph that is not a line arrangement".into());
        }
        for p in pairs.iter_mut().filter(|p| p.resolution == Resolution::Tied) {
            let sep = theta_of(&zh, p.rays.1) - theta_of(&zh, p.rays.0);
            p.tier = Tier::FlatOrder;
            p.separation = sep;
            p.resolution = resolve(sep, TIE_TOL);
        }
    }

    let tier = pairs.iter().map(|p| p.tier).max().unwrap_or(Tier::FirstOrder);
    let outcome = if pairs.iter().any(|p| p.resolution == Resolution::Inward) {
        Outcome::NotEmbedded
    } else if pairs.iter().any(|p| p.resolution == Resolution::Tied) {
        Outcome::Inconclusive
    } else {
        Outcome::Embedded
    };
    Ok(EmbeddednessVerdict { tier, outcome, heuristic, line_arrangement, pairs, diagnostics })
}

fn resolve(sep: f64, tol: f64) -> Resolution {
    if sep > tol {
        Resolution::Outward
    } else if sep < -tol {
        Resolution::Inward
    } else {
        Resolution::Tied
    }
}

/// `tau(eps) = exp(-l_min / eps^2)`, or zero with a note once it underflows.
pub fn flat_scale(l_min: f64, eps: f64) -> (f64, Option<String>) {
    if eps == 0.0 {
        return (0.0, None);
    }
    let a = l_min / (eps * eps);
    if a > FLAT_EXPONENT_LIMIT {
        (0.0, Some(format!("l_min/eps^2 = {a:.1} > {FLAT_EXPONENT_LIMIT}: flat term set to 0")))
    } else {
        ((-a).exp(), None)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformedGraph {
    pub eps: f64,
    pub tau: f64,
    pub positions: Vec<[f64; 2]>,
    /// Aligned with the graph's rays.
    pub ray_angles: Vec<f64>,
    pub diagnostics: Vec<String>,
}

/// `chi(eps) = chi-tilde(eps) + tau(eps) zeta-hat` as vertex positions
/// (integrated over a BFS tree from vertex 0) and ray angles.
pub fn deformed_graph(config: &Configuration, eps: f64) -> Result<DeformedGraph> {
    let g = &config.graph;
    if eps == 0.0 {
        return Ok(DeformedGraph {
            eps,
            tau: 0.0,
            positions: g.positions().iter().map(|z| [z.re, z.im]).collect(),
            ray_angles: g.ray_angles().to_vec(),
            diagnostics: vec![],
        });
    }
    let cont = horizontal::continuation_solve(config, eps)?;
    let l_min = g.min_length().ok_or(Error::NoClosedEdges)?;
    let (tau, note) = flat_scale(l_min, eps);
    let chi = if tau > 0.0 {
        let zd = solve_zeta_dot(config)?;
        let k = k_values(config, &(&config.xi + &zd));
        let zh = solve_zeta_hat_with(config, &k)?;
        &cont.chi + &(&zh * tau)
    } else {
        cont.chi
    };
    let prs = g.prs();
    let nv = g.n_vertices();
    let mut pos: Vec<Option<Complex64>> = vec![None; nv];
    pos[0] = Some(g.position(0));
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &h in prs.vertex(v) {
            if prs.is_ray(h) {
                continue;
            }
            let w = prs.vertex_of(prs.iota(h));
            if pos[w].is_none() {
                pos[w] = Some(pos[v].unwrap() + chi.x_at(prs, h));
                queue.push_back(w);
            }
        }
    }
    Ok(DeformedGraph {
        eps,
        tau,
        positions: pos.into_iter().map(|z| z.map(|z| [z.re, z.im]).unwrap_or([f64::NAN; 2])).collect(),
        ray_angles: chi.theta.clone(),
        diagnostics: note.into_iter().collect(),
    })
}
