//! Vertical periods and forces, the coupling coefficients `K_h`, vertical
//! rigidity, balanced-phase search and the gauge law.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{Configuration, DeformationVector, PhaseFunction};
use crate::discrete::{
    curl_matrix, face_cycles, minimal_edges, select_mdiv_basis_with, FaceCycle, MdivBasis, MinimalEdges,
};
use crate::error::{Error, Result};
use crate::geom::wrap_pi;
use crate::horizontal::solve_zeta_dot;
use crate::linalg::{min_norm_solve, FullSvd, RANK_TOL};
use crate::model::{parallel_classes, GeometricGraph};

/// Residual under which a phase function counts as balanced.
pub const PHASE_TOL: f64 = 1e-12;
/// Tolerance for reporting a phase function as balanced in checks on input.
pub const PHASE_CHECK_TOL: f64 = 1e-9;
const DEDUP_TOL: f64 = 1e-6;
const RANDOM_SEEDS: usize = 16;
const MAX_TRIVIAL_ENUM_VERTICES: usize = 13;

/// `K_h = upsilon_h upsilon_{-h} exp(-Re(x-dot_h conj(u0_h)))` on closed
/// half-edges; zero on rays.
pub fn k_values(config: &Configuration, chi_dot: &DeformationVector) -> Vec<f64> {
    let g = &config.graph;
    let prs = g.prs();
    (0..prs.n_half_edges())
        .map(|h| {
            if prs.is_ray(h) {
                0.0
            } else {
                let xd = chi_dot.x_at(prs, h);
                let proj = (xd * g.unit(h).conj()).re;
                config.upsilon[h] * config.upsilon[prs.iota(h)] * (-proj).exp()
            }
        })
        .collect()
}

/// `K` at `chi-dot = xi0 + zeta-dot`. When `zeta-dot` is unavailable (the
/// graph is not horizontally rigid) `chi-dot = xi0` is used and a note is
/// returned.
pub fn default_k(config: &Configuration) -> (Vec<f64>, Option<String>) {
    match solve_zeta_dot(config) {
        Ok(zd) => (k_values(config, &(&config.xi + &zd)), None),
        Err(e) => (
            k_values(config, &config.xi),
            Some(format!("K evaluated at xi only: {e}")),
        ),
    }
}

/// `P^ver_c(phi) = curl_c(phi)` wrapped to `(-pi, pi]`.
pub fn p_ver(graph: &GeometricGraph, faces: &[FaceCycle], phi: &PhaseFunction) -> Vec<f64> {
    let prs = graph.prs();
    faces
        .iter()
        .map(|c| wrap_pi(c.half_edges().iter().map(|&h| phi.at(prs, h)).sum()))
        .collect()
}

/// `mdiv_b(K sin phi)` for every vertex cut.
pub fn f_ver_all(graph: &GeometricGraph, m: &MinimalEdges, phi: &PhaseFunction, k: &[f64]) -> Vec<f64> {
    let prs = graph.prs();
    m.per_vertex
        .iter()
        .map(|hs| hs.iter().map(|&h| k[h] * phi.at(prs, h).sin()).sum())
        .collect()
}

/// `F^ver` on the selected cut basis `B_m^*`.
pub fn f_ver(graph: &GeometricGraph, m: &MinimalEdges, basis: &MdivBasis, phi: &PhaseFunction, k: &[f64]) -> Vec<f64> {
    let all = f_ver_all(graph, m, phi, k);
    basis.cuts.iter().map(|&v| all[v]).collect()
}

/// Sup-norm of `(F^ver, P^ver)` over all vertex cuts and face cycles.
pub fn phase_residual(graph: &GeometricGraph, m: &MinimalEdges, faces: &[FaceCycle], phi: &PhaseFunction, k: &[f64]) -> f64 {
    f_ver_all(graph, m, phi, k)
        .into_iter()
        .chain(p_ver(graph, faces, phi))
        .map(f64::abs)
        .fold(0.0, f64::max)
}

/// Rows `s K_h cos(phi_h)` per minimal half-edge of each listed cut, then the
/// curl rows; columns are the closed-edge phase coordinates.
fn stacked_jacobian(
    graph: &GeometricGraph,
    m: &MinimalEdges,
    cuts: &[usize],
    faces: &[FaceCycle],
    phi: &PhaseFunction,
    k: &[f64],
) -> DMatrix<f64> {
    let prs = graph.prs();
    let ne = prs.n_closed_edges();
    let curl = curl_matrix(prs, faces);
    let mut j = DMatrix::zeros(cuts.len() + faces.len(), ne);
    for (i, &v) in cuts.iter().enumerate() {
        for &h in &m.per_vertex[v] {
            let e = prs.edge_of(h).unwrap();
            j[(i, e)] += prs.edge_sign(h) * k[h] * phi.at(prs, h).cos();
        }
    }
    j.view_mut((cuts.len(), 0), (faces.len(), ne)).copy_from(&curl);
    j
}

#[derive(Clone, Debug)]
pub struct VerticalJacobian {
    /// `(DF^ver(phi) over B_m^*, DP^ver)`.
    pub matrix: DMatrix<f64>,
    pub rank: usize,
    /// Sliding modes: orthonormal kernel basis as columns.
    pub kernel: DMatrix<f64>,
    pub basis: MdivBasis,
}

impl VerticalJacobian {
    /// Injectivity (full column rank).
    pub fn is_rigid(&self) -> bool {
        self.rank == self.matrix.ncols()
    }
    pub fn kernel_dim(&self) -> usize {
        self.kernel.ncols()
    }
}

pub fn vertical_jacobian(config: &Configuration, phi: &PhaseFunction, k: &[f64]) -> Result<VerticalJacobian> {
    let g = &config.graph;
    let m = minimal_edges(g)?;
    let basis = select_mdiv_basis_with(g, &m);
    let faces = face_cycles(g.prs());
    let matrix = stacked_jacobian(g, &m, &basis.cuts, &faces, phi, k);
    let svd = FullSvd::new(&matrix);
    let rank = if matrix.nrows() == 0 { 0 } else { svd.rank(RANK_TOL) };
    let kernel = if matrix.nrows() == 0 { DMatrix::identity(matrix.ncols(), matrix.ncols()) } else { svd.kernel(RANK_TOL) };
    Ok(VerticalJacobian { matrix, rank, kernel, basis })
}

#[derive(Clone, Debug, Serialize)]
pub struct VerticalRigidity {
    pub rank: usize,
    pub columns: usize,
    pub kernel_dim: usize,
    pub is_rigid: bool,
    /// Sliding modes, one vector of edge phase velocities each.
    pub kernel: Vec<Vec<f64>>,
    pub diagnostics: Vec<String>,
}

/// Vertical rigidity of the configuration's own phases, with `K` at
/// `xi0 + zeta-dot`.
pub fn vertical_rigidity(config: &Configuration) -> Result<VerticalRigidity> {
    let (k, note) = default_k(config);
    let mut r = vertical_rigidity_with(config, &config.phase, &k)?;
    r.diagnostics.extend(note);
    Ok(r)
}

pub fn vertical_rigidity_with(config: &Configuration, phi: &PhaseFunction, k: &[f64]) -> Result<VerticalRigidity> {
    let vj = vertical_jacobian(config, phi, k)?;
    let g = &config.graph;
    let mut diagnostics: Vec<String> = vj.basis.diagnostic.iter().cloned().collect();
    let nf = g.n_faces();
    let upper = g.n_vertices() + nf;
    if vj.rank + 1 < upper || vj.rank > vj.matrix.ncols() {
        diagnostics.push(format!("vertical rank {} outside [|V|+|F|-1, |E|-|R|] = [{}, {}]", vj.rank, upper - 1, vj.matrix.ncols()));
    }
    Ok(VerticalRigidity {
        rank: vj.rank,
        columns: vj.matrix.ncols(),
        kernel_dim: vj.kernel_dim(),
        is_rigid: vj.is_rigid(),
        kernel: (0..vj.kernel_dim()).map(|c| vj.kernel.column(c).iter().copied().collect()).collect(),
        diagnostics,
    })
}

/// `phi_h = phi_{v(-h)} - phi_{v(h)}` for a vertex potential.
pub fn potential_to_phase(graph: &GeometricGraph, potential: &[f64]) -> PhaseFunction {
    let prs = graph.prs();
    PhaseFunction::from_edge_values(
        prs.edge_reps()
            .iter()
            .map(|&h| potential[prs.vertex_of(prs.iota(h))] - potential[prs.vertex_of(h)])
            .collect(),
    )
}

/// `(x-dot, theta-dot) -> (x-dot + lambda x0, theta-dot + arg lambda)`.
pub fn gauge_transform(graph: &GeometricGraph, chi_dot: &DeformationVector, lambda: Complex64) -> DeformationVector {
    let prs = graph.prs();
    let arg = if lambda == Complex64::new(0.0, 0.0) { 0.0 } else { lambda.arg() };
    DeformationVector {
        x: chi_dot.x.iter().zip(prs.edge_reps()).map(|(&x, &h)| x + lambda * graph.x(h)).collect(),
        theta: chi_dot.theta.iter().map(|t| t + arg).collect(),
    }
}

/// Tree in the sense of having no cycle of length > 2: after merging
/// parallel closed edges the graph is a tree.
pub fn is_tree(graph: &GeometricGraph) -> bool {
    parallel_classes(graph).closed.len() + 1 == graph.n_vertices()
}

#[derive(Clone, Debug)]
pub struct PhaseSolution {
    pub phase: PhaseFunction,
    pub trivial: bool,
    pub residual: f64,
    pub vertically_rigid: bool,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug)]
pub struct PhaseSolutions {
    pub tree: bool,
    pub solutions: Vec<PhaseSolution>,
    pub diagnostics: Vec<String>,
}

fn snap_trivial(phi: &PhaseFunction) -> PhaseFunction {
    PhaseFunction::from_edge_values(
        phi.edge_values()
            .iter()
            .map(|&p| if p.abs() <= 1e-9 { 0.0 } else if (p.abs() - PI).abs() <= 1e-9 { PI } else { p })
            .collect(),
    )
}

/// Trivial assignments: per parallel class on trees, otherwise all
/// `{0, pi}`-valued vertex potentials (or only `phi = 0` on large graphs).
pub fn trivial_phases(graph: &GeometricGraph) -> (Vec<PhaseFunction>, Option<String>) {
    let ne = graph.n_closed_edges();
    if is_tree(graph) {
        let classes = parallel_classes(graph).closed;
        let out = (0..1usize << classes.len())
            .map(|mask| {
                let mut vals = vec![0.0; ne];
                for (i, c) in classes.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        for &e in c {
                            vals[e] = PI;
                        }
                    }
                }
                PhaseFunction::from_edge_values(vals)
            })
            .collect();
        return (out, None);
    }
    let nv = graph.n_vertices();
    if nv > MAX_TRIVIAL_ENUM_VERTICES {
        return (
            vec![PhaseFunction::zeros(graph)],
            Some(format!("{nv} vertices: only phi = 0 enumerated among trivial phases")),
        );
    }
    let mut out: Vec<PhaseFunction> = Vec::new();
    for mask in 0..1usize << (nv - 1) {
        let pot: Vec<f64> = (0..nv).map(|v| if v > 0 && mask >> (v - 1) & 1 == 1 { PI } else { 0.0 }).collect();
        let phi = potential_to_phase(graph, &pot);
        if !out.iter().any(|p| p.distance(&phi) < DEDUP_TOL) {
            out.push(phi);
        }
    }
    (out, None)
}

/// Seeds for the Newton sweep: `+-pi/2` and `+-2pi/3` around each face cycle,
/// then `RANDOM_SEEDS` uniform draws.
fn newton_seeds(graph: &GeometricGraph, faces: &[FaceCycle], seed: u64) -> Vec<PhaseFunction> {
    let prs = graph.prs();
    let ne = graph.n_closed_edges();
    let mut out = Vec::new();
    for c in faces {
        for a in [PI / 2.0, -PI / 2.0, 2.0 * PI / 3.0, -2.0 * PI / 3.0] {
            let mut vals = vec![0.0; ne];
            for &h in c.half_edges() {
                vals[prs.edge_of(h).unwrap()] = prs.edge_sign(h) * a;
            }
            out.push(PhaseFunction::from_edge_values(vals));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_SEEDS {
        out.push(PhaseFunction::from_edge_values((0..ne).map(|_| rng.random_range(-PI..PI)).collect()));
    }
    out
}

fn phase_newton(
    graph: &GeometricGraph,
    m: &MinimalEdges,
    faces: &[FaceCycle],
    k: &[f64],
    start: PhaseFunction,
) -> Option<(PhaseFunction, f64)> {
    let all: Vec<usize> = (0..graph.n_vertices()).collect();
    let resid = |phi: &PhaseFunction| -> DVector<f64> {
        let mut v = f_ver_all(graph, m, phi, k);
        v.extend(p_ver(graph, faces, phi));
        DVector::from_vec(v)
    };
    let mut phi = start;
    let mut r = resid(&phi);
    for _ in 0..100 {
        if r.amax() < PHASE_TOL {
            return Some((phi, r.amax()));
        }
        let j = stacked_jacobian(graph, m, &all, faces, &phi, k);
        let step = min_norm_solve(&j, &(-&r), RANK_TOL);
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..20 {
            let vals: Vec<f64> = phi.edge_values().iter().zip(step.iter()).map(|(p, s)| p + t * s).collect();
            let cand = PhaseFunction::from_edge_values(vals);
            let rc = resid(&cand);
            if rc.norm() < r.norm() {
                phi = cand;
                r = rc;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (r.amax() < PHASE_TOL).then_some((phi, r.amax()))
}

pub const PHASE_SEED: u64 = 0x9a5e;

/// Balanced phase functions: exactly the trivial class assignments on trees,
/// otherwise the trivial ones plus every distinct root reached by Newton from
/// the seed sweep.
pub fn solve_phases(config: &Configuration, k: &[f64], seed: u64) -> Result<PhaseSolutions> {
    let g = &config.graph;
    let m = minimal_edges(g)?;
    let faces = face_cycles(g.prs());
    let (trivial, note) = trivial_phases(g);
    let tree = is_tree(g);
    let mut found: Vec<(PhaseFunction, f64)> = Vec::new();
    for phi in trivial {
        let r = phase_residual(g, &m, &faces, &phi, k);
        found.push((phi, r));
    }
    if !tree {
        for s in newton_seeds(g, &faces, seed) {
            if let Some((phi, r)) = phase_newton(g, &m, &faces, k, s) {
                let phi = snap_trivial(&phi);
                if !found.iter().any(|(p, _)| p.distance(&phi) < DEDUP_TOL) {
                    found.push((phi, r));
                }
            }
        }
    }
    let solutions = found
        .into_iter()
        .map(|(phase, residual)| {
            let vr = vertical_rigidity_with(config, &phase, k)?;
            Ok(PhaseSolution {
                trivial: phase.is_trivial(),
                phase,
                residual,
                vertically_rigid: vr.is_rigid,
                kernel_dim: vr.kernel_dim,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhaseSolutions { tree, solutions, diagnostics: note.into_iter().collect() })
}

/// Fails with `PhaseNotBalanced` when the configuration's phases violate the
/// vertical balance or period conditions.
pub fn check_phase_balanced(config: &Configuration, k: &[f64]) -> Result<f64> {
    let g = &config.graph;
    let m = minimal_edges(g)?;
    let faces = face_cycles(g.prs());
    let r = phase_residual(g, &m, &faces, &config.phase, k);
    if r > PHASE_CHECK_TOL {
        Err(Error::PhaseNotBalanced(r))
    } else {
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::GraphBuilder;
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tree1() -> GeometricGraph {
        let mut b = GraphBuilder::new();
        let v0 = b.vertex(c(0.0, 0.0));
        let v1 = b.vertex(c(1.0, 0.0));
        b.edge(v0, v1);
        for (v, out) in [(v0, PI), (v1, 0.0)] {
            b.ray(v, FRAC_PI_2);
            b.ray(v, out);
            b.ray(v, 3.0 * FRAC_PI_2);
        }
        b.build().unwrap()
    }

    fn triangle() -> GeometricGraph {
        let p = [c(0.0, 0.0), c(1.0, 0.0), c(0.5, 3f64.sqrt() / 2.0)];
        let mut b = GraphBuilder::new();
        for &z in &p {
            b.vertex(z);
        }
        for i in 0..3 {
            b.edge(i, (i + 1) % 3);
        }
        for i in 0..3 {
            for j in [(i + 1) % 3, (i + 2) % 3] {
                b.ray(i, (p[i] - p[j]).arg());
            }
        }
        b.build().unwrap()
    }

    #[test]
    fn k_values_basic() {
        let cfg = Configuration::new(tree1());
        let zero = DeformationVector::zeros(&cfg.graph);
        assert!(k_values(&cfg, &zero).iter().take(2).all(|&k| k == 1.0));
        let mut stretch = zero.clone();
        stretch.x[0] = cfg.graph.unit(0);
        let k = k_values(&cfg, &stretch);
        assert!((k[0] - (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(k[0], k[1]);
    }

    #[test]
    fn p_ver_examples() {
        let g = triangle();
        let faces = face_cycles(g.prs());
        let f = &faces[0];
        let on_cycle = |a: f64| {
            let mut vals = vec![0.0; 3];
            for &h in f.half_edges() {
                vals[g.prs().edge_of(h).unwrap()] = g.prs().edge_sign(h) * a;
            }
            PhaseFunction::from_edge_values(vals)
        };
        assert_eq!(p_ver(&g, &faces, &PhaseFunction::zeros(&g))[0], 0.0);
        assert!(p_ver(&g, &faces, &on_cycle(2.0 * PI / 3.0))[0].abs() < 1e-12);
        assert!((p_ver(&g, &faces, &on_cycle(FRAC_PI_2))[0] + FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn tree1_phases_are_zero_and_pi() {
        let cfg = Configuration::new(tree1());
        let k = vec![1.0; cfg.prs().n_half_edges()];
        let sols = solve_phases(&cfg, &k, PHASE_SEED).unwrap();
        assert!(sols.tree);
        let vals: Vec<f64> = sols.solutions.iter().map(|s| s.phase.edge_values()[0]).collect();
        assert_eq!(vals, vec![0.0, PI]);
        assert!(sols.solutions.iter().all(|s| s.vertically_rigid));
    }

    #[test]
    fn tree1_quarter_phase_is_unbalanced() {
        let g = tree1();
        let m = minimal_edges(&g).unwrap();
        let k = vec![1.0; g.prs().n_half_edges()];
        let f = f_ver_all(&g, &m, &PhaseFunction::from_edge_values(vec![FRAC_PI_2]), &k);
        assert!((f[0].abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn equilateral_triangle_has_nontrivial_phases() {
        let cfg = Configuration::new(triangle());
        let k = vec![1.0; cfg.prs().n_half_edges()];
        let sols = solve_phases(&cfg, &k, PHASE_SEED).unwrap();
        assert!(!sols.tree);
        assert!(sols.solutions.iter().any(|s| !s.trivial));
        for s in &sols.solutions {
            assert!(s.residual < PHASE_TOL);
        }
    }

    #[test]
    fn potentials_close_up() {
        let g = triangle();
        let faces = face_cycles(g.prs());
        let phi = potential_to_phase(&g, &[0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0]);
        assert!(p_ver(&g, &faces, &phi)[0].abs() < 1e-12);
        let shifted = potential_to_phase(&g, &[1.0, 1.0 + 2.0 * PI / 3.0, 1.0 + 4.0 * PI / 3.0]);
        assert!(phi.distance(&shifted) < 1e-12);
        assert_eq!(potential_to_phase(&tree1(), &[0.0, PI]).edge_values(), &[PI]);
    }

    #[test]
    fn gauge_by_zero_is_identity() {
        let g = tree1();
        let v = DeformationVector { x: vec![c(0.1, 0.2)], theta: vec![0.3; 6] };
        assert_eq!(gauge_transform(&g, &v, c(0.0, 0.0)), v);
    }
}
