//! Horizontal forces and periods, rigidity, the deformation space `D`, the
//! first-order and flat-order linear systems, continuation of the analytic
//! system, and the constructive rigidity certificate.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{Configuration, DeformationVector};
use crate::discrete::{face_cycles, minimal_edges, FaceCycle, MinimalEdges};
use crate::error::{Error, Result};
use crate::geom::{collinear_directions, cross};
use crate::linalg::{min_norm_solve, numerical_rank, spectral_norm, FullSvd, RANK_TOL};
use crate::model::{classify_vertex, has_identical_images, orientation, GeometricGraph, VertexClass};

/// Tolerance on `|F^hor(chi0)|` for a graph to count as balanced.
pub const BALANCE_TOL: f64 = 1e-9;
/// Newton stops once the sup-norm residual drops below this.
pub const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 50;
const NEWTON_MAX_HALVINGS: usize = 20;

/// `u_eta(chi)` on every half-edge.
pub fn u_of_chi(graph: &GeometricGraph, chi: &DeformationVector) -> Result<Vec<Complex64>> {
    let prs = graph.prs();
    (0..prs.n_half_edges())
        .map(|h| {
            if prs.is_ray(h) {
                Ok(Complex64::from_polar(1.0, chi.theta_of_ray(prs, h)))
            } else {
                let x = chi.x_at(prs, h);
                let l = x.norm();
                if l == 0.0 || !l.is_finite() {
                    Err(Error::ZeroLengthEdge(h))
                } else {
                    Ok(x / l)
                }
            }
        })
        .collect()
}

/// `F^hor_v(chi) = sum_{eta in v} u_eta(chi)`.
pub fn f_hor(graph: &GeometricGraph, chi: &DeformationVector) -> Result<Vec<Complex64>> {
    let u = u_of_chi(graph, chi)?;
    Ok(crate::discrete::div_all(graph.prs(), &u))
}

/// `P^hor_c(chi) = sum_{h in c} x_h`.
pub fn p_hor(graph: &GeometricGraph, faces: &[FaceCycle], chi: &DeformationVector) -> Vec<Complex64> {
    let prs = graph.prs();
    faces
        .iter()
        .map(|c| c.half_edges().iter().map(|&h| chi.x_at(prs, h)).sum())
        .collect()
}

fn push_complex(out: &mut Vec<f64>, zs: &[Complex64]) {
    for z in zs {
        out.push(z.re);
        out.push(z.im);
    }
}

/// Stacked real residual `[F^hor; P^hor]`.
pub fn residual(graph: &GeometricGraph, faces: &[FaceCycle], chi: &DeformationVector) -> Result<DVector<f64>> {
    let mut out = Vec::new();
    push_complex(&mut out, &f_hor(graph, chi)?);
    push_complex(&mut out, &p_hor(graph, faces, chi));
    Ok(DVector::from_vec(out))
}

/// Analytic derivative of `(F^hor, P^hor)` at `chi`, rows `2|V| + 2|F|`,
/// columns in `DeformationVector` coordinates.
pub fn jacobian_at(graph: &GeometricGraph, faces: &[FaceCycle], chi: &DeformationVector) -> Result<DMatrix<f64>> {
    let prs = graph.prs();
    let nv = prs.n_vertices();
    let ne = prs.n_closed_edges();
    let mut j = DMatrix::zeros(2 * nv + 2 * faces.len(), 2 * ne + prs.n_rays());
    for v in 0..nv {
        let (r0, r1) = (2 * v, 2 * v + 1);
        for &h in prs.vertex(v) {
            if let Some(k) = prs.ray_index(h) {
                let u = Complex64::from_polar(1.0, chi.theta[k]);
                j[(r0, 2 * ne + k)] += -u.im;
                j[(r1, 2 * ne + k)] += u.re;
            } else {
                let x = chi.x_at(prs, h);
                let l = x.norm();
                if l == 0.0 {
                    return Err(Error::ZeroLengthEdge(h));
                }
                let u = x / l;
                let s = prs.edge_sign(h) / l;
                let e = prs.edge_of(h).unwrap();
                j[(r0, 2 * e)] += s * (1.0 - u.re * u.re);
                j[(r0, 2 * e + 1)] += -s * u.re * u.im;
                j[(r1, 2 * e)] += -s * u.re * u.im;
                j[(r1, 2 * e + 1)] += s * (1.0 - u.im * u.im);
            }
        }
    }
    for (i, c) in faces.iter().enumerate() {
        let (r0, r1) = (2 * nv + 2 * i, 2 * nv + 2 * i + 1);
        for &h in c.half_edges() {
            let e = prs.edge_of(h).unwrap();
            let s = prs.edge_sign(h);
            j[(r0, 2 * e)] += s;
            j[(r1, 2 * e + 1)] += s;
        }
    }
    Ok(j)
}

/// `(DF^hor(chi0), P^hor)` with its rank and kernel.
#[derive(Clone, Debug)]
pub struct HorizontalJacobian {
    pub matrix: DMatrix<f64>,
    pub rank: usize,
    /// Orthonormal basis of `D` as columns.
    pub kernel: DMatrix<f64>,
    /// Orthonormal basis of `D^perp` as columns.
    pub row_space: DMatrix<f64>,
    pub faces: Vec<FaceCycle>,
}

impl HorizontalJacobian {
    pub fn expected_rank(&self) -> usize {
        self.matrix.nrows()
    }
    pub fn is_surjective(&self) -> bool {
        self.rank == self.matrix.nrows()
    }
}

pub fn jacobian(graph: &GeometricGraph) -> HorizontalJacobian {
    let faces = face_cycles(graph.prs());
    let chi0 = DeformationVector::center(graph);
    let matrix = jacobian_at(graph, &faces, &chi0).expect("validated graphs have positive edge lengths");
    let svd = FullSvd::new(&matrix);
    let rank = svd.rank(RANK_TOL);
    HorizontalJacobian {
        kernel: svd.kernel(RANK_TOL),
        row_space: svd.row_space(RANK_TOL),
        matrix,
        rank,
        faces,
    }
}

/// Sup-norm of `F^hor(chi0)`.
pub fn balance_residual(graph: &GeometricGraph) -> f64 {
    f_hor(graph, &DeformationVector::center(graph))
        .expect("validated graphs have positive edge lengths")
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

pub fn is_balanced(graph: &GeometricGraph) -> bool {
    balance_residual(graph) <= BALANCE_TOL
}

#[derive(Clone, Debug)]
pub struct DeformationSpace {
    /// Orthonormal basis of `D` as columns.
    pub basis: DMatrix<f64>,
    pub dim: usize,
}

impl DeformationSpace {
    pub fn vectors(&self, graph: &GeometricGraph) -> Vec<DeformationVector> {
        (0..self.dim)
            .map(|k| DeformationVector::from_coords(graph, &self.basis.column(k).into_owned()))
            .collect()
    }

    /// Orthogonal projection of `v` onto `D`.
    pub fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.basis * (self.basis.transpose() * v)
    }
}

pub fn deformation_space(graph: &GeometricGraph) -> DeformationSpace {
    let j = jacobian(graph);
    DeformationSpace { dim: j.kernel.ncols(), basis: j.kernel }
}

/// Surjectivity of `(DF^hor(chi0), P^hor)` onto `R^{2|V|+2|F|}`.
pub fn is_rigid(graph: &GeometricGraph) -> bool {
    jacobian(graph).is_surjective()
}

/// Scaling `(x0, 0)`.
pub fn scaling_vector(graph: &GeometricGraph) -> DeformationVector {
    let mut v = DeformationVector::center(graph);
    v.theta.iter_mut().for_each(|t| *t = 0.0);
    v
}

/// Rotation `(i x0, 1)`.
pub fn rotation_vector(graph: &GeometricGraph) -> DeformationVector {
    let mut v = DeformationVector::center(graph);
    v.x.iter_mut().for_each(|z| *z *= Complex64::i());
    v.theta.iter_mut().for_each(|t| *t = 1.0);
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct TrivialDeformations {
    pub scaling_residual: f64,
    pub rotation_residual: f64,
    pub contained: bool,
}

/// Residuals `|J v|` of the scaling and rotation vectors.
pub fn contains_trivial_deformations(graph: &GeometricGraph) -> TrivialDeformations {
    let j = jacobian(graph);
    let s = (&j.matrix * scaling_vector(graph).to_coords()).norm();
    let r = (&j.matrix * rotation_vector(graph).to_coords()).norm();
    TrivialDeformations { scaling_residual: s, rotation_residual: r, contained: s < 1e-9 && r < 1e-9 }
}

fn require_balanced_rigid(graph: &GeometricGraph) -> Result<HorizontalJacobian> {
    let res = balance_residual(graph);
    if res > BALANCE_TOL {
        return Err(Error::NotBalanced(res));
    }
    let j = jacobian(graph);
    if !j.is_surjective() {
        return Err(Error::NotRigid { rank: j.rank, expected: j.expected_rank() });
    }
    Ok(j)
}

/// Minimum-norm solution of `J zeta = rhs`; lies in `D^perp`.
fn solve_in_d_perp(graph: &GeometricGraph, j: &HorizontalJacobian, rhs: &DVector<f64>) -> DeformationVector {
    DeformationVector::from_coords(graph, &min_norm_solve(&j.matrix, rhs, RANK_TOL))
}

/// Right-hand side `[0; -P^hor(mu^a)]` of the first-order system.
pub fn zeta_dot_rhs(config: &Configuration, faces: &[FaceCycle]) -> DVector<f64> {
    let nv = config.graph.n_vertices();
    let p = p_hor(&config.graph, faces, &config.mu_antisym_vector());
    let mut b = DVector::zeros(2 * nv + 2 * faces.len());
    for (i, z) in p.iter().enumerate() {
        b[2 * nv + 2 * i] = -z.re;
        b[2 * nv + 2 * i + 1] = -z.im;
    }
    b
}

/// `zeta-dot`: the solution in `D^perp` of `P^hor(zeta) = -P^hor(mu^a)`,
/// `DF^hor(chi0) zeta = 0`.
pub fn solve_zeta_dot(config: &Configuration) -> Result<DeformationVector> {
    let j = require_balanced_rigid(&config.graph)?;
    let b = zeta_dot_rhs(config, &j.faces);
    Ok(solve_in_d_perp(&config.graph, &j, &b))
}

/// Right-hand side of the flat-order system for coupling coefficients `k`
/// (one per half-edge).
pub fn zeta_hat_rhs(config: &Configuration, faces: &[FaceCycle], m: &MinimalEdges, k: &[f64]) -> DVector<f64> {
    let g = &config.graph;
    let prs = g.prs();
    let nv = g.n_vertices();
    let mut b = DVector::zeros(2 * nv + 2 * faces.len());
    let weight = |h: usize| k[h] * config.phase.at(prs, h).cos();
    for &h in &m.global {
        let v = prs.vertex_of(h);
        let z = g.unit(h) * weight(h);
        b[2 * v] -= z.re;
        b[2 * v + 1] -= z.im;
    }
    for (i, c) in faces.iter().enumerate() {
        for &h in c.half_edges() {
            if m.global.contains(&h) {
                let z = g.x(h) * weight(h);
                b[2 * nv + 2 * i] -= z.re;
                b[2 * nv + 2 * i + 1] -= z.im;
            }
        }
    }
    b
}

/// `zeta-hat` for given coupling coefficients `k` (one per half-edge).
pub fn solve_zeta_hat_with(config: &Configuration, k: &[f64]) -> Result<DeformationVector> {
    let j = require_balanced_rigid(&config.graph)?;
    let m = minimal_edges(&config.graph)?;
    let b = zeta_hat_rhs(config, &j.faces, &m, k);
    Ok(solve_in_d_perp(&config.graph, &j, &b))
}

/// `zeta-hat` with `K_h` evaluated at `chi-dot = xi0 + zeta-dot`.
pub fn solve_zeta_hat(config: &Configuration) -> Result<DeformationVector> {
    let zd = solve_zeta_dot(config)?;
    let chi_dot = &config.xi + &zd;
    let k = crate::vertical::k_values(config, &chi_dot);
    solve_zeta_hat_with(config, &k)
}

/// Outcome of continuing the analytic system to a given `eps`.
#[derive(Clone, Debug)]
pub struct Continuation {
    pub eps: f64,
    /// `chi-tilde(eps) = chi0 + eps^2 xi + zeta-tilde` (absolute).
    pub chi: DeformationVector,
    /// `zeta-tilde(eps)`, in `D^perp`.
    pub zeta: DeformationVector,
    pub residual: f64,
    pub iterations: usize,
}

/// Solves `P^hor(zeta) = -eps^2 P^hor(mu^a)`, `F^hor(chi0 + eps^2 xi + zeta) = 0`
/// for `zeta` in `D^perp` by damped Newton from `eps^2 zeta-dot`.
pub fn continuation_solve(config: &Configuration, eps: f64) -> Result<Continuation> {
    continuation_solve_with(config, eps, &config.xi)
}

pub fn continuation_solve_with(config: &Configuration, eps: f64, xi: &DeformationVector) -> Result<Continuation> {
    let g = &config.graph;
    let j = require_balanced_rigid(g)?;
    let chi0 = DeformationVector::center(g);
    if eps == 0.0 {
        return Ok(Continuation { eps, zeta: DeformationVector::zeros(g), chi: chi0, residual: 0.0, iterations: 0 });
    }
    let e2 = eps * eps;
    let q = &j.row_space;
    let base = chi0.to_coords() + xi.to_coords() * e2;
    let p_mu = p_hor(g, &j.faces, &config.mu_antisym_vector());

    let eval = |y: &DVector<f64>| -> Result<DVector<f64>> {
        let zeta = q * y;
        let chi = DeformationVector::from_coords(g, &(&base + &zeta));
        let mut out = Vec::new();
        push_complex(&mut out, &f_hor(g, &chi)?);
        let p = p_hor(g, &j.faces, &DeformationVector::from_coords(g, &zeta));
        let forced: Vec<Complex64> = p.iter().zip(&p_mu).map(|(a, b)| a + b * e2).collect();
        push_complex(&mut out, &forced);
        Ok(DVector::from_vec(out))
    };
    let sup = |r: &DVector<f64>| r.amax();

    let zd = solve_zeta_dot(config)?;
    let mut y = q.transpose() * zd.to_coords() * e2;
    let mut r = eval(&y)?;
    let mut iterations = 0;
    while sup(&r) >= NEWTON_TOL {
        if iterations >= NEWTON_MAX_ITER {
            return Err(Error::NewtonDivergence { eps, residual: sup(&r) });
        }
        iterations += 1;
        let chi = DeformationVector::from_coords(g, &(&base + q * &y));
        let jq = jacobian_at(g, &j.faces, &chi)? * q;
        let step = match jq.clone().lu().solve(&(-&r)) {
            Some(s) if s.iter().all(|x| x.is_finite()) => s,
            _ => min_norm_solve(&jq, &(-&r), RANK_TOL),
        };
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..=NEWTON_MAX_HALVINGS {
            let cand = &y + &step * t;
            if let Ok(rc) = eval(&cand) {
                if sup(&rc) < sup(&r) {
                    accepted = Some((cand, rc));
                    break;
                }
            }
            t *= 0.5;
        }
        match accepted {
            Some((cand, rc)) => {
                y = cand;
                r = rc;
            }
            None => return Err(Error::NewtonDivergence { eps, residual: sup(&r) }),
        }
    }
    let zeta = DeformationVector::from_coords(g, &(q * &y));
    let chi = DeformationVector::from_coords(g, &(&base + q * &y));
    Ok(Continuation { eps, chi, zeta, residual: sup(&r), iterations })
}

/// Direction angle of every half-edge under `chi` (absolute coordinates).
pub fn half_edge_angles(graph: &GeometricGraph, chi: &DeformationVector) -> Vec<f64> {
    let prs = graph.prs();
    (0..prs.n_half_edges())
        .map(|h| if prs.is_ray(h) { chi.theta_of_ray(prs, h) } else { chi.x_at(prs, h).arg() })
        .collect()
}

/// Constructive proof of horizontal rigidity: a square block-triangular
/// submatrix of the Jacobian with invertible `2 x 2` diagonal blocks.
#[derive(Clone, Debug, Serialize)]
pub struct RigidityCertificate {
    /// Generic rotation applied before sorting by real part.
    pub rotation: f64,
    /// Vertices sorted left to right in the rotated frame.
    pub vertex_order: Vec<usize>,
    /// Two left-pointing half-edges per vertex (rotation variables).
    pub vertex_edges: Vec<(usize, usize)>,
    /// Peeling order of the faces.
    pub face_order: Vec<usize>,
    /// Two closed half-edges per face (length variables).
    pub face_edges: Vec<(usize, usize)>,
    /// Smallest `|det|` among the diagonal blocks.
    pub min_block_det: f64,
    /// Largest entry in the blocks required to vanish.
    pub off_block_max: f64,
}

/// Checks the hypotheses under which the certificate applies.
pub fn certificate_preconditions(graph: &GeometricGraph) -> Result<()> {
    if orientation(graph).is_none() {
        return Err(Error::PreconditionViolated("graph is not orientable".into()));
    }
    let res = balance_residual(graph);
    if res > BALANCE_TOL {
        return Err(Error::PreconditionViolated(format!("graph is not balanced (residual {res:e})")));
    }
    if has_identical_images(graph) {
        return Err(Error::PreconditionViolated("graph has parallel edges".into()));
    }
    if let Some(v) = (0..graph.n_vertices()).find(|&v| classify_vertex(graph, v) != VertexClass::Ordinary) {
        return Err(Error::PreconditionViolated(format!("vertex {v} is not ordinary")));
    }
    Ok(())
}

pub const CERTIFICATE_SEED: u64 = 0x5add1e;

pub fn certify_rigidity_simple(graph: &GeometricGraph) -> Result<RigidityCertificate> {
    certify_rigidity_simple_seeded(graph, CERTIFICATE_SEED)
}

pub fn certify_rigidity_simple_seeded(graph: &GeometricGraph, seed: u64) -> Result<RigidityCertificate> {
    certificate_preconditions(graph)?;
    let prs = graph.prs();
    let n = prs.n_half_edges();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rotation = None;
    for _ in 0..8 {
        let a: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let rot = Complex64::from_polar(1.0, a);
        if (0..n).all(|h| (graph.unit(h) * rot).re.abs() > 1e-12) {
            rotation = Some(a);
            break;
        }
    }
    let rotation = rotation.ok_or_else(|| Error::PreconditionViolated("no generic rotation found".into()))?;
    let rot = Complex64::from_polar(1.0, rotation);
    let re_pos = |v: usize| (graph.position(v) * rot).re;
    let dir = |h: usize| graph.unit(h) * rot;

    let mut vertex_order: Vec<usize> = (0..graph.n_vertices()).collect();
    vertex_order.sort_by(|&a, &b| re_pos(a).total_cmp(&re_pos(b)));

    let mut vertex_edges = Vec::new();
    for &v in &vertex_order {
        let left: Vec<usize> = prs.vertex(v).iter().copied().filter(|&h| dir(h).re < 0.0).collect();
        let mut best: Option<(usize, usize, f64)> = None;
        for (i, &a) in left.iter().enumerate() {
            for &b in &left[i + 1..] {
                let d = cross(graph.unit(a), graph.unit(b)).abs();
                if d > 1e-9 && best.is_none_or(|(_, _, bd)| d > bd) {
                    best = Some((a, b, d));
                }
            }
        }
        let (a, b, _) = best.ok_or(Error::LeftEdgeLemmaFailure(v))?;
        vertex_edges.push((a, b));
    }

    // Peel faces from the outside: each face takes two non-parallel edges that
    // no other remaining face contains.
    let faces = face_cycles(prs);
    let leftmost = |c: &FaceCycle| {
        c.half_edges().iter().map(|&h| re_pos(prs.vertex_of(h))).fold(f64::INFINITY, f64::min)
    };
    let mut remaining: Vec<usize> = (0..faces.len()).collect();
    remaining.sort_by(|&a, &b| leftmost(&faces[a]).total_cmp(&leftmost(&faces[b])));
    let mut face_order = Vec::new();
    let mut face_edges = Vec::new();
    while !remaining.is_empty() {
        let mut picked = None;
        'faces: for (pos, &f) in remaining.iter().enumerate() {
            let own: Vec<usize> = faces[f]
                .half_edges()
                .iter()
                .copied()
                .filter(|&h| {
                    let e = prs.edge_of(h);
                    !remaining
                        .iter()
                        .any(|&o| o != f && faces[o].half_edges().iter().any(|&k| prs.edge_of(k) == e))
                })
                .collect();
            for (i, &a) in own.iter().enumerate() {
                for &b in &own[i + 1..] {
                    if !collinear_directions(graph.theta(a), graph.theta(b)) {
                        picked = Some((pos, f, a, b));
                        break 'faces;
                    }
                }
            }
        }
        let (pos, f, a, b) = picked.ok_or_else(|| {
            Error::PreconditionViolated("faces cannot be peeled into a triangular order".into())
        })?;
        remaining.remove(pos);
        face_order.push(f);
        face_edges.push((a, b));
    }

    // Re-verify numerically on the Jacobian in (l-dot, theta-dot) variables.
    let j = jacobian(graph);
    let nv = graph.n_vertices();
    let ne = graph.n_closed_edges();
    let theta_col = |h: usize| -> DVector<f64> {
        let mut t = DVector::zeros(DeformationVector::dim_for(graph));
        match prs.ray_index(h) {
            Some(k) => t[2 * ne + k] = 1.0,
            None => {
                // x-dot = i l theta-dot u on the representative.
                let e = prs.edge_of(h).unwrap();
                let rep = prs.edge_reps()[e];
                let z = Complex64::i() * graph.x(rep);
                t[2 * e] = z.re;
                t[2 * e + 1] = z.im;
            }
        }
        &j.matrix * t
    };
    let length_col = |h: usize| -> DVector<f64> {
        let e = prs.edge_of(h).unwrap();
        let u = graph.unit(prs.edge_reps()[e]);
        let mut t = DVector::zeros(DeformationVector::dim_for(graph));
        t[2 * e] = u.re;
        t[2 * e + 1] = u.im;
        &j.matrix * t
    };
    let size = 2 * nv + 2 * faces.len();
    let mut cols: Vec<DVector<f64>> = Vec::with_capacity(size);
    for &(a, b) in &vertex_edges {
        cols.push(theta_col(a));
        cols.push(theta_col(b));
    }
    for &(a, b) in &face_edges {
        cols.push(length_col(a));
        cols.push(length_col(b));
    }
    // Row order: vertices in sweep order, then faces in peeling order.
    let mut rows = Vec::with_capacity(size);
    for &v in &vertex_order {
        rows.extend([2 * v, 2 * v + 1]);
    }
    for &f in &face_order {
        rows.extend([2 * nv + 2 * f, 2 * nv + 2 * f + 1]);
    }
    let s = DMatrix::from_fn(size, size, |r, c| cols[c][rows[r]]);
    let scale = spectral_norm(&j.matrix).max(1.0);

    // Both diagonal parts are block upper triangular: an edge chosen by a
    // vertex (face) also enters earlier vertices (faces) only. The force rows
    // ignore lengths, so the force-by-length part vanishes entirely.
    let nvb = nv;
    let blocks = nvb + faces.len();
    let mut off_block_max = 0.0_f64;
    let mut min_block_det = f64::INFINITY;
    for bi in 0..blocks {
        for bj in 0..blocks {
            let blk = s.view((2 * bi, 2 * bj), (2, 2));
            let same_part = (bi < nvb) == (bj < nvb);
            let must_vanish = if same_part { bi > bj } else { bi < nvb };
            if bi == bj {
                let det = blk[(0, 0)] * blk[(1, 1)] - blk[(0, 1)] * blk[(1, 0)];
                min_block_det = min_block_det.min(det.abs());
            } else if must_vanish {
                off_block_max = off_block_max.max(blk.amax());
            }
        }
    }
    let tol = 1e-12 * scale;
    if off_block_max > tol || min_block_det <= 1e-9 * scale * scale || numerical_rank(&s, RANK_TOL) < size {
        return Err(Error::PreconditionViolated(format!(
            "certificate check failed (off-block {off_block_max:e}, min det {min_block_det:e})"
        )));
    }
    Ok(RigidityCertificate {
        rotation,
        vertex_order,
        vertex_edges,
        face_order,
        face_edges,
        min_block_det,
        off_block_max,
    })
}
