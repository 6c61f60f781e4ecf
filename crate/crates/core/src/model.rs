//! Combinatorial skeleton (pseudo rotation system) and its planar geometric
//! representation.

use std::collections::{BTreeMap, VecDeque};

use num_complex::Complex64;
use serde::Serialize;

use crate::discrete;
use crate::error::{Error, Result};
use crate::geom::{collinear_directions, cross, dot, unit, wrap_2pi, wrap_pi, ANGLE_TOL, POS_TOL};

/// Half-edges `0..n` with an involution `iota` (fixed points are rays) and a
/// rotation `sigma` whose orbits are the vertices.
///
/// Vertices are numbered densely; closed edges are numbered by increasing
/// representative half-edge `min(h, iota(h))`, rays by increasing half-edge.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoRotationSystem {
    iota: Vec<usize>,
    sigma: Vec<usize>,
    vertex_of: Vec<usize>,
    vertices: Vec<Vec<usize>>,
    edge_of: Vec<Option<usize>>,
    edge_reps: Vec<usize>,
    ray_of: Vec<Option<usize>>,
    rays: Vec<usize>,
}

fn check_permutation(p: &[usize], name: &'static str) -> Result<()> {
    let n = p.len();
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || seen[x] {
            return Err(Error::NotPermutation { name, n });
        }
        seen[x] = true;
    }
    Ok(())
}

impl PseudoRotationSystem {
    /// Builds the system, numbering vertices by their smallest half-edge.
    pub fn new(iota: Vec<usize>, sigma: Vec<usize>) -> Result<Self> {
        Self::build(iota, sigma, None)
    }

    /// Builds the system with a prescribed dense vertex labelling, which must
    /// be constant exactly on the orbits of `sigma`.
    pub fn with_vertex_labels(iota: Vec<usize>, sigma: Vec<usize>, labels: Vec<usize>) -> Result<Self> {
        Self::build(iota, sigma, Some(labels))
    }

    fn build(iota: Vec<usize>, sigma: Vec<usize>, labels: Option<Vec<usize>>) -> Result<Self> {
        let n = iota.len();
        if sigma.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: sigma.len() });
        }
        check_permutation(&iota, "iota")?;
        check_permutation(&sigma, "sigma")?;
        if let Some(h) = (0..n).find(|&h| iota[iota[h]] != h) {
            return Err(Error::NotInvolution(h));
        }

        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let mut cyc = Vec::new();
            let mut h = start;
            loop {
                orbit_of[h] = orbits.len();
                cyc.push(h);
                h = sigma[h];
                if h == start {
                    break;
                }
            }
            orbits.push(cyc);
        }

        let (vertex_of, vertices) = match labels {
            None => (orbit_of, orbits),
            Some(labels) => {
                if labels.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, got: labels.len() });
                }
                let nv = orbits.len();
                let mut label_of_orbit = vec![usize::MAX; nv];
                let mut orbit_of_label = vec![usize::MAX; nv];
                for h in 0..n {
                    let (o, l) = (orbit_of[h], labels[h]);
                    if l >= nv {
                        return Err(Error::SchemaViolation(format!(
                            "vertex label {l} of half-edge {h} out of range (sigma has {nv} orbits)"
                        )));
                    }
                    if label_of_orbit[o] == usize::MAX && orbit_of_label[l] == usize::MAX {
                        label_of_orbit[o] = l;
                        orbit_of_label[l] = o;
                    } else if label_of_orbit[o] != l {
                        return Err(Error::SchemaViolation(format!(
                            "vertex_of disagrees with the sigma orbit of half-edge {h}"
                        )));
                    }
                }
                let vertices = orbit_of_label.iter().map(|&o| orbits[o].clone()).collect();
                (labels, vertices)
            }
        };

        // Transitivity of <iota, sigma>: connect sigma orbits through iota.
        let mut seen = vec![false; vertices.len()];
        let mut queue = VecDeque::new();
        let mut reached = 0;
        if !vertices.is_empty() {
            seen[0] = true;
            queue.push_back(0);
        }
        while let Some(v) = queue.pop_front() {
            reached += 1;
            for &h in &vertices[v] {
                let w = vertex_of[iota[h]];
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if n == 0 || reached != vertices.len() {
            return Err(Error::NotTransitive { orbits: vertices.len() + usize::from(n == 0) });
        }

        let mut edge_of = vec![None; n];
        let mut ray_of = vec![None; n];
        let mut edge_reps = Vec::new();
        let mut rays = Vec::new();
        for h in 0..n {
            if iota[h] == h {
                ray_of[h] = Some(rays.len());
                rays.push(h);
            } else if h < iota[h] {
                edge_of[h] = Some(edge_reps.len());
                edge_of[iota[h]] = Some(edge_reps.len());
                edge_reps.push(h);
            }
        }

        Ok(PseudoRotationSystem { iota, sigma, vertex_of, vertices, edge_of, edge_reps, ray_of, rays })
    }

    pub fn n_half_edges(&self) -> usize {
        self.iota.len()
    }
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn n_closed_edges(&self) -> usize {
        self.edge_reps.len()
    }
    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }
    /// All edges, open and closed.
    pub fn n_edges(&self) -> usize {
        self.edge_reps.len() + self.rays.len()
    }

    pub fn iota(&self, h: usize) -> usize {
        self.iota[h]
    }
    pub fn sigma(&self, h: usize) -> usize {
        self.sigma[h]
    }
    pub fn iota_perm(&self) -> &[usize] {
        &self.iota
    }
    pub fn sigma_perm(&self) -> &[usize] {
        &self.sigma
    }
    pub fn is_ray(&self, h: usize) -> bool {
        self.iota[h] == h
    }
    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }
    pub fn vertex_labels(&self) -> &[usize] {
        &self.vertex_of
    }
    /// Half-edges at `v` in `sigma` order.
    pub fn vertex(&self, v: usize) -> &[usize] {
        &self.vertices[v]
    }
    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }
    pub fn degree(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    /// Closed-edge index of a non-ray half-edge.
    pub fn edge_of(&self, h: usize) -> Option<usize> {
        self.edge_of[h]
    }
    /// Representative half-edge of each closed edge.
    pub fn edge_reps(&self) -> &[usize] {
        &self.edge_reps
    }
    /// `+1` on the representative of a closed edge, `-1` on its partner.
    pub fn edge_sign(&self, h: usize) -> f64 {
        match self.edge_of[h] {
            Some(e) if self.edge_reps[e] == h => 1.0,
            Some(_) => -1.0,
            None => 0.0,
        }
    }
    pub fn ray_index(&self, h: usize) -> Option<usize> {
        self.ray_of[h]
    }
    pub fn rays(&self) -> &[usize] {
        &self.rays
    }
    /// Both endpoints `(v(h), v(-h))` of closed edge `e`, from its representative.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let h = self.edge_reps[e];
        (self.vertex_of[h], self.vertex_of[self.iota[h]])
    }
}

/// A pseudo rotation system together with a validated planar representation.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricGraph {
    prs: PseudoRotationSystem,
    vertex_ids: Vec<i64>,
    positions: Vec<Complex64>,
    ray_angles: Vec<f64>,
    theta: Vec<f64>,
    unit: Vec<Complex64>,
    x: Vec<Complex64>,
    lengths: Vec<f64>,
    n_faces: usize,
}

/// Straight image of one edge: `start + t * dir` for `t` in `[0, len]`.
#[derive(Clone, Copy)]
struct Piece {
    h: usize,
    start: Complex64,
    dir: Complex64,
    len: f64,
    from: usize,
    to: Option<usize>,
}

impl GeometricGraph {
    /// Validates the geometric representation and caches the derived
    /// quantities. `ray_angles[k]` belongs to ray `prs.rays()[k]`.
    pub fn new(prs: PseudoRotationSystem, positions: Vec<Complex64>, ray_angles: Vec<f64>) -> Result<Self> {
        let nv = prs.n_vertices();
        if positions.len() != nv {
            return Err(Error::DimensionMismatch { expected: nv, got: positions.len() });
        }
        if ray_angles.len() != prs.n_rays() {
            return Err(Error::DimensionMismatch { expected: prs.n_rays(), got: ray_angles.len() });
        }
        for (v, p) in positions.iter().enumerate() {
            if !(p.re.is_finite() && p.im.is_finite()) {
                return Err(Error::NonFinite(prs.vertex(v)[0]));
            }
        }
        for (k, a) in ray_angles.iter().enumerate() {
            if !a.is_finite() {
                return Err(Error::NonFinite(prs.rays()[k]));
            }
        }
        for a in 0..nv {
            for b in a + 1..nv {
                if (positions[a] - positions[b]).norm() <= POS_TOL {
                    return Err(Error::CoincidentVertices(a, b));
                }
            }
        }

        let n = prs.n_half_edges();
        let mut theta = vec![0.0; n];
        let mut unit_vecs = vec![Complex64::new(0.0, 0.0); n];
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for h in 0..n {
            if let Some(k) = prs.ray_index(h) {
                theta[h] = ray_angles[k];
                unit_vecs[h] = unit(ray_angles[k]);
            } else {
                let (a, b) = (prs.vertex_of(h), prs.vertex_of(prs.iota(h)));
                if a == b {
                    return Err(Error::LoopEdge(h));
                }
                x[h] = positions[b] - positions[a];
                theta[h] = x[h].arg();
                unit_vecs[h] = x[h] / x[h].norm();
            }
        }
        // Exact antisymmetry of the stored values.
        for &h in prs.edge_reps() {
            let m = prs.iota(h);
            x[m] = -x[h];
            unit_vecs[m] = -unit_vecs[h];
        }
        let lengths = prs.edge_reps().iter().map(|&h| x[h].norm()).collect();

        let mut g = GeometricGraph {
            prs,
            vertex_ids: (0..nv as i64).collect(),
            positions,
            ray_angles,
            theta,
            unit: unit_vecs,
            x,
            lengths,
            n_faces: 0,
        };
        g.check_rotation()?;
        g.check_overlaps()?;
        g.n_faces = discrete::face_cycles(&g.prs).len();
        let euler = g.n_vertices() as i64 - g.prs.n_edges() as i64 + g.n_rays() as i64 + g.n_faces as i64;
        if euler != 1 {
            return Err(Error::EulerViolation(euler));
        }
        Ok(g)
    }

    pub fn with_vertex_ids(mut self, ids: Vec<i64>) -> Result<Self> {
        if ids.len() != self.n_vertices() {
            return Err(Error::DimensionMismatch { expected: self.n_vertices(), got: ids.len() });
        }
        self.vertex_ids = ids;
        Ok(self)
    }

    /// `sigma` must visit the directions at each vertex anticlockwise, making
    /// exactly one full turn.
    fn check_rotation(&self) -> Result<()> {
        for v in 0..self.n_vertices() {
            let hs = self.prs.vertex(v);
            if hs.len() < 2 {
                continue;
            }
            let turn: f64 = hs
                .iter()
                .map(|&h| {
                    let d = wrap_2pi(self.theta[self.prs.sigma(h)] - self.theta[h]);
                    if d > std::f64::consts::TAU - ANGLE_TOL {
                        0.0
                    } else {
                        d
                    }
                })
                .sum();
            if (turn - std::f64::consts::TAU).abs() > 1e-6 {
                return Err(Error::RotationMismatch(v));
            }
        }
        Ok(())
    }

    fn pieces(&self) -> Vec<Piece> {
        let mut out = Vec::new();
        for &h in self.prs.edge_reps() {
            out.push(Piece {
                h,
                start: self.positions[self.prs.vertex_of(h)],
                dir: self.unit[h],
                len: self.lengths[self.prs.edge_of(h).unwrap()],
                from: self.prs.vertex_of(h),
                to: Some(self.prs.vertex_of(self.prs.iota(h))),
            });
        }
        for &r in self.prs.rays() {
            out.push(Piece {
                h: r,
                start: self.positions[self.prs.vertex_of(r)],
                dir: self.unit[r],
                len: f64::INFINITY,
                from: self.prs.vertex_of(r),
                to: None,
            });
        }
        out
    }

    fn identical_images(a: &Piece, b: &Piece) -> bool {
        match (a.to, b.to) {
            (Some(at), Some(bt)) => (a.from == b.from && at == bt) || (a.from == bt && at == b.from),
            (None, None) => a.from == b.from && (a.dir - b.dir).norm() <= ANGLE_TOL,
            _ => false,
        }
    }

    fn check_overlaps(&self) -> Result<()> {
        let pieces = self.pieces();
        let tol = POS_TOL;
        for p in &pieces {
            for (w, &q) in self.positions.iter().enumerate() {
                if w == p.from || Some(w) == p.to {
                    continue;
                }
                let rel = q - p.start;
                let t = dot(rel, p.dir);
                if cross(p.dir, rel).abs() <= tol && t > tol && t < p.len - tol {
                    return Err(Error::EdgeInteriorOverlap(p.h, self.prs.vertex(w)[0]));
                }
            }
        }
        for (i, a) in pieces.iter().enumerate() {
            for b in &pieces[i + 1..] {
                if Self::identical_images(a, b) {
                    continue;
                }
                let denom = cross(a.dir, b.dir);
                let rel = b.start - a.start;
                if denom.abs() > ANGLE_TOL {
                    let s = cross(rel, b.dir) / denom;
                    let t = cross(rel, a.dir) / denom;
                    if s > tol && s < a.len - tol && t > tol && t < b.len - tol {
                        return Err(Error::EdgeInteriorOverlap(a.h, b.h));
                    }
                } else if cross(a.dir, rel).abs() <= tol {
                    // Collinear: intersect the parameter intervals along a.dir.
                    let t0 = dot(rel, a.dir);
                    let sgn = dot(b.dir, a.dir).signum();
                    let t1 = t0 + sgn * b.len;
                    let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
                    let overlap = hi.min(a.len) - lo.max(0.0);
                    if overlap > tol {
                        return Err(Error::EdgeInteriorOverlap(a.h, b.h));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn prs(&self) -> &PseudoRotationSystem {
        &self.prs
    }
    pub fn n_vertices(&self) -> usize {
        self.prs.n_vertices()
    }
    pub fn n_closed_edges(&self) -> usize {
        self.prs.n_closed_edges()
    }
    pub fn n_rays(&self) -> usize {
        self.prs.n_rays()
    }
    pub fn n_faces(&self) -> usize {
        self.n_faces
    }
    /// `|V| - |E| + |R| + |F|`, which validation forces to 1.
    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices() as i64 - self.prs.n_edges() as i64 + self.n_rays() as i64 + self.n_faces as i64
    }
    pub fn vertex_ids(&self) -> &[i64] {
        &self.vertex_ids
    }
    pub fn positions(&self) -> &[Complex64] {
        &self.positions
    }
    pub fn position(&self, v: usize) -> Complex64 {
        self.positions[v]
    }
    /// Ray angles aligned with `prs().rays()`.
    pub fn ray_angles(&self) -> &[f64] {
        &self.ray_angles
    }
    /// Direction angle of any half-edge.
    pub fn theta(&self, h: usize) -> f64 {
        self.theta[h]
    }
    /// Unit tangent at `v(h)`.
    pub fn unit(&self, h: usize) -> Complex64 {
        self.unit[h]
    }
    /// Edge vector of a closed half-edge (zero on rays).
    pub fn x(&self, h: usize) -> Complex64 {
        self.x[h]
    }
    pub fn edge_length(&self, e: usize) -> f64 {
        self.lengths[e]
    }
    /// Length of the closed edge through half-edge `h`.
    pub fn length(&self, h: usize) -> f64 {
        self.lengths[self.prs.edge_of(h).expect("closed half-edge")]
    }
    pub fn edge_lengths(&self) -> &[f64] {
        &self.lengths
    }
    pub fn min_length(&self) -> Option<f64> {
        self.lengths.iter().copied().reduce(f64::min)
    }
}

/// Orientation `sigma: H -> {+1, -1}` with `sigma(-h) = -sigma(h)` and
/// `sigma(sigma_perm(h)) = -sigma(h)`, if one exists.
pub fn orientation(graph: &GeometricGraph) -> Option<Vec<i8>> {
    let prs = graph.prs();
    let n = prs.n_half_edges();
    let mut sign = vec![0i8; n];
    let mut queue = VecDeque::new();
    sign[0] = 1;
    queue.push_back(0);
    while let Some(h) = queue.pop_front() {
        let s = sign[h];
        let mut nbrs = vec![prs.sigma(h)];
        if !prs.is_ray(h) {
            nbrs.push(prs.iota(h));
        }
        // sigma^{-1}: walk the vertex cycle.
        let hs = prs.vertex(prs.vertex_of(h));
        let pos = hs.iter().position(|&k| k == h).unwrap();
        nbrs.push(hs[(pos + hs.len() - 1) % hs.len()]);
        for k in nbrs {
            if sign[k] == 0 {
                sign[k] = -s;
                queue.push_back(k);
            } else if sign[k] == s {
                return None;
            }
        }
    }
    Some(sign)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexClass {
    Degenerate,
    Special,
    Ordinary,
}

/// Largest number of half-edges at `v` whose directions lie on one line.
pub fn max_collinear(graph: &GeometricGraph, v: usize) -> usize {
    let hs = graph.prs().vertex(v);
    hs.iter()
        .map(|&a| hs.iter().filter(|&&b| collinear_directions(graph.theta(a), graph.theta(b))).count())
        .max()
        .unwrap_or(0)
}

pub fn classify_vertex(graph: &GeometricGraph, v: usize) -> VertexClass {
    let deg = graph.prs().degree(v);
    let m = max_collinear(graph, v);
    if m == deg {
        VertexClass::Degenerate
    } else if deg >= 6 && m == deg - 2 {
        VertexClass::Special
    } else {
        VertexClass::Ordinary
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParallelClasses {
    /// Closed-edge indices grouped by identical image.
    pub closed: Vec<Vec<usize>>,
    /// Ray half-edges grouped by direction.
    pub rays: Vec<Vec<usize>>,
}

impl ParallelClasses {
    pub fn nontrivial_closed(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.closed.iter().filter(|c| c.len() > 1)
    }
    pub fn nontrivial_rays(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.rays.iter().filter(|c| c.len() > 1)
    }
    /// Unordered pairs of parallel rays.
    pub fn ray_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for c in &self.rays {
            for i in 0..c.len() {
                for j in i + 1..c.len() {
                    out.push((c[i], c[j]));
                }
            }
        }
        out
    }
}

pub fn parallel_classes(graph: &GeometricGraph) -> ParallelClasses {
    let prs = graph.prs();
    let mut by_ends: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for e in 0..prs.n_closed_edges() {
        let (a, b) = prs.endpoints(e);
        by_ends.entry((a.min(b), a.max(b))).or_default().push(e);
    }
    let mut closed: Vec<Vec<usize>> = by_ends.into_values().collect();
    closed.sort();

    let mut rays: Vec<Vec<usize>> = Vec::new();
    for &r in prs.rays() {
        match rays.iter_mut().find(|c| wrap_pi(graph.theta(c[0]) - graph.theta(r)).abs() <= ANGLE_TOL) {
            Some(c) => c.push(r),
            None => rays.push(vec![r]),
        }
    }
    ParallelClasses { closed, rays }
}

/// True when two distinct edges share an image (parallel closed edges, or two
/// rays at one vertex pointing the same way).
pub fn has_identical_images(graph: &GeometricGraph) -> bool {
    let pc = parallel_classes(graph);
    if pc.nontrivial_closed().next().is_some() {
        return true;
    }
    let prs = graph.prs();
    let shared = pc.nontrivial_rays().any(|c| {
        c.iter()
            .enumerate()
            .any(|(i, &a)| c[i + 1..].iter().any(|&b| prs.vertex_of(a) == prs.vertex_of(b)))
    });
    shared
}

/// Incremental constructor that derives `iota` and `sigma` from geometry.
///
/// Closed edge `i` gets half-edges `2i` (at its first endpoint) and `2i+1`;
/// rays follow in insertion order. Around each vertex half-edges are sorted
/// anticlockwise by angle. Parallel closed edges between the same two vertices
/// are ordered by insertion at the lower-numbered endpoint and in reverse at
/// the other, which is the planar nesting of a bundle of bulged segments;
/// coincident rays at one vertex are ordered by insertion.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    positions: Vec<Complex64>,
    closed: Vec<(usize, usize)>,
    rays: Vec<(usize, f64)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, p: Complex64) -> usize {
        self.positions.push(p);
        self.positions.len() - 1
    }

    pub fn edge(&mut self, a: usize, b: usize) -> usize {
        self.closed.push((a, b));
        2 * (self.closed.len() - 1)
    }

    pub fn ray(&mut self, v: usize, angle: f64) -> usize {
        self.rays.push((v, angle));
        self.rays.len() - 1
    }

    pub fn n_vertices(&self) -> usize {
        self.positions.len()
    }

    pub fn build(&self) -> Result<GeometricGraph> {
        let nc = self.closed.len();
        let n = 2 * nc + self.rays.len();
        let nv = self.positions.len();
        let mut iota: Vec<usize> = (0..n).collect();
        let mut at: Vec<usize> = vec![0; n];
        let mut angle = vec![0.0; n];
        let mut rank = vec![0i64; n];
        let mut bundle: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (i, &(a, b)) in self.closed.iter().enumerate() {
            if a >= nv || b >= nv {
                return Err(Error::SchemaViolation(format!("edge {i} has an unknown endpoint")));
            }
            let (h, m) = (2 * i, 2 * i + 1);
            iota[h] = m;
            iota[m] = h;
            at[h] = a;
            at[m] = b;
            let d = self.positions[b] - self.positions[a];
            angle[h] = wrap_2pi(d.arg());
            angle[m] = wrap_2pi((-d).arg());
            let k = bundle.entry((a.min(b), a.max(b))).or_insert(0);
            rank[h] = if a < b { *k } else { -*k };
            rank[m] = -rank[h];
            *k += 1;
        }
        for (j, &(v, t)) in self.rays.iter().enumerate() {
            if v >= nv {
                return Err(Error::SchemaViolation(format!("ray {j} has an unknown vertex")));
            }
            let h = 2 * nc + j;
            at[h] = v;
            angle[h] = wrap_2pi(t);
            rank[h] = j as i64;
        }

        let mut sigma = vec![0; n];
        for v in 0..nv {
            let mut hs: Vec<usize> = (0..n).filter(|&h| at[h] == v).collect();
            hs.sort_by(|&p, &q| angle[p].total_cmp(&angle[q]));
            // Regroup directions equal within tolerance and order each group by rank.
            let mut i = 0;
            while i < hs.len() {
                let mut j = i + 1;
                while j < hs.len() && angle[hs[j]] - angle[hs[i]] <= ANGLE_TOL {
                    j += 1;
                }
                hs[i..j].sort_by_key(|&h| rank[h]);
                i = j;
            }
            for k in 0..hs.len() {
                sigma[hs[k]] = hs[(k + 1) % hs.len()];
            }
        }
        if (0..nv).any(|v| !at.contains(&v)) || n == 0 {
            return Err(Error::NotTransitive { orbits: nv });
        }

        let prs = PseudoRotationSystem::with_vertex_labels(iota, sigma, at)?;
        let ray_angles = self.rays.iter().map(|&(_, t)| t).collect();
        GeometricGraph::new(prs, self.positions.clone(), ray_angles)
    }
}
