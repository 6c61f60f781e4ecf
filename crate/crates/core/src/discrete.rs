//! Face cycles, vertex cuts and the operators curl, div and mdiv.

use std::ops::{Add, Mul, Neg};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{greedy_independent_rows, numerical_rank, RANK_TOL};
use crate::model::{GeometricGraph, PseudoRotationSystem};

/// An orbit of `sigma . iota` avoiding the rays, listed in orbit order. With
/// `sigma` anticlockwise, bounded faces are traversed clockwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCycle(pub Vec<usize>);

impl FaceCycle {
    pub fn half_edges(&self) -> &[usize] {
        &self.0
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn face_cycles(prs: &PseudoRotationSystem) -> Vec<FaceCycle> {
    let n = prs.n_half_edges();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut has_ray = false;
        let mut h = start;
        loop {
            seen[h] = true;
            has_ray |= prs.is_ray(h);
            cyc.push(h);
            h = prs.sigma(prs.iota(h));
            if h == start {
                break;
            }
        }
        if !has_ray {
            out.push(FaceCycle(cyc));
        }
    }
    out
}

/// Antisymmetric function on the closed half-edges, stored once per closed
/// edge on its representative half-edge.
#[derive(Clone, Debug, PartialEq)]
pub struct AntisymmetricFn<T> {
    values: Vec<T>,
}

impl<T> AntisymmetricFn<T>
where
    T: Copy + Neg<Output = T>,
{
    pub fn from_edge_values(values: Vec<T>) -> Self {
        AntisymmetricFn { values }
    }

    pub fn from_fn(prs: &PseudoRotationSystem, mut f: impl FnMut(usize) -> T) -> Self {
        AntisymmetricFn { values: prs.edge_reps().iter().map(|&h| f(h)).collect() }
    }

    pub fn at(&self, prs: &PseudoRotationSystem, h: usize) -> T {
        let e = prs.edge_of(h).expect("closed half-edge");
        if prs.edge_reps()[e] == h {
            self.values[e]
        } else {
            -self.values[e]
        }
    }

    pub fn edge_values(&self) -> &[T] {
        &self.values
    }
}

pub fn curl<T>(prs: &PseudoRotationSystem, f: &AntisymmetricFn<T>, c: &FaceCycle) -> T
where
    T: Copy + Neg<Output = T> + Add<Output = T>,
{
    let mut it = c.0.iter().map(|&h| f.at(prs, h));
    let first = it.next().expect("face cycles are non-empty");
    it.fold(first, |a, b| a + b)
}

pub fn curl_all<T>(prs: &PseudoRotationSystem, f: &AntisymmetricFn<T>) -> Vec<T>
where
    T: Copy + Neg<Output = T> + Add<Output = T>,
{
    face_cycles(prs).iter().map(|c| curl(prs, f, c)).collect()
}

/// Sum of a function on all half-edges over the vertex cut of `v`.
pub fn div<T>(prs: &PseudoRotationSystem, f: &[T], v: usize) -> T
where
    T: Copy + Add<Output = T>,
{
    let hs = prs.vertex(v);
    hs[1..].iter().fold(f[hs[0]], |a, &h| a + f[h])
}

pub fn div_all<T>(prs: &PseudoRotationSystem, f: &[T]) -> Vec<T>
where
    T: Copy + Add<Output = T>,
{
    (0..prs.n_vertices()).map(|v| div(prs, f, v)).collect()
}

/// Face-by-closed-edge matrix of `curl` in representative coordinates.
pub fn curl_matrix(prs: &PseudoRotationSystem, faces: &[FaceCycle]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(faces.len(), prs.n_closed_edges());
    for (i, c) in faces.iter().enumerate() {
        for &h in &c.0 {
            m[(i, prs.edge_of(h).unwrap())] += prs.edge_sign(h);
        }
    }
    m
}

/// Vertex-by-edge matrix of `div`; columns are the closed edges followed by
/// the rays.
pub fn div_matrix(prs: &PseudoRotationSystem) -> DMatrix<f64> {
    let nc = prs.n_closed_edges();
    let mut m = DMatrix::zeros(prs.n_vertices(), nc + prs.n_rays());
    for v in 0..prs.n_vertices() {
        for &h in prs.vertex(v) {
            match prs.ray_index(h) {
                Some(k) => m[(v, nc + k)] += 1.0,
                None => m[(v, prs.edge_of(h).unwrap())] += prs.edge_sign(h),
            }
        }
    }
    m
}

/// Relative tolerance under which two edge lengths count as equal.
pub const LENGTH_TIE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinimalEdges {
    /// `m(b(v))`: closed half-edges at `v` of minimal length.
    pub per_vertex: Vec<Vec<usize>>,
    /// Minimal closed-edge length at each vertex.
    pub ell_b: Vec<f64>,
    /// `m(H)`: closed half-edges of globally minimal length.
    pub global: Vec<usize>,
    pub ell_min: f64,
}

fn ties(a: f64, min: f64) -> bool {
    a <= min * (1.0 + LENGTH_TIE_TOL)
}

pub fn minimal_edges(graph: &GeometricGraph) -> Result<MinimalEdges> {
    let prs = graph.prs();
    let ell_min = graph.min_length().ok_or(Error::NoClosedEdges)?;
    let mut per_vertex = Vec::new();
    let mut ell_b = Vec::new();
    for v in 0..prs.n_vertices() {
        let closed: Vec<usize> = prs.vertex(v).iter().copied().filter(|&h| !prs.is_ray(h)).collect();
        let lb = closed.iter().map(|&h| graph.length(h)).fold(f64::INFINITY, f64::min);
        per_vertex.push(closed.into_iter().filter(|&h| ties(graph.length(h), lb)).collect());
        ell_b.push(lb);
    }
    let global = (0..prs.n_half_edges())
        .filter(|&h| !prs.is_ray(h) && ties(graph.length(h), ell_min))
        .collect();
    Ok(MinimalEdges { per_vertex, ell_b, global, ell_min })
}

pub fn mdiv(prs: &PseudoRotationSystem, phi: &AntisymmetricFn<f64>, m: &MinimalEdges, v: usize) -> f64 {
    m.per_vertex[v].iter().map(|&h| phi.at(prs, h)).sum()
}

/// Vertex-by-closed-edge matrix of `mdiv` in representative coordinates.
pub fn mdiv_matrix(prs: &PseudoRotationSystem, m: &MinimalEdges) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(prs.n_vertices(), prs.n_closed_edges());
    for (v, hs) in m.per_vertex.iter().enumerate() {
        for &h in hs {
            out[(v, prs.edge_of(h).unwrap())] += prs.edge_sign(h);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MdivBasis {
    /// Selected vertex cuts `B_m^*`, in selection order.
    pub cuts: Vec<usize>,
    /// Rank of the `mdiv` rows over all vertex cuts.
    pub rank: usize,
    /// Set when the rank falls short of `|V| - 1`. Each `mdiv` row is a row
    /// of a signed incidence matrix, so `|V| - 1` is the most possible.
    pub diagnostic: Option<String>,
}

pub fn select_mdiv_basis(graph: &GeometricGraph) -> Result<MdivBasis> {
    let m = minimal_edges(graph)?;
    Ok(select_mdiv_basis_with(graph, &m))
}

pub fn select_mdiv_basis_with(graph: &GeometricGraph, m: &MinimalEdges) -> MdivBasis {
    let mat = mdiv_matrix(graph.prs(), m);
    let cuts = greedy_independent_rows(&mat, RANK_TOL);
    let rank = numerical_rank(&mat, RANK_TOL);
    let nv = graph.n_vertices();
    let diagnostic = (rank + 1 < nv)
        .then(|| format!("mdiv rows have rank {rank} < |V| - 1 = {}; B_m^* has {} cuts", nv - 1, cuts.len()));
    MdivBasis { cuts, rank, diagnostic }
}

/// Linear combination helper used by property tests: `a f + b g`.
pub fn combine<T>(a: f64, f: &AntisymmetricFn<T>, b: f64, g: &AntisymmetricFn<T>) -> AntisymmetricFn<T>
where
    T: Copy + Neg<Output = T> + Add<Output = T> + Mul<f64, Output = T>,
{
    AntisymmetricFn::from_edge_values(
        f.values.iter().zip(&g.values).map(|(&x, &y)| x * a + y * b).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::GraphBuilder;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn triangle(p: [Complex64; 3]) -> GeometricGraph {
        let mut b = GraphBuilder::new();
        let v: Vec<usize> = p.iter().map(|&z| b.vertex(z)).collect();
        for i in 0..3 {
            b.edge(v[i], v[(i + 1) % 3]);
        }
        // Each vertex continues its two sides outward.
        for i in 0..3 {
            let a = p[i];
            for j in [(i + 1) % 3, (i + 2) % 3] {
                b.ray(v[i], (a - p[j]).arg());
            }
        }
        b.build().unwrap()
    }

    fn equilateral() -> GeometricGraph {
        triangle([c(0.0, 0.0), c(1.0, 0.0), c(0.5, 3f64.sqrt() / 2.0)])
    }

    #[test]
    fn triangle_has_one_face_of_length_three() {
        let g = equilateral();
        let faces = face_cycles(g.prs());
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].len(), 3);
        let prs = g.prs();
        let hs = faces[0].half_edges();
        for i in 0..3 {
            assert_eq!(prs.vertex_of(prs.iota(hs[i])), prs.vertex_of(hs[(i + 1) % 3]));
        }
    }

    #[test]
    fn face_cycle_is_clockwise() {
        let g = equilateral();
        let f = &face_cycles(g.prs())[0];
        let area: f64 = f
            .half_edges()
            .iter()
            .map(|&h| {
                let p = g.position(g.prs().vertex_of(h));
                let q = p + g.x(h);
                p.re * q.im - p.im * q.re
            })
            .sum();
        assert!(area < 0.0);
    }

    #[test]
    fn curl_of_edge_vectors_vanishes_and_ones_sum_to_length() {
        let g = equilateral();
        let prs = g.prs();
        let x = AntisymmetricFn::from_fn(prs, |h| g.x(h));
        assert!(curl_all(prs, &x)[0].norm() < 1e-15);
        let f = &face_cycles(prs)[0];
        let ones = AntisymmetricFn::from_fn(prs, |h| if f.half_edges().contains(&h) { 1.0 } else { -1.0 });
        assert_eq!(curl(prs, &ones, f), 3.0);
        let zero = AntisymmetricFn::from_fn(prs, |_| 0.0);
        assert_eq!(curl(prs, &zero, f), 0.0);
    }

    #[test]
    fn div_of_units() {
        let mut b = GraphBuilder::new();
        let v0 = b.vertex(c(0.0, 0.0));
        let v1 = b.vertex(c(1.0, 0.0));
        b.edge(v0, v1);
        for (v, out) in [(v0, PI), (v1, 0.0)] {
            b.ray(v, FRAC_PI_2);
            b.ray(v, out);
            b.ray(v, 3.0 * FRAC_PI_2);
        }
        let g = b.build().unwrap();
        let u: Vec<Complex64> = (0..g.prs().n_half_edges()).map(|h| g.unit(h)).collect();
        for d in div_all(g.prs(), &u) {
            assert!(d.norm() < 1e-15);
        }

        let mut b = GraphBuilder::new();
        let v = b.vertex(c(0.0, 0.0));
        b.ray(v, 0.0);
        b.ray(v, FRAC_PI_2);
        let g = b.build().unwrap();
        let u: Vec<Complex64> = (0..2).map(|h| g.unit(h)).collect();
        assert!((div(g.prs(), &u, 0).norm() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn operator_ranks_on_triangle() {
        let g = equilateral();
        let prs = g.prs();
        let faces = face_cycles(prs);
        assert_eq!(numerical_rank(&curl_matrix(prs, &faces), RANK_TOL), 1);
        assert_eq!(numerical_rank(&div_matrix(prs), RANK_TOL), 3);
    }

    #[test]
    fn minimal_edges_and_mdiv_rank() {
        let g = equilateral();
        let m = minimal_edges(&g).unwrap();
        assert_eq!(m.global.len(), 6);
        let basis = select_mdiv_basis_with(&g, &m);
        // Signed incidence of a 3-cycle: rows sum to zero.
        assert_eq!(basis.rank, 2);
        assert_eq!(basis.cuts.len(), 2);
        assert!(basis.diagnostic.is_none());

        // The shortest side is minimal at both its ends; the longest side is
        // minimal nowhere, so only two edges carry rows.
        let s = triangle([c(0.0, 0.0), c(2.0, 0.0), c(0.3, 1.1)]);
        let m = minimal_edges(&s).unwrap();
        assert_eq!(m.per_vertex.iter().map(Vec::len).sum::<usize>(), 3);
        assert_eq!(select_mdiv_basis(&s).unwrap().rank, 2);
    }

    #[test]
    fn strict_minimum_at_a_vertex() {
        let mut b = GraphBuilder::new();
        let v = b.vertex(c(0.0, 0.0));
        let w1 = b.vertex(c(1.0, 0.0));
        let w2 = b.vertex(c(0.0, 2.0));
        let h1 = b.edge(v, w1);
        b.edge(v, w2);
        b.ray(v, 5.0 * PI / 4.0);
        b.ray(w1, 0.0);
        b.ray(w2, FRAC_PI_2);
        let g = b.build().unwrap();
        let m = minimal_edges(&g).unwrap();
        assert_eq!(m.per_vertex[v], vec![h1]);
    }

    #[test]
    fn equal_lengths_perturbed_break_ties() {
        let g = triangle([c(0.0, 0.0), c(1.0, 0.0), c(0.5, 3f64.sqrt() / 2.0 + 1e-3)]);
        assert_eq!(minimal_edges(&g).unwrap().global.len(), 2);
    }

    #[test]
    fn no_closed_edges() {
        let mut b = GraphBuilder::new();
        let v = b.vertex(c(0.0, 0.0));
        b.ray(v, 0.0);
        b.ray(v, PI);
        assert_eq!(minimal_edges(&b.build().unwrap()), Err(Error::NoClosedEdges));
    }
}
