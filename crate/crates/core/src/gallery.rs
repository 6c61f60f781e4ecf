//! Built-in example configurations with the facts they are known to satisfy.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::config::{Configuration, DeformationVector, PhaseFunction};
use crate::embed::{Outcome, Tier};
use crate::error::{Error, Result};
use crate::horizontal::jacobian;
use crate::linalg::{FullSvd, RANK_TOL};
use crate::model::{GeometricGraph, GraphBuilder};
use crate::vertical::potential_to_phase;

/// Graph whose image is a union of full lines `{p : Re(p e^{-i alpha}) = c}`.
/// Vertices are the pairwise intersections, numbered in line-pair order.
pub fn line_arrangement(lines: &[(f64, f64)]) -> Result<GeometricGraph> {
    let mut b = GraphBuilder::new();
    let mut points: Vec<Complex64> = Vec::new();
    let mut on_line: Vec<Vec<usize>> = vec![Vec::new(); lines.len()];
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a1, c1) = lines[i];
            let (a2, c2) = lines[j];
            let det = (a2 - a1).sin();
            if det.abs() < 1e-12 {
                continue;
            }
            // Cramer on [cos a1, sin a1; cos a2, sin a2] p = [c1; c2].
            let x = (c1 * a2.sin() - c2 * a1.sin()) / det;
            let y = (a1.cos() * c2 - a2.cos() * c1) / det;
            let p = Complex64::new(x, y);
            let v = match points.iter().position(|q| (q - p).norm() < 1e-9) {
                Some(v) => v,
                None => {
                    points.push(p);
                    b.vertex(p)
                }
            };
            for l in [i, j] {
                if !on_line[l].contains(&v) {
                    on_line[l].push(v);
                }
            }
        }
    }
    for (l, &(a, _)) in lines.iter().enumerate() {
        let d = Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, a);
        let mut vs = on_line[l].clone();
        let t = |v: usize| (points[v] * d.conj()).re;
        vs.sort_by(|&p, &q| t(p).total_cmp(&t(q)));
        if vs.is_empty() {
            return Err(Error::SchemaViolation(format!("line {l} meets no other line")));
        }
        for w in vs.windows(2) {
            b.edge(w[0], w[1]);
        }
        b.ray(vs[0], (-d).arg());
        b.ray(*vs.last().unwrap(), d.arg());
    }
    b.build()
}

/// What a gallery entry is known to satisfy.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpectedFacts {
    pub balanced: bool,
    pub rigid: bool,
    pub dim_d: usize,
    pub n_faces: usize,
    pub tree: bool,
    pub line_arrangement: bool,
    /// Whether the configuration's phases are vertically rigid.
    pub vertically_rigid: Option<bool>,
    /// Embeddedness verdict with the configuration's own `xi` and phases.
    pub verdict: Option<(Tier, Outcome)>,
}

pub struct GalleryEntry {
    pub name: &'static str,
    pub description: &'static str,
}

pub const ENTRIES: &[GalleryEntry] = &[
    GalleryEntry { name: "tree1", description: "three lines, two towers glued in phase" },
    GalleryEntry { name: "tree1_pi", description: "three lines, two towers in opposite phases" },
    GalleryEntry { name: "tree2", description: "one horizontal and four vertical lines, in phase" },
    GalleryEntry { name: "tree3", description: "two degree-8 towers glued along a doubled edge" },
    GalleryEntry { name: "triangle", description: "equiangular triangle of three lines, zero phase" },
    GalleryEntry { name: "triangle_scalene", description: "non-equiangular triangle of three lines" },
    GalleryEntry { name: "costa_scherk", description: "equiangular triangle with a non-zero trivial phase" },
    GalleryEntry { name: "gyroid3", description: "equiangular triangle with phases 0, 2pi/3, 4pi/3" },
    GalleryEntry { name: "square", description: "four lines forming a square, zero phase" },
    GalleryEntry { name: "gyroid4", description: "four lines forming a square with phases 0, pi/2, pi, 3pi/2" },
    GalleryEntry { name: "polygram", description: "k lines tangent to the unit circle (--k, default 5)" },
    GalleryEntry { name: "misc1", description: "triangle with a horizontal line through the apex and an opening xi" },
    GalleryEntry { name: "benzene", description: "hexagon with doubled edges and doubled radial rays" },
];

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

fn horizontal_line(y: f64) -> (f64, f64) {
    (FRAC_PI_2, y)
}

fn vertical_line(x: f64) -> (f64, f64) {
    (0.0, x)
}

/// Lines through the sides of the triangle `(0,0), (1,0), (1/2, sqrt3/2)`.
fn equilateral_lines() -> Vec<(f64, f64)> {
    vec![horizontal_line(0.0), (5.0 * PI / 6.0, 0.0), (PI / 6.0, SQRT3_2)]
}

/// Potential given as a function of vertex position.
fn phase_from_positions(graph: &GeometricGraph, f: impl Fn(Complex64) -> f64) -> PhaseFunction {
    let pot: Vec<f64> = graph.positions().iter().map(|&p| f(p)).collect();
    potential_to_phase(graph, &pot)
}

fn near(p: Complex64, x: f64, y: f64) -> bool {
    (p - Complex64::new(x, y)).norm() < 1e-9
}

pub fn tree1(phase: f64) -> Result<Configuration> {
    let g = line_arrangement(&[horizontal_line(0.0), vertical_line(0.0), vertical_line(1.0)])?;
    let phi = PhaseFunction::constant(&g, phase);
    Ok(Configuration::new(g).with_phase(phi))
}

pub fn tree2() -> Result<Configuration> {
    let mut lines = vec![horizontal_line(0.0)];
    lines.extend((0..4).map(|x| vertical_line(x as f64)));
    Ok(Configuration::new(line_arrangement(&lines)?))
}

pub fn tree3() -> Result<Configuration> {
    let mut b = GraphBuilder::new();
    let v0 = b.vertex(Complex64::new(0.0, 0.0));
    let v1 = b.vertex(Complex64::new(1.0, 0.0));
    b.edge(v0, v1);
    b.edge(v0, v1);
    let (a, c) = (0.75f64.acos(), 0.25f64.acos());
    for (v, out) in [(v0, PI), (v1, 0.0)] {
        b.ray(v, FRAC_PI_2);
        b.ray(v, 3.0 * FRAC_PI_2);
        for t in [a, -a, c, -c] {
            b.ray(v, out + t);
        }
    }
    Ok(Configuration::new(b.build()?))
}

pub fn triangle() -> Result<Configuration> {
    Ok(Configuration::new(line_arrangement(&equilateral_lines())?))
}

/// Right triangle `(0,0), (2,0), (0,1)`: three distinct side lengths.
pub fn triangle_scalene() -> Result<Configuration> {
    let n = Complex64::new(1.0, 2.0);
    let lines = [horizontal_line(0.0), vertical_line(0.0), (n.arg(), 2.0 / n.norm())];
    Ok(Configuration::new(line_arrangement(&lines)?))
}

pub fn costa_scherk() -> Result<Configuration> {
    let g = line_arrangement(&equilateral_lines())?;
    let phi = phase_from_positions(&g, |p| if p.im > 0.5 { PI } else { 0.0 });
    Ok(Configuration::new(g).with_phase(phi))
}

pub fn gyroid3() -> Result<Configuration> {
    let g = line_arrangement(&equilateral_lines())?;
    let phi = phase_from_positions(&g, |p| {
        if near(p, 0.0, 0.0) {
            0.0
        } else if near(p, 1.0, 0.0) {
            2.0 * PI / 3.0
        } else {
            4.0 * PI / 3.0
        }
    });
    Ok(Configuration::new(g).with_phase(phi))
}

fn square_graph() -> Result<GeometricGraph> {
    line_arrangement(&[vertical_line(0.0), vertical_line(1.0), horizontal_line(0.0), horizontal_line(1.0)])
}

pub fn square() -> Result<Configuration> {
    Ok(Configuration::new(square_graph()?))
}

pub fn gyroid4() -> Result<Configuration> {
    let g = square_graph()?;
    let phi = phase_from_positions(&g, |p| {
        if near(p, 0.0, 0.0) {
            0.0
        } else if near(p, 1.0, 0.0) {
            FRAC_PI_2
        } else if near(p, 1.0, 1.0) {
            PI
        } else {
            3.0 * FRAC_PI_2
        }
    });
    Ok(Configuration::new(g).with_phase(phi))
}

/// `k` lines tangent to the unit circle at `2 pi j / k`.
pub fn polygram(k: usize) -> Result<Configuration> {
    if k < 3 {
        return Err(Error::SchemaViolation("polygram needs k >= 3".into()));
    }
    let lines: Vec<(f64, f64)> = (0..k).map(|j| (2.0 * PI * j as f64 / k as f64, 1.0)).collect();
    Ok(Configuration::new(line_arrangement(&lines)?))
}

/// Opening amplitude of the prescribed `xi` on the apex rays of `misc1`.
pub const MISC1_OPENING: f64 = 0.1;

/// Equilateral triangle plus the horizontal line through its apex; `xi`
/// keeps every edge fixed and turns only the four apex rays.
pub fn misc1() -> Result<Configuration> {
    let mut b = GraphBuilder::new();
    let v0 = b.vertex(Complex64::new(0.0, 0.0));
    let v1 = b.vertex(Complex64::new(1.0, 0.0));
    let apex = b.vertex(Complex64::new(0.5, SQRT3_2));
    b.edge(v0, v1);
    b.edge(v1, apex);
    b.edge(apex, v0);
    b.ray(v0, PI);
    b.ray(v0, 4.0 * PI / 3.0);
    b.ray(v1, 0.0);
    b.ray(v1, 5.0 * PI / 3.0);
    for t in [0.0, PI / 3.0, 2.0 * PI / 3.0, PI] {
        b.ray(apex, t);
    }
    let g = b.build()?;
    let xi = misc1_opening(&g, apex)?;
    Ok(Configuration::new(g).with_xi(xi))
}

/// The element of `D` with `x-dot = 0`, supported on the apex rays, that
/// turns the two horizontal apex rays by opposite amounts; scaled so the
/// right horizontal ray turns by `+MISC1_OPENING`.
fn misc1_opening(g: &GeometricGraph, apex: usize) -> Result<DeformationVector> {
    let prs = g.prs();
    let j = jacobian(g).matrix;
    let n = j.ncols();
    let ne = g.n_closed_edges();
    let apex_rays: Vec<usize> = prs.rays().iter().copied().filter(|&r| prs.vertex_of(r) == apex).collect();
    let col = |r: usize| 2 * ne + prs.ray_index(r).unwrap();
    let right = *apex_rays.iter().find(|&&r| g.theta(r).abs() < 1e-12).unwrap();
    let left = *apex_rays.iter().find(|&&r| (g.theta(r) - PI).abs() < 1e-12).unwrap();

    let mut rows: Vec<DVector<f64>> = (0..j.nrows()).map(|i| j.row(i).transpose()).collect();
    let unit_row = |k: usize| {
        let mut v = DVector::zeros(n);
        v[k] = 1.0;
        v
    };
    for k in 0..2 * ne {
        rows.push(unit_row(k));
    }
    for &r in prs.rays() {
        if prs.vertex_of(r) != apex {
            rows.push(unit_row(col(r)));
        }
    }
    let mut sym = DVector::zeros(n);
    sym[col(right)] = 1.0;
    sym[col(left)] = 1.0;
    rows.push(sym);
    let a = DMatrix::from_fn(rows.len(), n, |i, k| rows[i][k]);
    let ker = FullSvd::new(&a).kernel(RANK_TOL);
    if ker.ncols() != 1 {
        return Err(Error::PreconditionViolated(format!("misc1 opening space has dimension {}", ker.ncols())));
    }
    let v = ker.column(0).into_owned();
    let v = &v * (MISC1_OPENING / v[col(right)]);
    Ok(DeformationVector::from_coords(g, &v))
}

/// Regular hexagon with every side doubled and two coincident radial rays at
/// each vertex.
pub fn benzene() -> Result<Configuration> {
    let mut b = GraphBuilder::new();
    let vs: Vec<usize> = (0..6).map(|k| b.vertex(Complex64::from_polar(1.0, k as f64 * PI / 3.0))).collect();
    for k in 0..6 {
        b.edge(vs[k], vs[(k + 1) % 6]);
        b.edge(vs[k], vs[(k + 1) % 6]);
    }
    for (k, &v) in vs.iter().enumerate() {
        b.ray(v, k as f64 * PI / 3.0);
        b.ray(v, k as f64 * PI / 3.0);
    }
    Ok(Configuration::new(b.build()?))
}

/// Builds a gallery configuration; `k` only affects `polygram`.
pub fn build(name: &str, k: Option<usize>) -> Result<Configuration> {
    match name {
        "tree1" => tree1(0.0),
        "tree1_pi" => tree1(PI),
        "tree2" => tree2(),
        "tree3" => tree3(),
        "triangle" => triangle(),
        "triangle_scalene" => triangle_scalene(),
        "costa_scherk" => costa_scherk(),
        "gyroid3" => gyroid3(),
        "square" => square(),
        "gyroid4" => gyroid4(),
        "polygram" => polygram(k.unwrap_or(5)),
        "misc1" => misc1(),
        "benzene" => benzene(),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

pub fn expected(name: &str, k: Option<usize>) -> Option<ExpectedFacts> {
    let rigid = |r: usize, f: usize, tree: bool, line: bool, vr: Option<bool>, verdict| ExpectedFacts {
        balanced: true,
        rigid: true,
        dim_d: r - 2,
        n_faces: f,
        tree,
        line_arrangement: line,
        vertically_rigid: vr,
        verdict,
    };
    use Outcome::*;
    use Tier::*;
    Some(match name {
        "tree1" => rigid(6, 0, true, true, Some(true), Some((FlatOrder, Embedded))),
        "tree1_pi" => rigid(6, 0, true, true, Some(true), Some((FlatOrder, NotEmbedded))),
        "tree2" => rigid(10, 0, true, true, Some(true), Some((FlatOrder, Inconclusive))),
        "tree3" => rigid(12, 1, true, false, Some(true), Some((FlatOrder, Embedded))),
        "triangle" | "triangle_scalene" | "costa_scherk" => {
            rigid(6, 1, false, true, Some(true), Some((DistinctRays, Embedded)))
        }
        "gyroid3" => rigid(6, 1, false, true, Some(true), Some((DistinctRays, Embedded))),
        "square" => rigid(8, 1, false, true, None, None),
        "gyroid4" => rigid(8, 1, false, true, Some(false), None),
        "polygram" => {
            let k = k.unwrap_or(5);
            let v = k * (k - 1) / 2 - if k.is_multiple_of(2) { k / 2 } else { 0 };
            let e = k * (k - 2) - if k.is_multiple_of(2) { k } else { 0 };
            // Odd k: all 2k ray directions differ. Even k: opposite lines are
            // parallel and only the flat-order term separates their rays.
            let tier = if !k.is_multiple_of(2) { DistinctRays } else { FlatOrder };
            rigid(2 * k, 1 + e - v, false, true, Some(true), Some((tier, Embedded)))
        }
        "misc1" => rigid(8, 1, false, false, Some(true), Some((FirstOrder, Embedded))),
        "benzene" => ExpectedFacts {
            balanced: true,
            rigid: false,
            dim_d: 11,
            n_faces: 7,
            tree: false,
            line_arrangement: false,
            vertically_rigid: None,
            verdict: None,
        },
        _ => return None,
    })
}
