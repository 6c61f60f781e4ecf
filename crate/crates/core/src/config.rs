//! Configurations: a graph with phases, tower parameters and a prescribed
//! deformation.

use std::ops::{Add, Mul, Sub};

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geom::{wrap_pi, ANGLE_TOL};
use crate::model::{GeometricGraph, PseudoRotationSystem};

/// Element of `A^2 x R`: one complex value per closed edge (on its
/// representative half-edge) and one angle per ray.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationVector {
    pub x: Vec<Complex64>,
    pub theta: Vec<f64>,
}

impl DeformationVector {
    pub fn zeros(graph: &GeometricGraph) -> Self {
        DeformationVector {
            x: vec![Complex64::new(0.0, 0.0); graph.n_closed_edges()],
            theta: vec![0.0; graph.n_rays()],
        }
    }

    /// The center `chi0 = (x0, theta0)` of the graph.
    pub fn center(graph: &GeometricGraph) -> Self {
        DeformationVector {
            x: graph.prs().edge_reps().iter().map(|&h| graph.x(h)).collect(),
            theta: graph.ray_angles().to_vec(),
        }
    }

    /// Real coordinate count `2(|E|-|R|) + |R|`.
    pub fn dim(&self) -> usize {
        2 * self.x.len() + self.theta.len()
    }

    pub fn dim_for(graph: &GeometricGraph) -> usize {
        2 * graph.n_closed_edges() + graph.n_rays()
    }

    /// `[Re x_0, Im x_0, ..., theta_0, ...]`.
    pub fn to_coords(&self) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim());
        for (e, z) in self.x.iter().enumerate() {
            v[2 * e] = z.re;
            v[2 * e + 1] = z.im;
        }
        let off = 2 * self.x.len();
        for (k, t) in self.theta.iter().enumerate() {
            v[off + k] = *t;
        }
        v
    }

    pub fn from_coords(graph: &GeometricGraph, v: &DVector<f64>) -> Self {
        let ne = graph.n_closed_edges();
        DeformationVector {
            x: (0..ne).map(|e| Complex64::new(v[2 * e], v[2 * e + 1])).collect(),
            theta: (0..graph.n_rays()).map(|k| v[2 * ne + k]).collect(),
        }
    }

    /// Value of the antisymmetric x-part on any closed half-edge.
    pub fn x_at(&self, prs: &PseudoRotationSystem, h: usize) -> Complex64 {
        self.x[prs.edge_of(h).expect("closed half-edge")] * prs.edge_sign(h)
    }

    pub fn theta_of_ray(&self, prs: &PseudoRotationSystem, r: usize) -> f64 {
        self.theta[prs.ray_index(r).expect("ray")]
    }

    pub fn norm(&self) -> f64 {
        self.to_coords().norm()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.to_coords().dot(&other.to_coords())
    }

    pub fn is_finite(&self) -> bool {
        self.x.iter().all(|z| z.re.is_finite() && z.im.is_finite()) && self.theta.iter().all(|t| t.is_finite())
    }
}

impl Add for &DeformationVector {
    type Output = DeformationVector;
    fn add(self, o: &DeformationVector) -> DeformationVector {
        DeformationVector {
            x: self.x.iter().zip(&o.x).map(|(a, b)| a + b).collect(),
            theta: self.theta.iter().zip(&o.theta).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &DeformationVector {
    type Output = DeformationVector;
    fn sub(self, o: &DeformationVector) -> DeformationVector {
        self + &(o * -1.0)
    }
}

impl Mul<f64> for &DeformationVector {
    type Output = DeformationVector;
    fn mul(self, s: f64) -> DeformationVector {
        DeformationVector {
            x: self.x.iter().map(|a| a * s).collect(),
            theta: self.theta.iter().map(|a| a * s).collect(),
        }
    }
}

/// Antisymmetric phase function modulo `2pi`, stored on representative
/// half-edges and normalized to `(-pi, pi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseFunction {
    values: Vec<f64>,
}

impl PhaseFunction {
    pub fn zeros(graph: &GeometricGraph) -> Self {
        PhaseFunction { values: vec![0.0; graph.n_closed_edges()] }
    }

    pub fn constant(graph: &GeometricGraph, value: f64) -> Self {
        Self::from_edge_values(vec![value; graph.n_closed_edges()])
    }

    pub fn from_edge_values(values: Vec<f64>) -> Self {
        PhaseFunction { values: values.into_iter().map(wrap_pi).collect() }
    }

    pub fn edge_values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, prs: &PseudoRotationSystem, h: usize) -> f64 {
        let e = prs.edge_of(h).expect("closed half-edge");
        if prs.edge_reps()[e] == h {
            self.values[e]
        } else {
            wrap_pi(-self.values[e])
        }
    }

    /// Every value is `0` or `pi` (within `ANGLE_TOL`).
    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&p| p.abs() <= ANGLE_TOL || (p.abs() - std::f64::consts::PI).abs() <= ANGLE_TOL)
    }

    /// Largest coordinate distance modulo `2pi`.
    pub fn distance(&self, other: &Self) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| wrap_pi(a - b).abs()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    pub graph: GeometricGraph,
    pub phase: PhaseFunction,
    /// `upsilon_eta > 0` per half-edge.
    pub upsilon: Vec<f64>,
    /// `mu_eta` per half-edge.
    pub mu: Vec<Complex64>,
    /// Prescribed deformation `xi0`.
    pub xi: DeformationVector,
}

impl Configuration {
    /// Zero phases, `upsilon = 1`, `mu = 0`, `xi = 0`.
    pub fn new(graph: GeometricGraph) -> Self {
        let n = graph.prs().n_half_edges();
        Configuration {
            phase: PhaseFunction::zeros(&graph),
            upsilon: vec![1.0; n],
            mu: vec![Complex64::new(0.0, 0.0); n],
            xi: DeformationVector::zeros(&graph),
            graph,
        }
    }

    pub fn with_phase(mut self, phase: PhaseFunction) -> Self {
        self.phase = phase;
        self
    }

    pub fn with_mu(mut self, mu: Vec<Complex64>) -> Self {
        self.mu = mu;
        self
    }

    pub fn with_xi(mut self, xi: DeformationVector) -> Self {
        self.xi = xi;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.graph.prs().n_half_edges();
        if self.phase.values.len() != self.graph.n_closed_edges() {
            return Err(Error::DimensionMismatch { expected: self.graph.n_closed_edges(), got: self.phase.values.len() });
        }
        for (name, len) in [("upsilon", self.upsilon.len()), ("mu", self.mu.len())] {
            if len != n {
                return Err(Error::SchemaViolation(format!("{name} has {len} entries, expected {n}")));
            }
        }
        if let Some(h) = self.upsilon.iter().position(|&u| !(u > 0.0 && u.is_finite())) {
            return Err(Error::UpsilonNotPositive(h));
        }
        if self.xi.x.len() != self.graph.n_closed_edges() || self.xi.theta.len() != self.graph.n_rays() {
            return Err(Error::DimensionMismatch {
                expected: DeformationVector::dim_for(&self.graph),
                got: self.xi.dim(),
            });
        }
        Ok(())
    }

    pub fn prs(&self) -> &PseudoRotationSystem {
        self.graph.prs()
    }

    /// `mu^a_h = mu_h - mu_{-h}` on a closed half-edge.
    pub fn mu_antisym(&self, h: usize) -> Complex64 {
        self.mu[h] - self.mu[self.prs().iota(h)]
    }

    /// `mu^a` as an element of the x-part of `A^2 x R` (theta-part zero).
    pub fn mu_antisym_vector(&self) -> DeformationVector {
        let prs = self.prs();
        DeformationVector {
            x: prs.edge_reps().iter().map(|&h| self.mu_antisym(h)).collect(),
            theta: vec![0.0; prs.n_rays()],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::GraphBuilder;
    use std::f64::consts::PI;

    fn seg() -> GeometricGraph {
        let mut b = GraphBuilder::new();
        let v0 = b.vertex(Complex64::new(0.0, 0.0));
        let v1 = b.vertex(Complex64::new(1.0, 0.0));
        b.edge(v0, v1);
        b.ray(v0, PI);
        b.ray(v1, 0.0);
        b.build().unwrap()
    }

    #[test]
    fn coords_round_trip() {
        let g = seg();
        let d = DeformationVector { x: vec![Complex64::new(1.5, -2.0)], theta: vec![0.1, 0.2] };
        assert_eq!(DeformationVector::from_coords(&g, &d.to_coords()), d);
        assert_eq!(d.dim(), 4);
        assert_eq!(d.x_at(g.prs(), 1), Complex64::new(-1.5, 2.0));
    }

    #[test]
    fn phase_antisymmetry_and_triviality() {
        let g = seg();
        let p = PhaseFunction::from_edge_values(vec![0.3]);
        assert_eq!(p.at(g.prs(), 1), -0.3);
        assert!(!p.is_trivial());
        let q = PhaseFunction::from_edge_values(vec![-PI]);
        assert_eq!(q.edge_values()[0], PI);
        assert_eq!(q.at(g.prs(), 1), PI);
        assert!(q.is_trivial());
    }

    #[test]
    fn upsilon_must_be_positive() {
        let mut c = Configuration::new(seg());
        assert!(c.validate().is_ok());
        c.upsilon[2] = -1.0;
        assert_eq!(c.validate(), Err(Error::UpsilonNotPositive(2)));
    }

    #[test]
    fn mu_antisym_is_antisymmetric() {
        let mut c = Configuration::new(seg());
        c.mu[0] = Complex64::new(1.0, 2.0);
        c.mu[1] = Complex64::new(0.5, 0.0);
        assert_eq!(c.mu_antisym(0), -c.mu_antisym(1));
    }
}
