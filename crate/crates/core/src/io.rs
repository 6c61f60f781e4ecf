//! JSON configuration files.
//!
//! Maps are keyed by half-edge index. Floats are written in shortest
//! round-trip form, so `save` followed by `load` is bit-exact.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::{Configuration, DeformationVector, PhaseFunction};
use crate::error::{Error, Result};
use crate::geom::{wrap_pi, ANGLE_TOL};
use crate::model::{GeometricGraph, PseudoRotationSystem};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: i64,
    pub position: [f64; 2],
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct XiRecord {
    #[serde(default)]
    pub x: BTreeMap<usize, [f64; 2]>,
    #[serde(default)]
    pub theta: BTreeMap<usize, f64>,
}

/// On-disk layout of a configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigFile {
    pub half_edges: usize,
    pub iota: Vec<usize>,
    pub sigma: Vec<usize>,
    pub vertices: Vec<VertexRecord>,
    pub vertex_of: Vec<i64>,
    pub ray_angles: BTreeMap<usize, f64>,
    pub phase: BTreeMap<usize, f64>,
    #[serde(default)]
    pub upsilon: BTreeMap<usize, f64>,
    #[serde(default)]
    pub mu: BTreeMap<usize, [f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<XiRecord>,
}

fn schema(msg: impl Into<String>) -> Error {
    Error::SchemaViolation(msg.into())
}

fn check_keys<T>(map: &BTreeMap<usize, T>, n: usize, name: &str) -> Result<()> {
    match map.keys().find(|&&h| h >= n) {
        Some(h) => Err(schema(format!("{name}: half-edge {h} out of range"))),
        None => Ok(()),
    }
}

impl ConfigFile {
    pub fn from_config(config: &Configuration) -> Self {
        let g = &config.graph;
        let prs = g.prs();
        let ids = g.vertex_ids();
        let n = prs.n_half_edges();
        let xi = &config.xi;
        ConfigFile {
            half_edges: n,
            iota: prs.iota_perm().to_vec(),
            sigma: prs.sigma_perm().to_vec(),
            vertices: (0..g.n_vertices())
                .map(|v| VertexRecord { id: ids[v], position: [g.position(v).re, g.position(v).im] })
                .collect(),
            vertex_of: (0..n).map(|h| ids[prs.vertex_of(h)]).collect(),
            ray_angles: prs.rays().iter().zip(g.ray_angles()).map(|(&r, &a)| (r, a)).collect(),
            phase: prs.edge_reps().iter().zip(config.phase.edge_values()).map(|(&h, &p)| (h, p)).collect(),
            upsilon: config.upsilon.iter().copied().enumerate().collect(),
            mu: config.mu.iter().map(|z| [z.re, z.im]).enumerate().collect(),
            xi: Some(XiRecord {
                x: prs.edge_reps().iter().zip(&xi.x).map(|(&h, z)| (h, [z.re, z.im])).collect(),
                theta: prs.rays().iter().zip(&xi.theta).map(|(&r, &t)| (r, t)).collect(),
            }),
        }
    }

    pub fn to_config(&self) -> Result<Configuration> {
        let n = self.half_edges;
        if self.iota.len() != n || self.sigma.len() != n || self.vertex_of.len() != n {
            return Err(schema(format!("iota, sigma and vertex_of must have {n} entries")));
        }
        let mut dense = BTreeMap::new();
        for (k, v) in self.vertices.iter().enumerate() {
            if dense.insert(v.id, k).is_some() {
                return Err(schema(format!("duplicate vertex id {}", v.id)));
            }
        }
        let labels = self
            .vertex_of
            .iter()
            .map(|id| dense.get(id).copied().ok_or_else(|| schema(format!("unknown vertex id {id}"))))
            .collect::<Result<Vec<usize>>>()?;
        let prs = PseudoRotationSystem::with_vertex_labels(self.iota.clone(), self.sigma.clone(), labels)?;
        check_keys(&self.ray_angles, n, "ray_angles")?;
        check_keys(&self.phase, n, "phase")?;
        check_keys(&self.upsilon, n, "upsilon")?;
        check_keys(&self.mu, n, "mu")?;

        let angles = prs
            .rays()
            .iter()
            .map(|r| self.ray_angles.get(r).copied().ok_or_else(|| schema(format!("ray {r} has no angle"))))
            .collect::<Result<Vec<f64>>>()?;
        if let Some(h) = self.ray_angles.keys().find(|&&h| !prs.is_ray(h)) {
            return Err(schema(format!("ray_angles: half-edge {h} is not a ray")));
        }
        let positions = self.vertices.iter().map(|v| Complex64::new(v.position[0], v.position[1])).collect();
        let graph = GeometricGraph::new(prs, positions, angles)?
            .with_vertex_ids(self.vertices.iter().map(|v| v.id).collect())?;
        let prs = graph.prs();

        if let Some(h) = self.phase.keys().find(|&&h| prs.is_ray(h)) {
            return Err(schema(format!("phase: half-edge {h} is a ray")));
        }
        let mut phase = Vec::with_capacity(prs.n_closed_edges());
        for &h in prs.edge_reps() {
            let m = prs.iota(h);
            let value = match (self.phase.get(&h), self.phase.get(&m)) {
                (Some(&a), Some(&b)) => {
                    if wrap_pi(a + b).abs() > ANGLE_TOL {
                        return Err(Error::PhaseNotAntisymmetric(h, m));
                    }
                    a
                }
                (Some(&a), None) => a,
                (None, Some(&b)) => -b,
                (None, None) => return Err(schema(format!("phase missing on edge {h}/{m}"))),
            };
            phase.push(value);
        }

        let upsilon = (0..n).map(|h| self.upsilon.get(&h).copied().unwrap_or(1.0)).collect();
        let mu = (0..n).map(|h| self.mu.get(&h).map_or(Complex64::new(0.0, 0.0), |z| Complex64::new(z[0], z[1]))).collect();
        let mut xi = DeformationVector::zeros(&graph);
        if let Some(rec) = &self.xi {
            for (&h, z) in &rec.x {
                let e = prs.edge_of(h).ok_or_else(|| schema(format!("xi.x: half-edge {h} is not a closed edge")))?;
                xi.x[e] = Complex64::new(z[0], z[1]) * prs.edge_sign(h);
            }
            for (&r, &t) in &rec.theta {
                let k = prs.ray_index(r).ok_or_else(|| schema(format!("xi.theta: half-edge {r} is not a ray")))?;
                xi.theta[k] = t;
            }
        }

        let config = Configuration { graph, phase: PhaseFunction::from_edge_values(phase), upsilon, mu, xi };
        config.validate()?;
        Ok(config)
    }
}

pub fn from_json_str(s: &str) -> Result<Configuration> {
    let file: ConfigFile = serde_json::from_str(s).map_err(|e| schema(e.to_string()))?;
    file.to_config()
}

pub fn to_json_string(config: &Configuration) -> String {
    serde_json::to_string_pretty(&ConfigFile::from_config(config)).expect("config serializes")
}

pub fn load_config(path: impl AsRef<Path>) -> Result<Configuration> {
    from_json_str(&std::fs::read_to_string(path)?)
}

pub fn save_config(config: &Configuration, path: impl AsRef<Path>) -> Result<()> {
    let mut s = to_json_string(config);
    s.push('\n');
    std::fs::write(path, s)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn tree1_round_trip() {
        let c = gallery::tree1(0.0).unwrap();
        let back = from_json_str(&to_json_string(&c)).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.phase.edge_values(), &[0.0]);
    }

    #[test]
    fn rejects_negative_upsilon() {
        let mut f = ConfigFile::from_config(&gallery::tree1(0.0).unwrap());
        f.upsilon.insert(0, -1.0);
        assert_eq!(f.to_config().unwrap_err(), Error::UpsilonNotPositive(0));
    }

    #[test]
    fn rejects_symmetric_phase() {
        let mut f = ConfigFile::from_config(&gallery::tree1(0.0).unwrap());
        f.phase.insert(0, 0.3);
        f.phase.insert(1, 0.3);
        assert_eq!(f.to_config().unwrap_err(), Error::PhaseNotAntisymmetric(0, 1));
    }

    #[test]
    fn phase_on_partner_is_negated() {
        let mut f = ConfigFile::from_config(&gallery::tree1(0.0).unwrap());
        f.phase.clear();
        f.phase.insert(1, 0.3);
        assert_eq!(f.to_config().unwrap().phase.edge_values(), &[-0.3]);
    }

    #[test]
    fn malformed_json_is_schema_error() {
        assert!(matches!(from_json_str("{ nope"), Err(Error::SchemaViolation(_))));
        assert!(matches!(from_json_str("{}"), Err(Error::SchemaViolation(_))));
    }

    #[test]
    fn inconsistent_vertex_of_is_rejected() {
        let mut f = ConfigFile::from_config(&gallery::tree1(0.0).unwrap());
        f.vertex_of.swap(0, 1);
        assert!(f.to_config().is_err());
    }
}
