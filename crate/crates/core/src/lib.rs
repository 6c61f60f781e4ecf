//! Balance, rigidity and embeddedness analysis of saddle-tower gluing
//! configurations.
//!
//! A configuration is a planar graph with rays (a pseudo rotation system with
//! a geometric representation), an antisymmetric phase function on its closed
//! edges, tower parameters `upsilon`/`mu`, and a prescribed deformation `xi`.
//! The crate checks horizontal and vertical balance and rigidity, solves the
//! first-order and flat-order deformation systems, continues the analytic
//! system in `eps`, and decides whether parallel Scherk ends bend apart.

pub mod config;
pub mod discrete;
pub mod embed;
pub mod error;
pub mod gallery;
pub mod geom;
pub mod horizontal;
pub mod io;
pub mod linalg;
pub mod model;
pub mod report;
pub mod svg;
pub mod vertical;

pub use config::{Configuration, DeformationVector, PhaseFunction};
pub use error::{Error, Result};
pub use model::{GeometricGraph, GraphBuilder, PseudoRotationSystem};
