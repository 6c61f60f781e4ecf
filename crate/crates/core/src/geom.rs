//! Angle and planar-geometry helpers shared by the graph model and the
//! analysis modules.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

/// Angular tolerance (radians) for collinearity and parallelism predicates.
pub const ANGLE_TOL: f64 = 1e-9;
/// Positional tolerance for coincidence and incidence predicates.
pub const POS_TOL: f64 = 1e-9;

/// Wraps an angle into `(-pi, pi]`. Values already in range are returned
/// unchanged, bit for bit.
pub fn wrap_pi(x: f64) -> f64 {
    if x > -PI && x <= PI {
        return x;
    }
    let r = (x + PI).rem_euclid(TAU) - PI;
    if r <= -PI {
        r + TAU
    } else {
        r
    }
}

/// Wraps an angle into `[0, 2pi)`, snapping values within `ANGLE_TOL` of
/// `2pi` to zero.
pub fn wrap_2pi(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r > TAU - ANGLE_TOL {
        0.0
    } else {
        r
    }
}

/// True when two directions agree modulo `2pi`.
pub fn same_direction(a: f64, b: f64) -> bool {
    wrap_pi(a - b).abs() <= ANGLE_TOL
}

/// True when two directions agree modulo `pi`.
pub fn collinear_directions(a: f64, b: f64) -> bool {
    let d = wrap_pi(a - b).abs();
    d <= ANGLE_TOL || (PI - d) <= ANGLE_TOL
}

/// z-component of the planar cross product.
pub fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

pub fn dot(a: Complex64, b: Complex64) -> f64 {
    a.re * b.re + a.im * b.im
}

pub fn unit(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}
