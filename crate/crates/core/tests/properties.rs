use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
use proptest::prelude::*;

use saddle_core::discrete::{combine, curl_all, div_all, face_cycles, AntisymmetricFn};
use saddle_core::embed::lemma_lines_residual;
use saddle_core::gallery::line_arrangement;
use saddle_core::geom::wrap_pi;
use saddle_core::horizontal::{
    certify_rigidity_simple, continuation_solve_with, deformation_space, half_edge_angles, is_rigid, solve_zeta_dot,
};
use saddle_core::io::{from_json_str, to_json_string};
use saddle_core::model::orientation;
use saddle_core::vertical::{gauge_transform, k_values};
use saddle_core::{Configuration, DeformationVector, GeometricGraph, GraphBuilder, PhaseFunction};

/// Generic arrangements of 3-5 lines: directions at least 0.2 rad apart
/// modulo pi, and every edge longer than 0.05.
fn arrangement() -> impl Strategy<Value = GeometricGraph> {
    (3usize..=5)
        .prop_flat_map(|n| (prop::collection::vec(0.0..PI, n), prop::collection::vec(-1.0..1.0f64, n)))
        .prop_filter_map("degenerate arrangement", |(angles, offsets)| {
            for i in 0..angles.len() {
                for j in 0..i {
                    let d = (angles[i] - angles[j]).rem_euclid(PI);
                    if d.min(PI - d) < 0.2 {
                        return None;
                    }
                }
            }
            let lines: Vec<(f64, f64)> = angles.into_iter().zip(offsets).collect();
            let g = line_arrangement(&lines).ok()?;
            let expected_vertices = lines.len() * (lines.len() - 1) / 2;
            (g.n_vertices() == expected_vertices && g.min_length()? > 0.05).then_some(g)
        })
}

/// A single vertex with 2-7 rays in distinct directions.
fn star() -> impl Strategy<Value = GeometricGraph> {
    prop::collection::vec(0.0..2.0 * PI, 2..8).prop_filter_map("coincident rays", |mut a| {
        a.sort_by(f64::total_cmp);
        if a.windows(2).any(|w| w[1] - w[0] < 1e-3) || a[0] + 2.0 * PI - a[a.len() - 1] < 1e-3 {
            return None;
        }
        let mut b = GraphBuilder::new();
        let v = b.vertex(Complex64::new(0.0, 0.0));
        for t in a {
            b.ray(v, t);
        }
        b.build().ok()
    })
}

fn random_vector(g: &GeometricGraph, values: &[f64]) -> DeformationVector {
    let n = DeformationVector::dim_for(g);
    DeformationVector::from_coords(g, &DVector::from_fn(n, |i, _| values[i % values.len()]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn euler_relation_holds(g in arrangement()) {
        prop_assert_eq!(g.euler_characteristic(), 1);
        prop_assert_eq!(face_cycles(g.prs()).len(), g.n_faces());
    }

    #[test]
    fn orientable_implies_even_degrees(g in prop_oneof![star(), arrangement()]) {
        if orientation(&g).is_some() {
            for v in 0..g.n_vertices() {
                prop_assert_eq!(g.prs().degree(v) % 2, 0);
            }
        }
    }

    #[test]
    fn stored_edge_vectors_are_antisymmetric(g in arrangement()) {
        let prs = g.prs();
        for &h in prs.edge_reps() {
            prop_assert_eq!(g.x(h), -g.x(prs.iota(h)));
            prop_assert_eq!(g.unit(h), -g.unit(prs.iota(h)));
        }
    }

    #[test]
    fn line_arrangements_are_rigid_with_dim_r_minus_2(g in arrangement()) {
        prop_assert!(is_rigid(&g));
        prop_assert_eq!(deformation_space(&g).dim, g.n_rays() - 2);
        prop_assert!(certify_rigidity_simple(&g).is_ok());
    }

    #[test]
    fn curl_and_div_are_linear(
        g in arrangement(),
        a in -2.0..2.0f64,
        b in -2.0..2.0f64,
        seed in prop::collection::vec(-1.0..1.0f64, 8),
    ) {
        let prs = g.prs();
        let f = AntisymmetricFn::from_fn(prs, |h| seed[h % 8]);
        let k = AntisymmetricFn::from_fn(prs, |h| seed[(h * 3 + 1) % 8]);
        let lin = curl_all(prs, &combine(a, &f, b, &k));
        let sep: Vec<f64> = curl_all(prs, &f).iter().zip(curl_all(prs, &k)).map(|(x, y)| a * x + b * y).collect();
        for (x, y) in lin.iter().zip(&sep) {
            prop_assert!((x - y).abs() < 1e-12);
        }

        let n = prs.n_half_edges();
        let u: Vec<f64> = (0..n).map(|h| seed[h % 8]).collect();
        let w: Vec<f64> = (0..n).map(|h| seed[(h + 5) % 8]).collect();
        let sum: Vec<f64> = u.iter().zip(&w).map(|(x, y)| a * x + b * y).collect();
        for ((s, x), y) in div_all(prs, &sum).iter().zip(div_all(prs, &u)).zip(div_all(prs, &w)) {
            prop_assert!((s - (a * x + b * y)).abs() < 1e-12);
        }
    }

    #[test]
    fn phase_is_antisymmetric_mod_2pi(vals in prop::collection::vec(-10.0..10.0f64, 1..6)) {
        let mut b = GraphBuilder::new();
        let vs: Vec<usize> = (0..=vals.len()).map(|i| b.vertex(Complex64::new(i as f64, 0.0))).collect();
        for w in vs.windows(2) {
            b.edge(w[0], w[1]);
        }
        b.ray(vs[0], PI);
        b.ray(*vs.last().unwrap(), 0.0);
        let g = b.build().unwrap();
        let phi = PhaseFunction::from_edge_values(vals);
        let prs = g.prs();
        for &h in prs.edge_reps() {
            let s = wrap_pi(phi.at(prs, h) + phi.at(prs, prs.iota(h)));
            prop_assert!(s.abs() < 1e-12);
            prop_assert!(phi.at(prs, h) > -PI && phi.at(prs, h) <= PI);
        }
    }

    #[test]
    fn zeta_dot_lies_in_d_perp(g in arrangement(), mu in prop::collection::vec(-1.0..1.0f64, 16)) {
        let n = g.prs().n_half_edges();
        let mu: Vec<Complex64> = (0..n).map(|h| Complex64::new(mu[h % 16], mu[(h + 7) % 16])).collect();
        let c = Configuration::new(g).with_mu(mu);
        let zd = solve_zeta_dot(&c).unwrap();
        let d = deformation_space(&c.graph);
        let proj = d.basis.transpose() * zd.to_coords();
        prop_assert!(proj.amax() < 1e-10);
    }

    #[test]
    fn gauge_law(g in arrangement(), vals in prop::collection::vec(-1.0..1.0f64, 12), lr in -1.0..1.0f64, li in -1.0..1.0f64) {
        let c = Configuration::new(g);
        let chi_dot = random_vector(&c.graph, &vals);
        let lambda = Complex64::new(lr, li);
        let k0 = k_values(&c, &chi_dot);
        let k1 = k_values(&c, &gauge_transform(&c.graph, &chi_dot, lambda));
        for h in (0..c.prs().n_half_edges()).filter(|&h| !c.prs().is_ray(h)) {
            let want = (-c.graph.length(h) * lr).exp();
            prop_assert!((k1[h] / k0[h] - want).abs() <= 1e-10 * want);
        }
    }

    #[test]
    fn save_load_is_identity(
        g in arrangement(),
        vals in prop::collection::vec(-PI..PI, 12),
        ups in prop::collection::vec(0.1..5.0f64, 12),
    ) {
        let ne = g.n_closed_edges();
        let n = g.prs().n_half_edges();
        let phase = PhaseFunction::from_edge_values((0..ne).map(|e| vals[e % 12]).collect());
        let xi = random_vector(&g, &vals);
        let mut c = Configuration::new(g).with_phase(phase).with_xi(xi);
        c.upsilon = (0..n).map(|h| ups[h % 12]).collect();
        c.mu = (0..n).map(|h| Complex64::new(vals[(h + 1) % 12], ups[h % 12])).collect();
        let back = from_json_str(&to_json_string(&c)).unwrap();
        prop_assert_eq!(back, c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// Continuation keeps every line straight on line arrangements.
    #[test]
    fn continuation_keeps_lines_straight(
        g in arrangement(),
        mu in prop::collection::vec(-0.5..0.5f64, 16),
        w in prop::collection::vec(-0.5..0.5f64, 16),
    ) {
        let n = g.prs().n_half_edges();
        let mu: Vec<Complex64> = (0..n).map(|h| Complex64::new(mu[h % 16], mu[(h + 3) % 16])).collect();
        let d = deformation_space(&g);
        let coeff = DVector::from_fn(d.dim, |i, _| w[i % 16]);
        let xi = DeformationVector::from_coords(&g, &(&d.basis * coeff));
        let c = Configuration::new(g).with_mu(mu);
        for eps in [0.05, 0.02] {
            let cont = continuation_solve_with(&c, eps, &xi).unwrap();
            let theta = half_edge_angles(&c.graph, &cont.chi);
            prop_assert!(lemma_lines_residual(&c.graph, &theta).unwrap() < 1e-9);
        }
    }
}
