use saddle_core::embed::{classify, detect_line_arrangement, DEFAULT_PROBES};
use saddle_core::gallery::{self, ExpectedFacts};
use saddle_core::horizontal::{balance_residual, deformation_space, is_rigid, BALANCE_TOL};
use saddle_core::io::{from_json_str, to_json_string};
use saddle_core::vertical::{is_tree, vertical_rigidity};

fn cases() -> Vec<(String, Option<usize>)> {
    let mut v: Vec<(String, Option<usize>)> = gallery::names().into_iter().map(|n| (n.to_string(), None)).collect();
    v.extend([5, 6, 7, 8].map(|k| ("polygram".to_string(), Some(k))));
    v
}

fn observed(name: &str, k: Option<usize>) -> ExpectedFacts {
    let c = gallery::build(name, k).unwrap();
    let g = &c.graph;
    let vr = vertical_rigidity(&c).ok().map(|r| r.is_rigid);
    let exp = gallery::expected(name, k).unwrap();
    ExpectedFacts {
        balanced: balance_residual(g) <= BALANCE_TOL,
        rigid: is_rigid(g),
        dim_d: deformation_space(g).dim,
        n_faces: g.n_faces(),
        tree: is_tree(g),
        line_arrangement: detect_line_arrangement(g),
        vertically_rigid: exp.vertically_rigid.and(vr),
        verdict: exp.verdict.and_then(|_| classify(&c, &DEFAULT_PROBES).ok().map(|v| (v.tier, v.outcome))),
    }
}

#[test]
fn gallery_matches_expected_facts() {
    let mut failures = Vec::new();
    for (name, k) in cases() {
        let want = gallery::expected(&name, k).unwrap();
        let got = observed(&name, k);
        if got != want {
            failures.push(format!("{name} {k:?}:\n  want {want:?}\n  got  {got:?}"));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn gallery_round_trips_through_json() {
    for (name, k) in cases() {
        let c = gallery::build(&name, k).unwrap();
        let s = to_json_string(&c);
        let back = from_json_str(&s).unwrap();
        assert_eq!(back, c, "{name}");
        assert_eq!(to_json_string(&back), s, "{name}");
    }
}

#[test]
fn gyroid4_has_sliding_mode() {
    let r = vertical_rigidity(&gallery::gyroid4().unwrap()).unwrap();
    assert!(!r.is_rigid);
    assert!(r.kernel_dim >= 1);
}
