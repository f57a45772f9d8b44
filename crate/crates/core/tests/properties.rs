use std::f64::consts::{PI, TAU};

use proptest::prelude::*;

use barrow_core::bisectors::{bisector_foot, BisectorForms};
use barrow_core::inequalities::side_weights;
use barrow_core::{
    apex_angles, barycentric, bisectors, classify, dergiades_report, evaluate, identity_residuals,
    signed_bisectors, signed_distances, stmt_slack, vertex_distances, Point2, Region, StatementKind,
    Triangle, DEFAULT_EPS,
};

fn coord() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn point() -> impl Strategy<Value = Point2> {
    (coord(), coord()).prop_map(|(x, y)| Point2::new(x, y))
}

fn triangle() -> impl Strategy<Value = Triangle> {
    (point(), point(), point())
        .prop_filter_map("well shaped", |(a, b, c)| {
            let t = Triangle::new(a, b, c).ok()?;
            (t.signed_area().abs() > 1e-3 * t.diameter() * t.diameter()).then_some(t)
        })
}

/// A point that is not within 1e-6 of a vertex or 1e-9 of a sideline, where
/// the regions are unambiguous.
fn generic(t: &Triangle, m: Point2) -> bool {
    let bc = barycentric(t, m);
    bc.as_array().iter().all(|x| x.abs() > 1e-9)
        && t.vertices().iter().all(|v| v.distance(m) > 1e-6 * t.diameter())
}

fn tol(t: &Triangle, m: Point2) -> f64 {
    1e-9 * vertex_distances(t, m).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn barycentric_reconstructs_point(t in triangle(), m in point()) {
        let bc = barycentric(&t, m);
        prop_assert!((bc.sum() - 1.0).abs() < 1e-12);
        let back = t.point_at(bc);
        prop_assert!(back.distance(m) <= 1e-11 * (1.0 + m.norm() + t.diameter()));
    }

    #[test]
    fn similarity_preserves_region(t in triangle(), m in point(), k in 0.1..10.0f64,
                                   theta in 0.0..TAU, dx in coord(), dy in coord()) {
        prop_assume!(generic(&t, m));
        let (s, c) = theta.sin_cos();
        let map = |p: Point2| Point2::new(k * (c * p.x - s * p.y) + dx, k * (s * p.x + c * p.y) + dy);
        let [a, b, cc] = t.vertices();
        let t2 = Triangle::new(map(a), map(b), map(cc)).unwrap();
        let bc = barycentric(&t, m).as_array();
        prop_assume!(bc.iter().all(|x| x.abs() > 1e-6));
        prop_assert_eq!(classify(&t, m, DEFAULT_EPS).unwrap(), classify(&t2, map(m), DEFAULT_EPS).unwrap());
    }

    #[test]
    fn signed_distance_and_bisector_signs_follow_barycentrics(t in triangle(), m in point()) {
        prop_assume!(generic(&t, m));
        let bc = barycentric(&t, m).as_array();
        let d = signed_distances(&t, m).as_array();
        let lp = signed_bisectors(&t, m, DEFAULT_EPS).unwrap().as_array();
        for i in 0..3 {
            prop_assert_eq!(bc[i] > 0.0, d[i] > 0.0);
            prop_assert_eq!(bc[i] > 0.0, lp[i] > 0.0);
        }
    }

    #[test]
    fn closed_forms_agree_with_foot(m in point(), b in point(), c in point()) {
        let f = BisectorForms::compute(m, b, c);
        prop_assume!(!f.collinear && f.r_b > 1e-6 && f.r_c > 1e-6);
        prop_assert!(f.relative_disagreement() <= 1e-10);
        let foot = bisector_foot(m, b, c).unwrap();
        let oracle = m.distance(foot);
        prop_assert!((f.cosine - oracle).abs() <= 1e-9 * oracle.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn apex_angles_close_up(t in triangle(), m in point()) {
        prop_assume!(generic(&t, m));
        let ang = apex_angles(&t, m).unwrap().as_array();
        let region = classify(&t, m, DEFAULT_EPS).unwrap();
        ang.iter().for_each(|a| assert!((0.0..=PI).contains(a)));
        let [a, b, c] = ang;
        // the three rays around M either split the full turn (interior) or
        // one angle is the sum of the other two
        let ok = match region {
            Region::Lambda0 => (a + b + c - 2.0 * PI).abs() < 1e-9,
            _ => [(a, b, c), (b, c, a), (c, a, b)].iter().any(|(x, y, z)| (x - y - z).abs() < 1e-9),
        };
        prop_assert!(ok, "{:?} {:?}", region, ang);
    }

    #[test]
    fn slacks_non_negative(t in triangle(), m in point()) {
        prop_assume!(generic(&t, m));
        prop_assert!(evaluate(&t, m, DEFAULT_EPS).unwrap().slack >= -tol(&t, m));
        prop_assert!(dergiades_report(&t, m, DEFAULT_EPS).unwrap().slack >= -tol(&t, m));
    }

    #[test]
    fn slack_is_homogeneous(t in triangle(), m in point(), k in 0.01..100.0f64) {
        prop_assume!(generic(&t, m));
        let [a, b, c] = t.vertices();
        let tk = Triangle::new(a * k, b * k, c * k).unwrap();
        let s1 = evaluate(&t, m, DEFAULT_EPS).unwrap();
        let s2 = evaluate(&tk, m * k, DEFAULT_EPS).unwrap();
        prop_assert_eq!(s1.region, s2.region);
        let scale = k * s1.lhs;
        prop_assert!((s2.slack - k * s1.slack).abs() <= 1e-10 * scale);
    }

    #[test]
    fn interior_bisectors_dominate_distances(t in triangle(), u in 0.001..1.0f64, v in 0.001..1.0f64, w in 0.001..1.0f64) {
        let s = u + v + w;
        let m = t.point_at(barycentric_from(u / s, v / s, w / s));
        prop_assume!(classify(&t, m, DEFAULT_EPS).unwrap() == Region::Lambda0);
        let l = bisectors(&t, m, DEFAULT_EPS).unwrap().as_array();
        let d = signed_distances(&t, m).unsigned();
        for i in 0..3 {
            prop_assert!(l[i] >= d[i] - 1e-12 * t.diameter());
        }
    }

    #[test]
    fn side_weights_at_least_two(t in triangle()) {
        prop_assert!(side_weights(&t).as_array().iter().all(|&w| w >= 2.0 - 1e-15));
    }

    #[test]
    fn statements_hold(p in 0.0..10.0f64, q in 0.0..10.0f64, r in 0.0..10.0f64,
                       beta in 0.0..PI, frac in 0.0..1.0f64) {
        let gamma = (PI - beta) * frac;
        for kind in StatementKind::ALL {
            let s = stmt_slack(kind, p, q, r, beta, gamma).unwrap();
            prop_assert!(s >= -1e-12 * (p + q + r), "{:?} {}", kind, s);
        }
    }

    #[test]
    fn identities_vanish(p in 0.0..10.0f64, q in 0.0..10.0f64, r in 0.0..10.0f64,
                         alpha in 0.0..=PI, frac in 0.0..1.0f64) {
        let res = identity_residuals(p, q, r, alpha * frac, alpha).unwrap();
        prop_assert!(res.max() <= 1e-12 * (p + q + r), "{:?}", res);
    }
}

fn barycentric_from(u: f64, v: f64, w: f64) -> barrow_core::BaryCoords {
    barrow_core::BaryCoords { u, v, w }
}
