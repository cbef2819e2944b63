//! Frame maps and curvature against jet-free oracles.

mod common;

use focal_core::classify::SingularityClass;
use focal_core::curvature::{
    bounded_curvature_by_division, gauss_mean_regular, limiting_normal_curvature, principal_split, principal_values,
};
use focal_core::fixtures::{adapted_fixtures, fixture, FIXTURES};
use focal_core::focal::{classify_focal, contact_order, focal_bounded_surface};
use focal_core::poly::{Polynomial, Rational};
use focal_core::surface::{check_adapted, null_function};
use focal_core::{classify_point, curvature_data, parse_surface_spec, FrontModel, PointKind, SurfaceSpec, Tolerances};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn spec(src: &str) -> SurfaceSpec {
    parse_surface_spec(src).unwrap().spec
}

#[test]
fn cuspidal_edge_frame() {
    let s = spec("x = u\ny = v^2\nz = v^3\n");
    let model = FrontModel::new(&s, (0.0, 0.0), tol()).unwrap();
    assert_eq!(model.kind(), PointKind::FirstKind);
    let frame = model.frame_at((0.0, 0.0), 4).unwrap();
    // f_v = v (0, 2, 3v), so g(0,0) = (0, 2, 0) and G~ = 4.
    assert_eq!(frame.g().unwrap().value(), [0.0, 2.0, 0.0]);
    assert_eq!(frame.fund.g.value(), 4.0);
    assert_eq!(frame.nu.value(), [0.0, 0.0, 1.0]);
    assert_eq!(frame.lambda.value(), 0.0);
    assert_eq!(frame.lambda.coeff(0, 1), 2.0);
}

#[test]
fn swallowtail_front_has_null_field_u() {
    let f = fixture("sw-ce").unwrap();
    let s = f.surface().spec;
    let jets = focal_core::surface::evaluate_jets(&s, (0.0, 0.0), 2);
    assert_eq!(jets.du().value(), [0.0, 0.0, 0.0]);
    assert_eq!(jets.dv().value(), [-1.0, 0.0, 0.0]);
    // f_u(u, 0) = -u f_v(u, 0), so e(u) = u.
    let e = null_function(&s, (0.0, 0.0), 4).unwrap();
    assert_eq!(e.value(), 0.0);
    assert_eq!(e.coeff(1), 1.0);
    assert_eq!(e.coeff(2), 0.0);
}

#[test]
fn frontal_that_is_not_a_front() {
    for src in ["x = u\ny = v^2\nz = 0\n", "x = u\ny = v^2\nz = v^4\n"] {
        let r = classify_point(&spec(src), (0.0, 0.0), 6, tol()).unwrap();
        assert_eq!(r.class, SingularityClass::NonFront, "{src}");
    }
}

#[test]
fn limiting_normal_curvature_of_a_bent_cuspidal_edge() {
    // nu(0,0) = (0,0,1) and f_uu = (0,0,2), |f_u| = 1.
    let s = spec("x = u\ny = v^2\nz = v^3 + u^2\n");
    let frame = FrontModel::new(&s, (0.0, 0.0), tol()).unwrap().frame_at((0.0, 0.0), 6).unwrap();
    assert!((limiting_normal_curvature(&frame, tol()).unwrap() - 2.0).abs() < 1e-12);
    let straight = spec("x = u\ny = v^2\nz = v^3\n");
    let frame = FrontModel::new(&straight, (0.0, 0.0), tol()).unwrap().frame_at((0.0, 0.0), 6).unwrap();
    assert_eq!(limiting_normal_curvature(&frame, tol()).unwrap(), 0.0);
}

#[test]
fn unbounded_curvature_extension_matches_the_limit() {
    // kappa_hat(p) = lim lambda * kappa_unbounded along the v-direction.
    for name in ["cuspidal-edge", "sw-ce", "cbf-cbk"] {
        let f = fixture(name).unwrap();
        let s = f.surface().spec;
        let model = FrontModel::new(&s, (0.0, 0.0), tol()).unwrap();
        let frame = model.frame_at((0.0, 0.0), 6).unwrap();
        let khat = principal_split(&frame, tol()).unwrap().kappa_hat.value();
        let v = 1e-6;
        let (k_big, _, forms) = common::principal_curvatures(&s, (0.0, v));
        let limit = forms.area * k_big * model.orientation();
        assert!((khat - limit).abs() < 1e-4 * khat.abs().max(1.0), "{name}: {khat} vs {limit}");
    }
}

#[test]
fn cylinder_focal_surface_is_the_axis() {
    // Taylor polynomial of the unit cylinder y^2 + (z - 1)^2 = 1.
    let s = spec("x = u\ny = v\nz = v^2/2 + v^4/8\n");
    let model = FrontModel::new(&s, (0.0, 0.0), tol()).unwrap();
    let c = focal_bounded_surface(&model, (0.0, 0.0)).unwrap();
    assert!(common::max_abs3([c[0], c[1], c[2] - 1.0]) < 1e-12, "{c:?}");
    let c = focal_bounded_surface(&model, (0.7, 0.0)).unwrap();
    assert!(common::max_abs3([c[0] - 0.7, c[1], c[2] - 1.0]) < 1e-12, "{c:?}");
}

#[test]
fn sphere_focal_point_is_the_centre() {
    let s = spec("x = u\ny = v\nz = (u^2 + v^2)/2 + (u^2 + v^2)^2/8\n");
    let model = FrontModel::new(&s, (0.0, 0.0), tol()).unwrap();
    let c = focal_bounded_surface(&model, (0.0, 0.0)).unwrap();
    assert!(common::max_abs3([c[0], c[1], c[2] - 1.0]) < 1e-12, "{c:?}");
}

#[test]
fn gauss_and_mean_curvature_off_the_singular_set() {
    for f in adapted_fixtures() {
        let s = f.surface().spec;
        let model = FrontModel::new(&s, f.point(), tol()).unwrap();
        let q = (0.0, 0.1);
        let (k, h) = gauss_mean_regular(&model, q).unwrap();
        let (ka, kb, _) = common::principal_curvatures(&s, q);
        assert!((k - ka * kb).abs() < 1e-9 * (ka * kb).abs().max(1.0), "{}: K {k} vs {}", f.name, ka * kb);
        let mean = 0.5 * (ka + kb) * model.orientation();
        assert!((h - mean).abs() < 1e-9 * mean.abs().max(1.0), "{}: H {h} vs {mean}", f.name);
    }
}

#[test]
fn principal_values_of_random_immersions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 40 {
        let s = common::random_surface(&mut rng);
        let q = (0.05, -0.03);
        let (ka, kb, _) = common::principal_curvatures(&s, q);
        if ka.abs() - kb.abs() < 0.1 {
            continue;
        }
        let frame = FrontModel::new(&s, q, tol()).unwrap().frame_at(q, 2).unwrap();
        let (kappa, kappa_hat) = principal_values(&frame);
        let lambda = frame.lambda.value();
        assert!((kappa - ka).abs() < 1e-9 * ka.abs().max(1.0));
        assert!((kappa_hat - lambda * kb).abs() < 1e-9 * kb.abs().max(1.0));
        checked += 1;
    }
}

#[test]
fn bounded_curvature_routes_agree() {
    for f in adapted_fixtures() {
        let model = FrontModel::new(&f.surface().spec, f.point(), tol()).unwrap();
        let frame = model.frame_at(f.point(), 6).unwrap();
        let p = principal_split(&frame, tol()).unwrap();
        let by_division = bounded_curvature_by_division(&frame, &p, tol()).unwrap();
        for d in 0..=by_division.order() {
            for j in 0..=d {
                let (a, b) = (p.kappa.coeff(d - j, j), by_division.coeff(d - j, j));
                assert!((a - b).abs() < 1e-9 * a.abs().max(1.0), "{}: ({},{}) {a} vs {b}", f.name, d - j, j);
            }
        }
    }
}

#[test]
fn fixtures_classify_as_listed() {
    for f in FIXTURES {
        let r = classify_point(&f.surface().spec, f.point(), 6, tol()).unwrap();
        assert_eq!(r.class, f.expected_class, "{}", f.name);
    }
}

#[test]
fn adaptedness_of_the_worked_examples() {
    for (name, strong) in [("sw-ce", true), ("cbf-cbk", true), ("cbf-clp", true), ("cbf-sw", false)] {
        let st = check_adapted(&fixture(name).unwrap().surface().spec, (0.0, 0.0));
        assert_eq!(st.kind, Some(PointKind::SecondKind), "{name}");
        assert_eq!(st.strongly_adapted && st.unit_speed, strong, "{name}");
    }
}

fn reparametrize(s: &SurfaceSpec, pu: &Polynomial, pv: &Polynomial) -> SurfaceSpec {
    s.compose(pu, pv).unwrap()
}

fn cubic(c: Rational) -> Polynomial {
    Polynomial::monomial(c, 3, 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The type of f is invariant under `v -> v + c u^3`, `u -> u + c v^2`.
    #[test]
    fn singularity_class_is_invariant(k in 0usize..FIXTURES.len(), num in prop::sample::select(vec![-1i64, 1])) {
        let f = &FIXTURES[k];
        let c = Rational::new(num, 2);
        let pu = Polynomial::u().checked_add(&Polynomial::monomial(c, 0, 2)).unwrap();
        let pv = Polynomial::v().checked_add(&cubic(c)).unwrap();
        let s = reparametrize(&f.surface().spec, &pu, &pv);
        let r = classify_point(&s, f.point(), 6, tol()).unwrap();
        prop_assert_eq!(r.class, f.expected_class);
    }

    /// `v -> v (1 + c u)` keeps the singular curve on the axis; the focal type
    /// and the contact order are unchanged.
    #[test]
    fn focal_class_is_invariant(k in 0usize..4, num in prop::sample::select(vec![-1i64, 1])) {
        let f = adapted_fixtures().nth(k).unwrap();
        let c = Rational::new(num, 2);
        let pv = Polynomial::v().checked_add(&Polynomial::monomial(c, 1, 1)).unwrap();
        let s = reparametrize(&f.surface().spec, &Polynomial::u(), &pv);
        let orig = FrontModel::new(&f.surface().spec, f.point(), tol()).unwrap();
        let model = FrontModel::new(&s, f.point(), tol()).unwrap();
        let report = |m: &FrontModel| {
            let frame = m.frame_at(f.point(), 6).unwrap();
            let data = curvature_data(&frame, tol()).unwrap();
            (classify_focal(&frame, &data, tol()).unwrap().focal_class, contact_order(&frame, &data, tol()).ok())
        };
        prop_assert_eq!(report(&model), report(&orig));
    }
}
