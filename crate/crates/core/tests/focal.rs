//! Focal surface behaviour at the worked fronts.

mod common;

use focal_core::curvature::normalized_cuspidal_curvature;
use focal_core::fixtures::fixture;
use focal_core::focal::{
    classify_focal, contact_order, focal_k_rational_bounded, focal_point, focal_scalars, focal_surface, FocalClass,
};
use focal_core::{curvature_data, CurvatureData, Error, FrontFrame, FrontModel, Tolerances, VanishingOrder};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn setup(name: &str) -> (FrontModel, FrontFrame, CurvatureData) {
    let f = fixture(name).unwrap();
    let model = FrontModel::new(&f.surface().spec, f.point(), tol()).unwrap();
    let frame = model.frame_at(f.point(), 6).unwrap();
    let data = curvature_data(&frame, tol()).unwrap();
    (model, frame, data)
}

#[test]
fn focal_surface_meets_f_on_the_singular_curve() {
    for name in ["sw-ce", "cbf-sw", "cbf-cbk", "cbf-clp"] {
        let (model, frame, data) = setup(name);
        let c = focal_surface(&frame, &data).unwrap();
        let (cp, fp) = (c.value(), frame.f.value());
        assert!(common::max_abs3([0, 1, 2].map(|k| cp[k] - fp[k])) < 1e-12, "{name}");
        for u in [-0.3, 0.0, 0.2] {
            let (on_curve, _) = focal_point(&model, (u, 0.0)).unwrap();
            let f = model.position((u, 0.0));
            assert!(common::max_abs3([0, 1, 2].map(|k| on_curve[k] - f[k])) < 1e-12, "{name}");
        }
        // The u-derivative vanishes at a second-kind point.
        assert!(common::max_abs3(c.du().value()) < 1e-12, "{name}");
    }
}

#[test]
fn focal_rank_and_front_property() {
    for (name, rank) in [("sw-ce", 1), ("cbf-sw", 1), ("cbf-cbk", 1), ("cuspidal-edge", 2)] {
        let (_, frame, data) = setup(name);
        let r = classify_focal(&frame, &data, tol()).unwrap();
        assert_eq!(r.rank, rank, "{name}");
    }
}

#[test]
fn swallowtail_focal_point_is_non_degenerate() {
    let (_, frame, data) = setup("cbf-sw");
    let r = classify_focal(&frame, &data, tol()).unwrap();
    assert_eq!(r.focal_class, FocalClass::Swallowtail);
    assert!(r.nondegenerate.nonzero);
    assert!(r.is_front.nonzero);
}

#[test]
fn lips_and_beaks_have_degenerate_focal_curves() {
    for name in ["cbf-cbk", "cbf-clp"] {
        let (_, frame, data) = setup(name);
        assert_eq!(contact_order(&frame, &data, tol()), Err(Error::DegenerateContact), "{name}");
        assert_eq!(focal_k_rational_bounded(&frame, &data, tol()).map(|r| r.verdict), Err(Error::DegenerateFocalSingularity));
        let r = classify_focal(&frame, &data, tol()).unwrap();
        assert!(!r.nondegenerate.nonzero);
        assert_eq!(r.contact_order, None);
    }
}

#[test]
fn second_derivative_along_the_unbounded_direction_at_a_cuspidal_edge() {
    // V~(V~ rho^)(p) = e'(0) kappa^(p) lambda_v(p) on the swallowtail front.
    let (model, frame, data) = setup("sw-ce");
    let s = focal_scalars(&data).unwrap();
    let e1 = model.null_function(0.0, 3).unwrap().unwrap().coeff(1);
    let rhs = e1 * data.principal.kappa_hat.value() * frame.lambda.coeff(0, 1);
    assert!((s.vt_vt_rho - rhs).abs() < 1e-12, "{} vs {rhs}", s.vt_vt_rho);
    assert_eq!(s.vt_vt_rho, 1.0);
}

#[test]
fn contact_orders() {
    for (name, order) in [("sw-ce", 1), ("cbf-sw", 2)] {
        let (_, frame, data) = setup(name);
        assert_eq!(contact_order(&frame, &data, tol()), Ok(VanishingOrder::Exact(order)));
    }
}

#[test]
fn rational_boundedness_of_the_focal_curvature() {
    let (_, frame, data) = setup("sw-ce");
    let r = focal_k_rational_bounded(&frame, &data, tol()).unwrap();
    assert!(r.verdict);
    assert!(r.routes_agree);
    let (_, frame, data) = setup("cbf-sw");
    let r = focal_k_rational_bounded(&frame, &data, tol()).unwrap();
    assert!(!r.verdict);
    assert!(r.routes_agree);
}

#[test]
fn cuspidal_curvature_relates_to_the_unbounded_curvature() {
    // kappa^ = lambda_v mu_c on strongly adapted second-kind fronts.
    for name in ["sw-ce", "cbf-cbk", "cbf-clp"] {
        let (_, frame, data) = setup(name);
        let mu = normalized_cuspidal_curvature(&frame).unwrap();
        let khat = data.principal.kappa_hat.value();
        assert!((khat - frame.lambda.coeff(0, 1) * mu).abs() < 1e-12, "{name}: {khat} vs {mu}");
    }
}

#[test]
fn focal_points_off_the_singular_set() {
    let f = fixture("cbf-sw").unwrap();
    let s = f.surface().spec;
    let model = FrontModel::new(&s, f.point(), tol()).unwrap();
    for q in [(0.1, 0.2), (-0.2, 0.05), (0.3, -0.1)] {
        let (c, _) = focal_point(&model, q).unwrap();
        let (k_big, k_small, forms) = common::principal_curvatures(&s, q);
        let fq = s.eval(q.0, q.1);
        let err = [k_big, k_small]
            .iter()
            .map(|k| common::max_abs3([0, 1, 2].map(|i| c[i] - fq[i] - forms.nu[i] / k)))
            .fold(f64::INFINITY, f64::min);
        assert!(err < 1e-10, "{q:?}: {err}");
    }
}
