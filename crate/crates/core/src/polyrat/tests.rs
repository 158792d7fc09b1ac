use proptest::prelude::*;

use super::*;
use crate::exactfield::{q, TowerElem};
use crate::geom::{cayley_rotation, sphere_from_plane, ProjPoint, SpherePoint};

fn p2(coords: &[&str]) -> RationalMap {
    RationalMap::from_strs(Surface::P2, Surface::P2, coords, None).unwrap()
}

fn sigma0() -> RationalMap {
    p2(&["y*z", "x*z", "x*y"])
}

fn sigma1() -> RationalMap {
    p2(&["y^2+z^2", "x*y", "x*z"])
}

fn pi_n() -> RationalMap {
    RationalMap::from_strs(Surface::Quadric, Surface::P2, &["x", "y", "w-z"], None).unwrap()
}

fn pi_n_inv() -> RationalMap {
    RationalMap::from_strs(
        Surface::P2,
        Surface::Quadric,
        &["x^2+y^2+z^2", "2*x*z", "2*y*z", "x^2+y^2-z^2"],
        None,
    )
    .unwrap()
}

fn proj(c: &[i64]) -> Point {
    Point::Proj(ProjPoint::from_ints(c).unwrap())
}

fn sphere_vars() -> Vars {
    Surface::Sphere.vars()
}

#[test]
fn evaluate_examples() {
    assert_eq!(sigma0().evaluate(&proj(&[1, 1, 1])).unwrap(), proj(&[1, 1, 1]));
    assert_eq!(sigma0().evaluate(&proj(&[0, 0, 1])), Err(PolyError::Indeterminate));
    let south = pi_n().evaluate(&proj(&[1, 0, 0, -1])).unwrap();
    assert_eq!(south, proj(&[0, 0, 1]));
    let Point::Proj(p) = &south else { panic!() };
    assert_eq!(p.flat()[2], TowerElem::one());
    assert_eq!(pi_n().evaluate(&proj(&[1, 0, 0, 1])), Err(PolyError::Indeterminate));
}

#[test]
fn sigma0_square_has_factor_xyz() {
    let s = sigma0();
    let c = compose(&s, &s).unwrap();
    assert_eq!(c.coords()[0].to_string(), "x^2*y*z");
    let eq = maps_equal(&c, &RationalMap::identity(Surface::P2)).unwrap();
    assert_eq!(eq.factor_strings(), ["x*y*z"]);
}

#[test]
fn sigma1_square_has_factor() {
    let s = sigma1();
    let eq = maps_equal(&compose(&s, &s).unwrap(), &RationalMap::identity(Surface::P2)).unwrap();
    assert_eq!(eq.factor_strings(), ["x*(y^2+z^2)"]);
}

#[test]
fn stereographic_round_trips() {
    let back = compose(&pi_n_inv(), &pi_n()).unwrap();
    let eq = maps_equal(&back, &RationalMap::identity(Surface::Quadric)).unwrap();
    assert_eq!(eq.factor_strings(), ["2*(w-z)"]);
    let fwd = compose(&pi_n(), &pi_n_inv()).unwrap();
    let eq = maps_equal(&fwd, &RationalMap::identity(Surface::P2)).unwrap();
    assert_eq!(eq.factor_strings(), ["z"]);
}

#[test]
fn different_maps_get_a_witness() {
    let eq = maps_equal(&sigma0(), &sigma1()).unwrap();
    assert_eq!(eq, MapEquality::NotEqual(Some(proj(&[1, 2, 3]))));
}

#[test]
fn mismatched_surfaces_are_rejected() {
    assert!(matches!(compose(&sigma0(), &pi_n_inv()), Err(PolyError::SurfaceMismatch(_))));
    assert!(matches!(
        maps_equal(&sigma0(), &pi_n()),
        Err(PolyError::SurfaceMismatch(_))
    ));
}

#[test]
fn sphere_reduction_examples() {
    let v = sphere_vars();
    let p = |s| MultiPoly::parse(&v, s).unwrap();
    assert!(reduce_mod_sphere(&p("x^2+y^2+z^2-1")).is_zero());
    assert_eq!(reduce_mod_sphere(&p("z^3")), p("z-x^2*z-y^2*z"));
    assert_eq!(reduce_mod_sphere(&p("x^2")), p("x^2"));
}

#[test]
fn reduction_annihilates_sphere_multiples() {
    let v = sphere_vars();
    let rel = MultiPoly::parse(&v, "x^2+y^2+z^2-1").unwrap();
    for s in ["x*z^3-2", "y^4*z^5+x", "1/3*z^2*y-x*y*z+7"] {
        let m = MultiPoly::parse(&v, s).unwrap();
        assert!(reduce_mod_sphere(&(&m * &rel)).is_zero(), "{s}");
        let r = reduce_mod_sphere(&m);
        assert!(r.degree_in(2) <= 1);
        assert_eq!(reduce_mod_sphere(&r), r);
    }
}

#[test]
fn non_homogeneous_projective_map_is_rejected() {
    let r = RationalMap::from_strs(Surface::P2, Surface::P2, &["x", "y^2", "z"], None);
    assert!(matches!(r, Err(PolyError::NotHomogeneous(_))));
}

fn rotation_z() -> RationalMap {
    RationalMap::from_strs(Surface::Sphere, Surface::Sphere, &["-y", "x", "z"], None).unwrap()
}

fn sphere_pt(a: i64, b: i64, c: i64) -> SpherePoint {
    sphere_from_plane(&ProjPoint::from_ints(&[a, b, c]).unwrap())
}

#[test]
fn frames_conjugate_sphere_maps() {
    let frame = cayley_rotation(&q(1, 2), &q(-1, 3), &q(2, 1));
    let framed = rotation_z().with_frame(frame.clone()).unwrap();
    let flat = framed.materialized();
    assert!(flat.frame().is_none());
    assert!(framed.sphere_certificate());
    for (a, b, c) in [(1, 2, 3), (2, -1, 5), (0, 1, 1)] {
        let p = sphere_pt(a, b, c);
        let want = frame.transpose().apply_point(&rotation_z().apply_sphere(&frame.apply_point(&p)).unwrap());
        assert_eq!(framed.apply_sphere(&p).unwrap(), want);
        assert_eq!(flat.apply_sphere(&p).unwrap(), want);
    }
    let other = cayley_rotation(&q(0, 1), &q(1, 1), &q(1, 4));
    let re = framed.reframed(&other);
    assert_eq!(re.frame(), Some(&other));
    let p = sphere_pt(3, 4, -2);
    assert_eq!(re.apply_sphere(&p).unwrap(), framed.apply_sphere(&p).unwrap());
    assert!(maps_equal(&re, &framed).unwrap().is_equal());
}

#[test]
fn affine_fraction_composition() {
    let inv = RationalMap::from_strs(Surface::A2, Surface::A2, &["x", "1"], Some(&["1", "y"])).unwrap();
    let sq = compose(&inv, &inv).unwrap();
    assert!(maps_equal(&sq, &RationalMap::identity(Surface::A2)).unwrap().is_equal());
    let shear = RationalMap::from_strs(Surface::A2, Surface::A2, &["x+y^2", "y"], None).unwrap();
    let c = compose(&inv, &shear).unwrap();
    let pt = Point::Affine(vec![TowerElem::from_int(1), TowerElem::from_int(2)]);
    assert_eq!(
        c.evaluate(&pt).unwrap(),
        Point::Affine(vec![TowerElem::from_int(5), TowerElem::rational(q(1, 2))])
    );
    let zero = Point::Affine(vec![TowerElem::from_int(1), TowerElem::zero()]);
    assert_eq!(c.evaluate(&zero), Err(PolyError::DenominatorZero));
}

proptest! {
    #[test]
    fn evaluate_commutes_with_compose(a in -6i64..7, b in -6i64..7, c in -6i64..7) {
        prop_assume!(a != 0 || b != 0 || c != 0);
        let pt = proj(&[a, b, c]);
        for (g, f) in [(sigma1(), sigma0()), (sigma0(), sigma1()), (pi_n(), pi_n_inv())] {
            let gf = compose(&g, &f).unwrap();
            let stepwise = f.evaluate(&pt).and_then(|m| g.evaluate(&m));
            if let Ok(want) = stepwise {
                prop_assert_eq!(gf.evaluate(&pt).unwrap(), want);
            }
        }
    }
}

#[test]
fn framed_compose_matches_pointwise() {
    let f1 = cayley_rotation(&q(1, 2), &q(0, 1), &q(1, 3));
    let f2 = cayley_rotation(&q(-1, 1), &q(2, 3), &q(0, 1));
    let twist = RationalMap::from_strs(
        Surface::Sphere,
        Surface::Sphere,
        &["(1-z^2)*x-2*z*y", "2*z*x+(1-z^2)*y", "z"],
        Some(&["1+z^2", "1+z^2", "1"]),
    )
    .unwrap();
    let g = twist.clone().with_frame(f1).unwrap();
    let f = twist.with_frame(f2).unwrap();
    let gf = compose(&g, &f).unwrap();
    assert!(gf.sphere_certificate());
    for (a, b, c) in [(1, 2, 3), (-4, 1, 2), (0, 3, 1), (2, 2, -1)] {
        let p = sphere_pt(a, b, c);
        let want = g.apply_sphere(&f.apply_sphere(&p).unwrap()).unwrap();
        assert_eq!(gf.apply_sphere(&p).unwrap(), want);
    }
}
