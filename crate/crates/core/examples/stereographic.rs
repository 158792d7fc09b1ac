//! Stereographic projection of the quadric from its north pole, and back.

use birat::catalog::stereographic_north;
use birat::geom::ProjPoint;
use birat::polyrat::{compose, maps_equal, Point, RationalMap, Surface};

fn main() {
    let (pi, inv) = stereographic_north();
    println!("π_N   = {:?}", pi.coords().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("π_N⁻¹ = {:?}", inv.coords().iter().map(ToString::to_string).collect::<Vec<_>>());

    let south = Point::Proj(ProjPoint::from_ints(&[1, 0, 0, -1]).unwrap());
    println!("south pole ↦ {:?}", pi.evaluate(&south).unwrap());
    let plane = Point::Proj(ProjPoint::from_ints(&[1, 2, 3]).unwrap());
    let up = inv.evaluate(&plane).unwrap();
    println!("[1:2:3] ↦ {up:?} ↦ {:?}", pi.evaluate(&up).unwrap());

    let back = compose(&inv, &pi).unwrap();
    let eq = maps_equal(&back, &RationalMap::identity(Surface::Quadric)).unwrap();
    println!("π_N⁻¹ ∘ π_N = id up to {:?}", eq.factor_strings());
    let fwd = compose(&pi, &inv).unwrap();
    let eq = maps_equal(&fwd, &RationalMap::identity(Surface::P2)).unwrap();
    println!("π_N ∘ π_N⁻¹ = id up to {:?}", eq.factor_strings());
}
