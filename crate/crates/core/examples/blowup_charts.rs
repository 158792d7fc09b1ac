//! Charts of the blow-up of the plane at the origin.

use birat::catalog::{blowup_chart_maps, blowup_phi0_inv, BlowupChartPoint};
use birat::exactfield::TowerElem;
use birat::polyrat::{compose, maps_equal, RationalMap, Surface};

fn main() {
    let (phi0, phi1, down) = blowup_chart_maps();
    let n = TowerElem::from_int;

    let p = BlowupChartPoint::lift(n(2), n(6)).unwrap();
    println!("lift of (2,6): {:?}", p.to_point());
    println!("  φ₀ ↦ {:?}", phi0.evaluate(&p.to_point()).unwrap());
    println!("  φ₁ ↦ {:?}", phi1.evaluate(&p.to_point()).unwrap());

    for (u, v) in [(1, 0), (0, 1), (3, -2)] {
        let e = BlowupChartPoint::exceptional(n(u), n(v)).unwrap();
        println!("exceptional [{u}:{v}] blows down to {:?}", down.evaluate(&e.to_point()).unwrap());
    }
    println!("(1,2) with direction [1:3] is incident: {}", BlowupChartPoint::new(n(1), n(2), n(1), n(3)).is_ok());

    let transition = compose(&phi1, &blowup_phi0_inv()).unwrap();
    let want = RationalMap::from_strs(Surface::A2, Surface::A2, &["x", "1"], Some(&["1", "y"])).unwrap();
    println!("φ₁ ∘ φ₀⁻¹ = (x, 1/w): {}", maps_equal(&transition, &want).unwrap().is_equal());
}
