//! An algebraic Dehn twist about the equator that fixes four latitudes.

use birat::exactfield::{q, TowerElem};
use birat::twist::{dehn_twist_map, winding_number};

fn main() {
    let levels: Vec<TowerElem> = [(1, 2), (-1, 2), (3, 4), (-3, 4)]
        .iter()
        .map(|&(a, b)| TowerElem::rational(q(a, b)))
        .collect();
    let t = dehn_twist_map(&levels, &q(1, 4), &q(1, 20)).unwrap();
    let f = t.profile();
    println!("profile: {f}");
    println!("winding number: {}", winding_number(f));
    for z in &levels {
        println!("f({z}) = {}", f.eval(z));
    }
    for k in -4..=4 {
        let z = TowerElem::rational(q(k, 16));
        let w = f.eval(&z);
        println!("z = {:>6.3}: angle {:>8.4}", z.to_f64(), w.im.to_f64().atan2(w.re.to_f64()));
    }
}
