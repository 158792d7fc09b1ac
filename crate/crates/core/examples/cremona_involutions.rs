//! The quadratic involutions of P² and P¹×P¹ and a monomial torus map.

use birat::catalog::{e_invol, monomial_torus, sigma0, sigma1, tau0};
use birat::polyrat::{compose, maps_equal, RationalMap, Surface};

fn show(name: &str, m: &RationalMap) {
    let sq = compose(m, m).unwrap();
    let eq = maps_equal(&sq, &RationalMap::identity(m.source())).unwrap();
    let coords: Vec<String> = m.coords().iter().map(ToString::to_string).collect();
    println!("{name:>3} = {coords:?}; squared = id, factors {:?}", eq.factor_strings());
}

fn main() {
    show("σ0", &sigma0());
    show("σ1", &sigma1());
    show("τ0", &tau0());
    show("e", &e_invol());

    let a = monomial_torus([[1, 1], [0, 1]]).unwrap();
    let b = monomial_torus([[1, -1], [0, 1]]).unwrap();
    let ab = compose(&a, &b).unwrap();
    println!(
        "monomial [[1,1],[0,1]] ∘ [[1,-1],[0,1]] = id: {}",
        maps_equal(&ab, &RationalMap::identity(Surface::P1xP1)).unwrap().is_equal()
    );
    println!("σ0 = σ1: {:?}", maps_equal(&sigma0(), &sigma1()).unwrap());
}
