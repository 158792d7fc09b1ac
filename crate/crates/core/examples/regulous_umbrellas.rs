//! Continuity extension of the umbrella examples at their singular points.

use birat::exactfield::{int, q};
use birat::regulous::{builtin, eval_regulous, k_regulous_check, zero_membership, DEFAULT_PENCIL};

fn main() {
    let origin = [int(0), int(0)];
    let canopy = builtin("cartan_canopy").unwrap();
    println!("{canopy} at (0,0): {:?}", eval_regulous(&canopy, &origin, DEFAULT_PENCIL).unwrap());

    for k in 0..=3 {
        let f = builtin(&format!("k_family({k})")).unwrap();
        let up = k_regulous_check(&f, &origin, k, DEFAULT_PENCIL).unwrap();
        let next = k_regulous_check(&f, &origin, k + 1, DEFAULT_PENCIL).unwrap();
        println!("{f}: {up:?}, then {next:?}");
    }

    let split = builtin("horn_splitter").unwrap();
    for c in [int(1), q(1, 2), int(-2)] {
        let v = eval_regulous(&split, &[int(0), int(0), c.clone()], DEFAULT_PENCIL).unwrap();
        println!("stick point (0,0,{c}): {v:?}");
    }
    let horn = [int(0), int(-16), int(4)];
    println!(
        "(0,-16,4) on the horn: {}, splitter vanishes: {}",
        zero_membership(&builtin("horned_surface").unwrap(), &horn, DEFAULT_PENCIL).unwrap(),
        zero_membership(&split, &horn, DEFAULT_PENCIL).unwrap()
    );
}
