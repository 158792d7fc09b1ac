//! Arithmetic in ℚ(√2, √3): adjoining roots, exact zero tests and signs.

use birat::exactfield::{adjoin_sqrt, int, q, TowerCtx, TowerElem};

fn main() {
    let (ctx, r2) = adjoin_sqrt(&TowerCtx::rationals(), &int(2)).unwrap();
    let (ctx, r3) = adjoin_sqrt(&ctx, &int(3)).unwrap();
    println!("generators: {:?}", ctx.gens());

    // √8 and √18 are rational multiples of √2; no new generator appears
    let (same, r8) = adjoin_sqrt(&ctx, &int(8)).unwrap();
    println!("√8 = {r8}, generators still {}", same.len());
    let (_, half) = adjoin_sqrt(&ctx, &q(9, 4)).unwrap();
    println!("√(9/4) = {half}");

    let r6 = &r2 * &r3;
    let x = &r6 - &TowerElem::rational(q(2449, 1000));
    println!("√6 − 2.449 = {x}: sign {} (≈ {:.6})", x.sign(), x.to_f64());

    let y = &(&r2 + &r3).square() - &(&TowerElem::from_int(5) + &r6.scale(&int(2)));
    println!("(√2 + √3)² − (5 + 2√6) is zero: {}", y.is_zero());

    let inv = (&r2 + &r3).inverse().unwrap();
    println!("1/(√2 + √3) = {inv}");
}
