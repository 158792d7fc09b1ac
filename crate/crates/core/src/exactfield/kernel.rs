//! Square-free kernels of positive integers.

use num_bigint::BigUint;
use num_integer::{Integer, Roots};

/// Returns `(kernel, root)` with `n = root² · kernel` and `kernel` square-free.
///
/// Trial division runs while `d³ ≤ r` for the unfactored cofactor `r`; what
/// remains then has at most two prime factors above `d`, so it is either a
/// perfect square or already square-free.
pub fn square_free_split(n: u64) -> (u64, u64) {
    assert!(n > 0, "kernel of zero");
    let mut rest = n;
    let mut kernel: u64 = 1;
    let mut root: u64 = 1;
    let mut d: u64 = 2;
    while (d as u128) * (d as u128) * (d as u128) <= rest as u128 {
        if rest.is_multiple_of(d) {
            let mut e = 0u32;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            root *= d.pow(e / 2);
            if e % 2 == 1 {
                kernel *= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        let s = rest.sqrt();
        if s * s == rest {
            root *= s;
        } else {
            kernel *= rest;
        }
    }
    (kernel, root)
}

/// Square-free kernel of a product of two square-free numbers: `a·b / gcd(a,b)²`.
pub fn kernel_of_product(a: &BigUint, b: &BigUint) -> BigUint {
    let g = a.gcd(b);
    (a / &g) * (b / &g)
}
