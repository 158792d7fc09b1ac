//! Moves random rational sphere points onto random targets with twisting maps.

use std::time::Instant;

use birat::geom::random_rational_sphere_point;
use birat::twist::transitivity_solve;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let start = Instant::now();
    let mut twists = 0;
    for n in 1..=5 {
        for _ in 0..20 {
            let mut pts: Vec<_> = Vec::new();
            while pts.len() < 2 * n {
                let p = random_rational_sphere_point(&mut rng, 9);
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
            let (p, q) = pts.split_at(n);
            let sol = transitivity_solve(p, q).expect("solvable");
            assert!(sol.len() <= 2 * n);
            for (a, b) in p.iter().zip(q) {
                assert_eq!(sol.apply(a), *b);
            }
            twists += sol.len();
        }
    }
    println!("100 instances, {twists} twisting maps, {:.2?}", start.elapsed());
}
