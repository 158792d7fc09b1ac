//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use birat::catalog::{blowup_chart_maps, blowup_phi0_inv, e_invol, sigma0, sigma1, stereographic_north, tau0, BlowupChartPoint};
use birat::exactfield::{adjoin_sqrt, int, q, Rational, TowerCtx, TowerElem};
use birat::geom::{random_rational_sphere_point, SpherePoint};
use birat::polyrat::{compose, maps_equal, Point, RationalMap, Surface};
use birat::regulous::{builtin, eval_regulous, k_regulous_check, KRegResult, RegValue};
use birat::twist::{
    dehn_twist_map, interpolate_circle, transitivity_solve, twist_inverse, winding_number, CircleMap, CirclePoint,
    TwistingMap,
};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn factors(f: &RationalMap, surface: Surface) -> Result<Vec<String>, String> {
    let sq = compose(f, f).map_err(|e| e.to_string())?;
    let eq = maps_equal(&sq, &RationalMap::identity(surface)).map_err(|e| e.to_string())?;
    ensure(eq.is_equal(), || "square is not the identity".into())?;
    Ok(eq.factor_strings())
}

fn involutions() -> Check {
    let want: [(RationalMap, Surface, &[&str]); 4] = [
        (sigma0(), Surface::P2, &["x*y*z"]),
        (sigma1(), Surface::P2, &["x*(y^2+z^2)"]),
        (tau0(), Surface::P1xP1, &["1", "x0^2+x1^2"]),
        (e_invol(), Surface::P1xP1, &["1", "x0*x1"]),
    ];
    for (m, s, f) in want {
        let got = factors(&m, s)?;
        ensure(got == f, || format!("factors {got:?}, expected {f:?}"))?;
    }
    Ok(())
}

fn stereographic() -> Check {
    let (pi, inv) = stereographic_north();
    let back = compose(&inv, &pi).map_err(|e| e.to_string())?;
    let eq = maps_equal(&back, &RationalMap::identity(Surface::Quadric)).map_err(|e| e.to_string())?;
    ensure(eq.factor_strings() == ["2*(w-z)"], || format!("quadric side {eq:?}"))?;
    let fwd = compose(&pi, &inv).map_err(|e| e.to_string())?;
    let eq = maps_equal(&fwd, &RationalMap::identity(Surface::P2)).map_err(|e| e.to_string())?;
    ensure(eq.factor_strings() == ["z"], || format!("plane side {eq:?}"))
}

fn distinct_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<SpherePoint> {
    let mut pts: Vec<SpherePoint> = Vec::new();
    while pts.len() < n {
        let p = random_rational_sphere_point(rng, 12);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

/// Twisting maps from criterion 3, kept for criterion 4.
fn transitivity(maps: &mut Vec<TwistingMap>) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..100 {
        let n = 1 + i % 5;
        let p = distinct_points(&mut rng, n);
        // targets may reuse source points, which exercises eviction
        let mut qs = distinct_points(&mut rng, n);
        if i % 7 == 3 && n > 1 {
            qs[0] = p[n - 1].clone();
        }
        let sol = transitivity_solve(&p, &qs).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(sol.len() <= 2 * n, || format!("instance {i}: {} twists for n = {n}", sol.len()))?;
        for (a, b) in p.iter().zip(&qs) {
            // pointwise oracle through the realized rational maps
            let mut x = a.clone();
            for t in &sol.twists {
                x = t.realized().apply_sphere(&x).map_err(|e| e.to_string())?.trimmed();
            }
            ensure(x == *b, || format!("instance {i}: {a} went to {x}, not {b}"))?;
        }
        maps.extend(sol.twists);
    }
    Ok(())
}

fn twist_inverses(maps: &[TwistingMap]) -> Check {
    ensure(!maps.is_empty(), || "no maps from the transitivity run".into())?;
    let id = RationalMap::identity(Surface::Sphere);
    for (i, t) in maps.iter().enumerate() {
        let both = compose(&twist_inverse(t).realized(), &t.realized()).map_err(|e| e.to_string())?;
        let eq = maps_equal(&both, &id).map_err(|e| e.to_string())?;
        ensure(eq.is_equal(), || format!("map {i} is not undone by its inverse"))?;
    }
    Ok(())
}

fn circle_target(a: i64, b: i64) -> CirclePoint {
    // (a + bi)² / (a² + b²)
    let n = a * a + b * b;
    CirclePoint::from_rationals((a * a - b * b, n), (2 * a * b, n)).expect("unit")
}

fn circle_interpolation() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..100 {
        let n = rng.gen_range(1..=6);
        let mut nodes: Vec<(TowerElem, CirclePoint)> = Vec::new();
        while nodes.len() < n {
            let z = TowerElem::rational(q(rng.gen_range(-29..=29), 30));
            if nodes.iter().any(|(w, _)| *w == z) {
                continue;
            }
            let (a, b) = (rng.gen_range(-9..=9), rng.gen_range(-9..=9));
            if a == 0 && b == 0 {
                continue;
            }
            nodes.push((z, circle_target(a, b)));
        }
        let f = interpolate_circle(&nodes).map_err(|e| format!("set {i}: {e}"))?;
        let (ca, cb, ce) = f.components();
        for (z, rho) in &nodes {
            let e = ce.eval(z);
            let hit = &ca.eval(z) / &e == rho.re && &cb.eval(z) / &e == rho.im;
            ensure(hit, || format!("set {i}: f({z}) misses {rho}"))?;
        }
        ensure(&(&ca * &ca) + &(&cb * &cb) == &ce * &ce, || format!("set {i}: not on the circle"))?;
    }
    Ok(())
}

/// Float angle tracking over a fine grid, closed by the shorter arc.
fn float_winding(f: &CircleMap) -> i64 {
    let (a, b, _) = f.components();
    let angle = |t: f64| {
        let t = TowerElem::rational(Rational::from_float(t).unwrap());
        b.eval(&t).to_f64().atan2(a.eval(&t).to_f64())
    };
    let steps = 20_000;
    let mut total = 0.0;
    let mut prev = angle(-1.0);
    let start = prev;
    for k in 1..=steps {
        let cur = angle(-1.0 + 2.0 * k as f64 / steps as f64);
        let mut d = cur - prev;
        d -= (d / std::f64::consts::TAU).round() * std::f64::consts::TAU;
        total += d;
        prev = cur;
    }
    let mut close = start - prev;
    close -= (close / std::f64::consts::TAU).round() * std::f64::consts::TAU;
    ((total + close) / std::f64::consts::TAU).round() as i64
}

fn dehn() -> Check {
    let levels: Vec<TowerElem> = [(1, 2), (-1, 2), (3, 4), (-3, 4)]
        .iter()
        .map(|&(a, b)| TowerElem::rational(q(a, b)))
        .collect();
    let tol = q(1, 20);
    let t = dehn_twist_map(&levels, &q(1, 4), &tol).map_err(|e| e.to_string())?;
    let f = t.profile();
    ensure(winding_number(f) == 1, || format!("winding {}", winding_number(f)))?;
    ensure(float_winding(f) == 1, || "float angle tracking disagrees".into())?;
    for z in &levels {
        ensure(f.eval(z).is_one(), || format!("level {z} moves"))?;
    }
    let (a, b, e) = f.components();
    let tol2 = TowerElem::rational(&tol * &tol);
    for k in 0..1000 {
        let t = TowerElem::rational(int(-1) + q(2 * k, 999));
        if t.abs() < TowerElem::rational(q(1, 2)) {
            continue;
        }
        // |f − 1|² = ((A − E)² + B²)/E² against the step profile's value 1
        let (av, bv, ev) = (a.eval(&t), b.eval(&t), e.eval(&t));
        let dev = &(&(&av - &ev).square() + &bv.square()) / &ev.square();
        ensure(dev <= tol2, || format!("deviation {} at {t}", dev.to_f64().sqrt()))?;
    }
    Ok(())
}

fn value(v: RegValue) -> Option<Rational> {
    match v {
        RegValue::Value { value, .. } => Some(value),
        _ => None,
    }
}

fn regulous() -> Check {
    let o = [int(0), int(0)];
    let canopy = builtin("cartan_canopy").map_err(|e| e.to_string())?;
    let v = eval_regulous(&canopy, &o, 8).map_err(|e| e.to_string())?;
    ensure(v == RegValue::Value { value: int(0), pencil_certified: true }, || format!("canopy gives {v:?}"))?;
    for k in 0..=3u32 {
        let f = builtin(&format!("k_family({k})")).map_err(|e| e.to_string())?;
        let pass = k_regulous_check(&f, &o, k, 8).map_err(|e| e.to_string())?;
        ensure(pass == KRegResult::PassUpTo(k), || format!("k = {k}: {pass:?}"))?;
        let fail = k_regulous_check(&f, &o, k + 1, 8).map_err(|e| e.to_string())?;
        ensure(matches!(fail, KRegResult::FailAt(j, _) if j == k + 1), || format!("k = {k}: {fail:?}"))?;
    }
    let split = builtin("horn_splitter").map_err(|e| e.to_string())?;
    for c in [int(1), q(1, 2), int(-2)] {
        let v = eval_regulous(&split, &[int(0), int(0), c.clone()], 8).map_err(|e| e.to_string())?;
        ensure(value(v.clone()) == Some(&c * &c), || format!("stick at {c}: {v:?}"))?;
    }
    let horn = [int(0), int(-16), int(4)];
    let v = eval_regulous(&split, &horn, 8).map_err(|e| e.to_string())?;
    ensure(value(v.clone()) == Some(int(0)), || format!("horn point: {v:?}"))
}

/// Independent float evaluation: Σ c_S Π_{i∈S} √g_i.
fn float_value(gens: &[u64], coeffs: &[Rational]) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(m, c)| {
            let root: f64 = (0..gens.len()).filter(|i| m >> i & 1 == 1).map(|i| (gens[i] as f64).sqrt()).product();
            c.to_f64().unwrap() * root
        })
        .sum()
}

fn exact_field() -> Check {
    let gens = [2u64, 3, 5];
    let ctx = TowerCtx::from_generators(&gens).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let coeffs = |rng: &mut ChaCha8Rng| -> Vec<Rational> {
        (0..8).map(|_| q(rng.gen_range(-12..=12), rng.gen_range(1..=7))).collect()
    };
    for i in 0..1000 {
        let [a, b, c] = [0; 3].map(|_| TowerElem::from_coeffs(ctx.clone(), coeffs(&mut rng)));
        ensure(&(&a + &b) + &c == &a + &(&b + &c), || format!("triple {i}: associativity"))?;
        ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || format!("triple {i}: distributivity"))?;
        if !a.is_zero() {
            let inv = a.inverse().map_err(|e| e.to_string())?;
            ensure((&a * &inv).is_one(), || format!("triple {i}: inverse"))?;
        }
    }
    let base = TowerCtx::rationals();
    let (with2, r2) = adjoin_sqrt(&base, &int(2)).map_err(|e| e.to_string())?;
    for (d, rational) in [(int(2), false), (int(8), false), (q(9, 4), true), (int(18), false), (int(50), false)] {
        let (ctx, e) = adjoin_sqrt(&with2, &d).map_err(|e| e.to_string())?;
        ensure(e.square() == TowerElem::rational(d.clone()), || format!("√{d} squared"))?;
        ensure(e.is_rational() == rational, || format!("√{d} rationality"))?;
        ensure(ctx.len() == 1, || format!("√{d} added a generator"))?;
        ensure(rational || (&e / &r2).is_rational(), || format!("√{d} is not a multiple of √2"))?;
    }
    let mut checked = 0;
    while checked < 200 {
        let c = coeffs(&mut rng);
        let x = TowerElem::from_coeffs(ctx.clone(), c.clone());
        if x.is_zero() {
            continue;
        }
        let fv = float_value(&gens, &c);
        if fv.abs() < 1e-9 {
            continue;
        }
        ensure(x.sign() as f64 == fv.signum(), || format!("sign of {x}"))?;
        checked += 1;
    }
    let tiny = &(&TowerElem::generator(&ctx, 0) * &TowerElem::generator(&ctx, 1)) - &TowerElem::rational(q(2449, 1000));
    ensure(tiny.sign() == 1 && tiny.abs().to_f64() < 1e-3, || "sign of √6 − 2.449".into())?;
    Ok(())
}

fn blowup() -> Check {
    let (phi0, phi1, down) = blowup_chart_maps();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let origin = Point::Affine(vec![TowerElem::zero(), TowerElem::zero()]);
    for _ in 0..50 {
        let (x, y) = (rng.gen_range(-9..=9), rng.gen_range(-9..=9));
        let (u, v) = (rng.gen_range(-9..=9), rng.gen_range(-9..=9));
        if (x, y) != (0, 0) {
            let p = BlowupChartPoint::lift(TowerElem::from_int(x), TowerElem::from_int(y)).map_err(|e| e.to_string())?;
            ensure(p.incidence_holds(), || format!("lift of ({x}, {y})"))?;
        }
        if (u, v) != (0, 0) {
            let e = BlowupChartPoint::exceptional(TowerElem::from_int(u), TowerElem::from_int(v)).map_err(|e| e.to_string())?;
            ensure(e.incidence_holds(), || format!("exceptional [{u}:{v}]"))?;
            let image = down.evaluate(&e.to_point()).map_err(|e| e.to_string())?;
            ensure(image == origin, || format!("[{u}:{v}] maps to {image:?}"))?;
        }
    }
    let transition = compose(&phi1, &blowup_phi0_inv()).map_err(|e| e.to_string())?;
    let want = RationalMap::from_strs(Surface::A2, Surface::A2, &["x", "1"], Some(&["1", "y"])).map_err(|e| e.to_string())?;
    ensure(maps_equal(&transition, &want).map_err(|e| e.to_string())?.is_equal(), || "transition".into())?;
    let round = compose(&phi0, &blowup_phi0_inv()).map_err(|e| e.to_string())?;
    ensure(
        maps_equal(&round, &RationalMap::identity(Surface::A2)).map_err(|e| e.to_string())?.is_equal(),
        || "φ₀ ∘ φ₀⁻¹".into(),
    )
}

fn main() -> ExitCode {
    let mut maps = Vec::new();
    let mut failures = 0;
    let mut report = |n: u32, name: &str, limit: u64, res: Check, took: Duration| {
        let slow = took > Duration::from_secs(limit);
        let ok = res.is_ok() && !slow;
        failures += usize::from(!ok);
        let detail = match (&res, slow) {
            (Err(e), _) => format!(" ({e})"),
            (Ok(()), true) => format!(" (over the {limit} s budget)"),
            _ => String::new(),
        };
        println!(
            "criterion {n}: {} {name} in {:.2}s{detail}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
    };
    macro_rules! timed {
        ($e:expr) => {{
            let t = Instant::now();
            let r = $e;
            (r, t.elapsed())
        }};
    }
    let (r, t) = timed!(involutions());
    report(1, "involution suite", 5, r, t);
    let (r, t) = timed!(stereographic());
    report(2, "stereographic round trip", 5, r, t);
    let (r, t) = timed!(transitivity(&mut maps));
    report(3, "transitivity, 100 instances", 60, r, t);
    let (r, t) = timed!(twist_inverses(&maps));
    report(4, "twisting-map inverses", 60, r, t);
    let (r, t) = timed!(circle_interpolation());
    report(5, "circle interpolation, 100 node sets", 30, r, t);
    let (r, t) = timed!(dehn());
    report(6, "Dehn twist profile", 30, r, t);
    let (r, t) = timed!(regulous());
    report(7, "regulous suite", 10, r, t);
    let (r, t) = timed!(exact_field());
    report(8, "exact field suite", 10, r, t);
    let (r, t) = timed!(blowup());
    report(9, "blow-up charts", 5, r, t);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
