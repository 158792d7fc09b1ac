use std::fmt;

use crate::exactfield::{q, TowerElem};
use crate::polyrat::{sign_variations, UniPoly};

use super::TwistError;

/// Exact unit-circle point `(re, im)`, used as a complex number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirclePoint {
    pub re: TowerElem,
    pub im: TowerElem,
}

impl CirclePoint {
    pub fn new(re: TowerElem, im: TowerElem) -> Result<Self, TwistError> {
        let p = CirclePoint { re, im };
        if p.norm2() != TowerElem::one() {
            return Err(TwistError::TargetNotOnCircle(p.to_string()));
        }
        Ok(p)
    }

    pub fn from_rationals(re: (i64, i64), im: (i64, i64)) -> Result<Self, TwistError> {
        Self::new(TowerElem::rational(q(re.0, re.1)), TowerElem::rational(q(im.0, im.1)))
    }

    pub fn one() -> Self {
        CirclePoint {
            re: TowerElem::one(),
            im: TowerElem::zero(),
        }
    }

    pub(crate) fn unchecked(re: TowerElem, im: TowerElem) -> Self {
        CirclePoint { re, im }
    }

    pub fn norm2(&self) -> TowerElem {
        &self.re.square() + &self.im.square()
    }

    pub fn mul(&self, o: &CirclePoint) -> CirclePoint {
        CirclePoint {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    pub fn conj(&self) -> CirclePoint {
        CirclePoint {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn trimmed(&self) -> CirclePoint {
        CirclePoint {
            re: self.re.trimmed(),
            im: self.im.trimmed(),
        }
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

/// Rational rotations tried, in order, as post-rotations when interpolating.
fn post_rotations() -> impl Iterator<Item = CirclePoint> {
    let pythagorean = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29)];
    let axis = [(1, 0), (-1, 0), (0, 1), (0, -1)]
        .into_iter()
        .map(|(a, b)| CirclePoint::unchecked(TowerElem::from_int(a), TowerElem::from_int(b)));
    let rest = pythagorean.into_iter().flat_map(|(a, b, c)| {
        [(a, b), (b, a), (-a, b), (a, -b), (-b, a), (b, -a), (-a, -b), (-b, -a)]
            .into_iter()
            .map(move |(x, y)| CirclePoint::unchecked(TowerElem::rational(q(x, c)), TowerElem::rational(q(y, c))))
    });
    axis.chain(rest)
}

/// A rational map `[−1, 1] → S¹`, `f(z) = ω·(D + iN)² / (D² + N²)` with `p = N/D`.
///
/// Equivalently `f = ω·((1 − p²)/(1 + p²), 2p/(1 + p²))`.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleMap {
    num: UniPoly,
    den: UniPoly,
    post: CirclePoint,
}

impl CircleMap {
    pub fn new(num: UniPoly, den: UniPoly, post: CirclePoint) -> Result<Self, TwistError> {
        if num.is_zero() && den.is_zero() {
            return Err(TwistError::DegenerateProfile);
        }
        let post = CirclePoint::new(post.re, post.im)?;
        let m = CircleMap { num, den, post };
        if m.has_real_pole_on(&TowerElem::from_int(-1), &TowerElem::one()) {
            return Err(TwistError::DegenerateProfile);
        }
        Ok(m)
    }

    /// The profile with constant value `rho`.
    pub fn constant(rho: CirclePoint) -> Self {
        CircleMap {
            num: UniPoly::zero(),
            den: UniPoly::one(),
            post: rho,
        }
    }

    pub fn identity() -> Self {
        Self::constant(CirclePoint::one())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn post(&self) -> &CirclePoint {
        &self.post
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_zero() || (self.num.is_constant() && self.den.is_constant())
    }

    /// `(A, B, E)` with `f = (A/E, B/E)` and `E = D² + N² > 0`.
    pub fn components(&self) -> (UniPoly, UniPoly, UniPoly) {
        let d2 = &self.den * &self.den;
        let n2 = &self.num * &self.num;
        let nd = &self.num * &self.den;
        let a0 = &d2 - &n2;
        let b0 = &nd + &nd;
        let e = &d2 + &n2;
        let (w1, w2) = (&self.post.re, &self.post.im);
        let a = &a0.scale(w1) - &b0.scale(w2);
        let b = &b0.scale(w1) + &a0.scale(w2);
        (a, b, e)
    }

    pub fn eval(&self, z: &TowerElem) -> CirclePoint {
        let d = self.den.eval(z);
        let n = self.num.eval(z);
        let e = &d.square() + &n.square();
        let sq = CirclePoint::unchecked(
            &(&d.square() - &n.square()) / &e,
            &(&(&n * &d) * &TowerElem::from_int(2)) / &e,
        );
        sq.mul(&self.post)
    }

    /// The pointwise inverse `z ↦ conj f(z)`.
    pub fn inverse(&self) -> CircleMap {
        CircleMap {
            num: -&self.num,
            den: self.den.clone(),
            post: self.post.conj(),
        }
    }

    /// Pointwise product of circle maps.
    pub fn mul(&self, o: &CircleMap) -> CircleMap {
        // (D1 + iN1)(D2 + iN2) = (D1D2 − N1N2) + i(D1N2 + N1D2)
        CircleMap {
            num: &(&self.den * &o.num) + &(&self.num * &o.den),
            den: &(&self.den * &o.den) - &(&self.num * &o.num),
            post: self.post.mul(&o.post),
        }
    }

    /// `A² + B² = E²` as polynomials, i.e. `f₁² + f₂² = 1` identically.
    pub fn is_unit_identity(&self) -> bool {
        let (a, b, e) = self.components();
        (&(&a * &a) + &(&b * &b)) == &e * &e
    }

    fn has_real_pole_on(&self, lo: &TowerElem, hi: &TowerElem) -> bool {
        let e = self.components().2;
        if e.is_zero() {
            return true;
        }
        if e.is_constant() {
            return false;
        }
        let seq = e.sturm_sequence();
        let roots_open = sign_variations(&seq, lo).saturating_sub(sign_variations(&seq, hi));
        roots_open > 0 || e.eval(lo).is_zero() || e.eval(hi).is_zero()
    }
}

impl fmt::Display for CircleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·((D+iN)/|D+iN|)² with N = {}, D = {}", self.post, self.num, self.den)
    }
}

/// A circle map through `(z_j, ρ_j)`: Lagrange interpolation of half-angle
/// parameters, after a post-rotation that keeps every target away from `−ω`.
pub fn interpolate_circle(nodes: &[(TowerElem, CirclePoint)]) -> Result<CircleMap, TwistError> {
    for (i, (z, rho)) in nodes.iter().enumerate() {
        CirclePoint::new(rho.re.clone(), rho.im.clone())?;
        if nodes[..i].iter().any(|(w, _)| w == z) {
            return Err(TwistError::DuplicateNodes(z.to_string()));
        }
    }
    let Some((_, first)) = nodes.first() else {
        return Ok(CircleMap::identity());
    };
    if nodes.iter().all(|(_, r)| r == first) {
        return Ok(CircleMap::constant(first.clone()));
    }
    let omega = post_rotations()
        .find(|w| {
            let minus = CirclePoint::unchecked(-&w.re, -&w.im);
            nodes.iter().all(|(_, r)| *r != minus)
        })
        .expect("finitely many nodes exclude finitely many rotations");
    let pts = nodes
        .iter()
        .map(|(z, rho)| {
            let s = rho.mul(&omega.conj());
            let t = &s.im / &(&TowerElem::one() + &s.re);
            (z.clone(), t)
        })
        .collect::<Vec<_>>();
    let num = UniPoly::lagrange(&pts)?;
    Ok(CircleMap {
        num,
        den: UniPoly::one(),
        post: omega,
    })
}

/// Degree of `f` on `[−1, 1]`, closed up by the shorter arc from `f(1)` back to `f(−1)`.
pub fn winding_number(f: &CircleMap) -> i64 {
    let (a, b, _) = f.components();
    let ends = [TowerElem::from_int(-1), TowerElem::one()];
    for zeta in post_rotations() {
        // h = ζ·f; count crossings of the negative real axis by h
        let p1 = &a.scale(&zeta.re) - &b.scale(&zeta.im);
        let p2 = &a.scale(&zeta.im) + &b.scale(&zeta.re);
        if ends.iter().any(|t| p2.eval(t).is_zero()) {
            continue;
        }
        let (u, v) = (
            CirclePoint::unchecked(p1.eval(&ends[1]), p2.eval(&ends[1])),
            CirclePoint::unchecked(p1.eval(&ends[0]), p2.eval(&ends[0])),
        );
        let sum = &u.re + &v.re;
        if sum.is_zero() && (&u.im + &v.im).is_zero() {
            continue;
        }
        let mut total = crossings(&p1, &p2, &ends[0], &ends[1]);
        let (su, sv) = (u.im.sign(), v.im.sign());
        if su != sv && sum.sign() < 0 {
            total += if su > 0 { 1 } else { -1 };
        }
        return total;
    }
    unreachable!("some rotation avoids the endpoints")
}

/// Signed count of roots of `p2` in `(lo, hi)` at which `p1 < 0`;
/// `+1` when `p2` changes from positive to negative.
fn crossings(p1: &UniPoly, p2: &UniPoly, lo: &TowerElem, hi: &TowerElem) -> i64 {
    if p2.is_zero() || p2.is_constant() {
        return 0;
    }
    let g = p2.gcd(&p2.derivative());
    let sq = p2.div_rem(&g).expect("nonzero gcd").0;
    let seq = sq.sturm_sequence();
    let count = |l: &TowerElem, r: &TowerElem| sign_variations(&seq, l) as i64 - sign_variations(&seq, r) as i64;
    let mut stack = vec![(lo.clone(), hi.clone())];
    let mut total = 0;
    while let Some((l, r)) = stack.pop() {
        let k = count(&l, &r);
        if k == 0 {
            continue;
        }
        if k == 1 && p1_constant_sign(p1, &l, &r) {
            if p1.eval(&l).sign() < 0 {
                let (sl, sr) = (p2.eval(&l).sign(), p2.eval(&r).sign());
                if sl != sr {
                    total += if sl > 0 { 1 } else { -1 };
                }
            }
            continue;
        }
        let m = split_point(&sq, p1, &l, &r);
        stack.push((l, m.clone()));
        stack.push((m, r));
    }
    total
}

fn p1_constant_sign(p1: &UniPoly, l: &TowerElem, r: &TowerElem) -> bool {
    if p1.eval(l).is_zero() || p1.eval(r).is_zero() {
        return false;
    }
    if p1.is_constant() {
        return true;
    }
    let seq = p1.sturm_sequence();
    sign_variations(&seq, l) == sign_variations(&seq, r)
}

/// A point strictly inside `(l, r)` where neither polynomial vanishes.
fn split_point(p: &UniPoly, p1: &UniPoly, l: &TowerElem, r: &TowerElem) -> TowerElem {
    let width = r - l;
    (2i64..)
        .flat_map(|k| (1..k).map(move |i| q(i, k)))
        .map(|frac| l + &width.scale(&frac))
        .find(|m| !p.eval(m).is_zero() && !p1.eval(m).is_zero())
        .expect("finitely many roots")
}
