use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::kernel::{kernel_of_product, square_free_split};
use super::rational::{format_rational, Rational};
use super::FieldError;

/// Number of refinement rounds before `sign` gives up.
pub const SIGN_ROUND_CAP: u32 = 64;
const SIGN_START_BITS: u64 = 64;

#[derive(Debug)]
struct CtxData {
    gens: Vec<BigUint>,
    /// `prod[mask]` = product of the generators selected by `mask`.
    prod: Vec<BigInt>,
}

/// An ordered, append-only list of square-free, multiplicatively independent radicands.
///
/// Element coefficient vectors are indexed by bitmasks over generator positions, so an
/// element of a context is also an element of every extension of it.
#[derive(Clone, Debug)]
pub struct TowerCtx(Arc<CtxData>);

impl Default for TowerCtx {
    fn default() -> Self {
        Self::rationals()
    }
}

impl PartialEq for TowerCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.gens == other.0.gens
    }
}

impl Eq for TowerCtx {}

impl TowerCtx {
    /// The trivial tower ℚ.
    pub fn rationals() -> Self {
        Self::from_gens_unchecked(Vec::new())
    }

    fn from_gens_unchecked(gens: Vec<BigUint>) -> Self {
        let size = 1usize << gens.len();
        let mut prod = vec![BigInt::one(); size];
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            prod[mask] = &prod[mask & (mask - 1)] * BigInt::from(gens[low].clone());
        }
        TowerCtx(Arc::new(CtxData { gens, prod }))
    }

    /// Builds a context from explicit generators, checking square-freeness and independence.
    pub fn from_generators(gens: &[u64]) -> Result<Self, FieldError> {
        let mut ctx = Self::rationals();
        for &g in gens {
            let (k, r) = square_free_split(g);
            if g == 0 || r != 1 || k == 1 {
                return Err(FieldError::DependentGenerator(g.to_string()));
            }
            let (next, e) = ctx.adjoin_sqrt(&BigRational::from_integer(BigInt::from(g)))?;
            if next.len() != ctx.len() + 1 || !e.is_generator(ctx.len()) {
                return Err(FieldError::DependentGenerator(g.to_string()));
            }
            ctx = next;
        }
        Ok(ctx)
    }

    pub fn gens(&self) -> &[BigUint] {
        &self.0.gens
    }

    pub fn len(&self) -> usize {
        self.0.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.gens.is_empty()
    }

    fn dim(&self) -> usize {
        1 << self.len()
    }

    fn subset_product(&self, mask: usize) -> &BigInt {
        &self.0.prod[mask]
    }

    pub fn is_prefix_of(&self, other: &TowerCtx) -> bool {
        self.len() <= other.len() && self.0.gens[..] == other.0.gens[..self.len()]
    }

    /// True when no nonempty subset product of the generators is a perfect square.
    pub fn is_independent(&self) -> bool {
        let kernels = self.subset_kernels();
        kernels.iter().skip(1).all(|k| !k.is_one())
            && self.0.gens.iter().all(|g| {
                g.to_u64()
                    .map(|v| v > 1 && square_free_split(v).1 == 1)
                    .unwrap_or(true)
            })
    }

    fn subset_kernels(&self) -> Vec<BigUint> {
        let mut kern = vec![BigUint::one(); self.dim()];
        for mask in 1..self.dim() {
            let low = mask.trailing_zeros() as usize;
            kern[mask] = kernel_of_product(&kern[mask & (mask - 1)], &self.0.gens[low]);
        }
        kern
    }

    /// Returns a context containing `√d` together with that positive element.
    ///
    /// When `√d` already lies in the tower the context is returned unchanged.
    pub fn adjoin_sqrt(&self, d: &Rational) -> Result<(TowerCtx, TowerElem), FieldError> {
        if d.is_negative() {
            return Err(FieldError::NegativeRadicand(format_rational(d)));
        }
        if d.is_zero() {
            return Ok((self.clone(), TowerElem::zero_in(self)));
        }
        let to_u64 = |n: &BigInt| {
            n.to_u64()
                .ok_or_else(|| FieldError::RadicandTooLarge(format_rational(d)))
        };
        let (kp, rp) = square_free_split(to_u64(d.numer())?);
        let (kq, rq) = square_free_split(to_u64(d.denom())?);
        // √(p/q) = rp·rq·√(kp·kq) / q
        let kernel = BigUint::from(kp) * BigUint::from(kq);
        let scale = BigRational::new(BigInt::from(rp) * BigInt::from(rq), d.denom().clone());
        if kernel.is_one() {
            return Ok((self.clone(), TowerElem::rational_in(self, scale)));
        }
        let kernels = self.subset_kernels();
        if let Some(mask) = kernels.iter().position(|k| *k == kernel) {
            // basis_S = √(prod_S) = c·√kernel with c² = prod_S / kernel
            let prod = self.subset_product(mask).magnitude().clone();
            let c = (prod / &kernel).sqrt();
            let coeff = scale / BigRational::from_integer(BigInt::from(c));
            let mut coeffs = vec![Rational::zero(); self.dim()];
            coeffs[mask] = coeff;
            return Ok((self.clone(), TowerElem::from_coeffs(self.clone(), coeffs)));
        }
        let mut gens = self.0.gens.clone();
        gens.push(kernel);
        let next = Self::from_gens_unchecked(gens);
        let mut coeffs = vec![Rational::zero(); next.dim()];
        coeffs[1 << self.len()] = scale;
        let elem = TowerElem::from_coeffs(next.clone(), coeffs);
        Ok((next, elem))
    }
}

/// An element `Σ_S c_S · ∏_{i∈S} √g_i` of a quadratic tower.
#[derive(Clone)]
pub struct TowerElem {
    ctx: TowerCtx,
    coeffs: Vec<Rational>,
}

impl TowerElem {
    pub fn from_coeffs(ctx: TowerCtx, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), ctx.dim(), "coefficient count must be 2^m");
        TowerElem { ctx, coeffs }
    }

    pub fn rational(q: Rational) -> Self {
        TowerElem {
            ctx: TowerCtx::rationals(),
            coeffs: vec![q],
        }
    }

    pub fn rational_in(ctx: &TowerCtx, q: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); ctx.dim()];
        coeffs[0] = q;
        TowerElem {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn zero_in(ctx: &TowerCtx) -> Self {
        Self::rational_in(ctx, Rational::zero())
    }

    /// `√g_i` for the `i`-th generator of `ctx`.
    pub fn generator(ctx: &TowerCtx, i: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); ctx.dim()];
        coeffs[1 << i] = Rational::one();
        TowerElem {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    fn is_generator(&self, i: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(m, c)| if m == 1 << i { !c.is_zero() } else { c.is_zero() })
    }

    pub fn ctx(&self) -> &TowerCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Drops trailing generators whose coefficients all vanish.
    pub fn trimmed(&self) -> TowerElem {
        let mut m = self.ctx.len();
        while m > 0 {
            let bit = 1usize << (m - 1);
            if self.coeffs.iter().enumerate().any(|(s, c)| s & bit != 0 && !c.is_zero()) {
                break;
            }
            m -= 1;
        }
        if m == self.ctx.len() {
            return self.clone();
        }
        let ctx = TowerCtx::from_gens_unchecked(self.ctx.gens()[..m].to_vec());
        let coeffs = self.coeffs[..1 << m].to_vec();
        TowerElem { ctx, coeffs }
    }

    /// Re-expresses `self` over an extension of its context.
    pub fn lift_to(&self, ctx: &TowerCtx) -> Result<TowerElem, FieldError> {
        if self.ctx == *ctx {
            return Ok(self.clone());
        }
        let src = if self.ctx.is_prefix_of(ctx) {
            self.clone()
        } else {
            let t = self.trimmed();
            if !t.ctx.is_prefix_of(ctx) {
                return Err(FieldError::ContextMismatch);
            }
            t
        };
        let mut coeffs = src.coeffs;
        coeffs.resize(ctx.dim(), Rational::zero());
        Ok(TowerElem {
            ctx: ctx.clone(),
            coeffs,
        })
    }

    fn unify(&self, other: &TowerElem) -> Result<(TowerElem, TowerElem), FieldError> {
        if self.ctx == other.ctx {
            return Ok((self.clone(), other.clone()));
        }
        if self.ctx.is_prefix_of(&other.ctx) {
            return Ok((self.lift_to(&other.ctx)?, other.clone()));
        }
        if other.ctx.is_prefix_of(&self.ctx) {
            return Ok((self.clone(), other.lift_to(&self.ctx)?));
        }
        let (a, b) = (self.trimmed(), other.trimmed());
        if a.ctx.is_prefix_of(&b.ctx) {
            Ok((a.lift_to(&b.ctx)?, b))
        } else if b.ctx.is_prefix_of(&a.ctx) {
            let b = b.lift_to(&a.ctx)?;
            Ok((a, b))
        } else {
            Err(FieldError::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &TowerElem) -> Result<TowerElem, FieldError> {
        if self.ctx == other.ctx {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
            return Ok(TowerElem { ctx: self.ctx.clone(), coeffs });
        }
        let (a, b) = self.unify(other)?;
        a.checked_add(&b)
    }

    pub fn checked_sub(&self, other: &TowerElem) -> Result<TowerElem, FieldError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &TowerElem) -> Result<TowerElem, FieldError> {
        if self.ctx != other.ctx {
            // a rational factor never needs the other context's generators
            if other.ctx.is_empty() {
                return Ok(self.scale(&other.coeffs[0]));
            }
            if self.ctx.is_empty() {
                return Ok(other.scale(&self.coeffs[0]));
            }
            let (a, b) = self.unify(other)?;
            return a.checked_mul(&b);
        }
        let dim = self.ctx.dim();
        if dim == 1 {
            return Ok(TowerElem {
                ctx: self.ctx.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut out = vec![Rational::zero(); dim];
        for (s, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let shared = self.ctx.subset_product(s & t);
                let term = a * b;
                let term = if shared.is_one() {
                    term
                } else {
                    term * BigRational::from_integer(shared.clone())
                };
                out[s ^ t] += term;
            }
        }
        Ok(TowerElem {
            ctx: self.ctx.clone(),
            coeffs: out,
        })
    }

    pub fn scale(&self, q: &Rational) -> TowerElem {
        TowerElem {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Flips the sign of every term containing `√g_i`.
    pub fn conjugate(&self, i: usize) -> TowerElem {
        let bit = 1usize << i;
        TowerElem {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(s, c)| if s & bit != 0 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Multiplicative inverse by successive conjugation over each generator.
    pub fn inverse(&self) -> Result<TowerElem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let mut numer = TowerElem::rational_in(&self.ctx, Rational::one());
        let mut norm = self.clone();
        for i in 0..self.ctx.len() {
            let c = norm.conjugate(i);
            numer = numer.checked_mul(&c)?;
            norm = norm.checked_mul(&c)?;
        }
        debug_assert!(norm.is_rational());
        let n = norm.coeffs[0].clone();
        Ok(numer.scale(&n.recip()))
    }

    pub fn checked_div(&self, other: &TowerElem) -> Result<TowerElem, FieldError> {
        if other.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if other.ctx.is_empty() || other.is_rational() {
            let inv = other.coeffs[0].recip();
            return Ok(self.scale(&inv));
        }
        self.checked_mul(&other.inverse()?)
    }

    pub fn square(&self) -> TowerElem {
        self * self
    }

    pub fn pow(&self, e: u32) -> TowerElem {
        let mut acc = TowerElem::rational_in(&self.ctx, Rational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Rational interval `[lo, hi]` containing the value, with each `√(∏g)` enclosed
    /// to `bits` fractional bits.
    pub fn enclosure(&self, bits: u64) -> (Rational, Rational) {
        let mut lo = self.coeffs[0].clone();
        let mut hi = self.coeffs[0].clone();
        let scale = BigInt::one() << bits;
        let denom = BigRational::from_integer(scale.clone());
        for (mask, c) in self.coeffs.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            let n = self.ctx.subset_product(mask) * &scale * &scale;
            let s = n.sqrt();
            let r_lo = BigRational::from_integer(s.clone()) / &denom;
            let r_hi = BigRational::from_integer(s + 1) / &denom;
            if c.is_positive() {
                lo += c * r_lo;
                hi += c * r_hi;
            } else {
                lo += c * r_hi;
                hi += c * r_lo;
            }
        }
        (lo, hi)
    }

    /// Exact sign: zero by coefficient test, otherwise by refining interval enclosures.
    pub fn try_sign(&self) -> Result<i8, FieldError> {
        if self.is_zero() {
            return Ok(0);
        }
        if self.is_rational() {
            return Ok(if self.coeffs[0].is_positive() { 1 } else { -1 });
        }
        let mut bits = SIGN_START_BITS;
        for _ in 0..SIGN_ROUND_CAP {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return Ok(1);
            }
            if hi.is_negative() {
                return Ok(-1);
            }
            bits = bits.checked_mul(2).ok_or(FieldError::SignRefinementExhausted)?;
        }
        Err(FieldError::SignRefinementExhausted)
    }

    pub fn sign(&self) -> i8 {
        self.try_sign().expect("sign refinement terminates for exact inputs")
    }

    pub fn abs(&self) -> TowerElem {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(64);
        ((lo + hi) / BigRational::from_integer(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

fn bigint_sign(n: &BigInt) -> i8 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl PartialEq for TowerElem {
    fn eq(&self, other: &Self) -> bool {
        match self.checked_sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

impl Eq for TowerElem {}

impl PartialOrd for TowerElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let d = self.checked_sub(other).ok()?;
        Some(d.sign().cmp(&0))
    }
}

impl From<Rational> for TowerElem {
    fn from(q: Rational) -> Self {
        TowerElem::rational(q)
    }
}

impl From<i64> for TowerElem {
    fn from(n: i64) -> Self {
        TowerElem::from_int(n)
    }
}

impl Neg for &TowerElem {
    type Output = TowerElem;
    fn neg(self) -> TowerElem {
        TowerElem {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for TowerElem {
    type Output = TowerElem;
    fn neg(self) -> TowerElem {
        -&self
    }
}

// The operator impls panic on incompatible contexts; use the `checked_*` forms to
// handle that case.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&TowerElem> for &TowerElem {
            type Output = TowerElem;
            fn $method(self, rhs: &TowerElem) -> TowerElem {
                self.$checked(rhs).expect(concat!("tower ", stringify!($method)))
            }
        }
        impl $trait<TowerElem> for TowerElem {
            type Output = TowerElem;
            fn $method(self, rhs: TowerElem) -> TowerElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&TowerElem> for TowerElem {
            type Output = TowerElem;
            fn $method(self, rhs: &TowerElem) -> TowerElem {
                (&self).$method(rhs)
            }
        }
        impl $trait<TowerElem> for &TowerElem {
            type Output = TowerElem;
            fn $method(self, rhs: TowerElem) -> TowerElem {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl fmt::Debug for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = bigint_sign(c.numer()) < 0;
            if !first {
                f.write_str(if negative { "-" } else { "+" })?;
            } else if negative {
                f.write_str("-")?;
            }
            first = false;
            let mag = format_rational(&c.abs());
            if mask == 0 {
                f.write_str(&mag)?;
                continue;
            }
            if mag != "1" {
                write!(f, "{mag}*")?;
            }
            let radicals: Vec<String> = (0..self.ctx.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| format!("sqrt({})", self.ctx.gens()[i]))
                .collect();
            f.write_str(&radicals.join("*"))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rational::{int, q};

    fn sqrt_in(ctx: &TowerCtx, d: Rational) -> (TowerCtx, TowerElem) {
        ctx.adjoin_sqrt(&d).unwrap()
    }

    #[test]
    fn adjoin_two_then_eight_and_nine_quarters() {
        let (c2, r2) = sqrt_in(&TowerCtx::rationals(), int(2));
        assert_eq!(c2.len(), 1);
        assert!(r2.square() == TowerElem::from_int(2));

        let (c8, r8) = sqrt_in(&c2, int(8));
        assert_eq!(c8, c2);
        // 2√2
        assert_eq!(r8.coeffs()[1], int(2));
        assert!(r8.square() == TowerElem::from_int(8));

        let (c94, r94) = sqrt_in(&c2, q(9, 4));
        assert_eq!(c94, c2);
        assert_eq!(r94.to_rational(), Some(q(3, 2)));
    }

    #[test]
    fn dependent_kernel_reuses_subset_product() {
        let (c, _) = sqrt_in(&TowerCtx::rationals(), int(2));
        let (c, _) = sqrt_in(&c, int(3));
        let (c6, r6) = sqrt_in(&c, int(6));
        assert_eq!(c6.len(), 2);
        assert!(r6.square() == TowerElem::from_int(6));
        let r2 = TowerElem::generator(&c6, 0);
        let r3 = TowerElem::generator(&c6, 1);
        assert!((&(&r2 * &r3) - &r6).is_zero());
        // √(2/3) = √6 / 3
        let (_, r) = sqrt_in(&c6, q(2, 3));
        assert!(r.square() == TowerElem::rational(q(2, 3)));
        assert!(r.sign() > 0);
    }

    #[test]
    fn conjugate_product_and_inverse() {
        let (c, r2) = sqrt_in(&TowerCtx::rationals(), int(2));
        let one = TowerElem::rational_in(&c, int(1));
        let a = &one + &r2;
        let b = &one - &r2;
        assert!(&a * &b == TowerElem::from_int(-1));
        let inv = one.checked_div(&a).unwrap();
        assert!(inv == &r2 - &one);
        assert!(&inv * &a == one);
        assert!(r2.square() == TowerElem::from_int(2));
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        let (c2, r2) = sqrt_in(&TowerCtx::rationals(), int(2));
        assert_eq!(
            r2.checked_div(&TowerElem::zero_in(&c2)).unwrap_err(),
            FieldError::DivisionByZero
        );
        let (_, r3) = sqrt_in(&TowerCtx::rationals(), int(3));
        assert_eq!(r2.checked_add(&r3).unwrap_err(), FieldError::ContextMismatch);
        // a rational-valued element from an unrelated context still combines
        let three = &r3 * &r3;
        assert!(r2.checked_add(&three).is_ok());
    }

    #[test]
    fn signs() {
        let (c, r2) = sqrt_in(&TowerCtx::rationals(), int(2));
        let one = TowerElem::rational_in(&c, int(1));
        assert_eq!((&one - &r2).sign(), -1);
        assert_eq!(TowerElem::zero().sign(), 0);
        // 816/577 < √2 < 577/408, consecutive convergents
        assert_eq!((&r2 - &TowerElem::rational(q(816, 577))).sign(), 1);
        assert_eq!((&r2 - &TowerElem::rational(q(577, 408))).sign(), -1);
        let (c3, r3) = sqrt_in(&c, int(3));
        let r2 = r2.lift_to(&c3).unwrap();
        let (_, r6) = sqrt_in(&c3, int(6));
        assert_eq!((&(&r2 * &r3) - &r6).sign(), 0);
        // (√2 + √3)² = 5 + 2√6 ≈ 9.899 < 10
        let (c10, r10) = sqrt_in(&c3, int(10));
        let s = (&r2 + &r3).lift_to(&c10).unwrap();
        assert_eq!((&s - &r10).sign(), -1);
    }

    #[test]
    fn independence_is_preserved() {
        let mut ctx = TowerCtx::rationals();
        for d in [2, 3, 6, 8, 5, 30, 12, 7, 50, 45] {
            ctx = sqrt_in(&ctx, int(d)).0;
            assert!(ctx.is_independent());
        }
        assert_eq!(ctx.len(), 4);
        assert!(TowerCtx::from_generators(&[2, 3, 6]).is_err());
        assert!(TowerCtx::from_generators(&[2, 3, 5]).is_ok());
    }

    #[test]
    fn radicand_limits() {
        let huge = BigRational::from_integer(BigInt::one() << 70);
        assert!(matches!(
            TowerCtx::rationals().adjoin_sqrt(&huge),
            Err(FieldError::RadicandTooLarge(_))
        ));
        assert!(matches!(
            TowerCtx::rationals().adjoin_sqrt(&int(-1)),
            Err(FieldError::NegativeRadicand(_))
        ));
    }

    #[test]
    fn display() {
        let (c, r2) = sqrt_in(&TowerCtx::rationals(), int(2));
        let e = &TowerElem::rational_in(&c, q(1, 2)) - &r2.scale(&int(3));
        assert_eq!(e.to_string(), "1/2-3*sqrt(2)");
    }
}
