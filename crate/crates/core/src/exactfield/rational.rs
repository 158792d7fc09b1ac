use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::FieldError;

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds a reduced rational `num/den`.
pub fn rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational, FieldError> {
    let den = den.into();
    if den.is_zero() {
        return Err(FieldError::ZeroDenominator);
    }
    Ok(BigRational::new(num.into(), den))
}

/// Shorthand for small constants; panics on a zero denominator.
pub fn q(num: i64, den: i64) -> Rational {
    rat(num, den).expect("nonzero denominator")
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `"num/den"`, or just `"num"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"n"`, `"n/d"` or a finite decimal such as `"-0.25"`. Accepts U+2212 as a minus sign.
pub fn parse_rational(text: &str) -> Result<Rational, FieldError> {
    let cleaned = text.trim().replace('\u{2212}', "-");
    let bad = || FieldError::Parse(text.to_string());
    if let Some((n, d)) = cleaned.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        return rat(n, d);
    }
    if let Some((whole, frac)) = cleaned.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.trim_start().starts_with('-');
        let whole: BigInt = match whole.trim() {
            "" | "-" | "+" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = whole.abs() * &scale + frac;
        let num = if negative { -magnitude } else { magnitude };
        return rat(num, scale);
    }
    let n: BigInt = cleaned.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Height `max(|num|, den)`, used to order search candidates.
pub fn height(r: &Rational) -> BigInt {
    let n = r.numer().abs();
    let d = r.denom().clone();
    if n > d {
        n
    } else {
        d
    }
}
