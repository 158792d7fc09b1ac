use num_traits::{One, Signed, Zero};

use crate::exactfield::{format_rational, int, q, Rational, TowerElem};
use crate::geom::Rotation3;
use crate::polyrat::UniPoly;

use super::circle::{winding_number, CircleMap, CirclePoint};
use super::map::{twisting_map, TwistingMap};
use super::TwistError;

/// Number of sample points used for the tolerance check.
pub const DEHN_GRID: i64 = 1000;

const HALVINGS: u32 = 64;

/// An algebraic Dehn twist about the equator: a profile with one full loop
/// concentrated in `(−eps, eps)`, equal to `(1, 0)` at every fixed level and
/// within `tol` of `(1, 0)` on the grid points with `|z| ≥ 2·eps`.
///
/// The half-angle parameter is `p = −c·Π(z − zᵢ)/(−zᵢ) / z`, whose simple pole
/// at 0 carries `f` once through `(−1, 0)`.
pub fn dehn_twist_map(fixed_levels: &[TowerElem], eps: &Rational, tol: &Rational) -> Result<TwistingMap, TwistError> {
    if *eps <= Rational::zero() || *eps >= Rational::one() {
        return Err(TwistError::InvalidEps(format_rational(eps)));
    }
    let mut levels: Vec<Rational> = Vec::new();
    for z in fixed_levels {
        let r = z
            .to_rational()
            .ok_or_else(|| TwistError::FixedLevelInWindow(z.to_string()))?;
        if r.abs() >= int(1) || r.abs() <= *eps {
            return Err(TwistError::FixedLevelInWindow(z.to_string()));
        }
        if !levels.contains(&r) {
            levels.push(r);
        }
    }
    if *tol <= Rational::zero() {
        return Err(TwistError::ToleranceUnreachable);
    }
    let mut shape = UniPoly::one();
    for z in &levels {
        let factor = UniPoly::new(vec![TowerElem::one(), TowerElem::rational(-Rational::one() / z)]);
        shape = &shape * &factor;
    }
    let den = UniPoly::new(vec![TowerElem::zero(), TowerElem::from_int(-1)]);
    let grid: Vec<TowerElem> = (0..DEHN_GRID)
        .map(|k| TowerElem::rational(int(-1) + q(2 * k, DEHN_GRID - 1)))
        .filter(|t| t.abs() >= TowerElem::rational(eps * int(2)))
        .collect();
    let tol2 = TowerElem::rational(tol * tol);
    let mut c = eps / int(4);
    for _ in 0..HALVINGS {
        let num = shape.scale(&TowerElem::rational(c.clone()));
        let close = grid.iter().all(|t| {
            let n = num.eval(t);
            let d = den.eval(t);
            let dev2 = &(&n.square() * &TowerElem::from_int(4)) / &(&n.square() + &d.square());
            dev2 <= tol2
        });
        if close {
            let profile = CircleMap::new(num, den, CirclePoint::one())?;
            let profile = if winding_number(&profile) == 1 { profile } else { profile.inverse() };
            return Ok(twisting_map(profile, Rotation3::identity()));
        }
        c /= int(2);
    }
    Err(TwistError::ToleranceUnreachable)
}
