//! Regulous functions: rational functions extended by continuity across
//! their indeterminacy points, probed exactly along pencils of rational lines.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactfield::{format_rational, int, q, Rational, TowerElem};
use crate::polyrat::{vars, MultiPoly, PolyError, UniPoly, Vars};

pub const DEFAULT_PENCIL: usize = 8;

pub const BUILTINS: &[&str] = &["cartan_canopy", "cartan_surface", "horned_surface", "horn_splitter", "k_family(k)"];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegError {
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("numerator and denominator use different variables")]
    VarMismatch,
    #[error("coefficients must be rational")]
    NonRationalCoefficients,
    #[error("point has {got} coordinates, function has {want} variables")]
    Arity { want: usize, got: usize },
    #[error("pencil size must be at least 2, got {0}")]
    PencilTooSmall(usize),
    #[error("unknown regulous builtin {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A fraction `num/den` of polynomials over ℚ.
#[derive(Clone, Debug, PartialEq)]
pub struct RegFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RegFunction {
    /// Normalizes the denominator's leading coefficient to 1.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, RegError> {
        if den.is_zero() {
            return Err(RegError::ZeroDenominator);
        }
        if num.vars() != den.vars() {
            return Err(RegError::VarMismatch);
        }
        if num.terms().chain(den.terms()).any(|(_, c)| !c.is_rational()) {
            return Err(RegError::NonRationalCoefficients);
        }
        let lead = den.leading().expect("nonzero").1.inverse().expect("nonzero");
        Ok(RegFunction {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn polynomial(p: MultiPoly) -> Self {
        let one = MultiPoly::one(p.vars());
        Self::new(p, one).expect("nonzero denominator")
    }

    pub fn parse(names: &[&str], num: &str, den: &str) -> Result<Self, RegError> {
        let v = vars(names);
        Self::new(MultiPoly::parse(&v, num)?, MultiPoly::parse(&v, den)?)
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn arity(&self) -> usize {
        self.num.arity()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Restriction to the line `p + t·dir`, as a pair of univariate polynomials.
    fn restrict(&self, p: &[Rational], dir: &[Rational]) -> (UniPoly, UniPoly) {
        let tv = vars(&["t"]);
        let t = MultiPoly::var(&tv, 0);
        let subs: Vec<MultiPoly> = p
            .iter()
            .zip(dir)
            .map(|(a, d)| &MultiPoly::constant(&tv, TowerElem::rational(a.clone())) + &t.scale_rational(d))
            .collect();
        let uni = |f: &MultiPoly| UniPoly::from_multi(&f.substitute(&subs), 0).expect("univariate");
        (uni(&self.num), uni(&self.den))
    }
}

impl fmt::Display for RegFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Limit of a restriction at the parameter origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Finite(v) => f.write_str(&format_rational(v)),
            Limit::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegValue {
    /// `pencil_certified` marks a value obtained from line limits at a zero of
    /// the denominator rather than by direct evaluation.
    Value { value: Rational, pencil_certified: bool },
    /// The limit along `dir` is `limit`, and along `other` (when present) it differs.
    NotContinuous {
        dir: Vec<Rational>,
        limit: Limit,
        other: Option<(Vec<Rational>, Limit)>,
    },
    /// The denominator vanishes identically on every sampled line.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KRegResult {
    PassUpTo(u32),
    FailAt(u32, Vec<Rational>),
    Undetermined,
}

/// The first `n` directions of the default pencil in `dim` variables: the
/// coordinate axes, then vectors with small-height entries, up to scaling.
pub fn pencil_directions(dim: usize, n: usize) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { int(1) } else { int(0) }).collect())
        .collect();
    let mut h = 1;
    while out.len() < n {
        let vals = values_up_to(h);
        let mut idx = vec![0usize; dim];
        'shell: loop {
            let v: Vec<Rational> = idx.iter().map(|&i| vals[i].clone()).collect();
            if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
                let v: Vec<Rational> = v.iter().map(|x| x / &lead).collect();
                if !out.contains(&v) {
                    out.push(v);
                }
            }
            for slot in idx.iter_mut().rev() {
                *slot += 1;
                if *slot < vals.len() {
                    continue 'shell;
                }
                *slot = 0;
            }
            break;
        }
        h += 1;
    }
    out.truncate(n);
    out
}

/// `0, ±1, ±1/2, ±2, ±1/3, ±3, ±2/3, ±3/2, …` with numerator and denominator at most `h`.
fn values_up_to(h: i64) -> Vec<Rational> {
    let mut vals = vec![int(0)];
    for m in 1..=h {
        for k in 1..=m {
            for (a, b) in [(k, m), (m, k)] {
                let v = q(a, b);
                if !vals.contains(&v) {
                    vals.push(v.clone());
                    vals.push(-v);
                }
            }
        }
    }
    vals
}

fn check_point(f: &RegFunction, p: &[Rational], pencil: usize) -> Result<(), RegError> {
    if p.len() != f.arity() {
        return Err(RegError::Arity { want: f.arity(), got: p.len() });
    }
    if pencil < 2 {
        return Err(RegError::PencilTooSmall(pencil));
    }
    Ok(())
}

fn order(u: &UniPoly) -> usize {
    u.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0)
}

fn coeff(u: &UniPoly, i: usize) -> Rational {
    u.coeff(i).to_rational().expect("rational restriction")
}

/// Taylor coefficients `c_0..=c_k` of `n/d` at 0, or `None` when the restriction blows up.
fn taylor(n: &UniPoly, d: &UniPoly, k: usize) -> Option<Vec<Rational>> {
    if n.is_zero() {
        return Some(vec![int(0); k + 1]);
    }
    let (vn, vd) = (order(n), order(d));
    if vn < vd {
        return None;
    }
    let shift = vn - vd;
    let d0 = coeff(d, vd);
    let mut s: Vec<Rational> = Vec::with_capacity(k + 1);
    for m in 0..=k.saturating_sub(shift) {
        let mut acc = coeff(n, vn + m);
        for i in 1..=m {
            acc -= coeff(d, vd + i) * &s[m - i];
        }
        s.push(acc / &d0);
    }
    let mut out = vec![int(0); shift.min(k + 1)];
    out.extend(s);
    out.truncate(k + 1);
    Some(out)
}

/// Value at `p`, by direct evaluation or by exact limits along a line pencil.
pub fn eval_regulous(f: &RegFunction, p: &[Rational], pencil: usize) -> Result<RegValue, RegError> {
    check_point(f, p, pencil)?;
    let pt: Vec<TowerElem> = p.iter().cloned().map(TowerElem::rational).collect();
    let den = f.den.eval(&pt);
    if !den.is_zero() {
        let value = (&f.num.eval(&pt) / &den).to_rational().expect("rational");
        return Ok(RegValue::Value { value, pencil_certified: false });
    }
    let mut reference: Option<(Vec<Rational>, Rational)> = None;
    for dir in pencil_directions(p.len(), pencil) {
        let (n, d) = f.restrict(p, &dir);
        if d.is_zero() {
            continue;
        }
        let Some(c) = taylor(&n, &d, 0) else {
            return Ok(RegValue::NotContinuous {
                dir,
                limit: Limit::Infinite,
                other: reference.map(|(d, v)| (d, Limit::Finite(v))),
            });
        };
        let v = c[0].clone();
        match &reference {
            None => reference = Some((dir, v)),
            Some((rd, rv)) if *rv != v => {
                return Ok(RegValue::NotContinuous {
                    dir,
                    limit: Limit::Finite(v),
                    other: Some((rd.clone(), Limit::Finite(rv.clone()))),
                })
            }
            Some(_) => {}
        }
    }
    Ok(match reference {
        Some((_, value)) => RegValue::Value { value, pencil_certified: true },
        None => RegValue::Undetermined,
    })
}

/// Checks that along every sampled line the Taylor coefficients of order
/// `j ≤ k` are the values of one homogeneous degree-`j` form in the direction,
/// as they are for a `C^k` function.
pub fn k_regulous_check(f: &RegFunction, p: &[Rational], k: u32, pencil: usize) -> Result<KRegResult, RegError> {
    check_point(f, p, pencil)?;
    let dirs = pencil_directions(p.len(), pencil);
    let mut series: Vec<(Vec<Rational>, Option<Vec<Rational>>)> = Vec::new();
    for dir in dirs {
        let (n, d) = f.restrict(p, &dir);
        if d.is_zero() {
            continue;
        }
        let s = taylor(&n, &d, k as usize);
        series.push((dir, s));
    }
    if series.is_empty() {
        return Ok(KRegResult::Undetermined);
    }
    for j in 0..=k {
        let mut fit = FormFit::new(p.len(), j);
        for (dir, s) in &series {
            let Some(s) = s else {
                return Ok(KRegResult::FailAt(0, dir.clone()));
            };
            if !fit.push(dir, &s[j as usize]) {
                return Ok(KRegResult::FailAt(j, dir.clone()));
            }
        }
    }
    Ok(KRegResult::PassUpTo(k))
}

/// Incremental consistency test for `c(d) = Σ a_m d^m` over degree-`j` monomials.
struct FormFit {
    exps: Vec<Vec<u32>>,
    rows: Vec<(usize, Vec<Rational>, Rational)>,
}

impl FormFit {
    fn new(dim: usize, j: u32) -> Self {
        FormFit {
            exps: exponents(dim, j),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, dir: &[Rational], value: &Rational) -> bool {
        let mut row: Vec<Rational> = self
            .exps
            .iter()
            .map(|e| {
                e.iter()
                    .zip(dir)
                    .fold(Rational::one(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize))
            })
            .collect();
        let mut rhs = value.clone();
        for (piv, prow, prhs) in &self.rows {
            let factor = row[*piv].clone();
            if factor.is_zero() {
                continue;
            }
            for (a, b) in row.iter_mut().zip(prow) {
                *a -= &factor * b;
            }
            rhs -= &factor * prhs;
        }
        match row.iter().position(|a| !a.is_zero()) {
            Some(piv) => {
                let lead = row[piv].clone();
                let row: Vec<Rational> = row.iter().map(|a| a / &lead).collect();
                let rhs = rhs / &lead;
                for (_, prow, prhs) in self.rows.iter_mut() {
                    let factor = prow[piv].clone();
                    if factor.is_zero() {
                        continue;
                    }
                    for (a, b) in prow.iter_mut().zip(&row) {
                        *a -= &factor * b;
                    }
                    *prhs -= &factor * &rhs;
                }
                self.rows.push((piv, row, rhs));
                true
            }
            None => rhs.is_zero(),
        }
    }
}

fn exponents(dim: usize, j: u32) -> Vec<Vec<u32>> {
    if dim == 1 {
        return vec![vec![j]];
    }
    (0..=j)
        .rev()
        .flat_map(|a| {
            exponents(dim - 1, j - a).into_iter().map(move |mut rest| {
                rest.insert(0, a);
                rest
            })
        })
        .collect()
}

/// True iff `f` extends continuously to `p` with value 0 (pencil-certified at poles).
pub fn zero_membership(f: &RegFunction, p: &[Rational], pencil: usize) -> Result<bool, RegError> {
    Ok(matches!(eval_regulous(f, p, pencil)?, RegValue::Value { value, .. } if value.is_zero()))
}

/// The named umbrella examples and the family `x^(3+k)/(x²+y²)`.
pub fn builtin(name: &str) -> Result<RegFunction, RegError> {
    let xyz = ["x", "y", "z"];
    let horn = "x^2+y^2*((y-z^2)^2+y*z^3)";
    match name.trim() {
        "cartan_canopy" => RegFunction::parse(&["x", "y"], "x^3", "x^2+y^2"),
        "cartan_surface" => RegFunction::parse(&xyz, "z*(x^2+y^2)-x^3", "1"),
        "horned_surface" => RegFunction::parse(&xyz, horn, "1"),
        "horn_splitter" => RegFunction::parse(&xyz, &format!("z^2*({horn})"), "x^2+y^4+y^2*z^4"),
        other => {
            let k = other
                .strip_prefix("k_family(")
                .and_then(|s| s.strip_suffix(')'))
                .and_then(|s| s.trim().parse::<u32>().ok())
                .ok_or_else(|| RegError::UnknownName(other.to_string()))?;
            RegFunction::parse(&["x", "y"], &format!("x^{}", 3 + k), "x^2+y^2")
        }
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn pt(c: &[(i64, i64)]) -> Vec<Rational> {
        c.iter().map(|&(a, b)| q(a, b)).collect()
    }

    fn value(v: RegValue) -> Rational {
        match v {
            RegValue::Value { value, .. } => value,
            other => panic!("expected a value, got {other:?}"),
        }
    }

    #[test]
    fn canopy_values() {
        let f = builtin("cartan_canopy").unwrap();
        let at0 = eval_regulous(&f, &pt(&[(0, 1), (0, 1)]), 8).unwrap();
        assert_eq!(at0, RegValue::Value { value: int(0), pencil_certified: true });
        let at1 = eval_regulous(&f, &pt(&[(1, 1), (1, 1)]), 8).unwrap();
        assert_eq!(at1, RegValue::Value { value: q(1, 2), pencil_certified: false });
    }

    #[test]
    fn pole_is_not_continuous() {
        let f = RegFunction::parse(&["x", "y"], "x", "x^2+y^2").unwrap();
        let RegValue::NotContinuous { dir, limit, .. } = eval_regulous(&f, &pt(&[(0, 1), (0, 1)]), 8).unwrap() else {
            panic!("expected a witness");
        };
        assert_eq!(dir, pt(&[(1, 1), (0, 1)]));
        assert_eq!(limit, Limit::Infinite);
    }

    #[test]
    fn disagreeing_limits_are_witnessed() {
        let f = RegFunction::parse(&["x", "y"], "x^2", "x^2+y^2").unwrap();
        let RegValue::NotContinuous { limit, other, .. } = eval_regulous(&f, &pt(&[(0, 1), (0, 1)]), 8).unwrap() else {
            panic!("expected a witness");
        };
        assert_eq!(limit, Limit::Finite(int(0)));
        assert_eq!(other.unwrap().1, Limit::Finite(int(1)));
    }

    #[test]
    fn horn_splitter_separates_stick_from_horn() {
        let f = builtin("horn_splitter").unwrap();
        for (c, d) in [(1, 1), (1, 2), (-2, 1)] {
            let v = value(eval_regulous(&f, &pt(&[(0, 1), (0, 1), (c, d)]), 8).unwrap());
            assert_eq!(v, q(c * c, d * d));
        }
        let on_horn = pt(&[(0, 1), (-16, 1), (4, 1)]);
        assert_eq!(value(eval_regulous(&f, &on_horn, 8).unwrap()), int(0));
        assert!(zero_membership(&f, &on_horn, 8).unwrap());
        assert!(!zero_membership(&f, &pt(&[(0, 1), (0, 1), (1, 1)]), 8).unwrap());
        assert!(zero_membership(&builtin("horned_surface").unwrap(), &on_horn, 8).unwrap());
    }

    #[test]
    fn builtin_texts() {
        assert_eq!(builtin("cartan_surface").unwrap().to_string(), "-x^3+x^2*z+y^2*z");
        assert!(builtin("horned_surface").unwrap().is_polynomial());
        assert_eq!(builtin("k_family(2)").unwrap(), builtin("k_family( 2 )").unwrap());
        assert!(matches!(builtin("nope"), Err(RegError::UnknownName(_))));
    }

    #[test]
    fn k_regularity_examples() {
        let o = pt(&[(0, 1), (0, 1)]);
        let f = builtin("k_family(1)").unwrap();
        assert_eq!(k_regulous_check(&f, &o, 1, 8).unwrap(), KRegResult::PassUpTo(1));
        let canopy = builtin("cartan_canopy").unwrap();
        assert!(matches!(k_regulous_check(&canopy, &o, 1, 8).unwrap(), KRegResult::FailAt(1, _)));
        let f = builtin("k_family(2)").unwrap();
        assert_eq!(k_regulous_check(&f, &o, 2, 8).unwrap(), KRegResult::PassUpTo(2));
    }

    #[test]
    fn k_family_threshold() {
        let o = pt(&[(0, 1), (0, 1)]);
        for k in 0..=3 {
            let f = builtin(&format!("k_family({k})")).unwrap();
            assert_eq!(k_regulous_check(&f, &o, k, 8).unwrap(), KRegResult::PassUpTo(k));
            assert!(matches!(k_regulous_check(&f, &o, k + 1, 8).unwrap(), KRegResult::FailAt(j, _) if j == k + 1));
        }
    }

    #[test]
    fn bad_requests() {
        let f = builtin("cartan_canopy").unwrap();
        assert!(matches!(eval_regulous(&f, &pt(&[(0, 1)]), 8), Err(RegError::Arity { want: 2, got: 1 })));
        assert!(matches!(eval_regulous(&f, &pt(&[(0, 1), (0, 1)]), 1), Err(RegError::PencilTooSmall(1))));
        let g = RegFunction::parse(&["x", "y"], "x", "x*y").unwrap();
        let on_axes = eval_regulous(&g, &pt(&[(0, 1), (0, 1)]), 2).unwrap();
        assert_eq!(on_axes, RegValue::Undetermined);
    }

    #[test]
    fn default_pencil_shape() {
        let d = pencil_directions(2, 8);
        assert_eq!(d[0], pt(&[(1, 1), (0, 1)]));
        assert_eq!(d[1], pt(&[(0, 1), (1, 1)]));
        assert_eq!(d.len(), 8);
        let d3 = pencil_directions(3, 20);
        assert_eq!(d3.len(), 20);
        for (i, a) in d3.iter().enumerate() {
            assert!(d3[..i].iter().all(|b| b != a));
        }
    }

    proptest! {
        #[test]
        fn direct_evaluation_agrees(a in -9i64..10, b in -9i64..10, c in 1i64..5) {
            let p = vec![q(a, c), q(b, c)];
            prop_assume!(a != 0 || b != 0);
            let f = builtin("cartan_canopy").unwrap();
            let want = q(a * a * a, c) / int(a * a + b * b);
            prop_assert_eq!(value(eval_regulous(&f, &p, 8).unwrap()), want);
        }
    }
}
