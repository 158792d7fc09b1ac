use std::fmt;

use crate::exactfield::{int, FieldError, TowerElem};

use super::poly::{Monomial, MultiPoly, Vars};

/// Dense univariate polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<TowerElem>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<TowerElem>) -> Self {
        while coeffs.last().is_some_and(TowerElem::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: TowerElem) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(TowerElem::one())
    }

    /// The identity polynomial `t`.
    pub fn t() -> Self {
        Self::new(vec![TowerElem::zero(), TowerElem::one()])
    }

    /// `t − a`.
    pub fn linear_root(a: &TowerElem) -> Self {
        Self::new(vec![-a, TowerElem::one()])
    }

    pub fn coeffs(&self) -> &[TowerElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> TowerElem {
        self.coeffs.get(i).cloned().unwrap_or_else(TowerElem::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> TowerElem {
        self.coeffs.last().cloned().unwrap_or_else(TowerElem::zero)
    }

    pub fn eval(&self, t: &TowerElem) -> TowerElem {
        self.coeffs
            .iter()
            .rev()
            .fold(TowerElem::zero(), |acc, c| &(&acc * t) + c)
    }

    pub fn scale(&self, c: &TowerElem) -> UniPoly {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> UniPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&int(i as i64)))
                .collect(),
        )
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly), FieldError> {
        let dd = d.degree().ok_or(FieldError::DivisionByZero)?;
        let inv = d.leading().inverse()?;
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![TowerElem::zero(); n - dd];
        for k in (dd..n).rev() {
            let c = &rem[k] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = &rem[idx] - &(&c * dc);
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading().inverse() {
            Ok(inv) => self.scale(&inv),
            Err(_) => self.clone(),
        }
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Lagrange interpolation through `(x_j, y_j)`; nodes must be distinct.
    pub fn lagrange(points: &[(TowerElem, TowerElem)]) -> Result<UniPoly, FieldError> {
        let mut acc = Self::zero();
        for (j, (xj, yj)) in points.iter().enumerate() {
            let mut basis = Self::constant(yj.clone());
            for (k, (xk, _)) in points.iter().enumerate() {
                if k == j {
                    continue;
                }
                let inv = (xj - xk).inverse()?;
                basis = &basis * &Self::linear_root(xk).scale(&inv);
            }
            acc = &acc + &basis;
        }
        Ok(acc)
    }

    /// Sturm sequence `p, p', −rem(p, p'), …`.
    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq[seq.len() - 1].is_zero() {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero divisor");
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        seq.retain(|p| !p.is_zero());
        seq
    }

    /// Embeds as a polynomial in variable `var` of `vars`.
    pub fn to_multi(&self, vars: &Vars, var: usize) -> MultiPoly {
        MultiPoly::from_terms(
            vars,
            self.coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; vars.len()];
                e[var] = i as u32;
                (e, c.clone())
            }),
        )
    }

    /// Inverse of [`to_multi`](Self::to_multi); `None` if other variables occur.
    pub fn from_multi(p: &MultiPoly, var: usize) -> Option<UniPoly> {
        let mut coeffs = vec![TowerElem::zero(); p.degree_in(var) as usize + 1];
        for (m, c) in p.terms() {
            let Monomial(e) = m;
            if e.iter().enumerate().any(|(i, &k)| i != var && k > 0) {
                return None;
            }
            coeffs[e[var] as usize] = c.clone();
        }
        Some(Self::new(coeffs))
    }
}

/// Number of sign changes of a Sturm sequence evaluated at `t`, zeros skipped.
pub fn sign_variations(seq: &[UniPoly], t: &TowerElem) -> usize {
    let signs: Vec<i8> = seq.iter().map(|p| p.eval(t).sign()).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

impl std::ops::Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl std::ops::Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl std::ops::Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![TowerElem::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

impl std::ops::Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vars = vec!["t".to_string()].into();
        write!(f, "{}", self.to_multi(&v, 0))
    }
}
