use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactfield::{format_rational, Rational, TowerElem};

/// Exponent vector ordered graded-lexicographically, earlier variables ranking higher.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when every exponent of `other` fits.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Vars = Arc<[String]>;

pub fn vars(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

/// Sparse multivariate polynomial with tower coefficients; zero coefficients are never stored.
#[derive(Clone)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, TowerElem>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && (self - other).is_zero()
    }
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: TowerElem) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, TowerElem::one())
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, Monomial(e), TowerElem::one())
    }

    pub fn var_named(vars: &Vars, name: &str) -> Self {
        let i = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("no variable {name}"));
        Self::var(vars, i)
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: TowerElem) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent arity");
        let mut p = Self::zero(vars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Vec<u32>, TowerElem)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent arity");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &TowerElem)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> TowerElem {
        self.terms
            .get(&Monomial::one(self.arity()))
            .cloned()
            .unwrap_or_else(TowerElem::zero)
    }

    pub fn is_one(&self) -> bool {
        self.nterms() == 1 && self.is_constant() && self.constant_term().is_one()
    }

    pub fn leading(&self) -> Option<(&Monomial, &TowerElem)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Total degree restricted to the variables in `group`; `None` when the
    /// polynomial is not homogeneous in them.
    pub fn homogeneous_degree_in(&self, group: &[usize]) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| group.iter().map(|&i| m.0[i]).sum::<u32>());
        let first = degs.next().unwrap_or(0);
        degs.all(|d| d == first).then_some(first)
    }

    fn add_term(&mut self, m: Monomial, c: TowerElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_vars(&self, other: &MultiPoly) {
        assert!(
            self.vars == other.vars,
            "variable mismatch: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn scale(&self, c: &TowerElem) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> MultiPoly {
        self.scale(&TowerElem::rational(q.clone()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[TowerElem]) -> TowerElem {
        assert_eq!(point.len(), self.arity(), "evaluation arity");
        let mut powers: Vec<Vec<TowerElem>> = point.iter().map(|v| vec![TowerElem::one(), v.clone()]).collect();
        let mut acc = TowerElem::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &point[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Replaces variable `i` by `subs[i]`; all substitutes share one variable list.
    pub fn substitute(&self, subs: &[MultiPoly]) -> MultiPoly {
        assert_eq!(subs.len(), self.arity(), "substitution arity");
        let target = subs
            .first()
            .map(|s| s.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut cache = PowerCache::new(subs);
        let mut acc = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * cache.get(i, e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        self.check_vars(d);
        let (dm, dc) = d.leading()?;
        let dm = dm.clone();
        let dc_inv = dc.inverse().ok()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(&dm)?;
            let qc = rc * &dc_inv;
            let step = MultiPoly::monomial(&self.vars, qm, qc);
            rem = &rem - &(&step * d);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Rewrites `x_var² → replacement` until `x_var` has degree at most one.
    /// `replacement` must not involve `x_var`.
    pub fn reduce_square(&self, var: usize, replacement: &MultiPoly) -> MultiPoly {
        self.check_vars(replacement);
        debug_assert_eq!(replacement.degree_in(var), 0);
        let top = self.degree_in(var);
        if top < 2 {
            return self.clone();
        }
        let mut powers = vec![MultiPoly::one(&self.vars)];
        for k in 1..=(top / 2) as usize {
            let next = &powers[k - 1] * replacement;
            powers.push(next);
        }
        let mut acc = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut rest = m.clone();
            rest.0[var] = e % 2;
            let t = powers[(e / 2) as usize].mul_monomial(&rest).scale(c);
            acc = &acc + &t;
        }
        acc
    }

    /// Positive rational `c` such that all rational components of all coefficients of
    /// `self / c` are integers with gcd one.
    pub fn rational_content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            for r in c.coeffs() {
                if r.is_zero() {
                    continue;
                }
                num_gcd = num_gcd.gcd(r.numer());
                den_lcm = den_lcm.lcm(r.denom());
            }
        }
        if num_gcd.is_zero() {
            return Rational::one();
        }
        BigRational::new(num_gcd, den_lcm)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one(self.arity());
        };
        let mut m = first.clone();
        for k in it {
            for (a, b) in m.0.iter_mut().zip(&k.0) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    /// Re-labels the variables without changing exponents.
    pub fn with_vars(&self, vars: &Vars) -> MultiPoly {
        assert_eq!(vars.len(), self.arity());
        MultiPoly {
            vars: vars.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Factored display `c*m*(rest)` with rational content and monomial content pulled out.
    pub fn factored_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut content = self.rational_content();
        if let Some((_, lc)) = self.leading() {
            if lc.sign() < 0 {
                content = -content;
            }
        }
        let mono = self.monomial_content();
        let rest = MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.div(&mono).unwrap(), c.scale(&content.recip())))
                .collect(),
        };
        let mut parts = Vec::new();
        let negative = content.is_negative();
        let mag = content.abs();
        if !mag.is_one() {
            parts.push(format_rational(&mag));
        }
        if !mono.is_one() {
            parts.push(monomial_string(&self.vars, &mono));
        }
        if !rest.is_one() {
            let s = rest.to_string();
            if rest.nterms() > 1 && !parts.is_empty() {
                parts.push(format!("({s})"));
            } else {
                parts.push(s);
            }
        }
        let body = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }
}

pub(crate) fn monomial_string(vars: &Vars, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                vars[i].clone()
            } else {
                format!("{}^{}", vars[i], e)
            }
        })
        .collect();
    parts.join("*")
}

/// Memoized powers of substitutes, `cache.get(i, e) = subs[i]^e`.
pub(crate) struct PowerCache<'a> {
    subs: &'a [MultiPoly],
    powers: Vec<Vec<MultiPoly>>,
}

impl<'a> PowerCache<'a> {
    pub(crate) fn new(subs: &'a [MultiPoly]) -> Self {
        PowerCache {
            subs,
            powers: subs.iter().map(|s| vec![MultiPoly::one(&s.vars)]).collect(),
        }
    }

    pub(crate) fn get(&mut self, i: usize, e: u32) -> &MultiPoly {
        while self.powers[i].len() <= e as usize {
            let next = self.powers[i].last().unwrap() * &self.subs[i];
            self.powers[i].push(next);
        }
        &self.powers[i][e as usize]
    }
}

impl std::ops::Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl std::ops::Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = MultiPoly::zero(&self.vars);
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        let mut acc: BTreeMap<Monomial, TowerElem> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let t = ca * cb;
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(t);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let s = o.get() + &t;
                        *o.get_mut() = s;
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        out.terms = acc;
        out
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl std::ops::$trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly { (&self).$method(&rhs) }
        }
        impl std::ops::$trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly { (&self).$method(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Terms in descending monomial order, e.g. `x^2*y-2*z+1`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono = monomial_string(&self.vars, m);
            let (negative, mag) = if c.is_rational() && c.sign() < 0 {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let coeff = if mag.is_rational() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { "-" } else { "+" })?;
            }
            first = false;
            match (mono.is_empty(), coeff.as_str()) {
                (true, _) => f.write_str(&coeff)?,
                (false, "1") => f.write_str(&mono)?,
                (false, _) => write!(f, "{coeff}*{mono}")?,
            }
        }
        Ok(())
    }
}
