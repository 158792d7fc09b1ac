use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::exactfield::{Rational, TowerElem};
use crate::geom::{ProjPoint, Rotation3, SpherePoint};

use super::poly::{vars, MultiPoly, PowerCache, Vars};
use super::PolyError;

/// Tagged model surfaces, each with a fixed coordinate list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Surface {
    /// Unit sphere, affine `(x, y, z)`.
    Sphere,
    /// Projective quadric `x²+y²+z² = w²` in `[w:x:y:z]`.
    Quadric,
    P2,
    P1xP1,
    A2,
    /// Chart of the blow-up of the origin: `(x, y)` with direction `[u:v]`.
    BlowupChart,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Affine(Vec<usize>),
    Proj(Vec<usize>),
}

impl Block {
    pub fn indices(&self) -> &[usize] {
        match self {
            Block::Affine(v) | Block::Proj(v) => v,
        }
    }

    pub fn is_proj(&self) -> bool {
        matches!(self, Block::Proj(_))
    }
}

impl Surface {
    pub const ALL: [Surface; 6] = [
        Surface::Sphere,
        Surface::Quadric,
        Surface::P2,
        Surface::P1xP1,
        Surface::A2,
        Surface::BlowupChart,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Surface::Sphere => "Sphere",
            Surface::Quadric => "Quadric",
            Surface::P2 => "P2",
            Surface::P1xP1 => "P1xP1",
            Surface::A2 => "A2",
            Surface::BlowupChart => "BlowupChart",
        }
    }

    pub fn var_names(self) -> &'static [&'static str] {
        match self {
            Surface::Sphere | Surface::P2 => &["x", "y", "z"],
            Surface::Quadric => &["w", "x", "y", "z"],
            Surface::P1xP1 => &["x0", "x1", "y0", "y1"],
            Surface::A2 => &["x", "y"],
            Surface::BlowupChart => &["x", "y", "u", "v"],
        }
    }

    pub fn vars(self) -> Vars {
        vars(self.var_names())
    }

    pub fn dim(self) -> usize {
        self.var_names().len()
    }

    pub fn blocks(self) -> Vec<Block> {
        match self {
            Surface::Sphere => vec![Block::Affine(vec![0, 1, 2])],
            Surface::A2 => vec![Block::Affine(vec![0, 1])],
            Surface::Quadric => vec![Block::Proj(vec![0, 1, 2, 3])],
            Surface::P2 => vec![Block::Proj(vec![0, 1, 2])],
            Surface::P1xP1 => vec![Block::Proj(vec![0, 1]), Block::Proj(vec![2, 3])],
            Surface::BlowupChart => vec![Block::Affine(vec![0, 1]), Block::Proj(vec![2, 3])],
        }
    }

    /// Reduces `p` to normal form modulo the defining relation, if any.
    pub fn reduce(self, p: &MultiPoly) -> MultiPoly {
        match self {
            Surface::Sphere => reduce_mod_sphere(p),
            Surface::Quadric => reduce_mod_quadric(p),
            _ => p.clone(),
        }
    }

    pub fn has_relation(self) -> bool {
        matches!(self, Surface::Sphere | Surface::Quadric)
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Surface {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Surface::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| PolyError::UnknownSurface(s.to_string()))
    }
}

/// Rewrites `z² → 1 − x² − y²` until `z` has degree at most one.
pub fn reduce_mod_sphere(p: &MultiPoly) -> MultiPoly {
    let v = p.vars().clone();
    assert_eq!(&*v, &*Surface::Sphere.vars(), "sphere reduction needs (x, y, z)");
    let x = MultiPoly::var(&v, 0);
    let y = MultiPoly::var(&v, 1);
    let repl = &(&MultiPoly::one(&v) - &(&x * &x)) - &(&y * &y);
    p.reduce_square(2, &repl)
}

/// Rewrites `w² → x² + y² + z²` until `w` has degree at most one.
pub fn reduce_mod_quadric(p: &MultiPoly) -> MultiPoly {
    let v = p.vars().clone();
    assert_eq!(&*v, &*Surface::Quadric.vars(), "quadric reduction needs (w, x, y, z)");
    let sq = |i| {
        let t = MultiPoly::var(&v, i);
        &t * &t
    };
    let repl = &(&sq(1) + &sq(2)) + &sq(3);
    p.reduce_square(0, &repl)
}

/// A point of one of the model surfaces.
#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    Affine(Vec<TowerElem>),
    Proj(ProjPoint),
    Chart { base: [TowerElem; 2], dir: ProjPoint },
}

impl Point {
    pub fn sphere(p: &SpherePoint) -> Point {
        Point::Affine(p.coords().to_vec())
    }

    pub fn to_sphere(&self) -> Option<SpherePoint> {
        match self {
            Point::Affine(c) if c.len() == 3 => {
                SpherePoint::new(c[0].clone(), c[1].clone(), c[2].clone()).ok()
            }
            _ => None,
        }
    }

    /// Coordinates laid out in the variable order of `surface`.
    pub fn values_for(&self, surface: Surface) -> Result<Vec<TowerElem>, PolyError> {
        let bad = || PolyError::PointShape(surface);
        let vals = match (self, surface) {
            (Point::Affine(c), Surface::Sphere | Surface::A2) => c.clone(),
            (Point::Proj(p), Surface::Quadric | Surface::P2) if p.blocks().len() == 1 => p.flat(),
            (Point::Proj(p), Surface::P1xP1) if p.block_sizes() == [2, 2] => p.flat(),
            (Point::Chart { base, dir }, Surface::BlowupChart) => {
                let mut v = base.to_vec();
                v.extend(dir.flat());
                v
            }
            _ => return Err(bad()),
        };
        if vals.len() != surface.dim() {
            return Err(bad());
        }
        Ok(vals)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Affine(c) => {
                let s: Vec<String> = c.iter().map(ToString::to_string).collect();
                write!(f, "({})", s.join(", "))
            }
            Point::Proj(p) => write!(f, "{p}"),
            Point::Chart { base, dir } => write!(f, "(({}, {}), {dir})", base[0], base[1]),
        }
    }
}

/// A rational map given by one fraction per target coordinate.
///
/// Projective target coordinates always have denominator one. A sphere
/// self-map may carry a `frame` `F`, in which case the map it realizes is
/// `Fᵀ ∘ core ∘ F` with `core` given by `coords/dens`.
///
/// `==` compares representations; use `maps_equal` for equality as maps.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap {
    source: Surface,
    target: Surface,
    coords: Vec<MultiPoly>,
    dens: Vec<MultiPoly>,
    frame: Option<Rotation3>,
}

impl RationalMap {
    pub fn new(
        source: Surface,
        target: Surface,
        coords: Vec<MultiPoly>,
        dens: Option<Vec<MultiPoly>>,
    ) -> Result<Self, PolyError> {
        let sv = source.vars();
        if coords.len() != target.dim() {
            return Err(PolyError::Arity(format!(
                "{} coordinates for target {target}",
                coords.len()
            )));
        }
        let dens = dens.unwrap_or_else(|| vec![MultiPoly::one(&sv); coords.len()]);
        if dens.len() != coords.len() {
            return Err(PolyError::Arity("denominator count".into()));
        }
        if let Some(p) = coords.iter().chain(&dens).find(|p| p.arity() != sv.len()) {
            return Err(PolyError::Arity(format!("polynomial in {:?}", p.vars())));
        }
        let coords: Vec<MultiPoly> = coords.into_iter().map(|p| p.with_vars(&sv)).collect();
        let dens: Vec<MultiPoly> = dens.into_iter().map(|p| p.with_vars(&sv)).collect();
        for block in target.blocks() {
            let idx = block.indices();
            if idx.iter().any(|&i| dens[i].is_zero()) {
                return Err(PolyError::ZeroDenominator);
            }
            if let Block::Proj(_) = block {
                if idx.iter().any(|&i| !dens[i].is_one()) {
                    return Err(PolyError::NotHomogeneous(
                        "projective coordinates must have denominator 1".into(),
                    ));
                }
                if idx.iter().all(|&i| coords[i].is_zero()) {
                    return Err(PolyError::NotHomogeneous("all coordinates of a block vanish".into()));
                }
                for sb in source.blocks().iter().filter(|b| b.is_proj()) {
                    let d: Vec<Option<u32>> = idx
                        .iter()
                        .filter(|&&i| !coords[i].is_zero())
                        .map(|&i| coords[i].homogeneous_degree_in(sb.indices()))
                        .collect();
                    if d.iter().any(Option::is_none) || d.windows(2).any(|w| w[0] != w[1]) {
                        return Err(PolyError::NotHomogeneous(format!(
                            "target block {idx:?} in source block {:?}",
                            sb.indices()
                        )));
                    }
                }
            }
        }
        Ok(RationalMap {
            source,
            target,
            coords,
            dens,
            frame: None,
        })
    }

    /// Builds a map from coordinate expressions in the source variables.
    pub fn from_strs(
        source: Surface,
        target: Surface,
        coords: &[&str],
        dens: Option<&[&str]>,
    ) -> Result<Self, PolyError> {
        let v = source.vars();
        let parse = |xs: &[&str]| -> Result<Vec<MultiPoly>, PolyError> {
            xs.iter().map(|s| MultiPoly::parse(&v, s)).collect()
        };
        let dens = dens.map(parse).transpose()?;
        RationalMap::new(source, target, parse(coords)?, dens)
    }

    pub fn identity(surface: Surface) -> Self {
        let v = surface.vars();
        let coords = (0..v.len()).map(|i| MultiPoly::var(&v, i)).collect();
        RationalMap::new(surface, surface, coords, None).expect("identity is well formed")
    }

    /// Attaches a frame to a sphere self-map.
    pub fn with_frame(mut self, frame: Rotation3) -> Result<Self, PolyError> {
        if !self.is_sphere_map() {
            return Err(PolyError::SurfaceMismatch(
                "frames apply to sphere self-maps only".into(),
            ));
        }
        self.frame = (!frame.is_identity()).then_some(frame);
        Ok(self)
    }

    pub fn source(&self) -> Surface {
        self.source
    }

    pub fn target(&self) -> Surface {
        self.target
    }

    pub fn coords(&self) -> &[MultiPoly] {
        &self.coords
    }

    pub fn dens(&self) -> &[MultiPoly] {
        &self.dens
    }

    pub fn has_denominators(&self) -> bool {
        self.dens.iter().any(|d| !d.is_one())
    }

    pub fn frame(&self) -> Option<&Rotation3> {
        self.frame.as_ref()
    }

    pub fn frame_or_identity(&self) -> Rotation3 {
        self.frame.clone().unwrap_or_else(Rotation3::identity)
    }

    pub fn is_sphere_map(&self) -> bool {
        self.source == Surface::Sphere && self.target == Surface::Sphere
    }

    /// The same map with the frame folded into the coordinates.
    pub fn materialized(&self) -> RationalMap {
        match &self.frame {
            None => self.clone(),
            Some(f) => {
                let mut m = self.core().conjugated(f);
                m.frame = None;
                m
            }
        }
    }

    /// The same map expressed with frame `new`.
    pub fn reframed(&self, new: &Rotation3) -> RationalMap {
        let old = self.frame_or_identity();
        if &old == new {
            return self.clone();
        }
        let l = old.compose(&new.transpose());
        let mut m = self.core().conjugated(&l);
        m.frame = (!new.is_identity()).then(|| new.clone());
        m
    }

    fn core(&self) -> RationalMap {
        RationalMap {
            frame: None,
            ..self.clone()
        }
    }

    /// `Lᵀ ∘ self ∘ L` for a frame-free sphere self-map.
    fn conjugated(&self, l: &Rotation3) -> RationalMap {
        let v = self.source.vars();
        let xs: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::var(&v, i)).collect();
        let lin = |row: &[TowerElem; 3], ps: &[MultiPoly]| {
            (0..3).fold(MultiPoly::zero(ps[0].vars()), |acc, j| &acc + &ps[j].scale(&row[j]))
        };
        let subs: Vec<MultiPoly> = (0..3).map(|i| lin(l.row(i), &xs)).collect();
        let num: Vec<MultiPoly> = self.coords.iter().map(|p| p.substitute(&subs)).collect();
        let den: Vec<MultiPoly> = self.dens.iter().map(|p| p.substitute(&subs)).collect();
        // output Lᵀ·(num/den): bring the three fractions to a common denominator
        let (common, nums) = common_denominator(&num, &den);
        let lt = l.transpose();
        let coords = (0..3).map(|i| lin(lt.row(i), &nums)).collect();
        RationalMap {
            source: self.source,
            target: self.target,
            coords,
            dens: vec![common; 3],
            frame: None,
        }
    }

    /// Evaluates the map at `p`.
    pub fn evaluate(&self, p: &Point) -> Result<Point, PolyError> {
        let mut vals = p.values_for(self.source)?;
        if let Some(f) = &self.frame {
            let v = f.apply(&[vals[0].clone(), vals[1].clone(), vals[2].clone()]);
            vals = v.to_vec();
        }
        let mut out: Vec<TowerElem> = vec![TowerElem::zero(); self.target.dim()];
        let mut blocks_out = Vec::new();
        for block in self.target.blocks() {
            match &block {
                Block::Affine(idx) => {
                    for &i in idx {
                        let d = self.dens[i].eval(&vals);
                        if d.is_zero() {
                            return Err(PolyError::DenominatorZero);
                        }
                        out[i] = &self.coords[i].eval(&vals) / &d;
                    }
                }
                Block::Proj(idx) => {
                    let c: Vec<TowerElem> = idx.iter().map(|&i| self.coords[i].eval(&vals)).collect();
                    if c.iter().all(TowerElem::is_zero) {
                        return Err(PolyError::Indeterminate);
                    }
                    blocks_out.push(c);
                }
            }
        }
        if let Some(f) = &self.frame {
            let v = f.transpose().apply(&[out[0].clone(), out[1].clone(), out[2].clone()]);
            out = v.to_vec();
        }
        let proj = || {
            ProjPoint::with_blocks(blocks_out.clone())
                .map(|p| p.normalized())
                .map_err(|_| PolyError::Indeterminate)
        };
        Ok(match self.target {
            Surface::Sphere | Surface::A2 => Point::Affine(out),
            Surface::Quadric | Surface::P2 | Surface::P1xP1 => Point::Proj(proj()?),
            Surface::BlowupChart => Point::Chart {
                base: [out[0].clone(), out[1].clone()],
                dir: proj()?,
            },
        })
    }

    /// Evaluates a sphere self-map at a sphere point, checking the result lies on the sphere.
    pub fn apply_sphere(&self, p: &SpherePoint) -> Result<SpherePoint, PolyError> {
        if !self.is_sphere_map() {
            return Err(PolyError::SurfaceMismatch(format!("{} → {}", self.source, self.target)));
        }
        self.evaluate(&Point::sphere(p))?
            .to_sphere()
            .ok_or(PolyError::NotOnSurface)
    }

    /// Checks `Σ (numᵢ/denᵢ)² = 1` modulo the sphere relation.
    pub fn sphere_certificate(&self) -> bool {
        if !self.is_sphere_map() {
            return false;
        }
        let m = self.core();
        let (common, nums) = common_denominator(&m.coords, &m.dens);
        let sum = nums.iter().fold(MultiPoly::zero(common.vars()), |acc, n| &acc + &(n * n));
        reduce_mod_sphere(&(&sum - &(&common * &common))).is_zero()
    }
}

/// Rewrites fractions `nᵢ/dᵢ` over a common denominator, sharing equal denominators.
fn common_denominator(num: &[MultiPoly], den: &[MultiPoly]) -> (MultiPoly, Vec<MultiPoly>) {
    let mut distinct: Vec<&MultiPoly> = Vec::new();
    for d in den {
        if !distinct.contains(&d) {
            distinct.push(d);
        }
    }
    let common = distinct.iter().fold(MultiPoly::one(den[0].vars()), |acc, d| &acc * *d);
    let nums = num
        .iter()
        .zip(den)
        .map(|(n, d)| {
            let others = distinct
                .iter()
                .filter(|e| **e != d)
                .fold(MultiPoly::one(d.vars()), |acc, e| &acc * *e);
            n * &others
        })
        .collect();
    (common, nums)
}

/// `g ∘ f`, applying `f` first.
pub fn compose(g: &RationalMap, f: &RationalMap) -> Result<RationalMap, PolyError> {
    if f.target != g.source {
        return Err(PolyError::SurfaceMismatch(format!(
            "cannot feed {} into a map from {}",
            f.target, g.source
        )));
    }
    if g.is_sphere_map() && f.is_sphere_map() {
        let frame = f.frame.clone();
        let g = match (&g.frame, &frame) {
            (a, b) if a == b => g.core(),
            _ => g.reframed(&f.frame_or_identity()).core(),
        };
        let mut out = compose_raw(&g, &f.core());
        out.frame = frame;
        return Ok(out);
    }
    Ok(compose_raw(&g.materialized(), &f.materialized()))
}

fn compose_raw(g: &RationalMap, f: &RationalMap) -> RationalMap {
    let sv = f.source.vars();
    // group target variables of f by identical denominators
    let mut groups: Vec<MultiPoly> = Vec::new();
    let mut group_of = Vec::with_capacity(f.dens.len());
    for d in &f.dens {
        match groups.iter().position(|e| e == d) {
            Some(k) => group_of.push(k),
            None => {
                groups.push(d.clone());
                group_of.push(groups.len() - 1);
            }
        }
    }
    let members: Vec<Vec<usize>> = (0..groups.len())
        .map(|k| (0..group_of.len()).filter(|&i| group_of[i] == k).collect())
        .collect();
    let mut num_cache = PowerCache::new(&f.coords);
    let mut den_cache = PowerCache::new(&groups);

    let n = g.coords.len();
    let mut nums = Vec::with_capacity(n);
    let mut den_polys = Vec::with_capacity(n);
    let mut den_exps = Vec::with_capacity(n);
    for k in 0..n {
        let (pn, en) = subst(&g.coords[k], &sv, &members, &groups, &mut num_cache, &mut den_cache);
        let (pd, ed) = subst(&g.dens[k], &sv, &members, &groups, &mut num_cache, &mut den_cache);
        let mut num = pn;
        let mut dexp = vec![0u32; groups.len()];
        for gi in 0..groups.len() {
            if groups[gi].is_one() {
                continue;
            }
            if ed[gi] > en[gi] {
                num = &num * den_cache.get(gi, ed[gi] - en[gi]);
            } else {
                dexp[gi] = en[gi] - ed[gi];
            }
        }
        nums.push(num);
        den_polys.push(pd);
        den_exps.push(dexp);
    }

    let mut coords = vec![MultiPoly::zero(&sv); n];
    let mut dens = vec![MultiPoly::one(&sv); n];
    for block in g.target.blocks() {
        match block {
            Block::Affine(idx) => {
                for i in idx {
                    let mut d = den_polys[i].clone();
                    for (gi, &e) in den_exps[i].iter().enumerate() {
                        if e > 0 {
                            d = &d * den_cache.get(gi, e);
                        }
                    }
                    coords[i] = nums[i].clone();
                    dens[i] = d;
                }
            }
            Block::Proj(idx) => {
                let top: Vec<u32> = (0..groups.len())
                    .map(|gi| idx.iter().map(|&i| den_exps[i][gi]).max().unwrap_or(0))
                    .collect();
                for &i in &idx {
                    // den_polys[i] is a nonzero constant here
                    let inv = den_polys[i].constant_term().inverse().expect("constant denominator");
                    let mut c = nums[i].scale(&inv);
                    for gi in 0..groups.len() {
                        let e = top[gi] - den_exps[i][gi];
                        if e > 0 {
                            c = &c * den_cache.get(gi, e);
                        }
                    }
                    coords[i] = c;
                }
                let content = idx
                    .iter()
                    .filter(|&&i| !coords[i].is_zero())
                    .map(|&i| coords[i].rational_content())
                    .reduce(|a, b| gcd_rational(&a, &b))
                    .expect("nonempty block");
                let inv = TowerElem::rational(content.recip());
                for &i in &idx {
                    coords[i] = coords[i].scale(&inv);
                }
            }
        }
    }
    RationalMap {
        source: f.source,
        target: g.target,
        coords,
        dens,
        frame: None,
    }
}

/// `p(N/D) = P / Π D_G^{e_G}`, with `e_G` the degree of `p` in the variables of group `G`.
fn subst(
    p: &MultiPoly,
    sv: &Vars,
    members: &[Vec<usize>],
    groups: &[MultiPoly],
    num_cache: &mut PowerCache,
    den_cache: &mut PowerCache,
) -> (MultiPoly, Vec<u32>) {
    let exps: Vec<u32> = members
        .iter()
        .map(|idx| {
            p.terms()
                .map(|(m, _)| idx.iter().map(|&i| m.0[i]).sum::<u32>())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut acc = MultiPoly::zero(sv);
    for (m, c) in p.terms() {
        let mut t = MultiPoly::constant(sv, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                t = &t * num_cache.get(i, e);
            }
        }
        for (k, idx) in members.iter().enumerate() {
            let used: u32 = idx.iter().map(|&i| m.0[i]).sum();
            let missing = exps[k] - used;
            if missing > 0 && !groups[k].is_one() {
                t = &t * den_cache.get(k, missing);
            }
        }
        acc = &acc + &t;
    }
    (acc, exps)
}

fn gcd_rational(a: &Rational, b: &Rational) -> Rational {
    Rational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}
