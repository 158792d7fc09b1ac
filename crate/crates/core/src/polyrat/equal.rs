use std::fmt;

use crate::exactfield::TowerElem;
use crate::geom::{sphere_from_plane, ProjPoint};

use super::map::{Block, Point, RationalMap, Surface};
use super::poly::MultiPoly;
use super::PolyError;

/// Proportionality `f = (num/den)·g` of one projective block.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl Factor {
    pub fn one(p: &MultiPoly) -> Self {
        Factor {
            num: MultiPoly::one(p.vars()),
            den: MultiPoly::one(p.vars()),
        }
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            f.write_str(&self.num.factored_string())
        } else {
            let wrap = |p: &MultiPoly| {
                let s = p.factored_string();
                if p.nterms() > 1 || s.contains('*') {
                    format!("({s})")
                } else {
                    s
                }
            };
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MapEquality {
    /// One factor per block of the target; affine blocks report `1`.
    Equal(Vec<Factor>),
    /// A source point where both maps are defined and disagree, when one was found.
    NotEqual(Option<Point>),
}

impl MapEquality {
    pub fn is_equal(&self) -> bool {
        matches!(self, MapEquality::Equal(_))
    }

    /// Display strings of the per-block factors.
    pub fn factor_strings(&self) -> Vec<String> {
        match self {
            MapEquality::Equal(fs) => fs.iter().map(ToString::to_string).collect(),
            MapEquality::NotEqual(_) => Vec::new(),
        }
    }
}

/// Certifies `f = g` as rational maps, modulo the relation of the source surface.
pub fn maps_equal(f: &RationalMap, g: &RationalMap) -> Result<MapEquality, PolyError> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(PolyError::SurfaceMismatch(format!(
            "{} → {} vs {} → {}",
            f.source(),
            f.target(),
            g.source(),
            g.target()
        )));
    }
    // compare cores in one frame, moving the smaller map
    let size = |m: &RationalMap| m.coords().iter().chain(m.dens()).map(MultiPoly::nterms).sum::<usize>();
    let (f, g) = if f.is_sphere_map() && f.frame() != g.frame() {
        if size(f) <= size(g) {
            (f.reframed(&g.frame_or_identity()), g.clone())
        } else {
            (f.clone(), g.reframed(&f.frame_or_identity()))
        }
    } else {
        (f.clone(), g.clone())
    };
    let src = f.source();
    let mut factors = Vec::new();
    let mut equal = true;
    for block in f.target().blocks() {
        match block {
            Block::Affine(idx) => {
                for i in idx {
                    let lhs = &f.coords()[i] * &g.dens()[i];
                    let rhs = &g.coords()[i] * &f.dens()[i];
                    let diff = &lhs - &rhs;
                    if !diff.is_zero() && !src.reduce(&diff).is_zero() {
                        equal = false;
                    }
                }
                factors.push(Factor::one(&f.coords()[0]));
            }
            Block::Proj(idx) => {
                let a: Vec<MultiPoly> = idx.iter().map(|&i| src.reduce(&f.coords()[i])).collect();
                let b: Vec<MultiPoly> = idx.iter().map(|&i| src.reduce(&g.coords()[i])).collect();
                match block_factor(src, &a, &b) {
                    Some(fac) => factors.push(fac),
                    None => equal = false,
                }
            }
        }
        if !equal {
            break;
        }
    }
    if equal {
        return Ok(MapEquality::Equal(factors));
    }
    Ok(MapEquality::NotEqual(find_witness(&f, &g)))
}

fn block_factor(src: Surface, a: &[MultiPoly], b: &[MultiPoly]) -> Option<Factor> {
    if a.iter().zip(b).any(|(x, y)| x.is_zero() != y.is_zero()) {
        return None;
    }
    let mut order: Vec<usize> = (0..a.len()).filter(|&k| !b[k].is_zero() && !a[k].is_zero()).collect();
    order.sort_by_key(|&k| (b[k].nterms(), k));
    let holds = |num: &MultiPoly, den: &MultiPoly| {
        a.iter()
            .zip(b)
            .all(|(aj, bj)| src.reduce(&(&(aj * den) - &(bj * num))).is_zero())
    };
    for &k in &order {
        if let Some(lambda) = a[k].div_exact(&b[k]) {
            let one = MultiPoly::one(lambda.vars());
            if holds(&lambda, &one) {
                return Some(Factor { num: lambda, den: one });
            }
        }
        if let Some(mu) = b[k].div_exact(&a[k]) {
            let one = MultiPoly::one(mu.vars());
            if holds(&one, &mu) {
                return Some(Factor { num: one, den: mu });
            }
        }
    }
    let k = *order.first()?;
    holds(&a[k], &b[k]).then(|| Factor {
        num: a[k].clone(),
        den: b[k].clone(),
    })
}

/// Deterministic sample points of a surface, used to look for disagreement witnesses.
pub fn sample_points(s: Surface) -> Vec<Point> {
    let triples: [[i64; 3]; 8] = [
        [1, 2, 3],
        [2, -1, 5],
        [3, 4, -2],
        [-1, 3, 2],
        [5, 2, 7],
        [1, 1, 1],
        [4, -3, 1],
        [2, 7, -5],
    ];
    let int = TowerElem::from_int;
    match s {
        Surface::P2 => triples
            .iter()
            .map(|t| Point::Proj(ProjPoint::from_ints(t).unwrap()))
            .collect(),
        Surface::P1xP1 => triples
            .iter()
            .zip(triples.iter().skip(1))
            .map(|(a, b)| {
                Point::Proj(
                    ProjPoint::with_blocks(vec![
                        vec![int(a[0]), int(a[1])],
                        vec![int(b[2]), int(b[0])],
                    ])
                    .unwrap(),
                )
            })
            .collect(),
        Surface::Sphere | Surface::Quadric => triples
            .iter()
            .map(|t| {
                let p = sphere_from_plane(&ProjPoint::from_ints(t).unwrap());
                if s == Surface::Sphere {
                    Point::sphere(&p)
                } else {
                    let mut c = vec![TowerElem::one()];
                    c.extend(p.coords().iter().cloned());
                    Point::Proj(ProjPoint::new(c).unwrap())
                }
            })
            .collect(),
        Surface::A2 => triples.iter().map(|t| Point::Affine(vec![int(t[0]), int(t[1])])).collect(),
        Surface::BlowupChart => triples
            .iter()
            .map(|t| Point::Chart {
                base: [int(t[0]), int(t[1])],
                dir: ProjPoint::from_ints(&t[..2]).unwrap(),
            })
            .collect(),
    }
}

fn find_witness(f: &RationalMap, g: &RationalMap) -> Option<Point> {
    sample_points(f.source()).into_iter().find(|p| {
        matches!((f.evaluate(p), g.evaluate(p)), (Ok(a), Ok(b)) if a != b)
    })
}
