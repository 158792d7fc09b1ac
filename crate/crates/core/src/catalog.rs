//! Ready-made maps: stereographic projection, quadratic involutions of the plane,
//! involutions and monomial maps of P¹×P¹, and charts of the blown-up plane.

use thiserror::Error;

use crate::exactfield::TowerElem;
use crate::geom::{GeomError, ProjPoint};
use crate::polyrat::{Monomial, MultiPoly, Point, PolyError, RationalMap, Surface};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("matrix {0:?} does not have determinant ±1")]
    NotUnimodular([[i64; 2]; 2]),
    #[error("unknown map name {0:?}")]
    UnknownName(String),
    #[error("incidence uy = vx fails")]
    NotIncident,
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Names accepted by [`lookup`]; `monomial:[a,b,c,d]` is parametric.
pub const REGISTRY: &[&str] = &[
    "pi_N",
    "pi_N_inv",
    "sigma0",
    "sigma1",
    "tau0",
    "e",
    "monomial:[a,b,c,d]",
    "blowup_phi0",
    "blowup_phi1",
    "blowup_proj",
    "blowup_phi0_inv",
];

fn build(source: Surface, target: Surface, coords: &[&str], dens: Option<&[&str]>) -> RationalMap {
    RationalMap::from_strs(source, target, coords, dens).expect("catalog map is well formed")
}

/// `(π_N, π_N⁻¹)`: projection of the quadric from its north pole `[1:0:0:1]` and its inverse.
pub fn stereographic_north() -> (RationalMap, RationalMap) {
    let pi = build(Surface::Quadric, Surface::P2, &["x", "y", "w-z"], None);
    let inv = build(
        Surface::P2,
        Surface::Quadric,
        &["x^2+y^2+z^2", "2*x*z", "2*y*z", "x^2+y^2-z^2"],
        None,
    );
    (pi, inv)
}

/// The standard quadratic involution `[x:y:z] ⇢ [yz:xz:xy]`.
pub fn sigma0() -> RationalMap {
    build(Surface::P2, Surface::P2, &["y*z", "x*z", "x*y"], None)
}

/// `[x:y:z] ⇢ [y²+z²:xy:xz]`, with two non-real base points.
pub fn sigma1() -> RationalMap {
    build(Surface::P2, Surface::P2, &["y^2+z^2", "x*y", "x*z"], None)
}

pub fn tau0() -> RationalMap {
    build(
        Surface::P1xP1,
        Surface::P1xP1,
        &["x0", "x1", "x0*y0+x1*y1", "x1*y0-x0*y1"],
        None,
    )
}

pub fn e_invol() -> RationalMap {
    build(Surface::P1xP1, Surface::P1xP1, &["x0", "x1", "x0*y1", "x1*y0"], None)
}

/// The monomial map `(s, t) ↦ (s^a t^b, s^c t^d)` in torus coordinates
/// `s = x1/x0`, `t = y1/y0`.
pub fn monomial_torus(m: [[i64; 2]; 2]) -> Result<RationalMap, CatalogError> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.abs() != 1 {
        return Err(CatalogError::NotUnimodular(m));
    }
    let v = Surface::P1xP1.vars();
    let pos = |e: i64| e.max(0) as u32;
    let neg = |e: i64| (-e).max(0) as u32;
    let mut coords = Vec::new();
    for [a, b] in m {
        // s^a t^b = M+/M−, written as the block [M− : M+]
        let lower = Monomial(vec![pos(a), neg(a), pos(b), neg(b)]);
        let upper = Monomial(vec![neg(a), pos(a), neg(b), pos(b)]);
        coords.push(MultiPoly::monomial(&v, lower, TowerElem::one()));
        coords.push(MultiPoly::monomial(&v, upper, TowerElem::one()));
    }
    Ok(RationalMap::new(Surface::P1xP1, Surface::P1xP1, coords, None)?)
}

/// A point `((x, y), [u:v])` of the blow-up of the origin of the plane.
#[derive(Clone, Debug, PartialEq)]
pub struct BlowupChartPoint {
    base: [TowerElem; 2],
    dir: ProjPoint,
}

impl BlowupChartPoint {
    pub fn new(x: TowerElem, y: TowerElem, u: TowerElem, v: TowerElem) -> Result<Self, CatalogError> {
        let dir = ProjPoint::new(vec![u, v])?;
        let p = BlowupChartPoint { base: [x, y], dir };
        if !p.incidence_holds() {
            return Err(CatalogError::NotIncident);
        }
        Ok(p)
    }

    /// The point of the exceptional curve over the origin with direction `[u:v]`.
    pub fn exceptional(u: TowerElem, v: TowerElem) -> Result<Self, CatalogError> {
        Self::new(TowerElem::zero(), TowerElem::zero(), u, v)
    }

    /// The unique lift of `(x, y) ≠ (0, 0)`.
    pub fn lift(x: TowerElem, y: TowerElem) -> Result<Self, CatalogError> {
        Self::new(x.clone(), y.clone(), x, y)
    }

    pub fn incidence_holds(&self) -> bool {
        let d = self.dir.flat();
        &d[0] * &self.base[1] == &d[1] * &self.base[0]
    }

    pub fn base(&self) -> &[TowerElem; 2] {
        &self.base
    }

    pub fn dir(&self) -> &ProjPoint {
        &self.dir
    }

    pub fn to_point(&self) -> Point {
        Point::Chart {
            base: self.base.clone(),
            dir: self.dir.clone(),
        }
    }
}

impl TryFrom<&Point> for BlowupChartPoint {
    type Error = CatalogError;
    fn try_from(p: &Point) -> Result<Self, CatalogError> {
        match p {
            Point::Chart { base, dir } if dir.block_sizes() == [2] => {
                let d = dir.flat();
                Self::new(base[0].clone(), base[1].clone(), d[0].clone(), d[1].clone())
            }
            _ => Err(PolyError::PointShape(Surface::BlowupChart).into()),
        }
    }
}

/// `(φ₀, φ₁, π)`: the chart maps `(x, v/u)` on `u ≠ 0` and `(x, u/v)` on `v ≠ 0`,
/// and the blow-down `(x, y)`.
pub fn blowup_chart_maps() -> (RationalMap, RationalMap, RationalMap) {
    let s = Surface::BlowupChart;
    (
        build(s, Surface::A2, &["x", "v"], Some(&["1", "u"])),
        build(s, Surface::A2, &["x", "u"], Some(&["1", "v"])),
        build(s, Surface::A2, &["x", "y"], None),
    )
}

/// Inverse of φ₀: `(x, y) ↦ ((x, xy), [1:y])`.
pub fn blowup_phi0_inv() -> RationalMap {
    build(Surface::A2, Surface::BlowupChart, &["x", "x*y", "1", "y"], None)
}

/// Resolves a registry name.
pub fn lookup(name: &str) -> Result<RationalMap, CatalogError> {
    let name = name.trim();
    if let Some(rest) = name.strip_prefix("monomial:") {
        let inner = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| CatalogError::UnknownName(name.into()))?;
        let nums: Vec<i64> = inner
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| CatalogError::UnknownName(name.into()))?;
        let [a, b, c, d] = nums[..] else {
            return Err(CatalogError::UnknownName(name.into()));
        };
        return monomial_torus([[a, b], [c, d]]);
    }
    Ok(match name {
        "pi_N" => stereographic_north().0,
        "pi_N_inv" => stereographic_north().1,
        "sigma0" => sigma0(),
        "sigma1" => sigma1(),
        "tau0" => tau0(),
        "e" => e_invol(),
        "blowup_phi0" => blowup_chart_maps().0,
        "blowup_phi1" => blowup_chart_maps().1,
        "blowup_proj" => blowup_chart_maps().2,
        "blowup_phi0_inv" => blowup_phi0_inv(),
        _ => return Err(CatalogError::UnknownName(name.into())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrat::{compose, maps_equal, MapEquality};
    use proptest::prelude::*;

    fn int(n: i64) -> TowerElem {
        TowerElem::from_int(n)
    }

    fn proj(c: &[i64]) -> Point {
        Point::Proj(ProjPoint::from_ints(c).unwrap())
    }

    fn p1p1(a: [i64; 2], b: [i64; 2]) -> Point {
        Point::Proj(
            ProjPoint::with_blocks(vec![vec![int(a[0]), int(a[1])], vec![int(b[0]), int(b[1])]]).unwrap(),
        )
    }

    fn square_factors(m: &RationalMap) -> Vec<String> {
        let id = RationalMap::identity(m.source());
        maps_equal(&compose(m, m).unwrap(), &id).unwrap().factor_strings()
    }

    #[test]
    fn involutions_square_to_identity() {
        assert_eq!(square_factors(&sigma0()), ["x*y*z"]);
        assert_eq!(square_factors(&sigma1()), ["x*(y^2+z^2)"]);
        assert_eq!(square_factors(&tau0()), ["1", "x0^2+x1^2"]);
        assert_eq!(square_factors(&e_invol()), ["1", "x0*x1"]);
    }

    #[test]
    fn stereographic_examples() {
        let (pi, inv) = stereographic_north();
        assert_eq!(pi.evaluate(&proj(&[2, 1, 0, 1])).unwrap(), proj(&[1, 0, 1]));
        assert_eq!(pi.evaluate(&proj(&[1, 0, 0, 1])), Err(PolyError::Indeterminate));
        let eq = maps_equal(&compose(&inv, &pi).unwrap(), &RationalMap::identity(Surface::Quadric)).unwrap();
        assert_eq!(eq.factor_strings(), ["2*(w-z)"]);
    }

    #[test]
    fn sigma0_real_base_points_are_the_coordinate_points() {
        let mut found = Vec::new();
        for a in -2..=2 {
            for b in -2..=2 {
                for c in -2..=2 {
                    let Ok(p) = ProjPoint::from_ints(&[a, b, c]) else { continue };
                    if sigma0().evaluate(&Point::Proj(p.clone())) == Err(PolyError::Indeterminate) {
                        let p = p.normalized();
                        if !found.contains(&p) {
                            found.push(p);
                        }
                    }
                }
            }
        }
        let want: Vec<ProjPoint> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
            .iter()
            .map(|c| ProjPoint::from_ints(c).unwrap())
            .collect();
        assert_eq!(found.len(), 3);
        assert!(want.iter().all(|w| found.contains(w)));
    }

    #[test]
    fn sigma1_only_real_base_point() {
        for a in -3..=3 {
            for b in -3..=3 {
                for c in -3..=3 {
                    let Ok(p) = ProjPoint::from_ints(&[a, b, c]) else { continue };
                    let indet = sigma1().evaluate(&Point::Proj(p)) == Err(PolyError::Indeterminate);
                    assert_eq!(indet, b == 0 && c == 0, "[{a}:{b}:{c}]");
                }
            }
        }
    }

    #[test]
    fn e_real_base_locus() {
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                for c in -2..=2i64 {
                    for d in -2..=2i64 {
                        if (a, b) == (0, 0) || (c, d) == (0, 0) {
                            continue;
                        }
                        let indet = e_invol().evaluate(&p1p1([a, b], [c, d])) == Err(PolyError::Indeterminate);
                        let want = (a == 0 && c == 0) || (b == 0 && d == 0);
                        assert_eq!(indet, want);
                    }
                }
            }
        }
    }

    #[test]
    fn monomial_examples() {
        let id = monomial_torus([[1, 0], [0, 1]]).unwrap();
        assert!(maps_equal(&id, &RationalMap::identity(Surface::P1xP1)).unwrap().is_equal());
        let swap = monomial_torus([[0, 1], [1, 0]]).unwrap();
        assert_eq!(swap.evaluate(&p1p1([1, 2], [3, 5])).unwrap(), p1p1([3, 5], [1, 2]));
        let m = monomial_torus([[1, 1], [0, 1]]).unwrap();
        let m_inv = monomial_torus([[1, -1], [0, 1]]).unwrap();
        assert!(maps_equal(&compose(&m, &m_inv).unwrap(), &id).unwrap().is_equal());
        assert_eq!(
            monomial_torus([[2, 0], [0, 1]]).unwrap_err(),
            CatalogError::NotUnimodular([[2, 0], [0, 1]])
        );
    }

    fn unimodular() -> impl Strategy<Value = [[i64; 2]; 2]> {
        (-2i64..=2, -2i64..=2, -2i64..=2, -2i64..=2)
            .prop_filter("det ±1", |(a, b, c, d)| (a * d - b * c).abs() == 1)
            .prop_map(|(a, b, c, d)| [[a, b], [c, d]])
    }

    fn matmul(m: [[i64; 2]; 2], n: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
        std::array::from_fn(|i| std::array::from_fn(|j| m[i][0] * n[0][j] + m[i][1] * n[1][j]))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn monomial_maps_form_a_group(m in unimodular(), n in unimodular()) {
            let lhs = compose(&monomial_torus(m).unwrap(), &monomial_torus(n).unwrap()).unwrap();
            let rhs = monomial_torus(matmul(m, n)).unwrap();
            prop_assert!(maps_equal(&lhs, &rhs).unwrap().is_equal());
        }
    }

    #[test]
    fn blowup_examples() {
        let (phi0, phi1, proj_map) = blowup_chart_maps();
        let p = BlowupChartPoint::new(int(1), int(2), int(1), int(2)).unwrap();
        assert_eq!(phi0.evaluate(&p.to_point()).unwrap(), Point::Affine(vec![int(1), int(2)]));
        let e = BlowupChartPoint::exceptional(int(3), int(5)).unwrap();
        assert_eq!(proj_map.evaluate(&e.to_point()).unwrap(), Point::Affine(vec![int(0), int(0)]));
        let vert = BlowupChartPoint::exceptional(int(0), int(1)).unwrap();
        assert_eq!(phi0.evaluate(&vert.to_point()), Err(PolyError::DenominatorZero));
        assert_eq!(
            BlowupChartPoint::new(int(1), int(2), int(1), int(3)),
            Err(CatalogError::NotIncident)
        );
        let transition = compose(&phi1, &blowup_phi0_inv()).unwrap();
        let want = RationalMap::from_strs(Surface::A2, Surface::A2, &["x", "1"], Some(&["1", "y"])).unwrap();
        assert!(maps_equal(&transition, &want).unwrap().is_equal());
        let round = compose(&phi0, &blowup_phi0_inv()).unwrap();
        assert!(maps_equal(&round, &RationalMap::identity(Surface::A2)).unwrap().is_equal());
    }

    #[test]
    fn registry_resolves_every_name() {
        for name in REGISTRY {
            let name = name.replace("[a,b,c,d]", "[1,1,0,1]");
            assert!(lookup(&name).is_ok(), "{name}");
        }
        assert!(matches!(lookup("sigma2"), Err(CatalogError::UnknownName(_))));
        assert!(matches!(lookup("monomial:[1,2]"), Err(CatalogError::UnknownName(_))));
        let witness = maps_equal(&sigma0(), &sigma1()).unwrap();
        assert_eq!(witness, MapEquality::NotEqual(Some(proj(&[1, 2, 3]))));
    }
}
