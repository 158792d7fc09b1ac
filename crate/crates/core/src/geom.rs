//! Exact points on the unit sphere, projective points and rational rotations.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::exactfield::{Rational, TowerElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("point is not on the unit sphere")]
    NotOnSphere,
    #[error("projective point has all coordinates zero")]
    ZeroProjective,
    #[error("matrix is not a rotation")]
    NotARotation,
}

/// A point `(x, y, z)` with `x² + y² + z² = 1` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpherePoint {
    coords: [TowerElem; 3],
}

impl SpherePoint {
    pub fn new(x: TowerElem, y: TowerElem, z: TowerElem) -> Result<Self, GeomError> {
        let norm = &(&x.square() + &y.square()) + &z.square();
        if !norm.is_one() && norm != TowerElem::one() {
            return Err(GeomError::NotOnSphere);
        }
        Ok(SpherePoint { coords: [x, y, z] })
    }

    pub fn from_rationals(x: Rational, y: Rational, z: Rational) -> Result<Self, GeomError> {
        Self::new(x.into(), y.into(), z.into())
    }

    pub fn north() -> Self {
        SpherePoint {
            coords: [TowerElem::zero(), TowerElem::zero(), TowerElem::one()],
        }
    }

    pub fn x(&self) -> &TowerElem {
        &self.coords[0]
    }

    pub fn y(&self) -> &TowerElem {
        &self.coords[1]
    }

    pub fn z(&self) -> &TowerElem {
        &self.coords[2]
    }

    pub fn coords(&self) -> &[TowerElem; 3] {
        &self.coords
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(TowerElem::is_rational)
    }

    /// Same point with every coordinate reduced to its smallest tower.
    pub fn trimmed(&self) -> SpherePoint {
        SpherePoint {
            coords: self.coords.clone().map(|c| c.trimmed()),
        }
    }

    pub fn dot(&self, v: &[TowerElem; 3]) -> TowerElem {
        dot(&self.coords, v)
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

pub fn dot(a: &[TowerElem; 3], b: &[TowerElem; 3]) -> TowerElem {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

/// A homogeneous point, possibly a product of projective spaces.
///
/// `blocks` holds one coordinate tuple per factor: a single triple for P², a single
/// quadruple for P³, two pairs for P¹×P¹.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    blocks: Vec<Vec<TowerElem>>,
}

impl ProjPoint {
    pub fn new(coords: Vec<TowerElem>) -> Result<Self, GeomError> {
        Self::with_blocks(vec![coords])
    }

    pub fn with_blocks(blocks: Vec<Vec<TowerElem>>) -> Result<Self, GeomError> {
        if blocks.iter().any(|b| b.iter().all(TowerElem::is_zero)) {
            return Err(GeomError::ZeroProjective);
        }
        Ok(ProjPoint { blocks })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, GeomError> {
        Self::new(coords.iter().map(|&c| TowerElem::from_int(c)).collect())
    }

    pub fn blocks(&self) -> &[Vec<TowerElem>] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// All coordinates in block order.
    pub fn flat(&self) -> Vec<TowerElem> {
        self.blocks.iter().flatten().cloned().collect()
    }

    /// Divides each block by its first nonzero coordinate.
    pub fn normalized(&self) -> ProjPoint {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let pivot = b.iter().find(|c| !c.is_zero()).expect("nonzero block");
                b.iter().map(|c| (c / pivot).trimmed()).collect()
            })
            .collect();
        ProjPoint { blocks }
    }
}

/// Equality up to a nonzero scalar per block: every 2×2 minor vanishes.
impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.block_sizes() == other.block_sizes()
            && self.blocks.iter().zip(&other.blocks).all(|(a, b)| {
                (0..a.len()).all(|i| {
                    (i + 1..a.len()).all(|j| (&(&a[i] * &b[j]) - &(&a[j] * &b[i])).is_zero())
                })
            })
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let cs: Vec<String> = b.iter().map(|c| c.to_string()).collect();
                format!("[{}]", cs.join(":"))
            })
            .collect();
        f.write_str(&parts.join("×"))
    }
}

/// A 3×3 matrix with `RᵀR = I` and `det R = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rotation3 {
    rows: [[TowerElem; 3]; 3],
}

impl Rotation3 {
    pub fn identity() -> Self {
        let z = TowerElem::zero;
        let o = TowerElem::one;
        Rotation3 {
            rows: [[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]],
        }
    }

    pub fn from_rows(rows: [[TowerElem; 3]; 3]) -> Result<Self, GeomError> {
        let r = Rotation3 { rows };
        if !r.is_orthogonal() || !r.determinant().is_one() {
            return Err(GeomError::NotARotation);
        }
        Ok(r)
    }

    pub fn rows(&self) -> &[[TowerElem; 3]; 3] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[TowerElem; 3] {
        &self.rows[i]
    }

    /// The row mapped onto `e_z`, i.e. the axis this frame aligns with the pole.
    pub fn axis(&self) -> &[TowerElem; 3] {
        &self.rows[2]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn transpose(&self) -> Rotation3 {
        let r = &self.rows;
        Rotation3 {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| r[j][i].clone())),
        }
    }

    pub fn compose(&self, other: &Rotation3) -> Rotation3 {
        let a = &self.rows;
        let b = &other.rows;
        Rotation3 {
            rows: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    &(&(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j])) + &(&a[i][2] * &b[2][j])
                })
            }),
        }
    }

    pub fn apply(&self, v: &[TowerElem; 3]) -> [TowerElem; 3] {
        std::array::from_fn(|i| dot(&self.rows[i], v))
    }

    pub fn apply_point(&self, p: &SpherePoint) -> SpherePoint {
        SpherePoint {
            coords: self.apply(p.coords()),
        }
    }

    /// Rows cycled so that row `i` becomes the third row; still a rotation.
    pub fn cycled_to_pole(&self, i: usize) -> Rotation3 {
        let r = &self.rows;
        Rotation3 {
            rows: [
                r[(i + 1) % 3].clone(),
                r[(i + 2) % 3].clone(),
                r[i].clone(),
            ],
        }
    }

    pub fn determinant(&self) -> TowerElem {
        let m = &self.rows;
        let minor = |a: usize, b: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][b] * &m[2][a]);
        &(&(&m[0][0] * &minor(1, 2)) - &(&m[0][1] * &minor(0, 2))) + &(&m[0][2] * &minor(0, 1))
    }

    pub fn is_orthogonal(&self) -> bool {
        self.transpose().compose(self).is_identity()
    }
}

/// Cayley transform `(I − K)(I + K)⁻¹` of the skew matrix of `(a, b, c)`.
///
/// Closed form: `((1 − |v|²) I + 2 v vᵀ − 2 K) / (1 + |v|²)`.
pub fn cayley_rotation(a: &Rational, b: &Rational, c: &Rational) -> Rotation3 {
    let v = [a.clone(), b.clone(), c.clone()];
    let n2: Rational = v.iter().map(|x| x * x).sum();
    let one = Rational::from_integer(1.into());
    let two = Rational::from_integer(2.into());
    let denom = &one + &n2;
    // K = [[0, −c, b], [c, 0, −a], [−b, a, 0]]
    let k = [
        [Rational::from_integer(0.into()), -c.clone(), b.clone()],
        [c.clone(), Rational::from_integer(0.into()), -a.clone()],
        [-b.clone(), a.clone(), Rational::from_integer(0.into())],
    ];
    let rows = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let diag = if i == j { &one - &n2 } else { Rational::from_integer(0.into()) };
            let entry = diag + &two * &v[i] * &v[j] - &two * &k[i][j];
            TowerElem::rational(entry / &denom)
        })
    });
    Rotation3 { rows }
}

/// A rotation taking the unit vector `v` to `(0, 0, 1)`: the Householder reflection
/// through `v − e_z` followed by `x ↦ −x`.
pub fn reflection_to_pole(v: &SpherePoint) -> Rotation3 {
    let w = [
        v.x().clone(),
        v.y().clone(),
        v.z() - &TowerElem::one(),
    ];
    let ww = dot(&w, &w);
    if ww.is_zero() {
        return Rotation3::identity();
    }
    let two_over = &TowerElem::from_int(2) / &ww;
    let rows = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let delta = if i == j { TowerElem::one() } else { TowerElem::zero() };
            let h = &delta - &(&two_over * &(&w[i] * &w[j]));
            if i == 0 {
                -h
            } else {
                h
            }
        })
    });
    Rotation3 { rows }
}

/// Inverse stereographic projection `[x:y:z] ↦ [x²+y²+z² : 2xz : 2yz : x²+y²−z²]`,
/// dehomogenized by the first coordinate.
pub fn sphere_from_plane(p: &ProjPoint) -> SpherePoint {
    let c = p.flat();
    assert_eq!(c.len(), 3, "sphere_from_plane takes a point of P²");
    let (x, y, z) = (&c[0], &c[1], &c[2]);
    let xy = &x.square() + &y.square();
    let w = &xy + &z.square();
    let two = TowerElem::from_int(2);
    let coords = [
        &(&two * &(x * z)) / &w,
        &(&two * &(y * z)) / &w,
        &(&xy - &z.square()) / &w,
    ];
    SpherePoint { coords }
}

/// A rational sphere point from a random integer point of P² with entries in `[-bound, bound]`.
pub fn random_rational_sphere_point<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> SpherePoint {
    loop {
        let c: Vec<i64> = (0..3).map(|_| rng.gen_range(-bound..=bound)).collect();
        if let Ok(p) = ProjPoint::from_ints(&c) {
            return sphere_from_plane(&p);
        }
    }
}
