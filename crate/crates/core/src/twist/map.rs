use crate::exactfield::TowerElem;
use crate::geom::{Rotation3, SpherePoint};
use crate::polyrat::{MultiPoly, RationalMap, Surface};

use super::circle::{CircleMap, CirclePoint};

/// `φ_f = Fᵀ ∘ ((x, y, z) ↦ (f(z)·(x, y), z)) ∘ F`: rotation of each circle of
/// latitude about the axis `Fᵀe_z` by the angle of `f` at that latitude.
#[derive(Clone, Debug)]
pub struct TwistingMap {
    profile: CircleMap,
    frame: Rotation3,
}

impl TwistingMap {
    pub fn profile(&self) -> &CircleMap {
        &self.profile
    }

    pub fn frame(&self) -> &Rotation3 {
        &self.frame
    }

    /// The unit axis fixed by the twist.
    pub fn axis(&self) -> &[TowerElem; 3] {
        self.frame.axis()
    }

    /// The realized sphere self-map, framed.
    pub fn realized(&self) -> RationalMap {
        let v = Surface::Sphere.vars();
        let (a, b, e) = self.profile.components();
        let a = a.to_multi(&v, 2);
        let b = b.to_multi(&v, 2);
        let e = e.to_multi(&v, 2);
        let x = MultiPoly::var(&v, 0);
        let y = MultiPoly::var(&v, 1);
        let z = MultiPoly::var(&v, 2);
        let one = MultiPoly::one(&v);
        let coords = vec![&(&a * &x) - &(&b * &y), &(&b * &x) + &(&a * &y), z];
        let dens = vec![e.clone(), e, one];
        RationalMap::new(Surface::Sphere, Surface::Sphere, coords, Some(dens))
            .and_then(|m| m.with_frame(self.frame.clone()))
            .expect("twist coordinates are well formed")
    }

    /// Direct evaluation; agrees with `realized().apply_sphere`.
    pub fn apply(&self, p: &SpherePoint) -> SpherePoint {
        let [x, y, z] = self.frame.apply(p.coords());
        let w = self.profile.eval(&z).mul(&CirclePoint::unchecked(x, y));
        let out = self.frame.transpose().apply(&[w.re, w.im, z]);
        SpherePoint::new(out[0].trimmed(), out[1].trimmed(), out[2].trimmed())
            .expect("rotations preserve the sphere")
    }
}

pub fn twisting_map(profile: CircleMap, frame: Rotation3) -> TwistingMap {
    TwistingMap { profile, frame }
}

/// The twist by the conjugate profile, inverse to `t`.
pub fn twist_inverse(t: &TwistingMap) -> TwistingMap {
    TwistingMap {
        profile: t.profile.inverse(),
        frame: t.frame.clone(),
    }
}
