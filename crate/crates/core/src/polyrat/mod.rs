//! Sparse polynomials over tower fields and rational maps between model surfaces.

mod equal;
mod map;
mod parse;
mod poly;
mod unipoly;

use thiserror::Error;

pub use equal::{maps_equal, sample_points, Factor, MapEquality};
pub use map::{compose, reduce_mod_quadric, reduce_mod_sphere, Block, Point, RationalMap, Surface};
pub use poly::{vars, Monomial, MultiPoly, Vars};
pub use unipoly::{sign_variations, UniPoly};

use crate::exactfield::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("surface mismatch: {0}")]
    SurfaceMismatch(String),
    #[error("unknown surface {0:?}")]
    UnknownSurface(String),
    #[error("point is a base point of the map")]
    Indeterminate,
    #[error("denominator vanishes at the point")]
    DenominatorZero,
    #[error("zero denominator polynomial")]
    ZeroDenominator,
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("point does not fit surface {0}")]
    PointShape(Surface),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("image is not on the target surface")]
    NotOnSurface,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[cfg(test)]
mod tests;
