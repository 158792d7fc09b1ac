//! Twisting maps of the sphere: rational circle-valued profiles, the staged
//! transitivity solver and an algebraic Dehn twist.

mod circle;
mod dehn;
mod map;
mod solve;

use thiserror::Error;

use crate::exactfield::FieldError;
use crate::polyrat::PolyError;

pub use circle::{interpolate_circle, winding_number, CircleMap, CirclePoint};
pub use dehn::{dehn_twist_map, DEHN_GRID};
pub use map::{twist_inverse, twisting_map, TwistingMap};
pub use solve::{transitivity_solve, transitivity_solve_with, Solution, SolveOptions};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TwistError {
    #[error("interpolation nodes repeat the level {0}")]
    DuplicateNodes(String),
    #[error("target {0} is not on the unit circle")]
    TargetNotOnCircle(String),
    #[error("profile has a pole on [-1, 1]")]
    DegenerateProfile,
    #[error("input points repeat {0}")]
    DuplicateInput(String),
    #[error("{0} source points but {1} targets")]
    LengthMismatch(usize, usize),
    #[error("point {0} has non-rational coordinates")]
    NonRationalInput(String),
    #[error("no axis pair of height <= {cap} works at stage {stage}")]
    SearchExhausted { stage: usize, cap: u32 },
    #[error("eps must lie in (0, 1), got {0}")]
    InvalidEps(String),
    #[error("fixed level {0} is not a rational level in (-1, 1) outside the twist window")]
    FixedLevelInWindow(String),
    #[error("tolerance not reached")]
    ToleranceUnreachable,
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}
