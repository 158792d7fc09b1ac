//! Exact arithmetic over ℚ and over towers ℚ(√g₁,…,√g_m) of square roots of rationals.

mod kernel;
mod rational;
mod tower;

use thiserror::Error;

pub use kernel::square_free_split;
pub use rational::{format_rational, height, int, parse_rational, q, rat, Rational};
pub use tower::{TowerCtx, TowerElem, SIGN_ROUND_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("radicand {0} exceeds 2^64 in numerator or denominator")]
    RadicandTooLarge(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to incompatible tower contexts")]
    ContextMismatch,
    #[error("generator {0} is not square-free or depends on earlier generators")]
    DependentGenerator(String),
    #[error("sign refinement did not terminate")]
    SignRefinementExhausted,
    #[error("square root of an irrational tower element")]
    NestedRadical,
    #[error("cannot parse number {0:?}")]
    Parse(String),
}

/// `√d` for a rational `d > 0`, possibly extending `ctx`.
pub fn adjoin_sqrt(ctx: &TowerCtx, d: &Rational) -> Result<(TowerCtx, TowerElem), FieldError> {
    ctx.adjoin_sqrt(d)
}

/// `√a` for a tower element that happens to be rational.
pub fn sqrt_of(ctx: &TowerCtx, a: &TowerElem) -> Result<(TowerCtx, TowerElem), FieldError> {
    let d = a.to_rational().ok_or(FieldError::NestedRadical)?;
    ctx.adjoin_sqrt(&d)
}
