//! Exact scalar tower `F ⊂ F(t) ⊂ F(t)(j)`.
//!
//! `F` is ℚ or a quadratic field ℚ(s). The top layer adjoins `j` with `j² = t`
//! (twisted setting) or `j² = d` for a non-square rational `d` (untwisted setting).
//! Every value is kept in a unique reduced form, so equality is structural.

mod base;
mod kummer;
mod parse;
mod poly;
mod ratfunc;
mod tower;

pub use base::BaseNum;
pub use kummer::{kummer_class, squarefree_kernel, BaseLayer, SquareClass};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use tower::{rational_sqrt, Scalar, TopLayer, Tower};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no square class")]
    ZeroInput,
    #[error("value not in the requested layer: {0}")]
    NotInLayer(String),
    #[error("the tower has no quadratic top layer")]
    NoTopLayer,
    #[error("the tower has no base-field generator")]
    NoBaseGenerator,
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
