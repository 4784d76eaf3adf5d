//! Exact rational scalars and dense matrices.
//!
//! No floating point is used anywhere. Determinants and linear solves go
//! through Bareiss fraction-free elimination over big integers after clearing
//! row denominators.

mod matrix;
mod rat;

pub use matrix::RatMatrix;
pub use rat::{dot, ParseRatError, Rat};
