//! Exact invariants of a singular point computed from the weighted dual graph
//! of a log resolution of its maximal ideal.
//!
//! Given exceptional components `E_i` with multiplicities `m_i`, intersection
//! numbers `c_ij` and theta-degrees `e_i`, an effective divisor `D = Σ a_i E_i`
//! has
//!
//! * slope `s = min_i a_i / m_i`,
//! * Demailly–Lelong number `ν = Σ a_i e_i`,
//! * and the point has multiplicity `mult = Σ m_i e_i`.
//!
//! [`coneopt`] computes the sharp constant `C_x` with `ν ≤ C_x · mult · s` over
//! the cone of divisors whose negative restrictions to every component are
//! pseudo-effective; [`chainbound`] gives the a-priori chain estimate for the
//! coefficient spread.
//!
//! Everything is exact rational arithmetic over big integers. The crate is
//! `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod chainbound;
pub mod coneopt;
pub mod error;
pub mod exactnum;
pub mod graph;
pub mod invariants;

pub use error::{Error, Result};
pub use exactnum::{Rat, RatMatrix};
pub use graph::{ade_graph, AdeFamily, Divisor, ResolutionGraph, ValidGraph, ValidationReport};
