//! Quadratic integral points on double Pell curves
//!
//! ```text
//! y² = a·x² + c
//! z² = b·x² + d
//! ```
//!
//! The crate evaluates the unit functions `f, g, h` and the symmetric-square
//! functions `α, β, γ` (which satisfy `α + β + γ = 1`) in exact
//! multiquadratic arithmetic, classifies quadratic points into the three
//! infinite families, the exceptional genus-one loci and the sporadic class,
//! and enumerates each class at desk scale.

pub mod classify;
pub mod curve;
pub mod error;
pub mod exactmath;
pub mod exec;
pub mod pell;
pub mod search;

pub use curve::{CurveParams, QuadCoord, QuadPoint, SPrimeSet, SymPoint};
pub use error::{Error, Result};
pub use exactmath::{MultiQuad, Radicand, Rational};
pub use exec::Strategy;

pub use classify::{classify, Classification, Flag, Locus, Verdict};
pub use search::{SUnitSolution, SearchConfig};
