//! Exact computations around the inhomogeneous O(1) loop model at
//! `q = e^{2iπ/3}`: ground-state components for link patterns with nested
//! arches, their closed forms as weighted plane-partition partition
//! functions, and brute-force Fully Packed Loop enumeration.
//!
//! All algebra is generic over [`scalar::Field`]; the aliases below fix the
//! exact instantiations used by the CLI and the verification suites.

pub mod cyclo;
pub mod error;
pub mod fourarch;
pub mod fpl;
pub mod linalg;
pub mod linkpat;
pub mod loopmodel;
pub mod modp;
pub mod mvpoly;
pub mod nested;
pub mod scalar;
pub mod tilings;
pub mod verify;

pub use error::{Error, Result};

use num_rational::BigRational;

/// Arbitrary-precision rational.
pub type Rational = BigRational;
/// Exact element of `Q(ω)`.
pub type CycloNum = cyclo::Cyclo<BigRational>;
/// Floating-point element of `R(ω)`, for approximate evaluation.
pub type CycloF64 = cyclo::Cyclo<f64>;
