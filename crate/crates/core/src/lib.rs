//! Exact Groebner-basis elimination and floating-point orbit checks for the
//! sums of periodic cycle points of `x^2 + c` on the `(u,v)`-plane.
//!
//! The crate is organised bottom-up:
//!
//! * [`ring`]: rational scalars, monomial orders, sparse polynomials;
//! * [`groebner`]: Buchberger's algorithm, elimination, extension analysis,
//!   Sylvester resultants and trial factorization;
//! * [`dynamics`]: the `(u,v)`-plane map, period curves and orbit-sum
//!   constraints;
//! * [`numeric`]: root finding, the brute-force orbit oracle and the
//!   orbit-sum census;
//! * [`verify`]: end-to-end verification pipelines and their reports.

pub mod dynamics;
pub mod error;
pub mod golden;
pub mod groebner;
pub mod numeric;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
