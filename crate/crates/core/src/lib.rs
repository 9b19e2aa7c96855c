//! Exact polynomial families attached to rational maps with a preperiodic
//! critical point, and machine-checkable irreducibility certificates for them.
//!
//! The crate is organised bottom-up:
//!
//! * [`zpoly`]: dense univariate and sparse bivariate polynomials over the
//!   integers (GMP-backed), resultants, exact division, homogeneous parts.
//! * [`fppoly`]: polynomials over a prime field, irreducibility testing and
//!   power detection.
//! * [`cubicfam`], [`quadfam`], [`unifam`]: the three dynamical families.
//! * [`certify`]: Eisenstein-type certificates and the end-to-end pipeline
//!   for unicritical preperiodic factors.
//! * [`oracle`]: double-precision root finding and orbit classification used
//!   as an independent numeric cross-check.
//! * [`json`]: the on-disk schemas shared with the command-line tool.

pub mod arith;
pub mod certify;
pub mod cubicfam;
pub mod error;
pub mod fppoly;
pub mod json;
pub mod oracle;
pub mod quadfam;
pub mod report;
pub mod unifam;
pub mod zpoly;

pub use error::{Error, Result};
pub use rug::{Integer, Rational};

/// Default cap on the degree of any constructed family polynomial.
pub const DEFAULT_BUDGET: usize = 5000;
