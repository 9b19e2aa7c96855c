//! Exact polynomial arithmetic over the integers.
//!
//! Univariate polynomials ([`IntPoly1`]) are dense; bivariate polynomials
//! ([`IntPoly2`]) are sparse maps from exponent pairs to coefficients. Large
//! products and quotients go through Kronecker substitution so that GMP does
//! the heavy lifting.

mod bivariate;
pub(crate) mod kronecker;
mod resultant;
mod univariate;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use bivariate::{HomogPart, IntPoly2, SubstValue};
pub use resultant::{discriminant, resultant, resultant_sylvester};
pub use univariate::IntPoly1;

/// Name of a polynomial variable, e.g. `a` or `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Var(String);

impl Var {
    pub fn new(name: impl Into<String>) -> Self {
        Var(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Degree of a polynomial. The zero polynomial has degree
/// [`Degree::MinusInfinity`], which orders below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Moduli must be primes below 2^32 so that residue products fit a word.
pub(crate) fn check_prime(p: u64) -> crate::Result<()> {
    if p >= 1 << 32 {
        Err(crate::Error::InvalidParameter(format!(
            "modulus {p} exceeds 32 bits"
        )))
    } else if crate::arith::is_prime(p) {
        Ok(())
    } else {
        Err(crate::Error::NotPrime(p))
    }
}
