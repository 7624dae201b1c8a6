//! Exact and arbitrary-precision scalar arithmetic.
//!
//! Rationals are `num_rational::BigRational`; cyclotomic elements, big
//! complex numbers, and the exact-recognition machinery live in the
//! submodules.

pub mod complex;
pub mod cyclotomic;
pub mod float;
pub mod poly;
pub mod recognize;

pub use complex::BigComplex;
pub use cyclotomic::{cyclotomic_poly, euler_phi, CycElem};
pub use float::BigReal;
pub use recognize::{
    detect_rational, recognize, recognize_confirmed, recognize_integer, RecognitionFailure,
    RecognitionPolicy,
};

use num_bigint::BigInt;
use num_rational::BigRational;

/// The exact rational scalar used throughout the crate.
pub type Rational = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses "p/q" or "p" into a rational.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = n.parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
    let den: BigInt = d.parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
    if den == BigInt::from(0) {
        return Err(ScalarError::Parse(s.to_string()));
    }
    Ok(Rational::new(num, den))
}

/// Renders a rational as "p/q" (or "p" for integers).
pub fn rational_str(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("logarithm or root outside the real domain")]
    LogDomain,
    #[error("cannot parse number: {0}")]
    Parse(String),
    #[error("recognition policy error: {0}")]
    Recognition(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7, 1));
        assert_eq!(parse_rational(" 1 / 12 ").unwrap(), rat(1, 12));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(rational_str(&rat(6, 8)), "3/4");
        assert_eq!(rational_str(&rat(-4, 2)), "-2");
    }
}
