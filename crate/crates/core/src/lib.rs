//! Exact plethysm coefficients, tensor-power multiplicities, quasi-polynomial
//! fits of their dilation sequences, and explicit highest weight vectors.

pub mod cache;
pub mod characters;
pub mod cli;
pub mod error;
pub mod hwv;
pub mod linalg;
pub mod partitions;
pub mod pieri;
pub mod quasipoly;
pub mod sequence;
pub mod symfunc;
pub mod tableau;
pub mod verify;

pub use error::{Error, Result};
pub use partitions::Partition;

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

/// Formats a rational as `"num/den"`, or `"num"` when integral.
pub fn rational_to_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"num/den"` or `"num"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = |e: String| Error::InvalidInput(format!("bad rational {s:?}: {e}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: num_bigint::BigInt = n.trim().parse().map_err(|e| bad(format!("{e}")))?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|e| bad(format!("{e}")))?;
            if d == num_bigint::BigInt::from(0) {
                return Err(bad("zero denominator".into()));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|e| bad(format!("{e}")))?)),
    }
}
