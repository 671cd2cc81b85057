//! Exact scalars: arbitrary-precision rationals, dense univariate polynomials
//! over them, and canonical rational functions in the indeterminate `x`.
//!
//! Every reduced edge weight is a [`RatFun`]. All arithmetic here is exact;
//! the only place a tolerance appears is [`RatFun::eval`], which maps into
//! `f64` for numeric checks.

mod poly;
mod ratfun;
mod text;

pub use poly::Polynomial;
pub use ratfun::RatFun;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational number. Always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds the rational `n / 1`.
pub fn rational_from_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `p` when the denominator is one, else `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` (optionally signed) into a canonical rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Very large magnitudes: fall back to a sign-preserving infinity.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
