//! Arbitrary-precision rationals and their `p/q` text format.

use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// Exact rational number, always kept in canonical form
/// (`gcd(|num|, den) = 1`, `den > 0`) by the underlying representation.
pub type Rational = num_rational::Ratio<BigInt>;

/// Parses a rational from the decimal-free `p/q` format, with an optional
/// sign and with plain integers `p` accepted.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(AlgebraError::InvalidInput("empty rational literal".into()));
    }
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(Rational::from_integer)
            .map_err(|_| AlgebraError::InvalidInput(format_bad_literal(s))),
        Some((num, den)) => {
            let num =
                BigInt::from_str(num.trim()).map_err(|_| AlgebraError::InvalidInput(format_bad_literal(s)))?;
            let den =
                BigInt::from_str(den.trim()).map_err(|_| AlgebraError::InvalidInput(format_bad_literal(s)))?;
            if den.is_zero() {
                return Err(AlgebraError::InvalidInput("zero denominator".into()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Formats a rational in the same `p/q` format accepted by [`parse_rational`];
/// integers print without the `/1`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        let mut s = q.numer().to_string();
        s.push('/');
        s.push_str(&q.denom().to_string());
        s
    }
}

pub fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Three-valued sign of a rational.
pub fn rational_sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn format_bad_literal(s: &str) -> String {
    let mut msg = String::from("bad rational literal `");
    msg.push_str(s);
    msg.push('`');
    msg
}
