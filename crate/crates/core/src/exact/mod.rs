//! Exact coefficient arithmetic: arbitrary-precision rationals, Laurent
//! polynomials in `y`, and rational functions in canonical reduced form.

mod laurent;
mod ratfunc;

pub use laurent::LaurentPoly;
pub use ratfunc::RatFunc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number; always stored reduced with a positive
/// denominator, zero as `0/1`.
pub type Rational = num_rational::BigRational;

/// Errors raised by the exact arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    /// Division by the zero polynomial or zero rational function.
    #[error("division by zero")]
    DivisionByZero,
    /// A rational, polynomial or rational-function literal failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Shorthand for a rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `p/q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    assert!(q != 0, "zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses a rational written as `p` or `p/q` with an optional leading sign.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| ExactError::Parse(format!("bad rational `{s}`")))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| ExactError::Parse(format!("bad rational `{s}`")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(ExactError::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(n, d))
}

/// Renders a rational as `p` or `p/q` (reduced form, denominator omitted when 1).
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `r^k` for any integer `k`, with the convention `0^0 = 1`.
/// Panics when raising zero to a negative power.
pub fn rat_pow(r: &Rational, k: i64) -> Rational {
    if k == 0 {
        return Rational::one();
    }
    let mut base = if k < 0 {
        assert!(!r.is_zero(), "zero to a negative power");
        r.recip()
    } else {
        r.clone()
    };
    let mut e = k.unsigned_abs();
    let mut acc = Rational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            let b = base.clone();
            base *= b;
        }
    }
    acc
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

/// Exact sign of a rational as -1, 0 or 1.
pub fn rat_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_round_trip() {
        for s in ["0", "5", "-3", "3/2", "-7/3"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(render_rational(&r), s);
        }
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(rat_pow(&rat_int(0), 0), rat_int(1));
        assert_eq!(rat_pow(&rat(1, 2), 3), rat(1, 8));
        assert_eq!(rat_pow(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(rat_pow(&rat_int(-1), 5), rat_int(-1));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), rat_int(1));
        assert_eq!(factorial(5), rat_int(120));
    }
}
