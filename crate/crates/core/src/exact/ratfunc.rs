//! Rational functions in `y` in canonical reduced form.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::{ExactError, LaurentPoly, Rational};

/// A rational function `num/den` in canonical form: the denominator is an
/// ordinary monic polynomial with nonzero constant term, all powers of `y`
/// are carried by the (Laurent) numerator, and the shifted numerator is
/// coprime to the denominator.  Equality of values is structural equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    /// Builds `p/q` in canonical form. Panics if `q` is zero.
    pub fn new(p: LaurentPoly, q: LaurentPoly) -> Self {
        assert!(!q.is_zero(), "zero denominator");
        if p.is_zero() {
            return RatFunc::zero();
        }
        // Shift all powers of y out of the denominator and off the numerator,
        // reduce the ordinary parts, then normalize the denominator to monic.
        let qa = q.min_exp().unwrap();
        let q0 = q.shift(-qa);
        let p = p.shift(-qa);
        let pb = p.min_exp().unwrap();
        let p0 = p.shift(-pb);
        let g = LaurentPoly::gcd(&p0, &q0);
        let (mut p0, mut q0) = if g.is_one() {
            (p0, q0)
        } else {
            (p0.div_exact(&g), q0.div_exact(&g))
        };
        let lead = q0.leading_coeff();
        if !lead.is_one() {
            let inv = lead.recip();
            p0 = p0.scale(&inv);
            q0 = q0.scale(&inv);
        }
        RatFunc { num: p0.shift(pb), den: q0 }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    pub fn from_rational(c: Rational) -> Self {
        RatFunc::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_rational(super::rat_int(n))
    }

    /// `(-y)^m` for any integer `m`.
    pub fn neg_y_power(m: i64) -> Self {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        RatFunc::from_poly(LaurentPoly::term(super::rat_int(sign), m))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        // Scaling the numerator keeps the form canonical.
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Division; `DivisionByZero` when `rhs` is the zero function.
    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Multiplicative inverse; `DivisionByZero` on zero.
    pub fn checked_recip(&self) -> Result<RatFunc, ExactError> {
        RatFunc::one().checked_div(self)
    }

    /// Renders as `num` when the denominator is 1, otherwise `(num)/(den)`.
    pub fn render(&self) -> String {
        if self.den.is_one() {
            self.num.render()
        } else {
            format!("({})/({})", self.num.render(), self.den.render())
        }
    }

    /// Parses the output of [`RatFunc::render`].
    pub fn parse(s: &str) -> Result<Self, ExactError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            // Polynomial renderings contain no parentheses, so the only
            // shape with parens is `(num)/(den)`.
            let close = rest
                .find(')')
                .ok_or_else(|| ExactError::Parse(format!("unbalanced parens in `{s}`")))?;
            let num_str = &rest[..close];
            let tail = rest[close + 1..].trim_start();
            let tail = tail
                .strip_prefix('/')
                .ok_or_else(|| ExactError::Parse(format!("expected `/` in `{s}`")))?
                .trim_start();
            let den_str = tail
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| ExactError::Parse(format!("expected `(den)` in `{s}`")))?;
            let num = LaurentPoly::parse(num_str)?;
            let den = LaurentPoly::parse(den_str)?;
            if den.is_zero() {
                return Err(ExactError::Parse("zero denominator".into()));
            }
            Ok(RatFunc::new(num, den))
        } else {
            Ok(RatFunc::from_poly(LaurentPoly::parse(s)?))
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &-rhs.clone()
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&RatFunc> for RatFunc {
    fn mul_assign(&mut self, rhs: &RatFunc) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat_int, Rational};
    use super::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(k, c)| (k, rat_int(c))))
    }

    #[test]
    fn same_denominator_addition() {
        let f = RatFunc::new(LaurentPoly::one(), poly(&[(2, 1), (0, -1)]));
        let two = &f + &f;
        assert_eq!(two, RatFunc::new(poly(&[(0, 2)]), poly(&[(2, 1), (0, -1)])));
    }

    #[test]
    fn gcd_cancellation() {
        // (y^2 - 1)/(y - 1) = y + 1
        let f = RatFunc::new(poly(&[(2, 1), (0, -1)]), poly(&[(1, 1), (0, -1)]));
        assert_eq!(f, RatFunc::from_poly(poly(&[(1, 1), (0, 1)])));
    }

    #[test]
    fn laurent_times_proper_fraction() {
        // (y^-1 - y) * (-y/(y^2-1)) = 1
        let a = RatFunc::from_poly(poly(&[(-1, 1), (1, -1)]));
        let b = RatFunc::new(poly(&[(1, -1)]), poly(&[(2, 1), (0, -1)]));
        assert_eq!(&a * &b, RatFunc::one());
    }

    #[test]
    fn neg_y_powers() {
        assert_eq!(RatFunc::neg_y_power(0), RatFunc::one());
        assert_eq!(RatFunc::neg_y_power(-1), RatFunc::from_poly(poly(&[(-1, -1)])));
        assert_eq!(RatFunc::neg_y_power(2), RatFunc::from_poly(poly(&[(2, 1)])));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = RatFunc::one();
        assert_eq!(f.checked_div(&RatFunc::zero()), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn canonical_form_is_unique() {
        // Build the same value three structurally different ways.
        let a = RatFunc::new(poly(&[(3, -2)]), poly(&[(4, 2), (2, -4), (0, 2)]));
        let b = RatFunc::new(poly(&[(4, -1)]), &poly(&[(4, 1), (2, -2), (0, 1)]) * &poly(&[(1, 1)]));
        let c = RatFunc::new(poly(&[(3, 1)]), poly(&[(4, -1), (2, 2), (0, -1)]));
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.render(), "(-y^3)/(y^4 - 2*y^2 + 1)");
        // denominator is monic with nonzero constant term
        assert_eq!(a.denominator().leading_coeff(), Rational::one());
        assert!(!a.denominator().coeff(0).is_zero());
    }

    #[test]
    fn render_parse_round_trip() {
        let samples = [
            RatFunc::zero(),
            RatFunc::one(),
            RatFunc::new(poly(&[(3, -1)]), poly(&[(4, 1), (2, -2), (0, 1)])),
            RatFunc::new(poly(&[(-1, 1), (1, -1)]), poly(&[(0, 1)])),
            RatFunc::new(poly(&[(-2, 3)]), poly(&[(2, 2), (0, -2)])),
        ];
        for f in &samples {
            let s = f.render();
            assert_eq!(&RatFunc::parse(&s).unwrap(), f, "round trip of `{s}`");
        }
    }
}
