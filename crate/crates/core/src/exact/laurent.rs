//! Laurent polynomials in one variable `y` with rational coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{render_rational, ExactError, Rational};

/// A Laurent polynomial in `y`, stored densely from its minimal exponent.
///
/// Canonical form: the coefficient vector is empty for zero, otherwise its
/// first and last entries are nonzero.  Structural equality coincides with
/// value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        LaurentPoly { min_exp: 0, coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        LaurentPoly::term(Rational::one(), 0)
    }

    /// The single term `c * y^k`.
    pub fn term(c: Rational, k: i64) -> Self {
        if c.is_zero() {
            LaurentPoly::zero()
        } else {
            LaurentPoly { min_exp: k, coeffs: vec![c] }
        }
    }

    /// A constant polynomial.
    pub fn constant(c: Rational) -> Self {
        LaurentPoly::term(c, 0)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed, zero results dropped.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for (k, c) in terms {
            acc += LaurentPoly::term(c, k);
        }
        acc
    }

    fn trim(mut self) -> Self {
        let first_nonzero = self.coeffs.iter().position(|c| !c.is_zero());
        match first_nonzero {
            None => LaurentPoly::zero(),
            Some(lo) => {
                let hi = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
                self.coeffs.truncate(hi + 1);
                self.coeffs.drain(..lo);
                self.min_exp += lo as i64;
                self
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.min_exp == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Minimal exponent with nonzero coefficient. Zero polynomial has none.
    pub fn min_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exp)
        }
    }

    /// Maximal exponent with nonzero coefficient (the degree).
    pub fn max_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exp + self.coeffs.len() as i64 - 1)
        }
    }

    /// Coefficient of `y^k`.
    pub fn coeff(&self, k: i64) -> Rational {
        let idx = k - self.min_exp;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Rational::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Leading (highest-exponent) coefficient; zero for the zero polynomial.
    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates over `(exponent, coefficient)` pairs with nonzero coefficient,
    /// in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    /// Multiplies by `y^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { min_exp: self.min_exp + k, coeffs: self.coeffs.clone() }
    }

    /// Scales by a rational constant.
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() || self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// True when every exponent is nonnegative (an ordinary polynomial).
    pub fn is_ordinary(&self) -> bool {
        self.is_zero() || self.min_exp >= 0
    }

    /// Exact division, defined only when `self` is an ordinary-polynomial
    /// multiple of `d`; used after gcd computations.
    pub(crate) fn div_exact(&self, d: &LaurentPoly) -> LaurentPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Euclidean division of ordinary polynomials: `self = q*d + r` with
    /// `deg r < deg d`. Panics if `d` is zero.
    pub(crate) fn div_rem(&self, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        debug_assert!(self.is_ordinary() && d.is_ordinary());
        if self.is_zero() {
            return (LaurentPoly::zero(), LaurentPoly::zero());
        }
        let dd = d.max_exp().unwrap();
        let mut rem: Vec<Rational> = vec![Rational::zero(); (self.max_exp().unwrap() + 1) as usize];
        for (k, c) in self.terms() {
            rem[k as usize] = c.clone();
        }
        let mut quo: Vec<Rational> = Vec::new();
        let lead = d.leading_coeff();
        let mut deg = rem.len() as i64 - 1;
        while deg >= dd {
            let c = std::mem::replace(&mut rem[deg as usize], Rational::zero());
            if !c.is_zero() {
                let f = &c / &lead;
                for (j, dc) in d.terms() {
                    if j == dd {
                        continue;
                    }
                    let idx = (deg - dd + j) as usize;
                    rem[idx] -= &f * dc;
                }
                let qidx = (deg - dd) as usize;
                if quo.len() <= qidx {
                    quo.resize(qidx + 1, Rational::zero());
                }
                quo[qidx] = f;
            }
            deg -= 1;
        }
        let quo = LaurentPoly { min_exp: 0, coeffs: quo }.trim();
        let rem = LaurentPoly { min_exp: 0, coeffs: rem }.trim();
        (quo, rem)
    }

    /// Monic gcd of ordinary polynomials over the rationals, computed by the
    /// Euclidean algorithm with content stripping to keep coefficients small.
    /// `gcd(0, 0) = 0`.
    pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        debug_assert!(a.is_ordinary() && b.is_ordinary());
        let mut a = a.primitive_part();
        let mut b = b.primitive_part();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.make_monic()
    }

    /// Strips content: scales so coefficients are coprime integers with a
    /// positive leading coefficient.  Controls coefficient growth in the
    /// Euclidean remainder sequence.
    fn primitive_part(&self) -> LaurentPoly {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs: ints.into_iter().map(|v| Rational::from_integer(v / &g)).collect(),
        }
    }

    fn make_monic(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let lead = self.leading_coeff();
        self.scale(&lead.recip())
    }

    /// Renders the polynomial with terms in strictly decreasing exponent
    /// order, e.g. `y^4 - 2*y^2 + 1`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let terms: Vec<(i64, &Rational)> = self.terms().collect();
        for (i, (k, c)) in terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -(*c).clone() } else { (*c).clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let var = match k {
                0 => String::new(),
                1 => "y".to_string(),
                _ => format!("y^{k}"),
            };
            if var.is_empty() {
                out.push_str(&render_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&var);
            } else {
                out.push_str(&render_rational(&mag));
                out.push('*');
                out.push_str(&var);
            }
        }
        out
    }

    /// Parses the output of [`LaurentPoly::render`].
    pub fn parse(s: &str) -> Result<Self, ExactError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ExactError::Parse("empty polynomial".into()));
        }
        if s == "0" {
            return Ok(LaurentPoly::zero());
        }
        let mut acc = LaurentPoly::zero();
        // Split into signed terms at top level; the term grammar contains no
        // parentheses, so scanning for ` + ` / ` - ` and a leading sign works.
        let mut rest = s;
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        }
        loop {
            let (term, tail, next_sign) = match (rest.find(" + "), rest.find(" - ")) {
                (Some(p), Some(m)) if p < m => (&rest[..p], &rest[p + 3..], 1),
                (Some(_), Some(m)) => (&rest[..m], &rest[m + 3..], -1),
                (Some(p), None) => (&rest[..p], &rest[p + 3..], 1),
                (None, Some(m)) => (&rest[..m], &rest[m + 3..], -1),
                (None, None) => (rest, "", 0),
            };
            let (exp, coeff) = parse_term(term)?;
            acc += LaurentPoly::term(coeff * super::rat_int(sign), exp);
            if tail.is_empty() {
                break;
            }
            rest = tail;
            sign = next_sign;
        }
        Ok(acc)
    }
}

fn parse_term(t: &str) -> Result<(i64, Rational), ExactError> {
    let t = t.trim();
    let bad = || ExactError::Parse(format!("bad term `{t}`"));
    let (coeff_str, var_str) = match t.split_once('*') {
        Some((c, v)) => (Some(c.trim()), v.trim()),
        None => {
            if t.starts_with('y') {
                (None, t)
            } else {
                (Some(t), "")
            }
        }
    };
    let coeff = match coeff_str {
        None => Rational::one(),
        Some(c) => super::parse_rational(c)?,
    };
    let exp = if var_str.is_empty() {
        0
    } else if var_str == "y" {
        1
    } else {
        let e = var_str.strip_prefix("y^").ok_or_else(bad)?;
        e.parse().map_err(|_| bad())?
    };
    Ok((exp, coeff))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs;
            return;
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (k, c) in self.terms() {
            coeffs[(k - lo) as usize] = c.clone();
        }
        for (k, c) in rhs.terms() {
            coeffs[(k - lo) as usize] += c;
        }
        *self = LaurentPoly { min_exp: lo, coeffs }.trim();
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs.clone();
        out
    }
}

impl SubAssign<LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self += -rhs;
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &-rhs.clone()
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs =
            vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly { min_exp: self.min_exp + rhs.min_exp, coeffs }.trim()
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rat_int};
    use super::*;

    fn y() -> LaurentPoly {
        LaurentPoly::term(Rational::one(), 1)
    }

    #[test]
    fn cancellation_to_monomial() {
        // (y^2 - 1) + 1 = y^2
        let p = LaurentPoly::from_terms([(2, rat_int(1)), (0, rat_int(-1))]);
        let q = &p + &LaurentPoly::one();
        assert_eq!(q, LaurentPoly::term(rat_int(1), 2));
    }

    #[test]
    fn difference_of_squares() {
        let a = &y() - &LaurentPoly::one();
        let b = &y() + &LaurentPoly::one();
        let p = &a * &b;
        assert_eq!(p, LaurentPoly::from_terms([(2, rat_int(1)), (0, rat_int(-1))]));
    }

    #[test]
    fn laurent_exponents_add() {
        let inv = LaurentPoly::term(rat_int(1), -1);
        assert_eq!(&inv * &y(), LaurentPoly::one());
    }

    #[test]
    fn div_rem_euclidean() {
        // y^3 - 1 = (y - 1)(y^2 + y + 1)
        let p = LaurentPoly::from_terms([(3, rat_int(1)), (0, rat_int(-1))]);
        let d = &y() - &LaurentPoly::one();
        let (q, r) = p.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(
            q,
            LaurentPoly::from_terms([(2, rat_int(1)), (1, rat_int(1)), (0, rat_int(1))])
        );
    }

    #[test]
    fn gcd_monic() {
        // gcd(y^2 - 1, y^2 - 2y + 1) = y - 1
        let a = LaurentPoly::from_terms([(2, rat_int(1)), (0, rat_int(-1))]);
        let b = LaurentPoly::from_terms([(2, rat_int(1)), (1, rat_int(-2)), (0, rat_int(1))]);
        let g = LaurentPoly::gcd(&a, &b);
        assert_eq!(g, &y() - &LaurentPoly::one());
        // scaling does not change the monic gcd
        let g2 = LaurentPoly::gcd(&a.scale(&rat(3, 7)), &b.scale(&rat(-2, 5)));
        assert_eq!(g2, g);
    }

    #[test]
    fn render_matches_expected_format() {
        let p = LaurentPoly::from_terms([(4, rat_int(1)), (2, rat_int(-2)), (0, rat_int(1))]);
        assert_eq!(p.render(), "y^4 - 2*y^2 + 1");
        let q = LaurentPoly::from_terms([(1, rat(3, 2)), (-2, rat_int(-1))]);
        assert_eq!(q.render(), "3/2*y - y^-2");
        assert_eq!(LaurentPoly::zero().render(), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "1", "-y", "y^4 - 2*y^2 + 1", "3/2*y - y^-2", "y^-1", "-5"] {
            let p = LaurentPoly::parse(s).unwrap();
            assert_eq!(p.render(), s);
        }
    }
}
