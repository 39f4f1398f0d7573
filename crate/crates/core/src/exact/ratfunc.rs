use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::laurent::HalfLaurent;
use crate::error::{invalid, Error, Result};

type G = GaussianRational;

/// A reduced quotient of Laurent polynomials in `s`.
///
/// The denominator always has lowest exponent 0 and leading coefficient 1,
/// and shares no nonunit factor with the numerator, so two equal functions
/// have identical fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: HalfLaurent,
    den: HalfLaurent,
}

impl RatFunc {
    /// Reduce `num / den` to canonical form.
    pub fn normalize(num: HalfLaurent, den: HalfLaurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (num, den) = if den.is_monomial() || num.is_monomial() {
            (num, den)
        } else {
            let g = HalfLaurent::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.exact_div(&g).expect("gcd divides numerator"),
                    den.exact_div(&g).expect("gcd divides denominator"),
                )
            }
        };
        let low = den.low().unwrap();
        let lc = den.leading_coeff().unwrap().clone();
        if low == 0 && lc.is_one() {
            return Ok(Self { num, den });
        }
        let inv = lc.inv()?;
        Ok(Self { num: num.shift(-low).scale(&inv), den: den.shift(-low).scale(&inv) })
    }

    pub fn from_laurent(p: HalfLaurent) -> Self {
        Self { num: p, den: HalfLaurent::one() }
    }

    pub fn constant(c: G) -> Self {
        Self::from_laurent(HalfLaurent::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(HalfLaurent::from_int(n))
    }

    pub fn s_pow(e: i32) -> Self {
        Self::from_laurent(HalfLaurent::s_pow(e))
    }

    pub fn q_pow(e: i32) -> Self {
        Self::from_laurent(HalfLaurent::q_pow(e))
    }

    pub fn i() -> Self {
        Self::constant(G::i())
    }

    pub fn num(&self) -> &HalfLaurent {
        &self.num
    }

    pub fn den(&self) -> &HalfLaurent {
        &self.den
    }

    /// The Laurent polynomial itself when the denominator is 1.
    pub fn as_laurent(&self) -> Option<&HalfLaurent> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<G> {
        if self.num.is_zero() {
            return Some(G::zero());
        }
        (self.den.is_one() && self.num.low() == Some(0) && self.num.is_monomial())
            .then(|| self.num.coeff(0))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::normalize(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::normalize(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        // powers of coprime parts stay coprime
        Ok(Self::normalize(base.num.pow(k), base.den.pow(k)).expect("nonzero denominator"))
    }

    pub fn scale(&self, c: &G) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Substitute `s := point`.
    pub fn evaluate(&self, point: &G) -> Result<G> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::Pole);
        }
        self.num.eval(point)?.checked_div(&d)
    }

    /// Substitute `q := point` into an even function.
    pub fn evaluate_q(&self, point: &G) -> Result<G> {
        let d = self.den.eval_q(point)?;
        if d.is_zero() {
            return Err(Error::Pole);
        }
        self.num.eval_q(point)?.checked_div(&d)
    }

    /// Substitute `s ↦ unit·s` for a fourth root of unity.
    pub fn substitute(&self, unit: &G) -> Result<Self> {
        let k = unit
            .unit_exponent()
            .ok_or_else(|| invalid(format!("{unit} is not a fourth root of unity")))?;
        Ok(self.substitute_unit(k))
    }

    /// Substitute `s ↦ i^k·s`.
    pub fn substitute_unit(&self, k: u8) -> Self {
        if k.is_multiple_of(4) {
            return self.clone();
        }
        Self::normalize(self.num.substitute_unit(k), self.den.substitute_unit(k))
            .expect("substitution preserves nonzero denominators")
    }

    /// Substitute `s ↦ s⁻¹`.
    pub fn invert_variable(&self) -> Self {
        Self::normalize(self.num.invert_variable(), self.den.invert_variable())
            .expect("nonzero denominator")
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { num: self.num.shift(k), den: self.den.clone() }
    }

    /// All exponents of numerator and denominator even.
    pub fn is_even(&self) -> bool {
        self.num.is_even() && self.den.is_even()
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        Self { num: HalfLaurent::zero(), den: HalfLaurent::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::from_laurent(HalfLaurent::one())
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::normalize(&self.num + &o.num, self.den.clone()).unwrap();
        }
        let mut n = &self.num * &o.den;
        n.add_mul_assign(&o.num, &self.den);
        RatFunc::normalize(n, &self.den * &o.den).unwrap()
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_laurent(&self.num * &o.num);
        }
        RatFunc::normalize(&self.num * &o.num, &self.den * &o.den).unwrap()
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        &self + &o
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        &self - &o
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        &self * &o
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl From<HalfLaurent> for RatFunc {
    fn from(p: HalfLaurent) -> Self {
        Self::from_laurent(p)
    }
}

impl From<G> for RatFunc {
    fn from(c: G) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i32, i64)]) -> HalfLaurent {
        HalfLaurent::from_int_terms(terms)
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let f = RatFunc::normalize(p(&[(4, 1), (0, -1)]), p(&[(3, 1), (1, -1)])).unwrap();
        let g = RatFunc::normalize(p(&[(2, 1), (0, 1)]), p(&[(1, 1)])).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.den().low(), Some(0));
    }

    #[test]
    fn difference_of_squares() {
        let f = RatFunc::normalize(p(&[(2, 1), (-2, -1)]), p(&[(1, 1), (-1, -1)])).unwrap();
        assert_eq!(f, RatFunc::from_laurent(p(&[(1, 1), (-1, 1)])));
    }

    #[test]
    fn zero_denominator_is_rejected() {
        let e = RatFunc::normalize(HalfLaurent::one(), HalfLaurent::zero()).unwrap_err();
        assert_eq!(e.to_string(), "division by zero polynomial");
    }

    #[test]
    fn pole_detection() {
        let f = RatFunc::normalize(HalfLaurent::one(), p(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(f.evaluate(&G::one()), Err(Error::Pole));
        assert_eq!(f.evaluate(&G::from_int(3)).unwrap(), G::from_ratio(1, 2));
    }

    #[test]
    fn substitution_composes() {
        let f = RatFunc::normalize(p(&[(3, 1), (0, 2)]), p(&[(1, 1), (0, 5)])).unwrap();
        let twice = f.substitute(&G::i()).unwrap().substitute(&G::i()).unwrap();
        assert_eq!(twice, f.substitute(&-G::one()).unwrap());
        assert!(f.substitute(&G::from_int(2)).is_err());
    }

    #[test]
    fn display_and_parse_round_trip() {
        let f = RatFunc::normalize(p(&[(2, 1), (0, 1), (-2, 1)]), p(&[(1, 1), (-1, 1)])).unwrap();
        let text = f.to_string();
        assert_eq!(text.parse::<RatFunc>().unwrap(), f);
    }
}
