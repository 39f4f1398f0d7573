use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element `re + im·i` of the Gaussian rationals ℚ(i).
///
/// Both parts are kept as reduced `BigRational`s, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.im.is_zero() {
            return Ok(Self::from_rational(self.re.recip()));
        }
        let n = self.norm_sq();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i32) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// `i^e` without going through general multiplication.
    pub fn i_pow(e: i64) -> Self {
        match e.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    /// Returns `Some(k)` when `self == i^k`, i.e. a fourth root of unity.
    pub fn unit_exponent(&self) -> Option<u8> {
        (0..4u8).find(|&k| *self == Self::i_pow(k as i64))
    }

    fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if r.denom().is_one() {
            write!(f, "{}", r.numer())
        } else {
            write!(f, "{}/{}", r.numer(), r.denom())
        }
    }

    /// True when rendering needs parentheses to be used as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }

    /// True when the rendering starts with a minus sign.
    pub(crate) fn renders_negative(&self) -> bool {
        if self.is_compound() {
            return false;
        }
        self.re.is_negative() || (self.re.is_zero() && self.im.is_negative())
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => Self::fmt_rational(&self.re, f),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-&self.im).is_one() {
                    write!(f, "-i")
                } else {
                    Self::fmt_rational(&self.im, f)?;
                    write!(f, "*i")
                }
            }
            (false, false) => {
                write!(f, "(")?;
                Self::fmt_rational(&self.re, f)?;
                if self.im.is_negative() {
                    write!(f, "-")?;
                } else {
                    write!(f, "+")?;
                }
                let a = self.im.abs();
                if !a.is_one() {
                    Self::fmt_rational(&a, f)?;
                    write!(f, "*")?;
                }
                write!(f, "i)")
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: GaussianRational) -> GaussianRational {
        &self + &o
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: GaussianRational) -> GaussianRational {
        &self - &o
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        match (self.im.is_zero(), o.im.is_zero()) {
            (true, true) => GaussianRational::from_rational(&self.re * &o.re),
            (true, false) => GaussianRational::new(&self.re * &o.re, &self.re * &o.im),
            (false, true) => GaussianRational::new(&self.re * &o.re, &self.im * &o.re),
            (false, false) => GaussianRational::new(
                &self.re * &o.re - &self.im * &o.im,
                &self.re * &o.im + &self.im * &o.re,
            ),
        }
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: GaussianRational) -> GaussianRational {
        &self * &o
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        if !o.re.is_zero() {
            self.re += &o.re;
        }
        if !o.im.is_zero() {
            self.im += &o.im;
        }
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        if !o.re.is_zero() {
            self.re -= &o.re;
        }
        if !o.im.is_zero() {
            self.im -= &o.im;
        }
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::new(
            BigRational::new(re.0.into(), re.1.into()),
            BigRational::new(im.0.into(), im.1.into()),
        )
    }

    #[test]
    fn canonical_form_reduces_fractions() {
        let a = g((2, 4), (-3, -6));
        assert_eq!(a, g((1, 2), (1, 2)));
        assert_eq!(a.re().denom(), &BigInt::from(2));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, -GaussianRational::one());
        assert_eq!(GaussianRational::i_pow(-1), -GaussianRational::i());
        assert_eq!(GaussianRational::i_pow(7), -GaussianRational::i());
    }

    #[test]
    fn inverse_and_division() {
        let a = g((1, 1), (2, 1));
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, GaussianRational::one());
        assert_eq!(inv, g((1, 5), (-2, 5)));
        assert!(GaussianRational::zero().inv().is_err());
    }

    #[test]
    fn powers() {
        let two = GaussianRational::from_int(2);
        assert_eq!(two.pow(-3).unwrap(), GaussianRational::from_ratio(1, 8));
        assert_eq!(GaussianRational::i().pow(6).unwrap(), -GaussianRational::one());
    }

    #[test]
    fn display() {
        assert_eq!(GaussianRational::from_ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!(g((0, 1), (-3, 2)).to_string(), "-3/2*i");
        assert_eq!(g((1, 1), (-1, 1)).to_string(), "(1-i)");
        assert_eq!(g((1, 2), (2, 1)).to_string(), "(1/2+2*i)");
    }
}
