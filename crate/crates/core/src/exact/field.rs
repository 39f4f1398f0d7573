use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::gaussian::GaussianRational;
use super::laurent::HalfLaurent;
use super::ratfunc::RatFunc;
use crate::error::{invalid, Result};

/// Arithmetic context for elimination kernels.
///
/// The context carries whatever is needed to interpret elements (for a prime
/// field, the modulus and a chosen square root of -1).
pub trait Field: Send + Sync {
    type Elem: Clone + PartialEq + Send + Sync + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of a Gaussian rational; `None` when a denominator is not invertible.
    fn from_gaussian(&self, g: &GaussianRational) -> Option<Self::Elem>;
    fn describe(&self) -> String;

    /// Image of `f(s)` at the point `s`; `None` at a pole.
    fn eval_ratfunc(&self, f: &RatFunc, s: &Self::Elem) -> Option<Self::Elem> {
        let s_inv = self.inv(s)?;
        let num = eval_laurent(self, f.num(), s, &s_inv)?;
        let den = eval_laurent(self, f.den(), s, &s_inv)?;
        Some(self.mul(&num, &self.inv(&den)?))
    }
}

fn eval_laurent<F: Field + ?Sized>(field: &F, p: &HalfLaurent, s: &F::Elem, s_inv: &F::Elem) -> Option<F::Elem> {
    let (Some(low), Some(high)) = (p.low(), p.high()) else {
        return Some(field.zero());
    };
    let mut acc = field.zero();
    for e in (low..=high).rev() {
        acc = field.mul(&acc, s);
        let c = p.coeff(e);
        if !c.is_zero() {
            acc = field.add(&acc, &field.from_gaussian(&c)?);
        }
    }
    let (base, k) = if low < 0 { (s_inv, -low) } else { (s, low) };
    for _ in 0..k {
        acc = field.mul(&acc, base);
    }
    Some(acc)
}

/// The rational function field `ℚ(i)(s)`.
///
/// Elements are already functions of `s`, so evaluation returns them unchanged.
#[derive(Clone, Copy, Debug, Default)]
pub struct Symbolic;

impl Field for Symbolic {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::zero()
    }
    fn one(&self) -> RatFunc {
        RatFunc::one()
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a + b
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a - b
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a * b
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        -a
    }
    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        a.inv().ok()
    }
    fn from_gaussian(&self, g: &GaussianRational) -> Option<RatFunc> {
        Some(RatFunc::constant(g.clone()))
    }
    fn describe(&self) -> String {
        "Q(i)(s)".into()
    }
    fn eval_ratfunc(&self, f: &RatFunc, _s: &RatFunc) -> Option<RatFunc> {
        Some(f.clone())
    }
}

/// ℚ(i) itself.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = GaussianRational;

    fn zero(&self) -> GaussianRational {
        GaussianRational::zero()
    }
    fn one(&self) -> GaussianRational {
        GaussianRational::one()
    }
    fn is_zero(&self, a: &GaussianRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a + b
    }
    fn sub(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a - b
    }
    fn mul(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a * b
    }
    fn neg(&self, a: &GaussianRational) -> GaussianRational {
        -a
    }
    fn inv(&self, a: &GaussianRational) -> Option<GaussianRational> {
        a.inv().ok()
    }
    fn from_gaussian(&self, g: &GaussianRational) -> Option<GaussianRational> {
        Some(g.clone())
    }
    fn describe(&self) -> String {
        "Q(i)".into()
    }
}

/// 𝔽_p with p ≡ 1 (mod 4), so that -1 has a square root standing in for `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    sqrt_m1: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p % 4 != 1 || !is_prime(p) {
            return Err(invalid(format!("{p} is not a prime congruent to 1 mod 4")));
        }
        let e = (p - 1) / 4;
        let sqrt_m1 = (2..)
            .map(|c| pow_mod(c, e, p))
            .find(|&r| mul_mod(r, r, p) == p - 1)
            .expect("a quadratic nonresidue exists");
        Ok(Self { p, sqrt_m1 })
    }

    /// A prime p ≡ 1 (mod 4) just above a random point in `[2^61, 2^62)`.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let mut c: u64 = rng.gen_range((1u64 << 61)..(1u64 << 62) - (1 << 20));
        c += (5 - c % 4) % 4; // c ≡ 1 mod 4
        loop {
            if is_prime(c) {
                return Self::new(c).expect("checked");
            }
            c += 4;
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn sqrt_minus_one(&self) -> u64 {
        self.sqrt_m1
    }

    pub fn reduce_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced below p")
    }

    fn reduce_rational(&self, r: &num_rational::BigRational) -> Option<u64> {
        let d = self.reduce_int(r.denom());
        if d == 0 {
            return None;
        }
        Some(mul_mod(self.reduce_int(r.numer()), inv_mod(d, self.p), self.p))
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a as u128 + *b as u128;
        (s % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| inv_mod(*a, self.p))
    }
    fn from_gaussian(&self, g: &GaussianRational) -> Option<u64> {
        let re = self.reduce_rational(g.re())?;
        let im = self.reduce_rational(g.im())?;
        Some(self.add(&re, &mul_mod(im, self.sqrt_m1, self.p)))
    }
    fn describe(&self) -> String {
        format!("F_{}", self.p)
    }
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin, exact for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn miller_rabin_small_cases() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(2305843009213693951)); // 2^61 - 1
        assert!(!is_prime(2305843009213693953));
    }

    #[test]
    fn square_root_of_minus_one() {
        let f = PrimeField::new(13).unwrap();
        assert_eq!(mul_mod(f.sqrt_minus_one(), f.sqrt_minus_one(), 13), 12);
        assert!(PrimeField::new(7).is_err());
        let i = f.from_gaussian(&GaussianRational::i()).unwrap();
        assert_eq!(f.mul(&i, &i), f.neg(&1));
    }

    #[test]
    fn random_primes_are_seeded() {
        let a = PrimeField::random(&mut ChaCha8Rng::seed_from_u64(7));
        let b = PrimeField::random(&mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a, b);
        assert!(a.modulus() > 1 << 61);
        assert_eq!(a.modulus() % 4, 1);
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeField::new(13).unwrap();
        let half = f.from_gaussian(&GaussianRational::from_ratio(1, 2)).unwrap();
        assert_eq!(f.mul(&half, &2), 1);
        assert_eq!(f.from_gaussian(&GaussianRational::from_ratio(1, 13)), None);
    }
}
