use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use crate::error::{Error, Result};

type G = GaussianRational;

/// A Laurent polynomial in `s = q^{1/2}` with Gaussian-rational coefficients.
///
/// Stored densely from the lowest nonzero exponent; both the first and the
/// last stored coefficient are nonzero, and the zero polynomial has no
/// coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HalfLaurent {
    low: i32,
    coeffs: Vec<G>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        Self { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(G::one())
    }

    pub fn constant(c: G) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(G::from_int(n))
    }

    pub fn monomial(c: G, exp: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { low: exp, coeffs: vec![c] }
        }
    }

    /// `s^exp`.
    pub fn s_pow(exp: i32) -> Self {
        Self::monomial(G::one(), exp)
    }

    /// `q^exp = s^{2 exp}`.
    pub fn q_pow(exp: i32) -> Self {
        Self::s_pow(2 * exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, G)>>(terms: I) -> Self {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc.add_term(e, &c);
        }
        acc
    }

    /// Integer-coefficient shorthand used heavily in tests and tables.
    pub fn from_int_terms(terms: &[(i32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, G::from_int(c))))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// A single term `c·s^e`; these are exactly the units of the Laurent ring.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn low(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    /// Width of the exponent range, i.e. the degree after shifting to `s^0`.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, exp: i32) -> G {
        let idx = exp - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            G::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn lowest_coeff(&self) -> Option<&G> {
        self.coeffs.first()
    }

    pub fn leading_coeff(&self) -> Option<&G> {
        self.coeffs.last()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &G)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i32, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
    }

    /// Make room for exponents in `lo..=hi`.
    fn reserve_range(&mut self, lo: i32, hi: i32) {
        if self.coeffs.is_empty() {
            self.low = lo;
            self.coeffs = vec![G::zero(); (hi - lo + 1) as usize];
            return;
        }
        if lo < self.low {
            let extra = (self.low - lo) as usize;
            let mut v = vec![G::zero(); extra];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.low = lo;
        }
        let cur_hi = self.low + self.coeffs.len() as i32 - 1;
        if hi > cur_hi {
            self.coeffs
                .resize((hi - self.low + 1) as usize, G::zero());
        }
    }

    pub fn add_term(&mut self, exp: i32, c: &G) {
        if c.is_zero() {
            return;
        }
        self.reserve_range(exp, exp);
        self.coeffs[(exp - self.low) as usize] += c;
        self.trim();
    }

    pub fn add_assign_ref(&mut self, o: &Self) {
        if o.is_zero() {
            return;
        }
        let hi = o.high().unwrap();
        self.reserve_range(o.low, hi);
        let off = (o.low - self.low) as usize;
        for (k, c) in o.coeffs.iter().enumerate() {
            if !c.is_zero() {
                self.coeffs[off + k] += c;
            }
        }
        self.trim();
    }

    pub fn sub_assign_ref(&mut self, o: &Self) {
        if o.is_zero() {
            return;
        }
        let hi = o.high().unwrap();
        self.reserve_range(o.low, hi);
        let off = (o.low - self.low) as usize;
        for (k, c) in o.coeffs.iter().enumerate() {
            if !c.is_zero() {
                self.coeffs[off + k] -= c;
            }
        }
        self.trim();
    }

    /// `self += a·b` without materializing the product.
    pub fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let lo = a.low + b.low;
        let hi = a.high().unwrap() + b.high().unwrap();
        self.reserve_range(lo, hi);
        let off = (lo - self.low) as usize;
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                self.coeffs[off + i + j] += &(x * y);
            }
        }
        self.trim();
    }

    pub fn scale(&self, c: &G) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at a nonzero point.
    pub fn eval(&self, point: &G) -> Result<G> {
        if point.is_zero() {
            return Err(Error::InvalidArgument(
                "evaluation point must be nonzero".into(),
            ));
        }
        let mut acc = G::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * point) + c;
        }
        Ok(&acc * &point.pow(self.low)?)
    }

    /// Evaluate an even polynomial at `q = s² = point`.
    pub fn eval_q(&self, point: &G) -> Result<G> {
        if !self.is_even() {
            return Err(Error::InvalidArgument("odd power of s has no value at a q-point".into()));
        }
        let halved = Self::from_terms(self.terms().map(|(e, c)| (e / 2, c.clone())));
        halved.eval(point)
    }

    /// Substitute `s ↦ i^k · s`.
    pub fn substitute_unit(&self, k: u8) -> Self {
        let mut out = self.clone();
        for (idx, c) in out.coeffs.iter_mut().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (self.low + idx as i32) as i64 * k as i64;
            *c = &*c * &G::i_pow(e);
        }
        out
    }

    /// Substitute `s ↦ s^{-1}`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self { low: -self.high().unwrap(), coeffs }
    }

    /// All exponents even, i.e. a Laurent polynomial in `q` alone.
    pub fn is_even(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    /// Coefficient vector of `self·s^{-low}` (an ordinary polynomial).
    fn poly(&self) -> &[G] {
        &self.coeffs
    }

    fn from_poly(low: i32, coeffs: Vec<G>) -> Self {
        let mut p = Self { low, coeffs };
        p.trim();
        p
    }

    /// Monic generator of the ideal `(a, b)` in the Laurent ring, normalized to
    /// lowest exponent 0 and leading coefficient 1. `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() && b.is_zero() {
            return Self::zero();
        }
        if a.is_zero() {
            return b.unit_normalized();
        }
        if b.is_zero() || a.is_monomial() || b.is_monomial() {
            return if b.is_zero() { a.unit_normalized() } else { Self::one() };
        }
        let mut x = poly_monic(a.poly().to_vec());
        let mut y = poly_monic(b.poly().to_vec());
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = poly_rem(&x, &y);
            x = y;
            y = poly_monic(r);
        }
        Self::from_poly(0, x).unit_normalized()
    }

    /// Divide out the unit part: lowest exponent 0 and leading coefficient 1.
    pub fn unit_normalized(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                Self { low: 0, coeffs: self.coeffs.iter().map(|c| c * &inv).collect() }
            }
        }
    }

    /// Exact quotient `self / d` in the Laurent ring, if it exists.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.is_monomial() {
            let inv = d.coeffs[0].inv().ok()?;
            return Some(Self { low: self.low - d.low, coeffs: self.coeffs.iter().map(|c| c * &inv).collect() });
        }
        let (q, r) = poly_div_rem(self.poly(), d.poly());
        if !r.is_empty() {
            return None;
        }
        Some(Self::from_poly(self.low - d.low, q))
    }

    /// Synthetic division by `(s - root)`: returns `(quotient, remainder)`.
    pub fn div_linear(&self, root: &G) -> (Self, G) {
        if self.is_zero() {
            return (Self::zero(), G::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![G::zero(); n.saturating_sub(1)];
        let mut carry = G::zero();
        for k in (0..n).rev() {
            let v = &self.coeffs[k] + &(&carry * root);
            if k == 0 {
                carry = v;
            } else {
                q[k - 1] = v.clone();
                carry = v;
            }
        }
        // self = s^low · P(s), P = (s - root)·Q + carry
        (Self::from_poly(self.low, q), carry)
    }

    /// Multiplicity of `root` as a zero (root must be nonzero).
    pub fn root_multiplicity(&self, root: &G) -> usize {
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, r) = p.div_linear(root);
            if !r.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }
}

fn poly_monic(mut p: Vec<G>) -> Vec<G> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if let Some(lc) = p.last().cloned() {
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero");
            for c in p.iter_mut() {
                *c = &*c * &inv;
            }
        }
    }
    p
}

fn poly_rem(a: &[G], b: &[G]) -> Vec<G> {
    poly_div_rem(a, b).1
}

/// Polynomial long division over ℚ(i); coefficient slices are low-to-high.
fn poly_div_rem(a: &[G], b: &[G]) -> (Vec<G>, Vec<G>) {
    let mut r: Vec<G> = a.to_vec();
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv_lead = b[db].inv().expect("nonzero divisor");
    let mut q = vec![G::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let coef = &r[r.len() - 1] * &inv_lead;
        if !coef.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    r[k + j] -= &(&coef * bj);
                }
            }
        }
        q[k] = coef;
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    (q, r)
}

impl<'a> Add<&'a HalfLaurent> for &'a HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, o: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out.add_assign_ref(o);
        out
    }
}

impl Add for HalfLaurent {
    type Output = HalfLaurent;
    fn add(mut self, o: HalfLaurent) -> HalfLaurent {
        self.add_assign_ref(&o);
        self
    }
}

impl<'a> Sub<&'a HalfLaurent> for &'a HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, o: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out.sub_assign_ref(o);
        out
    }
}

impl Sub for HalfLaurent {
    type Output = HalfLaurent;
    fn sub(mut self, o: HalfLaurent) -> HalfLaurent {
        self.sub_assign_ref(&o);
        self
    }
}

impl<'a> Mul<&'a HalfLaurent> for &'a HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, o: &HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        out.add_mul_assign(self, o);
        out
    }
}

impl Mul for HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, o: HalfLaurent) -> HalfLaurent {
        &self * &o
    }
}

impl Neg for HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        HalfLaurent { low: self.low, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        self.clone().neg()
    }
}

impl fmt::Display for HalfLaurent {
    /// Terms from the highest exponent down, e.g. `s^2+1+s^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<(i32, &G)> = self.terms().collect();
        for (idx, (e, c)) in terms.iter().rev().enumerate() {
            let (neg, mag) = if c.renders_negative() { (true, -(*c).clone()) } else { (false, (*c).clone()) };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let unit = mag.is_one();
            if *e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !unit {
                write!(f, "{mag}*")?;
            }
            if *e == 1 {
                write!(f, "s")?;
            } else {
                write!(f, "s^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i32, i64)]) -> HalfLaurent {
        HalfLaurent::from_int_terms(terms)
    }

    #[test]
    fn zero_coefficients_are_never_stored() {
        let a = p(&[(2, 1), (0, 1)]);
        let b = p(&[(2, -1)]);
        let c = &a + &b;
        assert_eq!(c, HalfLaurent::one());
        assert!(!c.coeffs.iter().any(|x| x.is_zero()));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_degrees_add() {
        let a = p(&[(-2, 1), (3, 2)]);
        let b = p(&[(-1, 1), (1, 5)]);
        let c = &a * &b;
        assert_eq!(c.low(), Some(-3));
        assert_eq!(c.high(), Some(4));
    }

    #[test]
    fn gcd_of_difference_of_powers() {
        // gcd(s^4 - 1, s^3 - s) = s^2 - 1
        let a = p(&[(4, 1), (0, -1)]);
        let b = p(&[(3, 1), (1, -1)]);
        assert_eq!(HalfLaurent::gcd(&a, &b), p(&[(2, 1), (0, -1)]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[(2, 1), (-2, -1)]);
        let b = p(&[(1, 1), (-1, -1)]);
        assert_eq!(a.exact_div(&b), Some(p(&[(1, 1), (-1, 1)])));
        assert_eq!(b.exact_div(&p(&[(1, 1), (0, 1)])), Some(p(&[(0, 1), (-1, -1)])));
        assert_eq!(b.exact_div(&p(&[(1, 1), (0, 2)])), None);
    }

    #[test]
    fn linear_division_and_root_multiplicity() {
        // (s - 1)^2 (s + 2) s^-1
        let f = &(&p(&[(1, 1), (0, -1)]) * &p(&[(1, 1), (0, -1)])) * &p(&[(0, 1), (-1, 2)]);
        assert_eq!(f.root_multiplicity(&G::one()), 2);
        let (_, r) = f.div_linear(&G::from_int(3));
        assert_eq!(r, f.eval(&G::from_int(3)).unwrap() * G::from_int(3));
    }

    #[test]
    fn substitution_by_i() {
        let a = p(&[(2, 1), (-2, 1)]);
        assert_eq!(a.substitute_unit(1), p(&[(2, -1), (-2, -1)]));
        assert_eq!(a.substitute_unit(2), a);
    }

    #[test]
    fn display_orders_terms_high_to_low() {
        assert_eq!(p(&[(2, 1), (0, 1), (-2, 1)]).to_string(), "s^2+1+s^-2");
        assert_eq!(p(&[(1, -3), (-1, 1)]).to_string(), "-3*s+s^-1");
    }
}
