//! Matrix-free evaluation of words in the generators over any field.
//!
//! Operators act on dense coordinate vectors of length `N^n`. `E^{⊗r}` is
//! applied through its rank-one factorization, so no `N^n × N^n` matrix is
//! ever formed.

use num_traits::One;

use super::context::RepContext;
use super::local::{e_factor, local_u, weights};
use crate::error::{Error, Result};
use crate::exact::{Field, RatFunc};
use crate::weave::{Expr, FamilyElement, Gen};

/// One factor of a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    U(usize),
    G(usize),
    E(usize),
    /// `D^{⊗n}`.
    D,
}

impl Atom {
    fn from_gen(g: &Gen) -> Option<Self> {
        match *g {
            Gen::U(i) => Some(Atom::U(i)),
            Gen::G(i) => Some(Atom::G(i)),
            Gen::E(r) => Some(Atom::E(r)),
            Gen::ZL(..) | Gen::ZR(..) => None,
        }
    }
}

/// The atoms of a family element, left to right.
pub fn family_word(x: &FamilyElement) -> Vec<Atom> {
    let mut w: Vec<Atom> = x.left.iter().map(|&j| Atom::G(j)).collect();
    if x.r > 0 {
        w.push(Atom::E(x.r));
    }
    w.extend(x.right.iter().map(|&j| Atom::G(j)));
    w
}

/// The atoms of a monomial expression (a generator or a product of
/// generators); `None` for anything else.
pub fn expr_word(e: &Expr) -> Option<Vec<Atom>> {
    match e {
        Expr::Gen(g) => Atom::from_gen(g).map(|a| vec![a]),
        Expr::Product(fs) => {
            let mut out = Vec::new();
            for f in fs {
                out.extend(expr_word(f)?);
            }
            Some(out)
        }
        Expr::Scalar(c) if c.is_one() => Some(Vec::new()),
        _ => None,
    }
}

/// The representation specialized into a field.
pub struct PointRep<F: Field> {
    field: F,
    ctx: RepContext,
    /// Local `U` as sparse columns indexed by the pair `a·N + b`.
    u_cols: Vec<Vec<(usize, F::Elem)>>,
    q: F::Elem,
    /// `x^{⊗r}` for `r = 0..=n`.
    xpow: Vec<Vec<F::Elem>>,
    /// `ν^{-r}` for `r = 0..=n`.
    nu_inv_pow: Vec<F::Elem>,
    /// Diagonal of `D^{⊗n}`.
    dw: Vec<F::Elem>,
}

impl<F: Field> PointRep<F> {
    /// Specializes at `s`; fails when a constant of the representation has a pole there.
    pub fn new(field: F, ctx: RepContext, s: &F::Elem) -> Result<Self> {
        let conv = |f: &RatFunc| field.eval_ratfunc(f, s).ok_or(Error::Pole);
        let big_n = ctx.big_n;
        let u = local_u(&ctx);
        let mut u_cols = vec![Vec::new(); big_n * big_n];
        for (r, c, v) in u.entries() {
            u_cols[c].push((r, conv(&v)?));
        }
        let q = conv(&RatFunc::q_pow(1))?;
        let (x, nu) = e_factor(&ctx);
        let x: Vec<F::Elem> = x.iter().map(conv).collect::<Result<_>>()?;
        let nu_inv = field.inv(&conv(&nu)?).ok_or(Error::Pole)?;
        let mut xpow = vec![vec![field.one()]];
        let mut nu_inv_pow = vec![field.one()];
        for r in 0..ctx.n {
            let prev = &xpow[r];
            let next: Vec<F::Elem> = prev.iter().flat_map(|a| x.iter().map(|b| field.mul(a, b))).collect();
            xpow.push(next);
            nu_inv_pow.push(field.mul(&nu_inv_pow[r], &nu_inv));
        }
        let w: Vec<F::Elem> =
            weights(&ctx).into_iter().map(|h| conv(&RatFunc::from_laurent(h))).collect::<Result<_>>()?;
        let mut dw = vec![field.one()];
        for _ in 0..ctx.n {
            dw = dw.iter().flat_map(|a| w.iter().map(|b| field.mul(a, b))).collect();
        }
        Ok(Self { field, ctx, u_cols, q, xpow, nu_inv_pow, dw })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn context(&self) -> &RepContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dw.len()
    }

    pub fn zero_vec(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vec(&self, a: usize) -> Vec<F::Elem> {
        let mut v = self.zero_vec();
        v[a] = self.field.one();
        v
    }

    /// `x^{⊗r} ⊗ e_t` as a coordinate vector.
    pub fn e_column(&self, r: usize, t: usize) -> Vec<F::Elem> {
        let tail = self.ctx.big_n.pow((self.ctx.n - r) as u32);
        let mut v = self.zero_vec();
        for (h, xh) in self.xpow[r].iter().enumerate() {
            v[h * tail + t] = xh.clone();
        }
        v
    }

    fn check(&self, a: Atom) -> Result<()> {
        let n = self.ctx.n;
        let ok = match a {
            Atom::U(i) | Atom::G(i) => i >= 1 && i < n,
            Atom::E(r) => r <= n,
            Atom::D => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!("{a:?} on {n} factors")))
        }
    }

    fn apply_u(&self, i: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let nn = self.ctx.big_n * self.ctx.big_n;
        let stride = self.ctx.big_n.pow((self.ctx.n - 1 - i) as u32);
        let mut out = self.zero_vec();
        for (idx, val) in v.iter().enumerate() {
            if f.is_zero(val) {
                continue;
            }
            let lo = idx % stride;
            let pair = (idx / stride) % nn;
            let hi = idx / (stride * nn);
            for (p2, c) in &self.u_cols[pair] {
                let j = (hi * nn + p2) * stride + lo;
                out[j] = f.add(&out[j], &f.mul(c, val));
            }
        }
        out
    }

    fn apply_e(&self, r: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        if r == 0 {
            return v.to_vec();
        }
        let f = &self.field;
        let tail = self.ctx.big_n.pow((self.ctx.n - r) as u32);
        let x = &self.xpow[r];
        let mut out = self.zero_vec();
        for t in 0..tail {
            let mut acc = f.zero();
            for (h, xh) in x.iter().enumerate() {
                let val = &v[h * tail + t];
                if !f.is_zero(val) {
                    acc = f.add(&acc, &f.mul(xh, val));
                }
            }
            if f.is_zero(&acc) {
                continue;
            }
            let acc = f.mul(&acc, &self.nu_inv_pow[r]);
            for (h, xh) in x.iter().enumerate() {
                out[h * tail + t] = f.mul(xh, &acc);
            }
        }
        out
    }

    /// One atom applied to a vector.
    pub fn apply_atom(&self, a: Atom, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.check(a)?;
        let f = &self.field;
        Ok(match a {
            Atom::U(i) => self.apply_u(i, v),
            Atom::G(i) => {
                let u = self.apply_u(i, v);
                v.iter()
                    .zip(u)
                    .map(|(a, b)| if f.is_zero(a) { f.neg(&b) } else { f.sub(&f.mul(&self.q, a), &b) })
                    .collect()
            }
            Atom::E(r) => self.apply_e(r, v),
            Atom::D => v
                .iter()
                .zip(&self.dw)
                .map(|(a, w)| if f.is_zero(a) { f.zero() } else { f.mul(a, w) })
                .collect(),
        })
    }

    /// `A₁A₂⋯A_k · v` for `word = [A₁, …, A_k]`.
    pub fn apply(&self, word: &[Atom], v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let mut cur = v.to_vec();
        for a in word.iter().rev() {
            cur = self.apply_atom(*a, &cur)?;
        }
        Ok(cur)
    }

    pub fn dot(&self, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (x, y) in a.iter().zip(b) {
            if !f.is_zero(x) && !f.is_zero(y) {
                acc = f.add(&acc, &f.mul(x, y));
            }
        }
        acc
    }

    /// `Tr(W · D^{⊗n})` for the product `W` of a word.
    ///
    /// When the word contains some `E^{⊗r}`, the trace is rotated to start
    /// there and expanded over the columns of its rank-one factor.
    pub fn qtrace(&self, word: &[Atom]) -> Result<F::Elem> {
        for a in word {
            self.check(*a)?;
        }
        let f = &self.field;
        let pos = word
            .iter()
            .enumerate()
            .filter_map(|(p, a)| match a {
                Atom::E(r) if *r > 0 => Some((*r, p)),
                _ => None,
            })
            .max();
        let mut total = f.zero();
        match pos {
            Some((r, p)) => {
                // Tr(A E B D) = Tr(E · B D A)
                let mut rotated: Vec<Atom> = word[p + 1..].to_vec();
                rotated.push(Atom::D);
                rotated.extend_from_slice(&word[..p]);
                let tail = self.ctx.big_n.pow((self.ctx.n - r) as u32);
                for t in 0..tail {
                    let col = self.e_column(r, t);
                    let img = self.apply(&rotated, &col)?;
                    total = f.add(&total, &self.dot(&col, &img));
                }
                total = f.mul(&total, &self.nu_inv_pow[r]);
            }
            None => {
                for a in 0..self.dim() {
                    let img = self.apply(word, &self.basis_vec(a))?;
                    if !f.is_zero(&img[a]) {
                        total = f.add(&total, &f.mul(&img[a], &self.dw[a]));
                    }
                }
            }
        }
        Ok(total)
    }

    /// `φ(W) = Tr(W D^{⊗n}) / [N]^n`.
    pub fn phi(&self, word: &[Atom]) -> Result<F::Elem> {
        let f = &self.field;
        let qd = self.dw.iter().fold(f.zero(), |acc, w| f.add(&acc, w));
        let norm = f.inv(&qd).ok_or(Error::Pole)?;
        Ok(f.mul(&self.qtrace(word)?, &norm))
    }

    /// Column `b` of the matrix of a word.
    pub fn column(&self, word: &[Atom], b: usize) -> Result<Vec<F::Elem>> {
        self.apply(word, &self.basis_vec(b))
    }

    /// `(x^{⊗n})ᵀ W x^{⊗n}`, the scalar with `E^{⊗n} W E^{⊗n} = (·/ν^n) E^{⊗n}`.
    pub fn sandwich(&self, word: &[Atom]) -> Result<F::Elem> {
        let x = self.e_column(self.ctx.n, 0);
        Ok(self.dot(&x, &self.apply(word, &x)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{GaussianRational, Rationals, Symbolic};
    use crate::rep::{build_e_r, build_g, qdim_v};
    use crate::weave::Variant;

    #[test]
    fn matches_sparse_matrices() {
        let ctx = RepContext::new(3, 3, Variant::Minus).unwrap();
        let pr = PointRep::new(Symbolic, ctx, &RatFunc::s_pow(1)).unwrap();
        let m = build_g(&ctx, 2).unwrap().mul(&build_e_r(&ctx, 2).unwrap()).unwrap();
        for b in [0, 5, 13, 26] {
            let col = pr.column(&[Atom::G(2), Atom::E(2)], b).unwrap();
            for (a, v) in col.iter().enumerate() {
                assert_eq!(*v, m.get(a, b), "({a}, {b})");
            }
        }
    }

    #[test]
    fn phi_of_identity_and_e() {
        let ctx = RepContext::new(5, 2, Variant::Plus).unwrap();
        let pr = PointRep::new(Symbolic, ctx, &RatFunc::s_pow(1)).unwrap();
        assert!(pr.phi(&[]).unwrap().is_one());
        let v = pr.phi(&[Atom::E(2)]).unwrap();
        assert_eq!(v, qdim_v(&ctx).pow(-2).unwrap());
    }

    #[test]
    fn rotated_trace_agrees_with_plain() {
        let ctx = RepContext::new(3, 3, Variant::Plus).unwrap();
        let s = GaussianRational::from_ratio(3, 2);
        let pr = PointRep::new(Rationals, ctx, &s).unwrap();
        let w = [Atom::G(1), Atom::E(1), Atom::G(2), Atom::G(1)];
        let direct = (0..pr.dim())
            .map(|a| pr.column(&w, a).unwrap()[a].clone() * pr.dw[a].clone())
            .fold(GaussianRational::from_int(0), |a, b| a + b);
        assert_eq!(pr.qtrace(&w).unwrap(), direct);
    }
}
