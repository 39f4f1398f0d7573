use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exact::parse::parse_scalar_at;
use crate::exact::RatFunc;

/// Which of the two algebras `C_{n,+}` / `C_{n,-}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Plus,
    Minus,
}

impl Variant {
    pub fn sign(self) -> i64 {
        match self {
            Variant::Plus => 1,
            Variant::Minus => -1,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Plus => "plus",
            Variant::Minus => "minus",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Variant::Plus),
            "minus" | "-" => Ok(Variant::Minus),
            _ => Err(invalid(format!("unknown variant '{s}' (expected plus or minus)"))),
        }
    }
}

/// Generators of `C_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    /// `u_i`.
    U(usize),
    /// `g_i = q·1 - u_i`.
    G(usize),
    /// `e_(r)`; `E(1)` is `e` and `E(0)` is `1`.
    E(usize),
    /// `u_i e_(r)` divided by `s ± s^-1`.
    ZL(usize, usize),
    /// `e_(r) u_i` divided by `s ± s^-1`.
    ZR(usize, usize),
}

impl Gen {
    pub fn check(&self, n: usize) -> Result<()> {
        let ok = match *self {
            Gen::U(i) | Gen::G(i) => i >= 1 && i < n,
            Gen::E(r) => r <= n,
            Gen::ZL(i, r) | Gen::ZR(i, r) => i >= 1 && i < r && r <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!("{self} is not a generator of C_{n}")))
        }
    }

    pub fn transpose(&self) -> Gen {
        match *self {
            Gen::ZL(i, r) => Gen::ZR(i, r),
            Gen::ZR(i, r) => Gen::ZL(i, r),
            g => g,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gen::U(i) => write!(f, "u{i}"),
            Gen::G(i) => write!(f, "g{i}"),
            Gen::E(1) => write!(f, "e"),
            Gen::E(r) => write!(f, "e({r})"),
            Gen::ZL(i, r) => write!(f, "zL({i},{r})"),
            Gen::ZR(i, r) => write!(f, "zR({i},{r})"),
        }
    }
}

/// Expression tree over the generators.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Gen(Gen),
    Scalar(RatFunc),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
}

impl Expr {
    pub fn one() -> Self {
        Expr::Scalar(RatFunc::one())
    }

    pub fn gen(g: Gen) -> Self {
        Expr::Gen(g)
    }

    pub fn scalar(c: RatFunc) -> Self {
        Expr::Scalar(c)
    }

    /// Product of `g_j` over a word.
    pub fn g_word(word: &[usize]) -> Self {
        Expr::Product(word.iter().map(|&j| Expr::Gen(Gen::G(j))).collect())
    }

    pub fn u_word(word: &[usize]) -> Self {
        Expr::Product(word.iter().map(|&j| Expr::Gen(Gen::U(j))).collect())
    }

    pub fn mul(self, o: Expr) -> Self {
        let mut v = match self {
            Expr::Product(v) => v,
            e => vec![e],
        };
        match o {
            Expr::Product(w) => v.extend(w),
            e => v.push(e),
        }
        Expr::Product(v)
    }

    pub fn add(self, o: Expr) -> Self {
        let mut v = match self {
            Expr::Sum(v) => v,
            e => vec![e],
        };
        match o {
            Expr::Sum(w) => v.extend(w),
            e => v.push(e),
        }
        Expr::Sum(v)
    }

    pub fn neg(self) -> Self {
        Expr::Scalar(-RatFunc::one()).mul(self)
    }

    pub fn sub(self, o: Expr) -> Self {
        self.add(o.neg())
    }

    pub fn for_each_gen(&self, f: &mut impl FnMut(&Gen)) {
        match self {
            Expr::Gen(g) => f(g),
            Expr::Scalar(_) => {}
            Expr::Sum(v) | Expr::Product(v) => v.iter().for_each(|e| e.for_each_gen(f)),
        }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        let mut res = Ok(());
        self.for_each_gen(&mut |g| {
            if res.is_ok() {
                res = g.check(n);
            }
        });
        res
    }

    /// Anti-automorphism reversing products; `zL` and `zR` swap since
    /// `(U_i E)ᵀ = E U_i`.
    pub fn transpose(&self) -> Expr {
        match self {
            Expr::Gen(g) => Expr::Gen(g.transpose()),
            Expr::Scalar(c) => Expr::Scalar(c.clone()),
            Expr::Sum(v) => Expr::Sum(v.iter().map(Expr::transpose).collect()),
            Expr::Product(v) => Expr::Product(v.iter().rev().map(Expr::transpose).collect()),
        }
    }

    /// Index shift `u_i ↦ u_{i+m}` on Hecke expressions.
    pub fn shift(&self, m: usize) -> Result<Expr> {
        Ok(match self {
            Expr::Gen(Gen::U(i)) => Expr::Gen(Gen::U(i + m)),
            Expr::Gen(Gen::G(i)) => Expr::Gen(Gen::G(i + m)),
            Expr::Gen(Gen::E(0)) => Expr::Gen(Gen::E(0)),
            Expr::Gen(g) => {
                return Err(invalid(format!("shift is defined on the Hecke part only, found {g}")))
            }
            Expr::Scalar(c) => Expr::Scalar(c.clone()),
            Expr::Sum(v) => Expr::Sum(v.iter().map(|e| e.shift(m)).collect::<Result<_>>()?),
            Expr::Product(v) => Expr::Product(v.iter().map(|e| e.shift(m)).collect::<Result<_>>()?),
        })
    }

    /// `g_i ↦ g_{n-i}` (and likewise for `u_i`) on Hecke expressions.
    pub fn theta(&self, n: usize) -> Result<Expr> {
        Ok(match self {
            Expr::Gen(Gen::U(i)) if *i < n => Expr::Gen(Gen::U(n - i)),
            Expr::Gen(Gen::G(i)) if *i < n => Expr::Gen(Gen::G(n - i)),
            Expr::Gen(Gen::E(0)) => Expr::Gen(Gen::E(0)),
            Expr::Gen(g) => return Err(Error::IndexOutOfRange(format!("theta_{n} undefined on {g}"))),
            Expr::Scalar(c) => Expr::Scalar(c.clone()),
            Expr::Sum(v) => Expr::Sum(v.iter().map(|e| e.theta(n)).collect::<Result<_>>()?),
            Expr::Product(v) => Expr::Product(v.iter().map(|e| e.theta(n)).collect::<Result<_>>()?),
        })
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, in_product: bool) -> fmt::Result {
        match self {
            Expr::Gen(g) => write!(f, "{g}"),
            Expr::Scalar(c) => {
                if let Some(k) = c.as_constant() {
                    if k.is_real() && k.re().is_integer() && k.re().is_positive() {
                        return write!(f, "{}", k.re().numer());
                    }
                }
                write!(f, "[{c}]")
            }
            Expr::Sum(v) => {
                if v.is_empty() {
                    return write!(f, "[0]");
                }
                if in_product {
                    write!(f, "(")?;
                }
                for (k, e) in v.iter().enumerate() {
                    if k > 0 {
                        write!(f, "+")?;
                    }
                    e.fmt_prec(f, false)?;
                }
                if in_product {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Expr::Product(v) => {
                if v.is_empty() {
                    return write!(f, "1");
                }
                for (k, e) in v.iter().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    e.fmt_prec(f, true)?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, false)
    }
}

/// An element of `C_{n,±}` before representation.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraExpr {
    pub n: usize,
    pub variant: Variant,
    pub expr: Expr,
}

impl AlgebraExpr {
    pub fn new(n: usize, variant: Variant, expr: Expr) -> Result<Self> {
        expr.check(n)?;
        Ok(Self { n, variant, expr })
    }

    pub fn parse(text: &str, n: usize, variant: Variant) -> Result<Self> {
        Self::new(n, variant, parse_expr(text)?)
    }

    pub fn transpose(&self) -> Self {
        Self { n: self.n, variant: self.variant, expr: self.expr.transpose() }
    }

    /// Shift Hecke indices by `m` into `C_{new_n}`.
    pub fn shift(&self, m: usize, new_n: usize) -> Result<Self> {
        Self::new(new_n, self.variant, self.expr.shift(m)?)
    }

    /// Embed into `C_{new_n}` without changing the expression.
    pub fn embed(&self, new_n: usize) -> Result<Self> {
        Self::new(new_n, self.variant, self.expr.clone())
    }
}

impl fmt::Display for AlgebraExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)
    }
}

/// `Θ_n` on a word of simple-reflection indices.
pub fn theta(word: &[usize], n: usize) -> Result<Vec<usize>> {
    word.iter()
        .map(|&i| {
            if i >= 1 && i < n {
                Ok(n - i)
            } else {
                Err(Error::IndexOutOfRange(format!("index {i} out of range for theta_{n}")))
            }
        })
        .collect()
}

/// Parse the expression grammar:
///
/// ```text
/// sum     := product (('+' | '-') product)*
/// product := factor ('*' factor)*
/// factor  := '-' factor | atom
/// atom    := 'u'k | 'g'k | 'e' | 'e(' r ')' | 'zL(' i ',' r ')' | 'zR(' i ',' r ')'
///          | digits | '[' scalar ']' | '(' sum ')'
/// ```
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = ExprParser { src: text, pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty expression"));
    }
    let e = p.sum()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err(format!("unexpected '{}'", p.rest().chars().next().unwrap())));
    }
    Ok(e)
}

struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
}

impl ExprParser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        let t = self.rest();
        self.pos += t.len() - t.trim_start().len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(|b| b.is_ascii_digit()).count();
        if len == 0 {
            return Err(self.err("expected an index"));
        }
        let v = self.rest()[..len].parse().map_err(|_| self.err("index too large"))?;
        self.pos += len;
        Ok(v)
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut terms = vec![self.product()?];
        loop {
            if self.eat('+') {
                terms.push(self.product()?);
            } else if self.eat('-') {
                terms.push(self.product()?.neg());
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }

    fn product(&mut self) -> Result<Expr> {
        let mut factors = vec![self.factor()?];
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        let rest = self.rest();
        let Some(c) = rest.chars().next() else {
            return Err(self.err("unexpected end of input"));
        };
        if c.is_ascii_digit() {
            let v = self.number()?;
            return Ok(Expr::Scalar(RatFunc::from_int(v as i64)));
        }
        match c {
            '(' => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            '[' => {
                let start = self.pos + 1;
                let mut depth = 0usize;
                let mut end = None;
                for (k, ch) in rest.char_indices() {
                    match ch {
                        '[' => depth += 1,
                        ']' => {
                            depth -= 1;
                            if depth == 0 {
                                end = Some(self.pos + k);
                                break;
                            }
                        }
                        _ => {}
                    }
                }
                let end = end.ok_or_else(|| self.err("unterminated '['"))?;
                let v = parse_scalar_at(&self.src[start..end], start)?;
                self.pos = end + 1;
                Ok(Expr::Scalar(v))
            }
            _ => {
                let len = rest
                    .char_indices()
                    .find(|(_, ch)| !ch.is_ascii_alphabetic())
                    .map_or(rest.len(), |(k, _)| k);
                let ident = rest[..len].to_string();
                let at = self.pos;
                self.pos += len;
                match ident.as_str() {
                    "u" => Ok(Expr::Gen(Gen::U(self.number()?))),
                    "g" => Ok(Expr::Gen(Gen::G(self.number()?))),
                    "e" => {
                        if self.rest().starts_with('(') {
                            self.pos += 1;
                            let r = self.number()?;
                            self.expect(')')?;
                            Ok(Expr::Gen(Gen::E(r)))
                        } else {
                            Ok(Expr::Gen(Gen::E(1)))
                        }
                    }
                    "zL" | "zR" => {
                        self.expect('(')?;
                        let i = self.number()?;
                        self.expect(',')?;
                        let r = self.number()?;
                        self.expect(')')?;
                        Ok(Expr::Gen(if ident == "zL" { Gen::ZL(i, r) } else { Gen::ZR(i, r) }))
                    }
                    "" => Err(Error::Parse { pos: at, msg: format!("unexpected '{c}'") }),
                    _ => Err(Error::Parse { pos: at, msg: format!("undefined symbol '{ident}'") }),
                }
            }
        }
    }
}

impl FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}
