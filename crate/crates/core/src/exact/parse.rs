//! Recursive-descent parser for scalar expressions in `s`, `q` and `i`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? digits)?
//! atom   := digits | 'i' | 's' | 'q' | '(' expr ')' | '[' bracket ']'
//! ```
//!
//! `[m]` is the q-integer and `[N]+` / `[N]-` the odd brackets, so
//! `1/[5]^2` parses. Whitespace is ignored.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::gaussian::GaussianRational;
use super::qnum::{q_number, QNumber};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

pub fn parse_scalar(text: &str) -> Result<RatFunc> {
    parse_scalar_at(text, 0)
}

/// Parse with error positions reported relative to an enclosing string.
pub(crate) fn parse_scalar_at(text: &str, offset: usize) -> Result<RatFunc> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, offset };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty expression"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err(format!("unexpected character '{}'", p.peek().unwrap() as char)));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.offset + self.pos, msg: msg.into() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| Error::Parse {
                    pos: self.offset + at,
                    msg: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let neg = self.eat(b'-');
        self.skip_ws();
        let at = self.pos;
        let digits = self.digits().ok_or_else(|| self.err("expected exponent"))?;
        let e: i32 = digits
            .parse()
            .map_err(|_| Error::Parse { pos: self.offset + at, msg: "exponent too large".into() })?;
        let e = if neg { -e } else { e };
        base.pow(e).map_err(|_| Error::Parse {
            pos: self.offset + at,
            msg: "negative power of zero".into(),
        })
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<RatFunc> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                let n: BigInt = d.parse().expect("ascii digits");
                Ok(RatFunc::constant(GaussianRational::from_rational(BigRational::from_integer(n))))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(RatFunc::i())
            }
            Some(b's') => {
                self.pos += 1;
                Ok(RatFunc::s_pow(1))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(RatFunc::q_pow(1))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(b'[') => {
                self.pos += 1;
                self.bracket()
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn bracket(&mut self) -> Result<RatFunc> {
        self.skip_ws();
        let at = self.pos;
        let d = self.digits().ok_or_else(|| self.err("expected integer inside brackets"))?;
        let n: i64 = d
            .parse()
            .map_err(|_| Error::Parse { pos: self.offset + at, msg: "bracket argument too large".into() })?;
        if !self.eat(b']') {
            return Err(self.err("expected ']'"));
        }
        let kind = if self.peek() == Some(b'+') && self.is_bracket_sign() {
            self.pos += 1;
            QNumber::Plus(n)
        } else if self.peek() == Some(b'-') && self.is_bracket_sign() {
            self.pos += 1;
            QNumber::Minus(n)
        } else {
            QNumber::Integer(n)
        };
        q_number(kind).map_err(|e| Error::Parse { pos: self.offset + at, msg: e.to_string() })
    }

    /// A sign directly after `]` belongs to the bracket unless an operand follows.
    fn is_bracket_sign(&self) -> bool {
        match self.src.get(self.pos + 1) {
            None => true,
            Some(c) => !(c.is_ascii_alphanumeric() || *c == b'(' || *c == b'[' || *c == b' '),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::laurent::HalfLaurent;

    #[test]
    fn parses_polynomials() {
        let f = parse_scalar("s^2+1+s^-2").unwrap();
        assert_eq!(f, RatFunc::from_laurent(HalfLaurent::from_int_terms(&[(2, 1), (0, 1), (-2, 1)])));
        assert_eq!(parse_scalar("q").unwrap(), RatFunc::s_pow(2));
    }

    #[test]
    fn parses_gaussian_coefficients() {
        let f = parse_scalar("(1/2+2*i)*s^3-3/2*i").unwrap();
        assert_eq!(f.to_string(), "(1/2+2*i)*s^3-3/2*i");
    }

    #[test]
    fn parses_brackets() {
        let a = parse_scalar("1/[5]^2").unwrap();
        let b = q_number(QNumber::Integer(5)).unwrap().pow(-2).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_scalar("[3]+").unwrap(), parse_scalar("s^2+1+s^-2").unwrap());
        assert_eq!(parse_scalar("[3]-").unwrap(), parse_scalar("s^2-1+s^-2").unwrap());
        assert_eq!(parse_scalar("[3]-1").unwrap(), parse_scalar("q^2+q^-2").unwrap());
    }

    #[test]
    fn reports_errors_with_position() {
        match parse_scalar("s+x") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_scalar("1/(s-s)").is_err());
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("(s+1").is_err());
        assert!(parse_scalar("0^-1").is_err());
    }
}
