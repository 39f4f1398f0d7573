//! Homomorphic evaluation of algebra expressions into exact matrices.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::context::RepContext;
use super::generators::{build_e_r, build_g, build_scaled, build_u, Side};
use super::sparse::SparseMat;
use crate::error::{Error, Result};
use crate::weave::{AlgebraExpr, Expr, Gen};

/// Evaluates expressions for one representation, caching generator matrices.
pub struct Evaluator {
    ctx: RepContext,
    cache: Mutex<HashMap<Gen, Arc<SparseMat>>>,
}

impl Evaluator {
    pub fn new(ctx: RepContext) -> Self {
        Self { ctx, cache: Mutex::new(HashMap::new()) }
    }

    pub fn context(&self) -> &RepContext {
        &self.ctx
    }

    /// The matrix of one generator.
    pub fn generator(&self, g: &Gen) -> Result<Arc<SparseMat>> {
        if let Some(m) = self.cache.lock().unwrap().get(g) {
            return Ok(m.clone());
        }
        let m = Arc::new(match *g {
            Gen::U(i) => build_u(&self.ctx, i)?,
            Gen::G(i) => build_g(&self.ctx, i)?,
            Gen::E(r) => build_e_r(&self.ctx, r)?,
            Gen::ZL(i, r) => build_scaled(&self.ctx, Side::Left, i, r)?,
            Gen::ZR(i, r) => build_scaled(&self.ctx, Side::Right, i, r)?,
        });
        self.cache.lock().unwrap().insert(*g, m.clone());
        Ok(m)
    }

    pub fn eval(&self, e: &Expr) -> Result<SparseMat> {
        let dim = self.ctx.dim();
        Ok(match e {
            Expr::Gen(g) => (*self.generator(g)?).clone(),
            Expr::Scalar(c) => SparseMat::scalar(dim, c),
            Expr::Sum(terms) => {
                let mut acc = SparseMat::zero(dim);
                for t in terms {
                    acc = acc.add(&self.eval(t)?)?;
                }
                acc.reduced()
            }
            Expr::Product(factors) => {
                let mut acc: Option<SparseMat> = None;
                for f in factors {
                    let m = self.eval(f)?;
                    acc = Some(match acc {
                        None => m,
                        Some(a) => match m.as_scalar() {
                            Some(c) => a.scale(&c),
                            None => a.mul(&m)?.reduced(),
                        },
                    });
                }
                acc.unwrap_or_else(|| SparseMat::identity(dim))
            }
        })
    }
}

/// `Φ(expr)` for the given representation.
pub fn evaluate_expr(ctx: &RepContext, expr: &AlgebraExpr) -> Result<SparseMat> {
    if expr.n != ctx.n {
        return Err(Error::DimensionMismatch { expected: ctx.n, got: expr.n });
    }
    if expr.variant != ctx.variant {
        return Err(crate::error::invalid("expression variant differs from representation variant"));
    }
    Evaluator::new(*ctx).eval(&expr.expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weave::Variant;

    fn ev(text: &str, n: usize, v: Variant) -> SparseMat {
        let ctx = RepContext::new(3, n, v).unwrap();
        evaluate_expr(&ctx, &AlgebraExpr::parse(text, n, v).unwrap()).unwrap()
    }

    #[test]
    fn identity_and_idempotent() {
        assert!(ev("1", 2, Variant::Plus).equals(&SparseMat::identity(9)));
        assert!(ev("e*e", 2, Variant::Plus).equals(&ev("e", 2, Variant::Plus)));
    }

    #[test]
    fn braid_in_u_form() {
        for v in [Variant::Plus, Variant::Minus] {
            assert!(ev("u1*u2*u1-u1", 3, v).equals(&ev("u2*u1*u2-u2", 3, v)));
        }
    }

    #[test]
    fn reduced_words_agree() {
        assert!(ev("g1*g2*g1", 3, Variant::Minus).equals(&ev("g2*g1*g2", 3, Variant::Minus)));
    }

    #[test]
    fn mismatch_is_error() {
        let ctx = RepContext::new(3, 2, Variant::Plus).unwrap();
        let e = AlgebraExpr::parse("u1", 3, Variant::Plus).unwrap();
        assert!(evaluate_expr(&ctx, &e).is_err());
    }
}
