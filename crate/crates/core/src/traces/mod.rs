//! Weighted traces, partial traces and the Markov functional `φ`.

mod report;

pub use report::{reports_to_csv, TraceReport};

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{HalfLaurent, RatFunc};
use crate::rep::{self, build_e_r, build_u, evaluate_expr, RepContext, SparseMat};
use crate::weave::{AlgebraExpr, Variant};

/// `D = diag(q^{2i-N-1})` on one factor.
pub fn weight_matrix(big_n: usize) -> Result<SparseMat> {
    Ok(rep::weight_matrix(&RepContext::new(big_n, 1, Variant::Plus)?))
}

/// Diagonal of `D^{⊗n}` as Laurent polynomials.
pub fn tensor_weights(ctx: &RepContext) -> Vec<HalfLaurent> {
    let w = rep::weights(ctx);
    let mut out = vec![HalfLaurent::one()];
    for _ in 0..ctx.n {
        out = out.iter().flat_map(|a| w.iter().map(move |b| a * b)).collect();
    }
    out
}

fn check_dim(ctx: &RepContext, mat: &SparseMat) -> Result<()> {
    if mat.dim() != ctx.dim() {
        return Err(Error::DimensionMismatch { expected: ctx.dim(), got: mat.dim() });
    }
    Ok(())
}

/// `Tr_q(mat) = Tr(mat · D^{⊗n})`.
pub fn qtrace(ctx: &RepContext, mat: &SparseMat) -> Result<RatFunc> {
    check_dim(ctx, mat)?;
    let w = tensor_weights(ctx);
    Ok(mat.weighted_trace(|i| w[i].clone()))
}

/// Contraction of the last factor against `D`, taking a matrix on `n+1`
/// factors to one on the `n` factors of `ctx`. Unnormalized.
pub fn partial_qtrace(ctx: &RepContext, mat: &SparseMat) -> Result<SparseMat> {
    let big = ctx.with_n(ctx.n + 1);
    check_dim(&big, mat)?;
    let w: Vec<RatFunc> = rep::weights(ctx).into_iter().map(RatFunc::from_laurent).collect();
    let nb = ctx.big_n;
    let entries = mat
        .entries()
        .filter(|(r, c, _)| r % nb == c % nb)
        .map(|(r, c, v)| (r / nb, c / nb, &v * &w[r % nb]));
    Ok(SparseMat::from_entries(ctx.dim(), entries).reduced())
}

/// `φ(mat) = Tr_q(mat) / [N]^n`.
pub fn markov_phi_of(ctx: &RepContext, mat: &SparseMat) -> Result<RatFunc> {
    let norm = rep::qdim_v(ctx).pow(ctx.n as i32)?;
    qtrace(ctx, mat)?.checked_div(&norm)
}

/// `φ(expr)`.
pub fn markov_phi(ctx: &RepContext, expr: &AlgebraExpr) -> Result<RatFunc> {
    markov_phi_of(ctx, &evaluate_expr(ctx, expr)?)
}

/// The scalars `a`, `c` with `e₍₂₎u₁e₍₂₎ = a·e₍₂₎` and
/// `(e - e₍₂₎)u₁(e - e₍₂₎) = c·(e - e₍₂₎)`.
pub fn block_coefficients(ctx: &RepContext) -> Result<(RatFunc, RatFunc)> {
    if ctx.n != 2 {
        return Err(crate::error::invalid("block coefficients need n = 2"));
    }
    let e = build_e_r(ctx, 1)?;
    let e2 = build_e_r(ctx, 2)?;
    let u = build_u(ctx, 1)?;
    let a = e2
        .mul(&u)?
        .mul(&e2)?
        .proportionality(&e2)
        .ok_or_else(|| Error::NotProportional("e(2)*u1*e(2) is not a multiple of e(2)".into()))?;
    let f = e.sub(&e2)?;
    let c = f
        .mul(&u)?
        .mul(&f)?
        .proportionality(&f)
        .ok_or_else(|| Error::NotProportional("(e-e(2))*u1*(e-e(2)) is not a multiple of e-e(2)".into()))?;
    Ok((a, c))
}

/// Closed forms of `(a, c)`: `c = β` and `a = β + 1` (plus), `a = β - 1` (minus).
pub fn block_coefficients_closed_form(ctx: &RepContext) -> (RatFunc, RatFunc) {
    let b = rep::beta(&ctx.with_n(2));
    let one = RatFunc::one();
    let a = match ctx.variant {
        Variant::Plus => &b + &one,
        Variant::Minus => &b - &one,
    };
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_scalar, GaussianRational};

    fn ctx(big_n: usize, n: usize, v: Variant) -> RepContext {
        RepContext::new(big_n, n, v).unwrap()
    }

    #[test]
    fn weight_matrix_n3() {
        let d = weight_matrix(3).unwrap();
        assert_eq!(d.get(0, 0), RatFunc::s_pow(-4));
        assert!(d.get(1, 1).is_one());
        assert_eq!(d.get(2, 2), RatFunc::s_pow(4));
        assert_eq!(d.trace(), parse_scalar("q^2+1+q^-2").unwrap());
    }

    #[test]
    fn qtrace_identity_and_e() {
        let c = ctx(3, 2, Variant::Plus);
        let n3 = rep::qdim_v(&c);
        assert_eq!(qtrace(&c, &SparseMat::identity(9)).unwrap(), n3.pow(2).unwrap());
        assert_eq!(qtrace(&c, &build_e_r(&c, 1).unwrap()).unwrap(), n3);
    }

    #[test]
    fn qtrace_u1_at_q4() {
        let c = ctx(3, 2, Variant::Plus);
        let v = qtrace(&c, &build_u(&c, 1).unwrap()).unwrap();
        // [2]/[3]·[3]² = [2][3], at s = 2
        let expect = parse_scalar("[2]*[3]").unwrap();
        assert_eq!(v, expect);
        let at = v.evaluate(&GaussianRational::from_int(2)).unwrap();
        assert_eq!(at, expect.evaluate(&GaussianRational::from_int(2)).unwrap());
    }

    #[test]
    fn partial_trace_of_identity_and_u() {
        let c = ctx(3, 1, Variant::Minus);
        let id = partial_qtrace(&c, &SparseMat::identity(9)).unwrap();
        assert_eq!(id.as_scalar().unwrap(), rep::qdim_v(&c));
        let u = build_u(&c.with_n(2), 1).unwrap();
        let pu = partial_qtrace(&c, &u).unwrap();
        assert!(pu.as_scalar().is_some());
        assert_eq!(qtrace(&c, &pu).unwrap(), qtrace(&c.with_n(2), &u).unwrap());
    }

    #[test]
    fn phi_values() {
        let c = ctx(5, 2, Variant::Plus);
        let phi = |t: &str| markov_phi(&c, &AlgebraExpr::parse(t, 2, Variant::Plus).unwrap()).unwrap();
        assert!(phi("1").is_one());
        assert_eq!(phi("u1"), parse_scalar("[4]/[5]").unwrap());
        assert_eq!(phi("g1"), parse_scalar("q^5/[5]").unwrap());
        assert_eq!(phi("e(2)"), parse_scalar("[5]^-2").unwrap());
    }

    #[test]
    fn coefficients_n3_at_q2() {
        let c = ctx(3, 2, Variant::Plus);
        let (a, cc) = block_coefficients(&c).unwrap();
        assert_eq!((a.clone(), cc.clone()), block_coefficients_closed_form(&c));
        assert!((&a - &cc).is_one());
        let q2 = |f: &RatFunc| f.evaluate_q(&GaussianRational::from_int(2)).unwrap();
        assert_eq!(q2(&cc), GaussianRational::from_ratio(2, 7));
        assert_eq!(q2(&a), GaussianRational::from_ratio(9, 7));
    }

    #[test]
    fn minus_coefficients() {
        for n in [3, 5] {
            let c = ctx(n, 2, Variant::Minus);
            assert_eq!(block_coefficients(&c).unwrap(), block_coefficients_closed_form(&c));
        }
    }
}
