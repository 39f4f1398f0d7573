//! Matrices of the generators on `V^{⊗n}`.

use num_traits::One;

use super::context::RepContext;
use super::local::{c21, e_factor, local_e, local_u, scale_divisor};
use super::sparse::SparseMat;
use crate::error::{Error, Result};
use crate::exact::{GaussianRational, RatFunc};

/// Which side the scaled generator multiplies `U_i` on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `1^{⊗before} ⊗ m ⊗ 1^{⊗after}`.
pub fn embed(big_n: usize, m: &SparseMat, before: usize, after: usize) -> SparseMat {
    let mut out = m.clone();
    if before > 0 {
        out = SparseMat::identity(big_n.pow(before as u32)).kron(&out);
    }
    if after > 0 {
        out = out.kron(&SparseMat::identity(big_n.pow(after as u32)));
    }
    out
}

/// `U_i`, acting on factors `i` and `i+1`.
pub fn build_u(ctx: &RepContext, i: usize) -> Result<SparseMat> {
    if i < 1 || i >= ctx.n {
        return Err(Error::IndexOutOfRange(format!("U_{i} needs 1 <= i < n = {}", ctx.n)));
    }
    Ok(embed(ctx.big_n, &local_u(ctx), i - 1, ctx.n - i - 1))
}

/// `g_i = q·1 - U_i`.
pub fn build_g(ctx: &RepContext, i: usize) -> Result<SparseMat> {
    SparseMat::scalar(ctx.dim(), &RatFunc::q_pow(1)).sub(&build_u(ctx, i)?)
}

/// `E^{⊗r} ⊗ 1^{⊗(n-r)}`.
pub fn build_e_r(ctx: &RepContext, r: usize) -> Result<SparseMat> {
    if r > ctx.n {
        return Err(Error::IndexOutOfRange(format!("e_({r}) needs r <= n = {}", ctx.n)));
    }
    if r == 0 {
        return Ok(SparseMat::identity(ctx.dim()));
    }
    let e = local_e(ctx);
    let mut out = e.clone();
    for _ in 1..r {
        out = out.kron(&e);
    }
    Ok(embed(ctx.big_n, &out, 0, ctx.n - r))
}

/// `U_i E^{⊗r} / d` (left) or `E^{⊗r} U_i / d` (right), with `d = s ± s^-1`.
pub fn build_scaled(ctx: &RepContext, side: Side, i: usize, r: usize) -> Result<SparseMat> {
    if i < 1 || i >= r || r > ctx.n {
        return Err(Error::IndexOutOfRange(format!(
            "scaled generator ({i}, {r}) needs 1 <= i < r <= n = {}",
            ctx.n
        )));
    }
    let u = build_u(ctx, i)?;
    let e = build_e_r(ctx, r)?;
    let prod = match side {
        Side::Left => u.mul(&e)?,
        Side::Right => e.mul(&u)?,
    };
    Ok(prod.scale(&scale_divisor(ctx.variant).inv()?).reduced())
}

/// `(u₁₂, u₂₁, P)` with `u₂₁ = c₂₁(1 - e_(2))U₁e_(2)`,
/// `u₁₂ = c₂₁ e_(2)U₁(1 - e_(2))` and `P = e_(2) + u₁₂ + u₂₁ + u₂₁u₁₂`.
pub fn build_u12_u21_p(ctx: &RepContext) -> Result<(SparseMat, SparseMat, SparseMat)> {
    if ctx.n < 2 {
        return Err(Error::IndexOutOfRange("u12, u21 need n >= 2".into()));
    }
    let e2 = build_e_r(ctx, 2)?;
    let u1 = build_u(ctx, 1)?;
    let comp = SparseMat::identity(ctx.dim()).sub(&e2)?;
    let c = c21(ctx);
    let u21 = comp.mul(&u1)?.mul(&e2)?.scale(&c).reduced();
    let u12 = e2.mul(&u1)?.mul(&comp)?.scale(&c).reduced();
    let p = e2.add(&u12)?.add(&u21)?.add(&u21.mul(&u12)?)?.reduced();
    Ok((u12, u21, p))
}

/// The skew form `A` on `V`: `a_ij = (i s^-1)^{2k+2-i-j}` for `i < j`,
/// `a_ji = -a_ij`, zero diagonal.
pub fn build_skew_a(big_n: usize) -> SparseMat {
    let k = ((big_n - 1) / 2) as i64;
    let mut entries = Vec::new();
    for a in 1..=big_n as i64 {
        for b in a + 1..=big_n as i64 {
            let e = 2 * k + 2 - a - b;
            let v = RatFunc::s_pow(-e as i32).scale(&GaussianRational::i_pow(e));
            entries.push(((a - 1) as usize, (b - 1) as usize, v.clone()));
            entries.push(((b - 1) as usize, (a - 1) as usize, -v));
        }
    }
    SparseMat::from_entries(big_n, entries)
}

/// Kernel vector `v₀ = Σ_j (is)^{k+1-j} v_j` of the skew form.
pub fn v0_vector(big_n: usize) -> Vec<RatFunc> {
    let k = ((big_n - 1) / 2) as i64;
    (1..=big_n as i64)
        .map(|j| {
            let e = k + 1 - j;
            RatFunc::s_pow(e as i32).scale(&GaussianRational::i_pow(e))
        })
        .collect()
}

/// `x^{⊗r}`, the vector with `E^{⊗r} = x^{⊗r} (x^{⊗r})ᵀ / ν^r`.
pub fn e_vector_power(ctx: &RepContext, r: usize) -> Vec<RatFunc> {
    let (x, _) = e_factor(ctx);
    let mut out = vec![RatFunc::one()];
    for _ in 0..r {
        out = out.iter().flat_map(|a| x.iter().map(move |b| a * b)).collect();
    }
    out
}

/// Permutation of basis indices realizing the reversal `w₀` of tensor factors.
pub fn reversal_permutation(ctx: &RepContext) -> Vec<usize> {
    (0..ctx.dim())
        .map(|i| {
            let mut d = ctx.digits(i);
            d.reverse();
            ctx.index(&d)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weave::Variant;
    use num_traits::Zero;

    fn ctx(big_n: usize, n: usize, v: Variant) -> RepContext {
        RepContext::new(big_n, n, v).unwrap()
    }

    #[test]
    fn hecke_quadratic() {
        for v in [Variant::Plus, Variant::Minus] {
            let c = ctx(3, 2, v);
            let u = build_u(&c, 1).unwrap();
            let lhs = u.mul(&u).unwrap();
            let rhs = u.scale(&crate::exact::parse_scalar("q+q^-1").unwrap());
            assert!(lhs.equals(&rhs), "{v}");
        }
    }

    #[test]
    fn e_idempotent() {
        let c = ctx(3, 2, Variant::Minus);
        let e = build_e_r(&c, 2).unwrap();
        assert!(e.mul(&e).unwrap().equals(&e));
        assert!(e.is_symmetric());
    }

    #[test]
    fn index_errors() {
        let c = ctx(3, 2, Variant::Plus);
        assert!(build_u(&c, 2).is_err());
        assert!(build_e_r(&c, 3).is_err());
        assert!(build_scaled(&c, Side::Left, 2, 2).is_err());
    }

    #[test]
    fn skew_kernel() {
        for n in [3, 5, 7] {
            let a = build_skew_a(n);
            assert!(a.transpose().equals(&a.neg()));
            let v = a.mul_vec(&v0_vector(n)).unwrap();
            assert!(v.iter().all(RatFunc::is_zero), "N = {n}");
        }
    }

    #[test]
    fn scaled_minus_is_pole_free_at_one() {
        let c = ctx(3, 2, Variant::Minus);
        for side in [Side::Left, Side::Right] {
            let z = build_scaled(&c, side, 1, 2).unwrap();
            assert!(z.specialize(&GaussianRational::one()).is_ok());
        }
        let l = build_scaled(&c, Side::Left, 1, 2).unwrap();
        let r = build_scaled(&c, Side::Right, 1, 2).unwrap();
        assert!(l.transpose().equals(&r));
        assert!(!l.is_zero());
    }
}
