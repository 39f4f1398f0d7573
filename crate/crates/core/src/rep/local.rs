//! Single-site and two-site building blocks of the representation.

use num_traits::One;

use super::context::{Fault, RepContext};
use super::sparse::SparseMat;
use crate::exact::{bracket_pm, q_int, GaussianRational, HalfLaurent, RatFunc};
use crate::weave::Variant;

/// `U` on `V⊗V` for the plus variant: on `(v_i⊗v_j, v_j⊗v_i)` with `i < j`
/// the block `[[q^-1, 1], [1, q]]`, and `U(v_i⊗v_i) = 0`.
pub fn local_u_plus(big_n: usize) -> SparseMat {
    let idx = |a: usize, b: usize| a * big_n + b;
    let mut entries = Vec::new();
    for a in 0..big_n {
        for b in a + 1..big_n {
            entries.push((idx(a, b), idx(a, b), RatFunc::q_pow(-1)));
            entries.push((idx(a, b), idx(b, a), RatFunc::one()));
            entries.push((idx(b, a), idx(a, b), RatFunc::one()));
            entries.push((idx(b, a), idx(b, a), RatFunc::q_pow(1)));
        }
    }
    SparseMat::from_entries(big_n * big_n, entries)
}

/// `U` for the context's variant; the minus variant is `-(U₊ with s ↦ is)`.
pub fn local_u(ctx: &RepContext) -> SparseMat {
    let plus = local_u_plus(ctx.big_n);
    let u = match ctx.variant {
        Variant::Plus => plus,
        Variant::Minus => plus.substitute_unit(1).neg(),
    };
    if ctx.has_fault(Fault::UEntry) {
        let n = ctx.big_n;
        let bump = u.get(1, 1);
        let extra = SparseMat::from_entries(n * n, [(1, 1, bump)]);
        return u.add(&extra).expect("same dimension");
    }
    u
}

/// The vector `x` and normalizer `ν` with `E = x xᵀ / ν`.
///
/// Plus: `x_j = s^{k+1-j}`, `ν = [N]₊`. Minus: the same with `s ↦ is`.
pub fn e_factor(ctx: &RepContext) -> (Vec<RatFunc>, RatFunc) {
    let k = ctx.k() as i32;
    let x: Vec<RatFunc> = (1..=ctx.big_n as i32).map(|j| RatFunc::s_pow(k + 1 - j)).collect();
    let nu = RatFunc::from_laurent(bracket_pm(ctx.big_n as i64, false));
    match ctx.variant {
        Variant::Plus => (x, nu),
        Variant::Minus => (x.iter().map(|v| v.substitute_unit(1)).collect(), nu.substitute_unit(1)),
    }
}

/// The rank-one idempotent `E` on `V`.
pub fn local_e(ctx: &RepContext) -> SparseMat {
    let (x, nu) = e_factor(ctx);
    let inv = nu.inv().expect("[N] is nonzero");
    let mut entries = Vec::new();
    for (a, xa) in x.iter().enumerate() {
        for (b, xb) in x.iter().enumerate() {
            entries.push((a, b, &(xa * xb) * &inv));
        }
    }
    SparseMat::from_entries(ctx.big_n, entries)
}

/// Diagonal weights of `D = diag(q^{2i-N-1})` as Laurent polynomials in `s`.
pub fn weights(ctx: &RepContext) -> Vec<HalfLaurent> {
    let n = ctx.big_n as i32;
    let mut w: Vec<HalfLaurent> = (1..=n).map(|i| HalfLaurent::s_pow(2 * (2 * i - n - 1))).collect();
    if ctx.has_fault(Fault::DExponent) {
        w[0] = w[0].shift(2);
    }
    w
}

/// The density `D` on one factor.
pub fn weight_matrix(ctx: &RepContext) -> SparseMat {
    SparseMat::diagonal(&weights(ctx).into_iter().map(RatFunc::from_laurent).collect::<Vec<_>>())
}

/// The q-integer `[N] = Tr(D)`.
pub fn qdim_v(ctx: &RepContext) -> RatFunc {
    RatFunc::from_laurent(q_int(ctx.big_n as i64))
}

/// Constant `β` of relation (b): `e_(r+1) = e_(r) u_r e_(r) - β e_(r)` in
/// the plus variant and `e_(r+1) = β e_(r) - e_(r) u_r e_(r)` in the minus one.
///
/// Plus: `(s^{N-2} - s^{2-N}) / (s^N - s^{-N})`;
/// minus: `(s^{N-2} + s^{2-N}) / (s^N + s^{-N})`.
pub fn beta(ctx: &RepContext) -> RatFunc {
    let n = ctx.big_n as i32;
    let sg = match ctx.variant {
        Variant::Plus => -1,
        Variant::Minus => 1,
    };
    RatFunc::normalize(
        HalfLaurent::from_int_terms(&[(n - 2, 1), (2 - n, sg)]),
        HalfLaurent::from_int_terms(&[(n, 1), (-n, sg)]),
    )
    .expect("nonzero denominator")
}

/// Divisor of the scaled generators: `s + s^-1` (plus) or `s - s^-1` (minus).
pub fn scale_divisor(variant: Variant) -> RatFunc {
    let sg = match variant {
        Variant::Plus => 1,
        Variant::Minus => -1,
    };
    RatFunc::from_laurent(HalfLaurent::from_int_terms(&[(1, 1), (-1, sg)]))
}

/// Scalar `c₂₁` in `u₂₁ = c₂₁ (1 - e_(2)) u₁ e_(2)`.
///
/// Minus: `[N]₋ / (-i(s - s^-1))`. Plus: `[N]₊ / (s + s^-1)`, the image of
/// the minus scalar under the variant isomorphism up to sign.
pub fn c21(ctx: &RepContext) -> RatFunc {
    match ctx.variant {
        Variant::Plus => RatFunc::from_laurent(bracket_pm(ctx.big_n as i64, false))
            .checked_div(&scale_divisor(Variant::Plus))
            .unwrap(),
        Variant::Minus => {
            let den = RatFunc::from_laurent(HalfLaurent::from_terms([
                (1, -GaussianRational::i()),
                (-1, GaussianRational::i()),
            ]));
            RatFunc::from_laurent(bracket_pm(ctx.big_n as i64, true)).checked_div(&den).unwrap()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn ctx(n: usize, v: Variant) -> RepContext {
        RepContext::new(n, 2, v).unwrap()
    }

    #[test]
    fn plus_u_first_column() {
        let u = local_u_plus(3);
        // column v1⊗v2 (index 1): q^-1 at v1⊗v2, 1 at v2⊗v1 (index 3)
        assert_eq!(u.get(1, 1), RatFunc::q_pow(-1));
        assert_eq!(u.get(3, 1), RatFunc::one());
        assert!(u.get(0, 0).is_zero());
    }

    #[test]
    fn minus_u_at_one_is_one_minus_flip() {
        let u = local_u(&ctx(3, Variant::Minus));
        let p = u.specialize(&GaussianRational::one()).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let i = a * 3 + b;
                let j = b * 3 + a;
                if a == b {
                    assert!(p.get(i, i).is_zero());
                } else {
                    assert_eq!(p.get(i, i), GaussianRational::one());
                    assert_eq!(p.get(i, j), -GaussianRational::one());
                }
            }
        }
    }

    #[test]
    fn e_entries_and_trace() {
        let e = local_e(&ctx(3, Variant::Plus));
        assert_eq!(e.get(0, 0), crate::exact::parse_scalar("s^2/(s^2+1+s^-2)").unwrap());
        assert!(e.trace().is_one());
        let w = weight_matrix(&ctx(3, Variant::Plus));
        assert!(e.mul(&w).unwrap().trace().is_one());
    }

    #[test]
    fn d_is_fixed_by_i_substitution() {
        let w = weight_matrix(&ctx(5, Variant::Plus));
        assert!(w.substitute_unit(1).equals(&w));
        assert_eq!(w.trace(), qdim_v(&ctx(5, Variant::Plus)));
    }

    #[test]
    fn beta_minus_is_even() {
        for n in [3, 5, 7] {
            assert!(beta(&ctx(n, Variant::Minus)).is_even());
            assert!(beta(&ctx(n, Variant::Plus)).is_even());
        }
    }
}
