use num_traits::{One, Zero};
use serde_json::json;

use super::report::{Claim, SuiteReport};
use crate::error::Result;
use crate::exact::{parse_scalar, HalfLaurent, RatFunc};
use crate::rep::{
    beta, build_e_r, e_factor, build_g, build_scaled, build_u, build_u12_u21_p, e_vector_power, qdim_v, reversal_permutation,
    Fault, RepContext, Side, SparseMat,
};
use crate::weave::Variant;

/// Witness text for two matrices that should agree.
pub(crate) fn matrix_witness(lhs: &SparseMat, rhs: &SparseMat) -> Option<String> {
    lhs.first_difference(rhs).map(|(r, c, a, b)| {
        if r == usize::MAX {
            format!("dimension {} vs {}", lhs.dim(), rhs.dim())
        } else {
            format!("entry ({r}, {c}): lhs = {a}, rhs = {b}")
        }
    })
}

pub(crate) fn scalar_witness(lhs: &RatFunc, rhs: &RatFunc) -> Option<String> {
    (lhs != rhs).then(|| format!("lhs = {lhs}, rhs = {rhs}"))
}

fn first_witness(items: impl IntoIterator<Item = (String, Option<String>)>) -> Option<String> {
    items.into_iter().find_map(|(label, w)| w.map(|w| format!("{label}: {w}")))
}

/// Largest number of stored entries for which `E^(r)` is squared directly.
const DIRECT_SQUARE_LIMIT: usize = 20_000;

/// Idempotence of `E^(r)` through its factorization: `E^(r) = v vᵀ / ν^r ⊗ 1`
/// with `vᵀv = ν^r`.
fn rank_one_witness(ctx: &RepContext, r: usize, m: &SparseMat) -> Result<Option<String>> {
    let (_, nu) = e_factor(ctx);
    let v = e_vector_power(ctx, r);
    let norm = v.iter().fold(RatFunc::zero(), |acc, x| &acc + &(x * x));
    if let Some(w) = scalar_witness(&norm, &nu.pow(r as i32)?) {
        return Ok(Some(format!("v^T v = nu^r: {w}")));
    }
    // numerators of v are monomials, so v vᵀ has Laurent entries
    let nums: Vec<HalfLaurent> = v.iter().map(|x| x.as_laurent().cloned().expect("monomial entries")).collect();
    let tail = ctx.big_n.pow((ctx.n - r) as u32);
    let mut rows = Vec::with_capacity(ctx.dim());
    for a in &nums {
        for t in 0..tail {
            rows.push(nums.iter().enumerate().map(|(b, x)| (b * tail + t, a * x)).collect());
        }
    }
    let outer = SparseMat::from_numerators(ctx.dim(), rows, nu.pow(r as i32)?.num().clone())?;
    let nu_r = nu.pow(r as i32)?;
    let outer = if nu_r.den().is_one() { outer } else { outer.scale(&RatFunc::from_laurent(nu_r.den().clone())) };
    Ok(matrix_witness(m, &outer).map(|w| format!("E^(r) = v v^T / nu^r: {w}")))
}

/// The constant used for relation (b), doubled under the `Beta` fault.
fn beta_for(ctx: &RepContext) -> RatFunc {
    let b = beta(ctx);
    if ctx.has_fault(Fault::Beta) {
        &b + &b
    } else {
        b
    }
}

/// Matrix identities of the algebra in the representation.
pub fn relations_suite(ctx: &RepContext) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(
        "relations",
        json!({"N": ctx.big_n, "n": ctx.n, "variant": ctx.variant, "fault": ctx.fault}),
    );
    let n = ctx.n;
    let us: Vec<SparseMat> = (1..n).map(|i| build_u(ctx, i)).collect::<Result<_>>()?;
    let es: Vec<SparseMat> = (0..=n).map(|r| build_e_r(ctx, r)).collect::<Result<_>>()?;
    let u = |i: usize| &us[i - 1];
    let qq = parse_scalar("q+q^-1")?;

    let mut items = Vec::new();
    for i in 1..n {
        items.push((format!("U_{i}^2"), matrix_witness(&u(i).mul(u(i))?, &u(i).scale(&qq))));
    }
    rep.push(Claim::from_witness("hecke-quadratic", "U_i^2 = (q+q^-1)U_i", first_witness(items)));

    let mut items = Vec::new();
    for i in 1..n {
        for j in i + 2..n {
            items.push((format!("U_{i}U_{j}"), matrix_witness(&u(i).mul(u(j))?, &u(j).mul(u(i))?)));
        }
    }
    rep.push(Claim::from_witness("hecke-commute", "U_iU_j = U_jU_i for |i-j| >= 2", first_witness(items)));

    let mut items = Vec::new();
    for i in 1..n.saturating_sub(1) {
        let lhs = u(i).mul(u(i + 1))?.mul(u(i))?.sub(u(i))?;
        let rhs = u(i + 1).mul(u(i))?.mul(u(i + 1))?.sub(u(i + 1))?;
        items.push((format!("i = {i}"), matrix_witness(&lhs, &rhs)));
    }
    rep.push(Claim::from_witness("hecke-braid", "U_iU_{i+1}U_i - U_i = U_{i+1}U_iU_{i+1} - U_{i+1}", first_witness(items)));

    let mut items = Vec::new();
    for (i, m) in us.iter().enumerate() {
        items.push((format!("U_{}", i + 1), matrix_witness(&m.transpose(), m)));
    }
    for (r, m) in es.iter().enumerate().skip(1) {
        items.push((format!("E_{r} symmetric"), matrix_witness(&m.transpose(), m)));
        let w = if m.nnz() <= DIRECT_SQUARE_LIMIT { matrix_witness(&m.mul(m)?, m) } else { rank_one_witness(ctx, r, m)? };
        items.push((format!("E_{r} idempotent"), w));
    }
    rep.push(Claim::from_witness("symmetric-idempotent", "U_i, E^(r) symmetric; E^(r) idempotent", first_witness(items)));

    let b = beta_for(ctx);
    let mut items = Vec::new();
    for r in 1..n {
        let eue = es[r].mul(u(r))?.mul(&es[r])?;
        let be = es[r].scale(&b);
        let rhs = match ctx.variant {
            Variant::Plus => eue.sub(&be)?,
            Variant::Minus => be.sub(&eue)?,
        };
        items.push((format!("r = {r}"), matrix_witness(&es[r + 1], &rhs)));
    }
    let anchor = match ctx.variant {
        Variant::Plus => "e_(r+1) = e_(r)u_re_(r) - beta e_(r)",
        Variant::Minus => "e_(r+1) = beta e_(r) - e_(r)u_re_(r)",
    };
    rep.push(Claim::from_witness("relation-b", anchor, first_witness(items)).with_detail(format!("beta = {b}")));

    // plus: (U_{j-1}U_j - U_{j-1})E = (U_jU_{j-1} - U_j)E; minus: with +
    let sign = match ctx.variant {
        Variant::Plus => RatFunc::one(),
        Variant::Minus => -RatFunc::one(),
    };
    let mut items = Vec::new();
    for r in 3..=n {
        for j in 2..r {
            let lhs = u(j - 1).mul(u(j))?.sub(&u(j - 1).scale(&sign))?.mul(&es[r])?;
            let rhs = u(j).mul(u(j - 1))?.sub(&u(j).scale(&sign))?.mul(&es[r])?;
            items.push((format!("r = {r}, j = {j}"), matrix_witness(&lhs, &rhs)));
        }
    }
    if n >= 3 {
        let x = e_vector_power(&ctx.with_n(3), 3);
        let c3 = ctx.with_n(3);
        let (u1, u2) = (build_u(&c3, 1)?, build_u(&c3, 2)?);
        let lhs = u1.mul(&u2)?.sub(&u1.scale(&sign))?.mul_vec(&x)?;
        let rhs = u2.mul(&u1)?.sub(&u2.scale(&sign))?.mul_vec(&x)?;
        let w = lhs.iter().zip(&rhs).enumerate().find(|(_, (a, b))| a != b).map(|(k, (a, b))| format!("coordinate {k}: {a} vs {b}"));
        items.push(("vector x^(3)".into(), w));
    }
    rep.push(Claim::from_witness("relation-c", "(u_{j-1}u_j -+ u_{j-1})e_(r) = (u_ju_{j-1} -+ u_j)e_(r)", first_witness(items)));

    if n >= 3 {
        let g1 = build_g(ctx, 1)?;
        let g2 = build_g(ctx, 2)?;
        let e3 = &es[3];
        let (lhs, rhs) = match ctx.variant {
            Variant::Plus => (g1.mul(&g2)?.add(&g1)?, g2.mul(&g1)?.add(&g2)?),
            Variant::Minus => (g1.mul(&g2)?.sub(&g1)?, g2.mul(&g1)?.sub(&g2)?),
        };
        let anchor = match ctx.variant {
            Variant::Plus => "(g1g2 + g1)e_(3) = (g2g1 + g2)e_(3)",
            Variant::Minus => "(g1g2 - g1)e_(3) = (g2g1 - g2)e_(3)",
        };
        rep.push(Claim::from_witness("corollary-e3", anchor, matrix_witness(&lhs.mul(e3)?, &rhs.mul(e3)?)));
    }

    if n >= 2 {
        // u12, u21, P and e_(2) act on the first two factors only: X ⊗ 1 = Y ⊗ 1 iff X = Y.
        let c2 = ctx.with_n(2);
        let (u12, u21, p) = build_u12_u21_p(&c2)?;
        let e2 = &build_e_r(&c2, 2)?;
        let zero = SparseMat::zero(c2.dim());
        let nm1 = &qdim_v(ctx) - &RatFunc::one();
        rep.push(Claim::from_witness(
            "u12-u21",
            "u12u21 = ([N]-1)e_(2)",
            matrix_witness(&u12.mul(&u21)?, &e2.scale(&nm1)),
        ));
        let w = u21.mul(&u12)?;
        let items = vec![
            ("u21u12e_(2)".to_string(), matrix_witness(&w.mul(e2)?, &zero)),
            ("e_(2)u21u12".to_string(), matrix_witness(&e2.mul(&w)?, &zero)),
        ];
        rep.push(Claim::from_witness("u21-u12-orthogonal", "u21u12e_(2) = 0 = e_(2)u21u12", first_witness(items)));
        rep.push(Claim::from_witness(
            "p-squared",
            "P^2 = [N]P",
            matrix_witness(&p.mul(&p)?, &p.scale(&qdim_v(ctx))),
        ));

        let perm = reversal_permutation(ctx);
        let mut items = Vec::new();
        for i in 1..n {
            let lhs = u(i).permute(&perm);
            let rhs = u(n - i).invert_variable();
            items.push((format!("i = {i}"), matrix_witness(&lhs, &rhs)));
        }
        rep.push(Claim::from_witness("w0-reversal", "w0 U_i w0 = U_{n-i}(s -> 1/s)", first_witness(items)));

        let mut items = Vec::new();
        for r in 2..=n {
            for i in 1..r {
                let l = build_scaled(ctx, Side::Left, i, r)?;
                let rt = build_scaled(ctx, Side::Right, i, r)?;
                items.push((format!("zL({i},{r})^T"), matrix_witness(&l.transpose(), &rt)));
            }
        }
        rep.push(Claim::from_witness("scaled-transpose", "zL(i,r)^T = zR(i,r)", first_witness(items)));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases_pass() {
        for v in [Variant::Plus, Variant::Minus] {
            let ctx = RepContext::new(3, 3, v).unwrap();
            let r = relations_suite(&ctx).unwrap();
            assert!(r.passed(), "{v}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn beta_fault_is_caught() {
        let ctx = RepContext::new(3, 2, Variant::Plus).unwrap().with_fault(Fault::Beta);
        let r = relations_suite(&ctx).unwrap();
        let c = r.claim("relation-b").unwrap();
        assert!(!c.passed);
        assert!(c.witness.as_ref().unwrap().contains("entry ("));
    }

    #[test]
    fn u_entry_fault_is_caught() {
        let ctx = RepContext::new(3, 2, Variant::Minus).unwrap().with_fault(Fault::UEntry);
        let r = relations_suite(&ctx).unwrap();
        assert!(!r.claim("hecke-quadratic").unwrap().passed);
    }
}
