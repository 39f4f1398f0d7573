use serde_json::json;

use super::relations::matrix_witness;
use super::report::{Claim, SuiteReport};
use crate::error::Result;
use crate::rep::{beta, build_e_r, build_u, RepContext};
use crate::weave::Variant;

/// `Φ₋(u_i) = -Φ₊(u_i)(s ↦ is)` and `Φ₋(e_(r)) = Φ₊(e_(r))(s ↦ is)`.
///
/// Faults on `ctx` apply to the minus side only.
pub fn variant_iso_suite(ctx: &RepContext) -> Result<SuiteReport> {
    let minus = ctx.with_variant(Variant::Minus);
    let plus = RepContext::new(ctx.big_n, ctx.n, Variant::Plus)?;
    let mut rep = SuiteReport::new("variant-iso", json!({"N": ctx.big_n, "n": ctx.n}));

    let mut w = None;
    for i in 1..ctx.n {
        let lhs = build_u(&minus, i)?;
        let rhs = build_u(&plus, i)?.substitute_unit(1).neg();
        if let Some(x) = matrix_witness(&lhs, &rhs) {
            w = Some(format!("u{i}: {x}"));
            break;
        }
    }
    rep.push(Claim::from_witness("u-substitution", "minus u_i = -(plus u_i at s -> is)", w));

    let mut subst_e = Vec::new();
    let mut w = None;
    for r in 1..=ctx.n {
        let sub = build_e_r(&plus, r)?.substitute_unit(1);
        if w.is_none() {
            w = matrix_witness(&build_e_r(&minus, r)?, &sub).map(|x| format!("e({r}): {x}"));
        }
        subst_e.push(sub);
    }
    rep.push(Claim::from_witness("e-substitution", "minus e(r) = plus e(r) at s -> is", w));

    let b = beta(&minus);
    let mut w = None;
    for r in 1..ctx.n {
        let u = build_u(&plus, r)?.substitute_unit(1).neg();
        let er = &subst_e[r - 1];
        let lhs = er.mul(&u)?.mul(er)?.add(&subst_e[r])?.reduced();
        match lhs.proportionality(er) {
            Some(c) if c == b => {}
            Some(c) => {
                w = Some(format!("r = {r}: e u e + e(r+1) = ({c}) e(r), expected {b}"));
                break;
            }
            None => {
                w = Some(format!("r = {r}: e u e + e(r+1) is not a multiple of e(r)"));
                break;
            }
        }
    }
    rep.push(
        Claim::from_witness("beta-rederived", "e(r+1) = beta e(r) - e(r) u_r e(r) after substitution", w)
            .with_detail(format!("beta = {b}")),
    );

    let flipped = b.substitute_unit(2);
    rep.push(Claim::from_witness(
        "beta-even",
        "beta depends only on q",
        (flipped != b).then(|| format!("beta(-s) = {flipped}, beta(s) = {b}")),
    ));
    Ok(rep)
}
