use serde_json::json;

use super::relations::matrix_witness;
use super::report::{Claim, SuiteReport};
use crate::error::{Error, Result};
use crate::rep::{build_e_r, build_u, embed, RepContext, SparseMat};

/// `x ↦ e_(r) (1^{⊗r} ⊗ x) e_(r)` sends `e_(m) ↦ e_(r+m)` and `u_i ↦ e_(r) u_{r+i}`.
pub fn compression_suite(ctx: &RepContext, r: usize) -> Result<SuiteReport> {
    if r == 0 || r >= ctx.n {
        return Err(Error::IndexOutOfRange(format!("compression needs 1 <= r < n = {}", ctx.n)));
    }
    let small = ctx.with_n(ctx.n - r);
    let er = build_e_r(ctx, r)?;
    let shift = |x: &SparseMat| embed(ctx.big_n, x, r, 0);
    let compress = |x: &SparseMat| -> Result<SparseMat> { Ok(er.mul(&shift(x))?.mul(&er)?.reduced()) };
    let mut rep = SuiteReport::new(
        "compression",
        json!({"N": ctx.big_n, "n": ctx.n, "r": r, "variant": ctx.variant.to_string()}),
    );

    let mut gens = Vec::new();
    for m in 1..=small.n {
        gens.push((format!("e({m})"), build_e_r(&small, m)?, build_e_r(ctx, r + m)?));
    }
    for i in 1..small.n {
        gens.push((format!("u{i}"), build_u(&small, i)?, er.mul(&build_u(ctx, r + i)?)?.reduced()));
    }

    for (name, x, image) in &gens {
        rep.push(Claim::from_witness(
            format!("image-{name}"),
            "e(r) C_n e(r) is the image of C_{n-r}",
            matrix_witness(&compress(x)?, image),
        ));
    }

    let mut w = None;
    'outer: for (a, x, ix) in &gens {
        for (b, y, iy) in &gens {
            let lhs = compress(&x.mul(y)?)?;
            let rhs = ix.mul(iy)?.reduced();
            if let Some(d) = matrix_witness(&lhs, &rhs) {
                w = Some(format!("{a} * {b}: {d}"));
                break 'outer;
            }
        }
    }
    rep.push(Claim::from_witness("multiplicative", "compression is multiplicative on generator pairs", w));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weave::Variant;

    #[test]
    fn small_cases_pass() {
        for (big_n, v) in [(5, Variant::Plus), (3, Variant::Minus)] {
            let ctx = RepContext::new(big_n, 3, v).unwrap();
            let r = compression_suite(&ctx, 1).unwrap();
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn range() {
        let ctx = RepContext::new(3, 2, Variant::Plus).unwrap();
        assert!(compression_suite(&ctx, 2).is_err());
    }
}
