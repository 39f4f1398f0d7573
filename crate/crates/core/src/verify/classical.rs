use num_traits::{One, Zero};
use serde_json::json;

use super::linalg::{rank, Echelon};
use super::report::{Claim, SuiteReport};
use crate::combin::end_dim;
use crate::error::{Error, Result};
use crate::exact::{GaussianRational as G, Rationals};
use crate::rep::{
    build_e_r, build_scaled, build_skew_a, build_u, build_u12_u21_p, v0_vector, PointMatrix, RepContext, Side, SparseMat,
};
use crate::weave::Variant;

fn at_one(m: &SparseMat) -> Result<PointMatrix> {
    m.specialize(&G::one())
}

fn dense(m: &PointMatrix) -> Vec<G> {
    let mut v = vec![G::zero(); m.dim * m.dim];
    for (i, x) in m.flatten() {
        v[i] = x;
    }
    v
}

/// Dimension of the algebra generated by `gens`, by repeated left multiplication
/// starting from the identity. Returns the rank and the number of rounds.
pub fn closure_rank(gens: &[PointMatrix], dim: usize) -> (usize, usize) {
    let mut ech = Echelon::new(&Rationals);
    let id = PointMatrix::identity(dim);
    ech.insert(dense(&id));
    let mut frontier = vec![id];
    let mut rounds = 0;
    while !frontier.is_empty() {
        rounds += 1;
        let mut next = Vec::new();
        for m in &frontier {
            for g in gens {
                let p = g.mul(m);
                if ech.insert(dense(&p)) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    (ech.rank(), rounds)
}

/// Specialization of the minus variant at `s = 1`.
pub fn classical_limit_suite(big_n: usize, n: usize) -> Result<SuiteReport> {
    let ctx = RepContext::new(big_n, n, Variant::Minus)?;
    let mut rep = SuiteReport::new("classical", json!({"N": big_n, "n": n, "variant": "minus", "s": "1"}));
    let mut gens = Vec::new();
    let mut poles = None;
    for i in 1..n {
        gens.push(at_one(&build_u(&ctx, i)?)?);
    }
    for r in 1..=n {
        gens.push(at_one(&build_e_r(&ctx, r)?)?);
    }
    for r in 2..=n {
        for i in 1..r {
            for side in [Side::Left, Side::Right] {
                match at_one(&build_scaled(&ctx, side, i, r)?) {
                    Ok(m) => gens.push(m),
                    Err(Error::PoleInEntry { row, col }) if poles.is_none() => {
                        poles = Some(format!("z({i}, {r}) {side:?}: pole in entry ({row}, {col})"));
                    }
                    Err(Error::PoleInEntry { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    rep.push(Claim::from_witness("pole-free", "scaled generators specialize at s = 1", poles));

    if n >= 2 {
        let (u12, u21, _) = build_u12_u21_p(&ctx)?;
        let lhs = at_one(&u12.mul(&u21)?)?;
        let e2 = at_one(&build_e_r(&ctx, 2)?)?;
        let c = G::from_int(big_n as i64 - 1);
        let rhs = PointMatrix {
            dim: e2.dim,
            rows: e2.rows.iter().map(|row| row.iter().map(|(j, v)| (*j, v * &c)).collect()).collect(),
        };
        let w = (lhs != rhs).then(|| {
            let (a, b) = (dense(&lhs), dense(&rhs));
            let i = (0..a.len()).find(|&i| a[i] != b[i]).unwrap_or(0);
            format!("entry ({}, {}): lhs = {}, rhs = {}", i / e2.dim, i % e2.dim, a[i], b[i])
        });
        rep.push(Claim::from_witness("two-by-two-block", "u12 u21 = (N - 1) e(2) at s = 1", w).with_detail(format!("eigenvalue {}", big_n - 1)));
    }

    let (got, rounds) = closure_rank(&gens, ctx.dim());
    let want = end_dim(n, big_n)? as usize;
    let mut claim = if got == want {
        Claim::pass("closure-rank", "closure at s = 1 is End_Sp(V^n)")
    } else {
        Claim::fail("closure-rank", "closure at s = 1 is End_Sp(V^n)", format!("rank {got}, expected {want}"))
    };
    claim = claim.with_detail(format!("rank {got}, rounds {rounds}"));
    rep.push(claim);
    rep.push(Claim::from_witness(
        "closure-rounds",
        "closure stabilizes within 1 + end_dim rounds",
        (rounds > want + 1).then(|| format!("{rounds} rounds")),
    ));

    let a = build_skew_a(big_n);
    let av = a.mul_vec(&v0_vector(big_n))?;
    let w = av.iter().position(|x| !x.is_zero()).map(|i| format!("(A v0)_{i} = {}", av[i]));
    rep.push(Claim::from_witness("skew-kernel", "A v0 = 0", w));
    let a1 = at_one(&a)?;
    let r = rank(&Rationals, a1.rows.iter().map(|row| {
        let mut v = vec![G::zero(); big_n];
        for (j, x) in row {
            v[*j] = x.clone();
        }
        v
    }));
    rep.push(Claim::from_witness(
        "skew-rank",
        "rank A = N - 1 at q = 1",
        (r != big_n - 1).then(|| format!("rank {r}, expected {}", big_n - 1)),
    ));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_closures() {
        let r = classical_limit_suite(3, 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.claim("closure-rank").unwrap().detail.as_deref().unwrap().split(',').next(), Some("rank 9"));
        assert!(classical_limit_suite(5, 2).unwrap().passed());
    }

    #[test]
    fn hecke_alone_is_smaller() {
        let ctx = RepContext::new(5, 2, Variant::Minus).unwrap();
        let u = at_one(&build_u(&ctx, 1).unwrap()).unwrap();
        assert_eq!(closure_rank(&[u], ctx.dim()).0, 2);
    }
}
