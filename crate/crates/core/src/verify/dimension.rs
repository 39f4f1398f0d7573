use serde_json::json;

use super::report::{Claim, SuiteReport};
use crate::combin::{
    bratteli, end_dim_formula, end_dim_paths, factorial, falling, hook_dim, involution_number, multiplicity_formula,
    partitions, wb_dim,
};
use crate::error::{Error, Result};

const H_VALUES: [u64; 7] = [1, 1, 2, 4, 10, 26, 76];

fn first<T>(it: impl IntoIterator<Item = Option<T>>) -> Option<T> {
    it.into_iter().flatten().next()
}

/// Combinatorial identities for all `n ≤ n_max`.
pub fn dimension_suite(n_max: usize) -> Result<SuiteReport> {
    if n_max > 8 {
        return Err(Error::Budget(format!("n_max = {n_max} exceeds 8")));
    }
    let mut rep = SuiteReport::new("dimensions", json!({"n_max": n_max}));

    let w = first((0..H_VALUES.len()).map(|r| {
        let h = involution_number(r);
        (h != H_VALUES[r]).then(|| format!("h_{r} = {h}, expected {}", H_VALUES[r]))
    }));
    rep.push(Claim::from_witness("h-values", "h_r = 1, 1, 2, 4, 10, 26, 76", w));
    let w = first((1..12).map(|r| {
        let (lhs, rhs) = (involution_number(r + 1), involution_number(r) + r as u64 * involution_number(r - 1));
        (lhs != rhs).then(|| format!("h_{} = {lhs}, h_{r} + {r} h_{} = {rhs}", r + 1, r - 1))
    }));
    rep.push(Claim::from_witness("h-recursion", "h_{r+1} = h_r + r h_{r-1}", w));

    let w = first((0..=6).flat_map(partitions).map(|lam| {
        let d = hook_dim(&lam);
        let down: u64 = lam.remove_box().iter().map(hook_dim).sum();
        let up: u64 = lam.add_box().iter().map(hook_dim).sum();
        if !lam.is_empty() && down != d {
            Some(format!("{lam}: sum over removed boxes {down} != d = {d}"))
        } else if up != (lam.size() as u64 + 1) * d {
            Some(format!("{lam}: sum over added boxes {up} != (n+1) d = {}", (lam.size() as u64 + 1) * d))
        } else {
            None
        }
    }));
    rep.push(Claim::from_witness("branching", "sum of d over removed and added boxes", w));

    let w = first((0..=n_max).flat_map(|n| (0..=n).map(move |r| (n, r))).map(|(n, r)| {
        let lhs: u64 = partitions(n - r).iter().map(|l| multiplicity_formula(n, l) * hook_dim(l)).sum();
        let rhs = involution_number(r) * falling(n, r);
        (lhs != rhs).then(|| format!("n = {n}, r = {r}: {lhs} != {rhs}"))
    }));
    rep.push(Claim::from_witness("multiplicity-sum", "sum m_{n,lambda} d_lambda = h_r n!/r!", w));

    let mut w = None;
    for n in 1..=n_max.min(6) {
        let g = bratteli(2 * n + 1, n)?;
        let bad = first((0..=n).flat_map(partitions).map(|l| {
            let (f, p) = (multiplicity_formula(n, &l), g.multiplicity(n, &l));
            (f != p).then(|| format!("n = {n}, {l}: formula {f}, paths {p}"))
        }));
        if bad.is_some() {
            w = bad;
            break;
        }
    }
    rep.push(Claim::from_witness("multiplicity-paths", "closed multiplicity formula equals path count", w));

    let mut w = None;
    let mut table = Vec::new();
    for n in 1..=n_max {
        let (f, p) = (end_dim_formula(n), end_dim_paths(n, 2 * n + 3)?);
        table.push(f);
        if f != p && w.is_none() {
            w = Some(format!("n = {n}: formula {f}, paths {p}"));
        }
    }
    rep.push(
        Claim::from_witness("end-dim", "dim C_n equals sum of squared multiplicities", w)
            .with_detail(format!("{table:?}")),
    );

    let w = first((1..=n_max.min(6)).map(|n| {
        let mut total = 0u64;
        for r in 0..=n {
            for lam in partitions(r) {
                for mu in partitions(n - r) {
                    let d = wb_dim(n, r, &lam, &mu).expect("sizes match");
                    total += d * d;
                }
            }
        }
        let order = (1u64 << n) * factorial(n);
        (total != order).then(|| format!("n = {n}: {total} != {order}"))
    }));
    rep.push(Claim::from_witness("hyperoctahedral", "sum of squared W(B_n) dimensions is 2^n n!", w));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passes_to_eight() {
        let r = dimension_suite(8).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.claim("end-dim").unwrap().detail.as_deref().unwrap().starts_with("[2, 10, 76, 764,"));
    }

    #[test]
    fn budget() {
        assert!(dimension_suite(9).is_err());
    }
}
