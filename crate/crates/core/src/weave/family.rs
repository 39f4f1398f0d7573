use std::fmt;

use super::expr::{AlgebraExpr, Expr, Gen, Variant};
use super::perm::{min_coset_reps, CosetKind};
use crate::error::Result;

/// The ladder set `B_r` as words in the `g_j`, lexicographically sorted.
///
/// `B_0 = B_1 = {1}` and
/// `B_{r+1} = B_r ∪ ⋃_{j=1}^{r} g_j g_{j+1} ⋯ g_r B_{r-1}`.
pub fn ladder_set(r: usize) -> Vec<Vec<usize>> {
    let mut prev: Vec<Vec<usize>> = vec![vec![]];
    let mut cur: Vec<Vec<usize>> = vec![vec![]];
    for m in 1..r {
        // cur = B_m, prev = B_{m-1}; build B_{m+1}
        let mut next = cur.clone();
        for j in 1..=m {
            for b in &prev {
                let mut w: Vec<usize> = (j..=m).collect();
                w.extend_from_slice(b);
                next.push(w);
            }
        }
        next.sort();
        next.dedup();
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// One element `h_{w1} b1 · e_(r) · b2ᵀ h_{w2}ᵀ` of the spanning family,
/// stored as the two Hecke words on either side of `e_(r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyElement {
    pub left: Vec<usize>,
    pub r: usize,
    pub right: Vec<usize>,
}

impl FamilyElement {
    pub fn to_expr(&self) -> Expr {
        let mut v: Vec<Expr> = self.left.iter().map(|&j| Expr::Gen(Gen::G(j))).collect();
        if self.r > 0 {
            v.push(Expr::Gen(Gen::E(self.r)));
        }
        v.extend(self.right.iter().map(|&j| Expr::Gen(Gen::G(j))));
        match v.len() {
            0 => Expr::one(),
            1 => v.pop().unwrap(),
            _ => Expr::Product(v),
        }
    }

    pub fn to_algebra(&self, n: usize, variant: Variant) -> Result<AlgebraExpr> {
        AlgebraExpr::new(n, variant, self.to_expr())
    }

    pub fn transpose(&self) -> Self {
        Self {
            left: self.right.iter().rev().copied().collect(),
            r: self.r,
            right: self.left.iter().rev().copied().collect(),
        }
    }
}

impl fmt::Display for FamilyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

/// The family `⋃_r C_{n,r} · B_r · e_(r) · B_rᵀ · D_{n,r}ᵀ`, ordered by `r`
/// and then lexicographically within each block.
pub fn spanning_family(n: usize) -> Vec<FamilyElement> {
    let mut out = Vec::new();
    for r in 0..=n {
        out.extend(family_block(n, r));
    }
    out
}

/// The part of the spanning family passing through `e_(r)`.
pub fn family_block(n: usize, r: usize) -> Vec<FamilyElement> {
    let c = min_coset_reps(n, r, CosetKind::LeftOfSr).expect("r <= n");
    let d = min_coset_reps(n, r, CosetKind::Parabolic).expect("r <= n");
    let b = ladder_set(r);
    let mut out = Vec::with_capacity(c.len() * b.len() * b.len() * d.len());
    for w1 in &c {
        let w1 = w1.reduced_word();
        for b1 in &b {
            for b2 in &b {
                for w2 in &d {
                    let mut left = w1.clone();
                    left.extend_from_slice(b1);
                    let mut right: Vec<usize> = b2.iter().rev().copied().collect();
                    right.extend(w2.reduced_word().iter().rev());
                    out.push(FamilyElement { left, r, right });
                }
            }
        }
    }
    out
}

/// All Hecke basis words `h_w` for `w ∈ S_n` (reduced words, lex order of `w`).
pub fn hecke_basis(n: usize) -> Vec<Vec<usize>> {
    super::perm::Permutation::all(n).iter().map(|w| w.reduced_word()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::{end_dim_formula, involution_number};

    #[test]
    fn ladder_sets() {
        assert_eq!(ladder_set(0), vec![Vec::<usize>::new()]);
        assert_eq!(ladder_set(1), vec![Vec::<usize>::new()]);
        assert_eq!(ladder_set(2), vec![vec![], vec![1]]);
        assert_eq!(ladder_set(3), vec![vec![], vec![1], vec![1, 2], vec![2]]);
        for r in 0..=7 {
            assert_eq!(ladder_set(r).len() as u64, involution_number(r), "r = {r}");
        }
    }

    #[test]
    fn family_sizes() {
        assert_eq!(spanning_family(1).len(), 2);
        for n in 1..=5 {
            assert_eq!(spanning_family(n).len() as u64, end_dim_formula(n), "n = {n}");
        }
    }

    #[test]
    fn family_n2() {
        let texts: Vec<String> = spanning_family(2).iter().map(|x| x.to_string()).collect();
        assert_eq!(
            texts,
            vec!["1", "g1", "e", "e*g1", "g1*e", "g1*e*g1", "e(2)", "e(2)*g1", "g1*e(2)", "g1*e(2)*g1"]
        );
    }
}
