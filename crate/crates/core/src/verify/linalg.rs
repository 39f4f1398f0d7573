//! Incremental row echelon form over a field.

use crate::exact::Field;

/// A set of linearly independent rows kept in reduced form.
pub struct Echelon<'f, F: Field> {
    field: &'f F,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<'f, F: Field> Echelon<'f, F> {
    pub fn new(field: &'f F) -> Self {
        Self { field, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot column of each stored row, in insertion order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `row` against the stored rows.
    pub fn reduce(&self, mut row: Vec<F::Elem>) -> Vec<F::Elem> {
        let f = self.field;
        for (p, prow) in self.pivots.iter().zip(&self.rows) {
            if f.is_zero(&row[*p]) {
                continue;
            }
            let c = row[*p].clone();
            for (x, y) in row.iter_mut().zip(prow) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        row
    }

    /// Adds `row` if it is independent of the stored rows; returns whether it was.
    pub fn insert(&mut self, row: Vec<F::Elem>) -> bool {
        let f = self.field;
        let mut row = self.reduce(row);
        let Some(p) = row.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&row[p]).expect("nonzero pivot");
        for x in row.iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        for (q, other) in self.pivots.iter().zip(self.rows.iter_mut()) {
            debug_assert!(f.is_zero(&row[*q]));
            if f.is_zero(&other[p]) {
                continue;
            }
            let c = other[p].clone();
            for (x, y) in other.iter_mut().zip(&row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        self.rows.push(row);
        self.pivots.push(p);
        true
    }
}

/// Rank of a list of rows.
pub fn rank<F: Field>(field: &F, rows: impl IntoIterator<Item = Vec<F::Elem>>) -> usize {
    let mut e = Echelon::new(field);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{GaussianRational as G, PrimeField, Rationals, Symbolic};
    use crate::exact::RatFunc;

    #[test]
    fn rational_rank() {
        let g = |v: &[i64]| v.iter().map(|&x| G::from_int(x)).collect::<Vec<_>>();
        assert_eq!(rank(&Rationals, [g(&[1, 2, 3]), g(&[2, 4, 6]), g(&[0, 1, 1])]), 2);
        assert_eq!(rank(&Rationals, [g(&[0, 0]), g(&[0, 0])]), 0);
    }

    #[test]
    fn modular_rank() {
        let f = PrimeField::new(13).unwrap();
        assert_eq!(rank(&f, [vec![1, 2], vec![2, 4], vec![0, 1]]), 2);
        // 1·5 - 1·(-8) = 13 ≡ 0: dependent mod 13
        assert_eq!(rank(&f, [vec![1, 5], vec![1, 5]]), 1);
    }

    #[test]
    fn symbolic_rank() {
        let s = RatFunc::s_pow(1);
        let one = RatFunc::from_int(1);
        let r1 = vec![one.clone(), s.clone()];
        let r2 = vec![s.clone(), &s * &s];
        let r3 = vec![one.clone(), one.clone()];
        assert_eq!(rank(&Symbolic, [r1.clone(), r2]), 1);
        assert_eq!(rank(&Symbolic, [r1, r3]), 2);
    }
}
