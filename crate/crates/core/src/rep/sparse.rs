use std::fmt::Write as _;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, HalfLaurent, RatFunc};

type G = GaussianRational;

/// A square matrix over `ℚ(i)(s)`.
///
/// Entries are Laurent-polynomial numerators over one shared denominator,
/// which keeps products and sums free of per-entry gcd computations.
/// The denominator has lowest exponent 0 and leading coefficient 1; rows
/// are sorted by column and never store zeros.
#[derive(Clone, Debug)]
pub struct SparseMat {
    dim: usize,
    rows: Vec<Vec<(usize, HalfLaurent)>>,
    den: HalfLaurent,
}

/// Dense accumulator used while building one result row.
struct RowAcc {
    vals: Vec<HalfLaurent>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl RowAcc {
    fn new(dim: usize) -> Self {
        Self { vals: vec![HalfLaurent::zero(); dim], touched: Vec::new(), mark: vec![false; dim] }
    }

    fn slot(&mut self, c: usize) -> &mut HalfLaurent {
        if !self.mark[c] {
            self.mark[c] = true;
            self.touched.push(c);
        }
        &mut self.vals[c]
    }

    fn drain(&mut self) -> Vec<(usize, HalfLaurent)> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &c in &self.touched {
            self.mark[c] = false;
            let v = std::mem::take(&mut self.vals[c]);
            if !v.is_zero() {
                out.push((c, v));
            }
        }
        self.touched.clear();
        out
    }
}

impl SparseMat {
    pub fn zero(dim: usize) -> Self {
        Self { dim, rows: vec![Vec::new(); dim], den: HalfLaurent::one() }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, &RatFunc::one())
    }

    pub fn scalar(dim: usize, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(dim);
        }
        Self {
            dim,
            rows: (0..dim).map(|i| vec![(i, c.num().clone())]).collect(),
            den: c.den().clone(),
        }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(diag: &[RatFunc]) -> Self {
        Self::from_entries(diag.len(), diag.iter().enumerate().map(|(i, v)| (i, i, v.clone())))
    }

    /// Build from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_entries<I: IntoIterator<Item = (usize, usize, RatFunc)>>(dim: usize, entries: I) -> Self {
        let entries: Vec<(usize, usize, RatFunc)> = entries.into_iter().filter(|e| !e.2.is_zero()).collect();
        let mut den = HalfLaurent::one();
        for (_, _, v) in &entries {
            den = lcm(&den, v.den());
        }
        let mut acc = RowAcc::new(dim);
        let mut by_row: Vec<Vec<(usize, HalfLaurent)>> = vec![Vec::new(); dim];
        for (r, c, v) in entries {
            assert!(r < dim && c < dim, "entry ({r}, {c}) out of range for dimension {dim}");
            let factor = den.exact_div(v.den()).expect("lcm is a multiple");
            by_row[r].push((c, v.num() * &factor));
        }
        let rows = by_row
            .into_iter()
            .map(|row| {
                for (c, v) in row {
                    acc.slot(c).add_assign_ref(&v);
                }
                acc.drain()
            })
            .collect();
        Self { dim, rows, den }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn common_denominator(&self) -> &HalfLaurent {
        &self.den
    }

    /// Raw numerator rows over [`Self::common_denominator`].
    pub fn numerator_rows(&self) -> &[Vec<(usize, HalfLaurent)>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> RatFunc {
        match self.rows[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) => RatFunc::normalize(self.rows[r][k].1.clone(), self.den.clone()).expect("nonzero denominator"),
            Err(_) => RatFunc::zero(),
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, RatFunc)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(r, row)| {
            row.iter().map(move |(c, v)| {
                (r, *c, RatFunc::normalize(v.clone(), self.den.clone()).expect("nonzero denominator"))
            })
        })
    }

    /// From numerator rows over a shared denominator; rows must be sorted by column without zeros.
    pub fn from_numerators(dim: usize, rows: Vec<Vec<(usize, HalfLaurent)>>, den: HalfLaurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if rows.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: rows.len() });
        }
        Ok(Self::with_den(dim, rows, den))
    }

    fn with_den(dim: usize, rows: Vec<Vec<(usize, HalfLaurent)>>, den: HalfLaurent) -> Self {
        let mut m = Self { dim, rows, den };
        m.normalize_den();
        m
    }

    /// Put the denominator into canonical form (lowest exponent 0, monic).
    fn normalize_den(&mut self) {
        let low = self.den.low().expect("nonzero denominator");
        let lc = self.den.leading_coeff().unwrap().clone();
        if low == 0 && lc.is_one() {
            return;
        }
        let inv = lc.inv().expect("nonzero");
        self.den = self.den.shift(-low).scale(&inv);
        for row in &mut self.rows {
            for (_, v) in row.iter_mut() {
                *v = v.shift(-low).scale(&inv);
            }
        }
    }

    /// Divide out any common factor of the denominator and all numerators.
    pub fn reduce(&mut self) {
        if self.den.is_monomial() {
            return;
        }
        if self.is_zero() {
            self.den = HalfLaurent::one();
            return;
        }
        let mut g = self.den.clone();
        'scan: for row in &self.rows {
            for (_, v) in row {
                g = HalfLaurent::gcd(&g, v);
                if g.is_monomial() {
                    break 'scan;
                }
            }
        }
        if g.is_monomial() {
            return;
        }
        self.den = self.den.exact_div(&g).expect("gcd divides");
        for row in &mut self.rows {
            for (_, v) in row.iter_mut() {
                *v = v.exact_div(&g).expect("gcd divides");
            }
        }
        self.normalize_den();
    }

    pub fn reduced(mut self) -> Self {
        self.reduce();
        self
    }

    fn check_dim(&self, o: &Self) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: o.dim });
        }
        Ok(())
    }

    /// Rows of `self` and `o` rescaled to a common denominator.
    fn aligned<'a>(&'a self, o: &'a Self) -> (HalfLaurent, HalfLaurent, HalfLaurent) {
        if self.den == o.den {
            return (self.den.clone(), HalfLaurent::one(), HalfLaurent::one());
        }
        let l = lcm(&self.den, &o.den);
        let fa = l.exact_div(&self.den).unwrap();
        let fb = l.exact_div(&o.den).unwrap();
        (l, fa, fb)
    }

    fn combine(&self, o: &Self, sign: i64) -> Result<Self> {
        self.check_dim(o)?;
        let (den, fa, fb) = self.aligned(o);
        let fb = if sign < 0 { -fb } else { fb };
        let rows = self
            .rows
            .iter()
            .zip(&o.rows)
            .map(|(ra, rb)| merge_rows(ra, &fa, rb, &fb))
            .collect();
        Ok(Self::with_den(self.dim, rows, den))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.combine(o, 1)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.combine(o, -1)
    }

    pub fn neg(&self) -> Self {
        Self {
            dim: self.dim,
            rows: self.rows.iter().map(|r| r.iter().map(|(c, v)| (*c, -v)).collect()).collect(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(col, v)| (*col, v * c.num())).collect())
            .collect();
        Self::with_den(self.dim, rows, &self.den * c.den())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_dim(o)?;
        let rows: Vec<Vec<(usize, HalfLaurent)>> = self
            .rows
            .par_iter()
            .map_init(
                || RowAcc::new(self.dim),
                |acc, row| {
                    for (k, a) in row {
                        for (j, b) in &o.rows[*k] {
                            acc.slot(*j).add_mul_assign(a, b);
                        }
                    }
                    acc.drain()
                },
            )
            .collect();
        Ok(Self::with_den(self.dim, rows, &self.den * &o.den))
    }

    /// Kronecker product `self ⊗ o`, with index `a·dim(o) + b`.
    pub fn kron(&self, o: &Self) -> Self {
        let dim = self.dim * o.dim;
        let mut rows = Vec::with_capacity(dim);
        for ra in &self.rows {
            for rb in &o.rows {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ca, va) in ra {
                    for (cb, vb) in rb {
                        row.push((ca * o.dim + cb, va * vb));
                    }
                }
                rows.push(row);
            }
        }
        Self::with_den(dim, rows, &self.den * &o.den)
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Vec<(usize, HalfLaurent)>> = vec![Vec::new(); self.dim];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                rows[*c].push((r, v.clone()));
            }
        }
        Self { dim: self.dim, rows, den: self.den.clone() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_difference(&self.transpose()).is_none()
    }

    /// Entrywise `s ↦ i^k s`.
    pub fn substitute_unit(&self, k: u8) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(c, v)| (*c, v.substitute_unit(k))).collect())
            .collect();
        Self::with_den(self.dim, rows, self.den.substitute_unit(k))
    }

    /// Entrywise `s ↦ s^-1`.
    pub fn invert_variable(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(c, v)| (*c, v.invert_variable())).collect())
            .collect();
        Self::with_den(self.dim, rows, self.den.invert_variable())
    }

    /// Conjugate by a permutation of basis indices: result[p(i), p(j)] = self[i, j].
    pub fn permute(&self, p: &[usize]) -> Self {
        let mut rows: Vec<Vec<(usize, HalfLaurent)>> = vec![Vec::new(); self.dim];
        for (r, row) in self.rows.iter().enumerate() {
            let mut new_row: Vec<(usize, HalfLaurent)> = row.iter().map(|(c, v)| (p[*c], v.clone())).collect();
            new_row.sort_by_key(|e| e.0);
            rows[p[r]] = new_row;
        }
        Self { dim: self.dim, rows, den: self.den.clone() }
    }

    pub fn trace(&self) -> RatFunc {
        self.weighted_trace(|_| HalfLaurent::one())
    }

    /// `Σ_i self[i,i]·w(i)` for Laurent weights `w`.
    pub fn weighted_trace(&self, w: impl Fn(usize) -> HalfLaurent) -> RatFunc {
        let mut acc = HalfLaurent::zero();
        for (i, row) in self.rows.iter().enumerate() {
            if let Ok(k) = row.binary_search_by_key(&i, |e| e.0) {
                acc.add_mul_assign(&row[k].1, &w(i));
            }
        }
        RatFunc::normalize(acc, self.den.clone()).expect("nonzero denominator")
    }

    /// First position where the two matrices differ, with both values.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize, RatFunc, RatFunc)> {
        if self.dim != o.dim {
            return Some((usize::MAX, usize::MAX, RatFunc::zero(), RatFunc::zero()));
        }
        let same_den = self.den == o.den;
        for r in 0..self.dim {
            let (ra, rb) = (&self.rows[r], &o.rows[r]);
            let (mut i, mut j) = (0, 0);
            while i < ra.len() || j < rb.len() {
                let ca = ra.get(i).map_or(usize::MAX, |e| e.0);
                let cb = rb.get(j).map_or(usize::MAX, |e| e.0);
                let c = ca.min(cb);
                let differs = if ca == cb {
                    if same_den {
                        ra[i].1 != rb[j].1
                    } else {
                        &ra[i].1 * &o.den != &rb[j].1 * &self.den
                    }
                } else {
                    true
                };
                if differs {
                    return Some((r, c, self.get(r, c), o.get(r, c)));
                }
                if ca == c {
                    i += 1;
                }
                if cb == c {
                    j += 1;
                }
            }
        }
        None
    }

    pub fn equals(&self, o: &Self) -> bool {
        self.first_difference(o).is_none()
    }

    /// `c` with `self = c·o`, if one exists. Both zero gives `Some(0)`.
    pub fn proportionality(&self, o: &Self) -> Option<RatFunc> {
        let Some((r, c, _)) = o.entries().next() else {
            return self.is_zero().then(RatFunc::zero);
        };
        let ratio = self.get(r, c).checked_div(&o.get(r, c)).ok()?;
        self.equals(&o.scale(&ratio)).then_some(ratio)
    }

    /// `Some(c)` when `self = c·1`.
    pub fn as_scalar(&self) -> Option<RatFunc> {
        self.proportionality(&Self::identity(self.dim))
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[RatFunc]) -> Result<Vec<RatFunc>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                let mut acc = RatFunc::zero();
                for (c, a) in row {
                    if !v[*c].is_zero() {
                        let a = RatFunc::normalize(a.clone(), self.den.clone()).unwrap();
                        acc = &acc + &(&a * &v[*c]);
                    }
                }
                acc
            })
            .collect())
    }

    /// Entrywise evaluation at `s = point`.
    ///
    /// When the shared denominator vanishes at the point, each affected entry
    /// is reduced first, so removable singularities evaluate correctly; an
    /// entry with a genuine pole is reported by position.
    pub fn specialize(&self, point: &G) -> Result<PointMatrix> {
        let d = self.den.eval(point)?;
        let rows = if !d.is_zero() {
            let inv = d.inv()?;
            self.rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|(c, v)| Ok((*c, &v.eval(point)? * &inv)))
                        .filter(|e: &Result<(usize, G)>| e.as_ref().map_or(true, |x| !x.1.is_zero()))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            let mut rows = Vec::with_capacity(self.dim);
            for (r, row) in self.rows.iter().enumerate() {
                let mut out = Vec::new();
                for (c, v) in row {
                    let f = RatFunc::normalize(v.clone(), self.den.clone())?;
                    let x = f.evaluate(point).map_err(|_| Error::PoleInEntry { row: r, col: *c })?;
                    if !x.is_zero() {
                        out.push((*c, x));
                    }
                }
                rows.push(out);
            }
            rows
        };
        Ok(PointMatrix { dim: self.dim, rows })
    }

    /// Coordinate-list text, one `(row, col, scalar)` per line.
    pub fn to_coordinate_text(&self) -> String {
        let mut s = String::new();
        for (r, c, v) in self.entries() {
            let _ = writeln!(s, "({r}, {c}, {v})");
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "entries": self.entries().map(|(r, c, v)| serde_json::json!([r, c, v.to_string()])).collect::<Vec<_>>(),
        })
    }
}

impl PartialEq for SparseMat {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o)
    }
}

fn lcm(a: &HalfLaurent, b: &HalfLaurent) -> HalfLaurent {
    if a.is_monomial() {
        return b.unit_normalized();
    }
    if b.is_monomial() || a == b {
        return a.unit_normalized();
    }
    let g = HalfLaurent::gcd(a, b);
    (a * &b.exact_div(&g).unwrap()).unit_normalized()
}

fn merge_rows(
    ra: &[(usize, HalfLaurent)],
    fa: &HalfLaurent,
    rb: &[(usize, HalfLaurent)],
    fb: &HalfLaurent,
) -> Vec<(usize, HalfLaurent)> {
    let mut out = Vec::with_capacity(ra.len() + rb.len());
    let (mut i, mut j) = (0, 0);
    let scale = |v: &HalfLaurent, f: &HalfLaurent| if f.is_one() { v.clone() } else { v * f };
    while i < ra.len() || j < rb.len() {
        let ca = ra.get(i).map_or(usize::MAX, |e| e.0);
        let cb = rb.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push((ca, scale(&ra[i].1, fa)));
            i += 1;
        } else if cb < ca {
            out.push((cb, scale(&rb[j].1, fb)));
            j += 1;
        } else {
            let mut v = scale(&ra[i].1, fa);
            v.add_mul_assign(&rb[j].1, fb);
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A square matrix of Gaussian rationals, stored by sparse rows.
#[derive(Clone, Debug, PartialEq)]
pub struct PointMatrix {
    pub dim: usize,
    pub rows: Vec<Vec<(usize, G)>>,
}

impl PointMatrix {
    pub fn identity(dim: usize) -> Self {
        Self { dim, rows: (0..dim).map(|i| vec![(i, G::one())]).collect() }
    }

    pub fn get(&self, r: usize, c: usize) -> G {
        self.rows[r]
            .iter()
            .find(|e| e.0 == c)
            .map_or_else(G::zero, |e| e.1.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: std::collections::BTreeMap<usize, G> = Default::default();
                for (k, a) in row {
                    for (j, b) in &o.rows[*k] {
                        *acc.entry(*j).or_insert_with(G::zero) += &(a * b);
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Self { dim: self.dim, rows }
    }

    /// Row-major flattening, as sparse `(index, value)` pairs.
    pub fn flatten(&self) -> Vec<(usize, G)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r * self.dim + c, v.clone())))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_scalar;

    fn rf(t: &str) -> RatFunc {
        parse_scalar(t).unwrap()
    }

    fn m2(a: &str, b: &str, c: &str, d: &str) -> SparseMat {
        SparseMat::from_entries(2, [(0, 0, rf(a)), (0, 1, rf(b)), (1, 0, rf(c)), (1, 1, rf(d))])
    }

    #[test]
    fn common_denominator_arithmetic() {
        let a = m2("1/(s+1)", "s", "0", "1/(s-1)");
        let b = m2("s/(s+1)", "0", "1", "1");
        let sum = a.add(&b).unwrap();
        assert_eq!(sum.get(0, 0), rf("1"));
        assert_eq!(sum.get(1, 1), rf("s/(s-1)"));
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.get(0, 0), rf("s/(s+1)^2 + s"));
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn kronecker_indexing() {
        let a = m2("1", "2", "3", "4");
        let i = SparseMat::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.get(0, 2), rf("2"));
        assert_eq!(k.get(1, 3), rf("2"));
        assert_eq!(k.get(0, 1), rf("0"));
    }

    #[test]
    fn specialization_with_removable_singularity() {
        let a = m2("(s^2-1)/(s-1)", "1/(s+1)", "0", "1");
        let p = a.specialize(&G::one()).unwrap();
        assert_eq!(p.get(0, 0), G::from_int(2));
        let b = m2("1/(s-1)", "0", "0", "1");
        assert_eq!(b.specialize(&G::one()).unwrap_err(), Error::PoleInEntry { row: 0, col: 0 });
        assert_eq!(SparseMat::identity(3).specialize(&G::from_int(5)).unwrap(), PointMatrix::identity(3));
    }

    #[test]
    fn reduce_removes_shared_factor() {
        let a = m2("(s+1)/(s^2-1)", "0", "0", "(s+1)/(s-1)").reduced();
        assert_eq!(a.common_denominator(), &HalfLaurent::from_int_terms(&[(1, 1), (0, -1)]));
    }

    #[test]
    fn proportionality_and_scalars() {
        let a = m2("s", "1", "1", "s^-1");
        let b = a.scale(&rf("(s+2)/3"));
        assert_eq!(b.proportionality(&a), Some(rf("(s+2)/3")));
        assert_eq!(SparseMat::scalar(3, &rf("q")).as_scalar(), Some(rf("q")));
        assert_eq!(a.as_scalar(), None);
    }
}
