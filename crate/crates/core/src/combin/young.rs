use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A partition shape, rows weakly decreasing and positive.
///
/// Ordering is lexicographic on the row list, so `∅ < [1] < [1,1] < [2]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.contains(&0) {
            return Err(invalid("Young diagram rows must be positive"));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid("Young diagram rows must be weakly decreasing"));
        }
        Ok(Self { rows })
    }

    /// Drops trailing zero rows before validating.
    pub fn from_padded(rows: &[usize]) -> Result<Self> {
        let mut v = rows.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        Self::new(v)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Row `i` (0-based), 0 beyond the last row.
    pub fn row(&self, i: usize) -> usize {
        self.rows.get(i).copied().unwrap_or(0)
    }

    /// Length of column `j` (0-based).
    pub fn column(&self, j: usize) -> usize {
        self.rows.iter().take_while(|&&r| r > j).count()
    }

    /// Diagrams obtained by removing one box, in row order.
    pub fn remove_box(&self) -> Vec<YoungDiagram> {
        let mut out = Vec::new();
        for i in 0..self.rows.len() {
            if self.row(i + 1) < self.rows[i] {
                let mut r = self.rows.clone();
                r[i] -= 1;
                out.push(Self::from_padded(&r).expect("valid removal"));
            }
        }
        out
    }

    /// Diagrams obtained by adding one box, in row order.
    pub fn add_box(&self) -> Vec<YoungDiagram> {
        let mut out = Vec::new();
        for i in 0..=self.rows.len() {
            if i == 0 || self.rows[i - 1] > self.row(i) {
                let mut r = self.rows.clone();
                if i == r.len() {
                    r.push(1);
                } else {
                    r[i] += 1;
                }
                out.push(Self { rows: r });
            }
        }
        out
    }

    /// Hook lengths in row-major order.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &len) in self.rows.iter().enumerate() {
            for j in 0..len {
                let arm = len - j - 1;
                let leg = self.column(j) - i - 1;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    pub fn conjugate(&self) -> Self {
        let rows = (0..self.row(0)).map(|j| self.column(j)).collect();
        Self { rows }
    }
}

/// All partitions of `n`, in increasing diagram order.
pub fn partitions(n: usize) -> Vec<YoungDiagram> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        if rem == 0 {
            out.push(YoungDiagram { rows: cur.clone() });
            return;
        }
        for part in 1..=rem.min(max) {
            cur.push(part);
            rec(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "[")?;
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for YoungDiagram {
    type Err = Error;

    /// Accepts `∅`, `[]`, `[2,1]` or `2,1`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "∅" || t == "[]" || t.is_empty() {
            return Ok(Self::empty());
        }
        let inner = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')).unwrap_or(t);
        let rows = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse { pos: 0, msg: format!("bad diagram '{s}'") })?;
        Self::new(rows)
    }
}

impl TryFrom<Vec<usize>> for YoungDiagram {
    type Error = Error;
    fn try_from(rows: Vec<usize>) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<YoungDiagram> for Vec<usize> {
    fn from(d: YoungDiagram) -> Vec<usize> {
        d.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(YoungDiagram::new(vec![1, 2]).is_err());
        assert!(YoungDiagram::new(vec![2, 0]).is_err());
        assert_eq!(YoungDiagram::from_padded(&[2, 1, 0, 0]).unwrap(), d(&[2, 1]));
    }

    #[test]
    fn neighbours() {
        assert_eq!(d(&[2, 1]).remove_box(), vec![d(&[1, 1]), d(&[2])]);
        assert_eq!(d(&[2, 1]).add_box(), vec![d(&[3, 1]), d(&[2, 2]), d(&[2, 1, 1])]);
        assert_eq!(YoungDiagram::empty().add_box(), vec![d(&[1])]);
    }

    #[test]
    fn hooks() {
        assert_eq!(d(&[2, 1]).hook_lengths(), vec![3, 1, 1]);
        assert_eq!(d(&[3, 2]).conjugate(), d(&[2, 2, 1]));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn text_round_trip() {
        for lam in partitions(5) {
            assert_eq!(lam.to_string().parse::<YoungDiagram>().unwrap(), lam);
        }
        assert_eq!("∅".parse::<YoungDiagram>().unwrap(), YoungDiagram::empty());
    }
}
