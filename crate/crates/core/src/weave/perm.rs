use std::fmt;

use crate::error::{invalid, Result};

/// A permutation of `1..=n`, stored as its list of images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(invalid(format!("{images:?} is not a permutation of 1..={n}")));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).collect() }
    }

    /// The simple transposition `s_j = (j j+1)` in `S_n`.
    pub fn simple(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j >= n {
            return Err(invalid(format!("s_{j} is not a simple reflection of S_{n}")));
        }
        let mut p = Self::identity(n);
        p.images.swap(j - 1, j);
        Ok(p)
    }

    /// The permutation reversing `1..=n`.
    pub fn longest(n: usize) -> Self {
        Self { images: (1..=n).rev().collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// Composition `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { images: other.images.iter().map(|&x| self.apply(x)).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Self { images: inv }
    }

    /// Number of inversions, which is the Coxeter length.
    pub fn length(&self) -> usize {
        let w = &self.images;
        (0..w.len())
            .map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count())
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// A reduced word `[j_1, …, j_l]` with `self = s_{j_1}⋯s_{j_l}`, built by
    /// peeling off the rightmost descent each time.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.images.clone();
        let mut word = Vec::new();
        // w·s_j swaps positions j, j+1; pick the last descent to peel
        while let Some(j) = (1..w.len()).rev().find(|&j| w[j - 1] > w[j]) {
            w.swap(j - 1, j);
            word.push(j);
        }
        word.reverse();
        word
    }

    /// Evaluate a word of simple reflections in `S_n`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut p = Self::identity(n);
        for &j in word {
            p = p.compose(&Self::simple(n, j)?);
        }
        Ok(p)
    }

    /// All of `S_n` in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n + 1];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation { images: cur.clone() });
                return;
            }
            for x in 1..=n {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which minimal coset representatives to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetKind {
    /// Shortest elements of the left cosets `w·S_r`.
    LeftOfSr,
    /// Shortest elements of the cosets `w·(S_r × S_{n-r})`.
    Parabolic,
}

/// Minimal-length coset representatives, in lexicographic order.
pub fn min_coset_reps(n: usize, r: usize, kind: CosetKind) -> Result<Vec<Permutation>> {
    if r > n {
        return Err(invalid(format!("r = {r} exceeds n = {n}")));
    }
    let increasing = |w: &Permutation, from: usize, to: usize| {
        (from..to).all(|i| w.images[i - 1] < w.images[i])
    };
    Ok(Permutation::all(n)
        .into_iter()
        .filter(|w| {
            let left_ok = r == 0 || increasing(w, 1, r);
            match kind {
                CosetKind::LeftOfSr => left_ok,
                CosetKind::Parabolic => left_ok && (r + 1 >= n || increasing(w, r + 1, n)),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::{binomial, falling};

    #[test]
    fn reduced_words() {
        assert!(Permutation::identity(3).reduced_word().is_empty());
        assert_eq!(Permutation::simple(2, 1).unwrap().reduced_word(), vec![1]);
        let w0 = Permutation::longest(3);
        let word = w0.reduced_word();
        assert_eq!(word.len(), 3);
        assert_eq!(Permutation::from_word(3, &word).unwrap(), w0);
    }

    #[test]
    fn reduced_word_round_trip_s4() {
        for w in Permutation::all(4) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            assert_eq!(Permutation::from_word(4, &word).unwrap(), w);
        }
    }

    #[test]
    fn coset_counts() {
        for n in 0..=5 {
            for r in 0..=n {
                assert_eq!(min_coset_reps(n, r, CosetKind::LeftOfSr).unwrap().len() as u64, falling(n, r));
                assert_eq!(min_coset_reps(n, r, CosetKind::Parabolic).unwrap().len() as u64, binomial(n, r));
            }
        }
        let reps = min_coset_reps(2, 1, CosetKind::LeftOfSr).unwrap();
        assert_eq!(reps, vec![Permutation::identity(2), Permutation::simple(2, 1).unwrap()]);
        assert_eq!(min_coset_reps(3, 3, CosetKind::LeftOfSr).unwrap(), vec![Permutation::identity(3)]);
    }

    #[test]
    fn invalid_permutations() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::simple(3, 3).is_err());
    }
}
