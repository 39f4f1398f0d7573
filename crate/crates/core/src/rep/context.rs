use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::weave::Variant;

/// A deliberate corruption of one constant, used for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Relation (b) is checked with `2β` in place of `β`.
    Beta,
    /// The first diagonal weight of `D` gets an extra factor `q`.
    DExponent,
    /// The `(v_1⊗v_2, v_1⊗v_2)` entry of `U` is doubled.
    UEntry,
}

/// Which representation: `V = ℂ^N` with `N = 2k+1`, `n` tensor factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RepContext {
    pub big_n: usize,
    pub n: usize,
    pub variant: Variant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
}

impl RepContext {
    pub fn new(big_n: usize, n: usize, variant: Variant) -> Result<Self> {
        if big_n.is_multiple_of(2) {
            return Err(invalid("N must be odd"));
        }
        if big_n < 3 {
            return Err(invalid("N must be at least 3"));
        }
        if n < 1 {
            return Err(invalid("n must be at least 1"));
        }
        Ok(Self { big_n, n, variant, fault: None })
    }

    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.fault = Some(fault);
        self
    }

    /// Same representation on a different number of factors.
    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn k(&self) -> usize {
        (self.big_n - 1) / 2
    }

    /// `N^n`.
    pub fn dim(&self) -> usize {
        self.big_n.pow(self.n as u32)
    }

    pub fn has_fault(&self, f: Fault) -> bool {
        self.fault == Some(f)
    }

    /// Base-`N` digits of a basis index, most significant (first factor) first.
    pub fn digits(&self, mut idx: usize) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for p in (0..self.n).rev() {
            d[p] = idx % self.big_n;
            idx /= self.big_n;
        }
        d
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * self.big_n + d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(RepContext::new(4, 2, Variant::Plus).is_err());
        assert!(RepContext::new(1, 2, Variant::Plus).is_err());
        assert!(RepContext::new(3, 0, Variant::Plus).is_err());
        let c = RepContext::new(5, 3, Variant::Minus).unwrap();
        assert_eq!(c.dim(), 125);
        assert_eq!(c.k(), 2);
    }

    #[test]
    fn digit_round_trip() {
        let c = RepContext::new(3, 3, Variant::Plus).unwrap();
        for i in 0..c.dim() {
            assert_eq!(c.index(&c.digits(i)), i);
        }
        assert_eq!(c.digits(5), vec![0, 1, 2]);
    }
}
