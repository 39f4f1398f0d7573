use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::young::YoungDiagram;
use crate::error::{invalid, Result};

/// Neighbours of `lam` under tensoring with the vector representation:
/// `lam` itself, then its remove-a-box and add-a-box neighbours, dropping
/// diagrams with more than `row_limit` rows.
pub fn fusion_step(lam: &YoungDiagram, row_limit: Option<usize>) -> Vec<YoungDiagram> {
    let fits = |d: &YoungDiagram| row_limit.is_none_or(|k| d.num_rows() <= k);
    let mut out = vec![lam.clone()];
    for d in lam.remove_box().into_iter().chain(lam.add_box()) {
        if fits(&d) && !out.contains(&d) {
            out.push(d);
        }
    }
    out
}

/// Leveled multiplicity graph; level `n` maps each diagram to the number
/// of paths reaching it from `∅` at level 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BratteliGraph {
    pub row_limit: Option<usize>,
    pub levels: Vec<BTreeMap<YoungDiagram, u64>>,
}

impl BratteliGraph {
    /// Build levels `0..=depth` with an optional row bound.
    pub fn build(row_limit: Option<usize>, depth: usize) -> Self {
        let mut levels = vec![BTreeMap::from([(YoungDiagram::empty(), 1u64)])];
        for _ in 0..depth {
            let prev = levels.last().unwrap();
            // candidates at the next level are the fusion images of the previous level
            let mut cands: Vec<YoungDiagram> = prev
                .keys()
                .flat_map(|l| fusion_step(l, row_limit))
                .collect();
            cands.sort();
            cands.dedup();
            let next: BTreeMap<YoungDiagram, u64> = cands
                .into_par_iter()
                .map(|mu| {
                    let m: u64 = fusion_step(&mu, row_limit)
                        .iter()
                        .filter_map(|nb| prev.get(nb))
                        .sum();
                    (mu, m)
                })
                .filter(|(_, m)| *m > 0)
                .collect();
            levels.push(next);
        }
        Self { row_limit, levels }
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn multiplicity(&self, level: usize, lam: &YoungDiagram) -> u64 {
        self.levels.get(level).and_then(|l| l.get(lam)).copied().unwrap_or(0)
    }

    /// `Σ m²` at a level, the dimension of the centralizer.
    pub fn sum_of_squares(&self, level: usize) -> u64 {
        self.levels[level].values().map(|m| m * m).sum()
    }

    /// Edges between consecutive levels, `(level, from, to)`.
    pub fn edges(&self) -> Vec<(usize, YoungDiagram, YoungDiagram)> {
        let mut out = Vec::new();
        for (n, level) in self.levels.iter().enumerate().skip(1) {
            for lam in self.levels[n - 1].keys() {
                for mu in fusion_step(lam, self.row_limit) {
                    if level.contains_key(&mu) {
                        out.push((n - 1, lam.clone(), mu));
                    }
                }
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let id = |n: usize, d: &YoungDiagram| format!("\"{}/{}/{}\"", n, d, self.multiplicity(n, d));
        let mut s = String::from("digraph bratteli {\n  rankdir=TB;\n");
        for (n, level) in self.levels.iter().enumerate() {
            let _ = write!(s, "  {{ rank=same;");
            for d in level.keys() {
                let _ = write!(s, " {};", id(n, d));
            }
            s.push_str(" }\n");
        }
        for (n, a, b) in self.edges() {
            let _ = writeln!(s, "  {} -> {};", id(n, &a), id(n + 1, &b));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let levels: Vec<serde_json::Value> = self
            .levels
            .iter()
            .enumerate()
            .map(|(n, l)| {
                serde_json::json!({
                    "level": n,
                    "vertices": l.iter().map(|(d, m)| serde_json::json!({
                        "diagram": d.to_string(),
                        "multiplicity": m,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({ "row_limit": self.row_limit, "levels": levels })
    }

    /// `level,diagram,multiplicity` rows for every level.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("level,diagram,multiplicity\n");
        for (n, l) in self.levels.iter().enumerate() {
            for (d, m) in l {
                let _ = writeln!(s, "{},\"{}\",{}", n, d, m);
            }
        }
        s
    }
}

/// Row bound `(N-1)/2` for odd `N ≥ 3`.
pub fn row_limit(big_n: usize) -> Result<usize> {
    if big_n.is_multiple_of(2) {
        return Err(invalid("N must be odd"));
    }
    if big_n < 3 {
        return Err(invalid("N must be at least 3"));
    }
    Ok((big_n - 1) / 2)
}

/// The Bratteli diagram of `V^{⊗n}` restricted to `Sp(N-1)`.
pub fn bratteli(big_n: usize, depth: usize) -> Result<BratteliGraph> {
    Ok(BratteliGraph::build(Some(row_limit(big_n)?), depth))
}
