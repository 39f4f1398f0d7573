use rand::{Rng, SeedableRng};
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::linalg::Echelon;
use super::markov::random_points;
use super::report::{Claim, RankCertificate, Strategy, SuiteReport};
use crate::error::{Error, Result};
use crate::exact::{Field, GaussianRational, PrimeField, RatFunc, Rationals, Symbolic};
use crate::rep::{family_word, Atom, PointRep, RepContext};
use crate::combin::end_dim;
use crate::weave::spanning_family;
use serde_json::json;

#[derive(Clone, Debug, PartialEq)]
pub struct BasisOptions {
    pub strategy: Strategy,
    pub seed: u64,
    /// Evaluation point for the evaluated strategy; random when absent.
    pub point: Option<GaussianRational>,
    /// Number of random matrix columns vectorized before falling back to all of them.
    pub sample_columns: usize,
    /// Largest `N^n` for the symbolic strategy.
    pub symbolic_max_dim: usize,
    /// Largest `N^n` for the evaluated and modular strategies.
    pub numeric_max_dim: usize,
}

impl Default for BasisOptions {
    fn default() -> Self {
        Self {
            strategy: Strategy::EvaluatedRational,
            seed: 0,
            point: None,
            sample_columns: 16,
            symbolic_max_dim: 343,
            numeric_max_dim: 6561,
        }
    }
}

/// Family words split around `e_(r)`: `(left, [e_(r)] ++ right)`.
fn split_words(n: usize) -> Vec<(Vec<Atom>, Vec<Atom>)> {
    spanning_family(n)
        .iter()
        .map(|x| {
            let w = family_word(x);
            let cut = x.left.len();
            (w[..cut].to_vec(), w[cut..].to_vec())
        })
        .collect()
}

/// Entries of `Φ(x)` at the coordinates `(a, b)` with `b ∈ cols`, all `a`, in that order.
fn family_rows<F: Field>(rep: &PointRep<F>, words: &[(Vec<Atom>, Vec<Atom>)], cols: &[usize]) -> Result<Vec<Vec<F::Elem>>>
where
    F::Elem: Send,
{
    words
        .par_iter()
        .map(|(left, right)| {
            let mut row = Vec::with_capacity(cols.len() * rep.dim());
            for &b in cols {
                let v = rep.apply(right, &rep.basis_vec(b))?;
                row.extend(rep.apply(left, &v)?);
            }
            Ok(row)
        })
        .collect()
}

/// Row echelon of the family; returns the rank, the independent rows and their pivot coordinates.
fn eliminate<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>) -> (usize, Vec<usize>, Vec<usize>) {
    let mut ech = Echelon::new(field);
    let mut independent = Vec::new();
    for (k, row) in rows.into_iter().enumerate() {
        if ech.insert(row) {
            independent.push(k);
        }
    }
    (ech.rank(), independent, ech.pivots().to_vec())
}

fn sampled_columns(dim: usize, count: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut all: Vec<usize> = (0..dim).collect();
    if count >= dim {
        return all;
    }
    all.shuffle(rng);
    let mut s = all[..count].to_vec();
    s.sort_unstable();
    s
}

/// Rank of the family over a field at a point: sampled columns first, all columns when short.
fn rank_at<F: Field>(
    rep: &PointRep<F>,
    words: &[(Vec<Atom>, Vec<Atom>)],
    sample: &[usize],
) -> Result<(usize, Vec<usize>, Vec<(usize, usize)>)>
where
    F::Elem: Send,
{
    let dim = rep.dim();
    let mut cols = sample.to_vec();
    loop {
        let rows = family_rows(rep, words, &cols)?;
        let (rank, independent, pivots) = eliminate(rep.field(), rows);
        if rank == words.len() || cols.len() == dim {
            let coords = pivots.iter().map(|&p| (p % dim, cols[p / dim])).collect();
            return Ok((rank, independent, coords));
        }
        cols = (0..dim).collect();
    }
}

fn random_prime_point(
    ctx: &RepContext,
    rng: &mut ChaCha8Rng,
    rational: Option<&GaussianRational>,
) -> (PrimeField, PointRep<PrimeField>, u64) {
    loop {
        let field = PrimeField::random(rng);
        let s = match rational {
            Some(q) => match field.from_gaussian(q) {
                Some(s) => s,
                None => continue,
            },
            None => rng.gen_range(2..field.modulus()),
        };
        if let Ok(rep) = PointRep::new(field, *ctx, &s) {
            return (field, rep, s);
        }
    }
}

/// Rank of the vectorized spanning family `{Φ(x)}`.
///
/// `symbolic`: exact elimination over `ℚ(i)(s)`.
/// `evaluated-rational`: pivot coordinates are located modulo a random prime,
/// then the selected minor is eliminated exactly over `ℚ(i)` at a rational point.
/// `modular`: elimination over `𝔽_p` at a random point.
/// A rank at a point bounds the generic rank from below.
pub fn basis_rank(ctx: &RepContext, opts: &BasisOptions) -> Result<RankCertificate> {
    let dim = ctx.dim();
    let words = split_words(ctx.n);
    let size = words.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    match opts.strategy {
        Strategy::Symbolic => {
            if dim > opts.symbolic_max_dim || ctx.n > 2 {
                return Err(Error::Budget(format!(
                    "symbolic rank needs n <= 2 and N^n <= {}, got N^n = {dim}",
                    opts.symbolic_max_dim
                )));
            }
            let rep = PointRep::new(Symbolic, *ctx, &RatFunc::s_pow(1))?;
            let cols: Vec<usize> = (0..dim).collect();
            let (rank, _, _) = eliminate(&Symbolic, family_rows(&rep, &words, &cols)?);
            Ok(RankCertificate::new(size, Strategy::Symbolic, vec!["s".into()], None, None, rank))
        }
        Strategy::Modular => {
            if dim > opts.numeric_max_dim {
                return Err(Error::Budget(format!("N^n = {dim} exceeds {}", opts.numeric_max_dim)));
            }
            let (field, rep, s) = random_prime_point(ctx, &mut rng, None);
            let sample = sampled_columns(dim, opts.sample_columns, &mut rng);
            let (rank, _, _) = rank_at(&rep, &words, &sample)?;
            Ok(RankCertificate::new(size, Strategy::Modular, vec![s.to_string()], Some(field.modulus()), Some(opts.seed), rank))
        }
        Strategy::EvaluatedRational => {
            if dim > opts.numeric_max_dim {
                return Err(Error::Budget(format!("N^n = {dim} exceeds {}", opts.numeric_max_dim)));
            }
            let s = match &opts.point {
                Some(s) => s.clone(),
                None => random_points(ctx, 1, &mut rng).remove(0),
            };
            let exact = PointRep::new(Rationals, *ctx, &s)?;
            let (field, modp, _) = random_prime_point(ctx, &mut rng, Some(&s));
            let sample = sampled_columns(dim, opts.sample_columns, &mut rng);
            let (_, independent, coords) = rank_at(&modp, &words, &sample)?;
            let rank = exact_minor_rank(&exact, &words, &independent, &coords)?;
            Ok(RankCertificate::new(
                size,
                Strategy::EvaluatedRational,
                vec![s.to_string()],
                Some(field.modulus()),
                Some(opts.seed),
                rank,
            ))
        }
    }
}

/// Exact rank of the minor of the family matrix on the given rows and coordinates.
fn exact_minor_rank(
    rep: &PointRep<Rationals>,
    words: &[(Vec<Atom>, Vec<Atom>)],
    rows: &[usize],
    coords: &[(usize, usize)],
) -> Result<usize> {
    let mut bs: Vec<usize> = coords.iter().map(|c| c.1).collect();
    bs.sort_unstable();
    bs.dedup();
    let minor: Vec<Vec<GaussianRational>> = rows
        .par_iter()
        .map(|&k| {
            let (left, right) = &words[k];
            let mut cols = std::collections::HashMap::new();
            for &b in &bs {
                let v = rep.apply(right, &rep.basis_vec(b))?;
                cols.insert(b, rep.apply(left, &v)?);
            }
            Ok(coords.iter().map(|(a, b)| cols[b][*a].clone()).collect())
        })
        .collect::<Result<_>>()?;
    let (rank, _, _) = eliminate(&Rationals, minor);
    Ok(rank)
}

/// Certificates for several seeds.
pub fn basis_certificates(ctx: &RepContext, opts: &BasisOptions, seeds: &[u64]) -> Result<Vec<RankCertificate>> {
    seeds.iter().map(|&seed| basis_rank(ctx, &BasisOptions { seed, ..opts.clone() })).collect()
}

/// Rank measurements for consecutive seeds starting at `opts.seed`, as a suite.
///
/// Each rank must equal `dim End(V^{⊗n})`: the full family size when `N > 2n`,
/// and the degenerate dimension otherwise.
pub fn basis_suite(ctx: &RepContext, opts: &BasisOptions, count: usize) -> Result<(SuiteReport, Vec<RankCertificate>)> {
    let seeds: Vec<u64> = (0..count as u64).map(|k| opts.seed.wrapping_add(k)).collect();
    let certs = basis_certificates(ctx, opts, &seeds)?;
    let want = end_dim(ctx.n, ctx.big_n)? as usize;
    let mut rep = SuiteReport::new(
        "basis",
        json!({"N": ctx.big_n, "n": ctx.n, "variant": ctx.variant.to_string(), "strategy": opts.strategy.to_string()}),
    )
    .with_seed(opts.seed);
    for (seed, c) in seeds.iter().zip(&certs) {
        let id = format!("rank-seed-{seed}");
        let anchor = "rank of the spanning family equals dim End(V^n)";
        let detail = format!("rank {} of {}, certified {}", c.rank, c.family_size, c.certified);
        let claim = if c.rank == want {
            Claim::pass(id, anchor)
        } else {
            Claim::fail(id, anchor, format!("rank {}, expected {want}", c.rank))
        };
        rep.push(claim.with_detail(detail));
    }
    Ok((rep, certs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weave::Variant;

    #[test]
    fn n2_ranks() {
        let c5 = RepContext::new(5, 2, Variant::Plus).unwrap();
        let c3 = RepContext::new(3, 2, Variant::Plus).unwrap();
        for strategy in [Strategy::Modular, Strategy::EvaluatedRational] {
            let opts = BasisOptions { strategy, ..Default::default() };
            assert_eq!(basis_rank(&c5, &opts).unwrap().rank, 10);
            let r3 = basis_rank(&c3, &opts).unwrap();
            assert_eq!(r3.rank, 9);
            assert!(!r3.certified);
        }
    }

    #[test]
    fn symbolic_budget() {
        let c = RepContext::new(3, 3, Variant::Plus).unwrap();
        let opts = BasisOptions { strategy: Strategy::Symbolic, ..Default::default() };
        assert!(matches!(basis_rank(&c, &opts), Err(Error::Budget(_))));
    }
}
