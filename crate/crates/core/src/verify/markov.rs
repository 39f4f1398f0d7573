use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::relations::{matrix_witness, scalar_witness};
use super::report::{Claim, SuiteReport};
use crate::combin::{multiplicity, partitions, qdim_sp};
use crate::error::Result;
use crate::exact::{Field, GaussianRational, RatFunc, Rationals, Symbolic};
use crate::rep::{build_u, family_word, qdim_v, Atom, PointRep, RepContext, SparseMat};
use crate::traces::{markov_phi, partial_qtrace};
use crate::weave::{hecke_basis, spanning_family, theta, AlgebraExpr, Variant};

/// Sampling parameters for checks above the symbolic size limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MarkovOptions {
    pub seed: u64,
    /// Number of random rational points.
    pub points: usize,
    /// Number of random pairs for the trace property.
    pub pairs: usize,
    /// Largest `n` checked symbolically.
    pub symbolic_max_n: usize,
}

impl Default for MarkovOptions {
    fn default() -> Self {
        Self { seed: 0, points: 5, pairs: 200, symbolic_max_n: 2 }
    }
}

/// Random nonzero rational points `a/b` with `s² ≠ 1`, at which the
/// representation has no poles.
pub fn random_points(ctx: &RepContext, count: usize, rng: &mut impl Rng) -> Vec<GaussianRational> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a: i64 = rng.gen_range(2..=40);
        let b: i64 = rng.gen_range(1..=40);
        let s = GaussianRational::from_ratio(a, b);
        if s.is_one() || out.contains(&s) {
            continue;
        }
        if PointRep::new(Rationals, ctx.with_n(1), &s).is_ok() {
            out.push(s);
        }
    }
    out
}

fn word_text(w: &[Atom]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|a| match a {
            Atom::U(i) => format!("u{i}"),
            Atom::G(i) => format!("g{i}"),
            Atom::E(1) => "e".into(),
            Atom::E(r) => format!("e({r})"),
            Atom::D => "D".into(),
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn concat(a: &[Atom], b: &[Atom]) -> Vec<Atom> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

fn g_atoms(word: &[usize]) -> Vec<Atom> {
    word.iter().map(|&i| Atom::G(i)).collect()
}

/// The engines on which the family checks run: one symbolic engine, or one
/// engine per random point.
enum Engines {
    Symbolic { small: PointRep<Symbolic>, big: PointRep<Symbolic> },
    Points { small: Vec<PointRep<Rationals>>, big: Vec<PointRep<Rationals>>, labels: Vec<String> },
}

/// Checks `lhs(engine) == rhs(engine)` on a word-level identity; returns a witness.
fn compare_words<F: Field>(
    rep: &PointRep<F>,
    label: &str,
    lhs: &[Atom],
    rhs: &[Atom],
) -> Result<Option<String>> {
    let a = rep.phi(lhs)?;
    let b = rep.phi(rhs)?;
    Ok((a != b).then(|| format!("{label}: phi({}) = {a:?}, phi({}) = {b:?}", word_text(lhs), word_text(rhs))))
}

fn markov_property<F: Field>(small: &PointRep<F>, big: &PointRep<F>, x: &[Atom], label: &str) -> Result<Option<String>> {
    let n = small.context().n;
    let f = small.field();
    let lhs = big.phi(&concat(x, &[Atom::G(n)]))?;
    let rhs = f.mul(&small.phi(x)?, &big.phi(&[Atom::G(n)])?);
    Ok((lhs != rhs).then(|| format!("{label}x = {}: phi(x g_{n}) = {lhs:?}, phi(x)phi(g_{n}) = {rhs:?}", word_text(x))))
}

/// Trace identities of the Markov functional `φ`.
pub fn markov_suite(ctx: &RepContext, opts: &MarkovOptions) -> Result<SuiteReport> {
    let n = ctx.n;
    let mut rep = SuiteReport::new(
        "markov",
        json!({"N": ctx.big_n, "n": n, "variant": ctx.variant, "fault": ctx.fault,
               "points": opts.points, "pairs": opts.pairs}),
    )
    .with_seed(opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let qd = qdim_v(ctx);

    let sym = PointRep::new(Symbolic, *ctx, &RatFunc::s_pow(1))?;
    rep.push(Claim::from_witness("phi-one", "phi(1) = 1", scalar_witness(&sym.phi(&[])?, &RatFunc::one())));

    let mut items = None;
    for r in 1..=n.min(3) {
        let w = scalar_witness(&sym.phi(&[Atom::E(r)])?, &qd.pow(-(r as i32))?);
        if items.is_none() {
            items = w.map(|w| format!("r = {r}: {w}"));
        }
    }
    rep.push(Claim::from_witness("phi-e-r", "phi(e_(r)) = [N]^-r", items));

    let c2 = ctx.with_n(2);
    let phi2 = |t: &str| markov_phi(&c2, &AlgebraExpr::parse(t, 2, ctx.variant)?);
    let nm1 = RatFunc::from_laurent(crate::exact::q_int(ctx.big_n as i64 - 1));
    rep.push(Claim::from_witness("phi-u1", "phi(u1) = [N-1]/[N]", scalar_witness(&phi2("u1")?, &nm1.checked_div(&qd)?)));
    let gq = RatFunc::q_pow(ctx.big_n as i32).checked_div(&qd)?;
    rep.push(Claim::from_witness("phi-g1", "phi(g1) = q^N/[N]", scalar_witness(&phi2("g1")?, &gq)));

    let c1 = ctx.with_n(1);
    let u = build_u(&c2, 1)?;
    let pu = partial_qtrace(&c1, &u)?;
    let w = match pu.as_scalar() {
        Some(c) => scalar_witness(&c, &nm1),
        None => matrix_witness(&pu, &SparseMat::scalar(ctx.big_n, &nm1)),
    };
    rep.push(Claim::from_witness("partial-trace-scalar", "partial trace of U_n = [N-1]·1", w));

    let family: Vec<Vec<Atom>> = spanning_family(n).iter().map(family_word).collect();
    let hecke: Vec<Vec<Atom>> = hecke_basis(n).iter().map(|w| g_atoms(w)).collect();

    let engines = if n <= opts.symbolic_max_n {
        Engines::Symbolic { small: sym, big: PointRep::new(Symbolic, ctx.with_n(n + 1), &RatFunc::s_pow(1))? }
    } else {
        let pts = random_points(ctx, opts.points.max(1), &mut rng);
        Engines::Points {
            small: pts.iter().map(|s| PointRep::new(Rationals, *ctx, s)).collect::<Result<_>>()?,
            big: pts.iter().map(|s| PointRep::new(Rationals, ctx.with_n(n + 1), s)).collect::<Result<_>>()?,
            labels: pts.iter().map(|s| s.to_string()).collect(),
        }
    };
    let mode = match &engines {
        Engines::Symbolic { .. } => "symbolic".to_string(),
        Engines::Points { labels, .. } => format!("at s in {{{}}}", labels.join(", ")),
    };

    // Markov property over the whole family, at every engine.
    let mut w = None;
    for x in &family {
        w = match &engines {
            Engines::Symbolic { small, big } => markov_property(small, big, x, "")?,
            Engines::Points { small, big, labels } => {
                let mut w = None;
                for ((a, b), l) in small.iter().zip(big).zip(labels) {
                    w = markov_property(a, b, x, &format!("s = {l}, "))?;
                    if w.is_some() {
                        break;
                    }
                }
                w
            }
        };
        if w.is_some() {
            break;
        }
    }
    rep.push(Claim::from_witness("markov-property", "phi(x g_n) = phi(x) phi(g_n)", w).with_detail(format!("{} elements, {mode}", family.len())));

    // φ(hx) = φ(xh) and φ(xy) = φ(yx).
    let mut hecke_pairs = Vec::new();
    for h in &hecke {
        for x in &family {
            hecke_pairs.push((h.clone(), x.clone()));
        }
    }
    let mut all_pairs = Vec::new();
    match &engines {
        Engines::Symbolic { .. } => {
            for (i, x) in family.iter().enumerate() {
                for y in &family[i + 1..] {
                    all_pairs.push((x.clone(), y.clone()));
                }
            }
        }
        Engines::Points { .. } => {
            for _ in 0..opts.pairs {
                let i = rng.gen_range(0..family.len());
                let j = rng.gen_range(0..family.len());
                all_pairs.push((family[i].clone(), family[j].clone()));
            }
        }
    }
    for (id, anchor, pairs) in [
        ("hecke-trace", "phi(hx) = phi(xh)", &hecke_pairs),
        ("trace-property", "phi(xy) = phi(yx)", &all_pairs),
    ] {
        let mut w = None;
        for (k, (x, y)) in pairs.iter().enumerate() {
            let (lhs, rhs) = (concat(x, y), concat(y, x));
            w = match &engines {
                Engines::Symbolic { small, .. } => compare_words(small, "", &lhs, &rhs)?,
                Engines::Points { small, labels, .. } => {
                    let p = k % small.len();
                    compare_words(&small[p], &format!("s = {}", labels[p]), &lhs, &rhs)?
                }
            };
            if w.is_some() {
                break;
            }
        }
        rep.push(Claim::from_witness(id, anchor, w).with_detail(format!("{} pairs, {mode}", pairs.len())));
    }

    // Θ-compression and reversal, symbolic and exhaustive on Hecke words.
    let mut w_theta = None;
    let mut w_rev = None;
    for m in 2..=n.min(3) {
        let cm = ctx.with_n(m);
        let pr = PointRep::new(Symbolic, cm, &RatFunc::s_pow(1))?;
        let words = hecke_basis(m);
        for h in &words {
            let th = theta(h, m)?;
            if w_theta.is_none() {
                let (a, b) = (pr.sandwich(&g_atoms(h))?, pr.sandwich(&g_atoms(&th))?);
                w_theta = scalar_witness(&a, &b).map(|w| format!("n = {m}, h = {}: {w}", word_text(&g_atoms(h))));
            }
            if w_rev.is_some() {
                continue;
            }
            for h2 in &words {
                // Tr_q(H1 E H2) = xᵀH2 D H1 x / ν^n and Tr(ΘH1 E ΘH2) = xᵀ ΘH2 ΘH1 x / ν^n
                let lhs = pr.sandwich(&concat(&concat(&g_atoms(h2), &[Atom::D]), &g_atoms(h)))?;
                let rhs = pr.sandwich(&concat(&g_atoms(&theta(h2, m)?), &g_atoms(&th)))?;
                if lhs != rhs {
                    w_rev = Some(format!(
                        "n = {m}, h1 = {}, h2 = {}: {lhs} vs {rhs}",
                        word_text(&g_atoms(h)),
                        word_text(&g_atoms(h2))
                    ));
                    break;
                }
            }
        }
    }
    rep.push(Claim::from_witness("theta-compression", "e_(n) h e_(n) = e_(n) Theta_n(h) e_(n)", w_theta));
    rep.push(Claim::from_witness("reversal-trace", "Tr_q(h1 E h2) = Tr(Theta h1 E Theta h2)", w_rev));

    let mut w = None;
    for m in 1..=4 {
        w = weight_witness(ctx.big_n, m)?;
        if w.is_some() {
            break;
        }
    }
    rep.push(Claim::from_witness("weight-consistency", "sum m_{n,lambda} qdim(lambda) = [N]^n", w));
    Ok(rep)
}

/// `Σ_λ m_{n,λ}·qdim_sp(λ, k) = [N]^n`; `Some(witness)` on failure.
pub fn weight_witness(big_n: usize, n: usize) -> Result<Option<String>> {
    let ctx = RepContext::new(big_n, n, Variant::Plus)?;
    let k = ctx.k();
    let mut acc = RatFunc::from_int(0);
    for size in 0..=n {
        for lam in partitions(size) {
            let m = multiplicity(n, &lam, big_n)?;
            if m == 0 {
                continue;
            }
            acc = &acc + &qdim_sp(&lam, k)?.scale(&GaussianRational::from_int(m as i64));
        }
    }
    let expect = qdim_v(&ctx).pow(n as i32)?;
    Ok(scalar_witness(&acc, &expect).map(|w| format!("N = {big_n}, n = {n}: {w}")))
}

/// The weight identity for `n = 1..=n_max`.
pub fn weight_suite(big_n: usize, n_max: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("weights", json!({"N": big_n, "n_max": n_max}));
    for n in 1..=n_max {
        rep.push(Claim::from_witness(
            format!("weight-consistency-{n}"),
            "sum m_{n,lambda} qdim(lambda) = [N]^n",
            weight_witness(big_n, n)?,
        ));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::Fault;

    #[test]
    fn symbolic_n2_passes() {
        for v in [Variant::Plus, Variant::Minus] {
            let ctx = RepContext::new(3, 2, v).unwrap();
            let r = markov_suite(&ctx, &MarkovOptions::default()).unwrap();
            assert!(r.passed(), "{v}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn d_exponent_fault_is_caught() {
        let ctx = RepContext::new(3, 2, Variant::Plus).unwrap().with_fault(Fault::DExponent);
        let r = markov_suite(&ctx, &MarkovOptions::default()).unwrap();
        assert!(!r.claim("markov-property").unwrap().passed);
    }

    #[test]
    fn weights_n3() {
        assert!(weight_suite(5, 3).unwrap().passed());
    }
}
