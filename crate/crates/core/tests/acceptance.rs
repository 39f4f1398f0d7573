//! Acceptance criteria, one PASS/FAIL line each. Every comparison is exact;
//! the only tolerances are wall-clock budgets, pinned below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::One;

use cnalg::combin::{end_dim_formula, end_dim_paths};
use cnalg::exact::{parse_scalar, GaussianRational, RatFunc};
use cnalg::rep::{Fault, RepContext};
use cnalg::traces::{block_coefficients, block_coefficients_closed_form};
use cnalg::verify::{
    basis_rank, classical_limit_suite, dimension_suite, markov_suite, relations_suite, weight_suite, BasisOptions,
    MarkovOptions, Strategy, SuiteReport,
};
use cnalg::weave::Variant;

const DIMENSION_BUDGET: Duration = Duration::from_secs(1);
const RELATIONS_BUDGET: Duration = Duration::from_secs(600);
const MARKOV_N3_POINTS: usize = 5;
const TRACE_PAIRS: usize = 200;
const BASIS_SEEDS: [u64; 3] = [1, 2, 3];

type Outcome = Result<String, String>;

fn failures(r: &SuiteReport) -> String {
    r.failures()
        .map(|c| format!("{}: {}", c.id, c.witness.as_deref().unwrap_or("")))
        .collect::<Vec<_>>()
        .join("; ")
}

fn require_pass(r: &SuiteReport, what: &str) -> Result<(), String> {
    if r.passed() {
        Ok(())
    } else {
        Err(format!("{what}: {}", failures(r)))
    }
}

fn require_claims(r: &SuiteReport, ids: &[&str], what: &str) -> Result<(), String> {
    for id in ids {
        if r.claim(id).is_none() {
            return Err(format!("{what}: claim {id} missing"));
        }
    }
    Ok(())
}

fn ctx(big_n: usize, n: usize, v: Variant) -> RepContext {
    RepContext::new(big_n, n, v).expect("valid context")
}

fn rf(text: &str) -> RatFunc {
    parse_scalar(text).expect("oracle expression parses")
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let expected = [2u64, 10, 76, 764];
    for (k, &want) in expected.iter().enumerate() {
        let n = k + 1;
        let formula = end_dim_formula(n);
        let paths = end_dim_paths(n, 2 * n + 3).map_err(|e| e.to_string())?;
        if formula != want || paths != want {
            return Err(format!("n = {n}: formula {formula}, paths {paths}, expected {want}"));
        }
    }
    let el = t.elapsed();
    if el > DIMENSION_BUDGET {
        return Err(format!("took {el:?}, budget {DIMENSION_BUDGET:?}"));
    }
    Ok(format!("2, 10, 76, 764 by formula and paths in {el:?}"))
}

fn criterion_2() -> Outcome {
    let full = [
        "hecke-quadratic",
        "hecke-braid",
        "relation-b",
        "relation-c",
        "corollary-e3",
        "u12-u21",
        "p-squared",
        "w0-reversal",
    ];
    let mut slowest = Duration::ZERO;
    for v in [Variant::Plus, Variant::Minus] {
        for big_n in [3, 5, 7] {
            for n in 1..=3 {
                let t = Instant::now();
                let r = relations_suite(&ctx(big_n, n, v)).map_err(|e| e.to_string())?;
                let el = t.elapsed();
                slowest = slowest.max(el);
                let what = format!("{v} N = {big_n} n = {n}");
                require_pass(&r, &what)?;
                if n == 3 {
                    require_claims(&r, &full, &what)?;
                }
                if el > RELATIONS_BUDGET {
                    return Err(format!("{what} took {el:?}, budget {RELATIONS_BUDGET:?}"));
                }
            }
        }
    }
    Ok(format!("both variants, N in 3, 5, 7, n <= 3, zero residue; slowest {slowest:.1?}"))
}

fn criterion_3() -> Outcome {
    for big_n in [3usize, 5, 7] {
        let m = big_n as i64;
        for v in [Variant::Plus, Variant::Minus] {
            let c = ctx(big_n, 2, v);
            let (a, cc) = block_coefficients(&c).map_err(|e| e.to_string())?;
            let (a0, c0) = block_coefficients_closed_form(&c);
            let (sg, shift) = match v {
                Variant::Plus => ("-", "+ 1"),
                Variant::Minus => ("+", "- 1"),
            };
            let beta = rf(&format!("(s^{}{sg}s^{})/(s^{m}{sg}s^{})", m - 2, 2 - m, -m));
            let a1 = rf(&format!("(s^{}{sg}s^{})/(s^{m}{sg}s^{}) {shift}", m - 2, 2 - m, -m));
            if a != a0 || cc != c0 || cc != beta || a != a1 {
                return Err(format!("{v} N = {big_n}: a = {a}, c = {cc}; closed forms a = {a0}, c = {c0}"));
            }
            if v == Variant::Plus && &a - &cc != RatFunc::one() {
                return Err(format!("N = {big_n}: a - c = {}", &a - &cc));
            }
        }
    }
    let (_, c) = block_coefficients(&ctx(3, 2, Variant::Plus)).map_err(|e| e.to_string())?;
    let at2 = c.evaluate_q(&GaussianRational::from_int(2)).map_err(|e| e.to_string())?;
    if at2 != GaussianRational::from_ratio(2, 7) {
        return Err(format!("c(N = 3, q = 2) = {at2}"));
    }
    Ok("closed forms match for N in 3, 5, 7; a - c = 1; c(3, q = 2) = 2/7".into())
}

fn criterion_4() -> Outcome {
    for v in [Variant::Plus, Variant::Minus] {
        let r = markov_suite(&ctx(5, 2, v), &MarkovOptions::default()).map_err(|e| e.to_string())?;
        require_pass(&r, &format!("{v} N = 5 n = 2"))?;
    }
    let opts = MarkovOptions { seed: 7, points: MARKOV_N3_POINTS, pairs: TRACE_PAIRS, symbolic_max_n: 2 };
    let r = markov_suite(&ctx(5, 3, Variant::Plus), &opts).map_err(|e| e.to_string())?;
    require_pass(&r, "plus N = 5 n = 3")?;
    require_claims(&r, &["phi-e-r", "phi-u1", "phi-g1", "markov-property", "trace-property", "theta-compression"], "n = 3")?;
    let detail = r.claim("markov-property").and_then(|c| c.detail.clone()).unwrap_or_default();
    Ok(format!("n = 2 symbolic for both variants; n = 3 {detail}; {TRACE_PAIRS} sampled trace pairs"))
}

fn criterion_5() -> Outcome {
    let sym = BasisOptions { strategy: Strategy::Symbolic, ..Default::default() };
    let c5 = basis_rank(&ctx(5, 2, Variant::Plus), &sym).map_err(|e| e.to_string())?;
    if c5.rank != 10 || !c5.certified {
        return Err(format!("N = 5 n = 2: rank {} of {}", c5.rank, c5.family_size));
    }
    let c3 = basis_rank(&ctx(3, 2, Variant::Plus), &sym).map_err(|e| e.to_string())?;
    if c3.rank != 9 || c3.certified {
        return Err(format!("N = 3 n = 2: rank {} of {}", c3.rank, c3.family_size));
    }
    for seed in BASIS_SEEDS {
        let opts = BasisOptions { strategy: Strategy::EvaluatedRational, seed, ..Default::default() };
        let c = basis_rank(&ctx(7, 3, Variant::Plus), &opts).map_err(|e| e.to_string())?;
        if c.rank != 76 || !c.certified {
            return Err(format!("N = 7 n = 3 seed {seed}: rank {} of {}", c.rank, c.family_size));
        }
    }
    Ok(format!("10/10 symbolic, 76/76 at {} evaluated seeds, 9 < 10 at N = 3", BASIS_SEEDS.len()))
}

fn criterion_6() -> Outcome {
    let mut ranks = Vec::new();
    for (big_n, n, want) in [(3, 2, 9), (3, 3, 51), (5, 2, 10)] {
        let r = classical_limit_suite(big_n, n).map_err(|e| e.to_string())?;
        require_pass(&r, &format!("N = {big_n} n = {n}"))?;
        let detail = r.claim("closure-rank").and_then(|c| c.detail.clone()).unwrap_or_default();
        if !detail.starts_with(&format!("rank {want},")) {
            return Err(format!("N = {big_n} n = {n}: {detail}, expected rank {want}"));
        }
        ranks.push(want);
    }
    let r = classical_limit_suite(7, 1).map_err(|e| e.to_string())?;
    require_pass(&r, "N = 7")?;
    require_claims(&r, &["skew-kernel", "skew-rank", "pole-free"], "N = 7")?;
    Ok(format!("closure ranks {ranks:?}; A v0 = 0 and rank A(1) = N - 1 for N in 3, 5, 7"))
}

fn criterion_7() -> Outcome {
    for big_n in [5, 7] {
        let r = weight_suite(big_n, 4).map_err(|e| e.to_string())?;
        require_pass(&r, &format!("N = {big_n}"))?;
        if r.claims.len() != 4 {
            return Err(format!("N = {big_n}: {} claims", r.claims.len()));
        }
    }
    Ok("n <= 4, N in 5, 7".into())
}

fn criterion_8() -> Outcome {
    let r = dimension_suite(8).map_err(|e| e.to_string())?;
    require_pass(&r, "n_max = 8")?;
    require_claims(&r, &["h-values", "h-recursion", "branching", "multiplicity-sum", "hyperoctahedral"], "dimensions")?;
    Ok(format!("{} combinatorial identities", r.claims.len()))
}

fn criterion_9() -> Outcome {
    let located = |r: &SuiteReport, id: &str, what: &str| -> Result<(), String> {
        match r.claim(id) {
            Some(c) if !c.passed && c.witness.as_deref().is_some_and(|w| !w.is_empty()) => Ok(()),
            _ => Err(format!("{what}: {id} did not fail with a witness")),
        }
    };
    let r = relations_suite(&ctx(3, 3, Variant::Plus).with_fault(Fault::Beta)).map_err(|e| e.to_string())?;
    located(&r, "relation-b", "beta")?;
    if !r.claim("relation-b").and_then(|c| c.witness.clone()).unwrap_or_default().contains("entry (") {
        return Err("beta: witness does not locate an entry".into());
    }
    let r = markov_suite(&ctx(3, 2, Variant::Plus).with_fault(Fault::DExponent), &MarkovOptions::default())
        .map_err(|e| e.to_string())?;
    located(&r, "markov-property", "D exponent")?;
    for v in [Variant::Plus, Variant::Minus] {
        let r = relations_suite(&ctx(3, 2, v).with_fault(Fault::UEntry)).map_err(|e| e.to_string())?;
        located(&r, "hecke-quadratic", "U entry")?;
    }
    Ok("beta, D exponent and U entry perturbations each caught with a witness".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("dimension table", criterion_1),
        ("relations suite", criterion_2),
        ("block coefficients", criterion_3),
        ("Markov suite", criterion_4),
        ("basis certification", criterion_5),
        ("classical limit", criterion_6),
        ("weight consistency", criterion_7),
        ("combinatorics", criterion_8),
        ("negative controls", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f();
        let el = t.elapsed();
        match out {
            Ok(msg) => println!("PASS criterion {} ({name}): {msg} [{el:.1?}]", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {msg} [{el:.1?}]", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
