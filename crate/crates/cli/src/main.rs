use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cnalg::combin::{bratteli, end_dim_breakdown, end_dim_formula, involution_number};
use cnalg::exact::parse_scalar;
use cnalg::rep::{Fault, RepContext};
use cnalg::traces::{markov_phi, TraceReport};
use cnalg::verify::{
    basis_suite, classical_limit_suite, compression_suite, dimension_suite, markov_suite, relations_suite,
    variant_iso_suite, BasisOptions, MarkovOptions, Strategy, SuiteReport,
};
use cnalg::weave::{AlgebraExpr, Variant};

/// Centralizer algebras of quantum tensor powers: tables, traces and verification suites.
#[derive(Parser, Debug)]
#[command(name = "cnalg", version)]
struct Cli {
    /// Key=value file supplying defaults for flags not given on the command line.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bratteli diagram of V^{⊗n} for the odd symplectic group.
    Bratteli(BratteliArgs),
    /// Dimensions of C_n with the breakdown by r.
    Dims(DimsArgs),
    /// Run a verification suite; exit 0 iff every claim passes.
    Verify(VerifyArgs),
    /// Markov trace of an algebra expression.
    Trace(TraceArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Relations,
    Markov,
    Basis,
    Classical,
    Dimensions,
    VariantIso,
    Compression,
    All,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        <Suite as ValueEnum>::from_str(s, true)
    }
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long = "N")]
    big_n: Option<usize>,
    #[arg(long = "n")]
    n: Option<usize>,
    #[arg(long)]
    variant: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BratteliArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Args, Debug)]
struct DimsArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long = "n-max")]
    n_max: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum)]
    suite: Option<Suite>,
    /// symbolic, evaluated (evaluated-rational) or modular.
    #[arg(long)]
    strategy: Option<String>,
    /// Number of consecutive seeds for the basis suite.
    #[arg(long)]
    seeds: Option<usize>,
    /// Evaluation point for the evaluated strategy, e.g. 3/2.
    #[arg(long)]
    point: Option<String>,
    /// Compression depth.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    /// Random rational points for the sampled Markov checks.
    #[arg(long)]
    points: Option<usize>,
    /// Random pairs for the sampled trace property.
    #[arg(long)]
    pairs: Option<usize>,
    #[arg(long = "symbolic-max-dim")]
    symbolic_max_dim: Option<usize>,
    #[arg(long = "numeric-max-dim")]
    numeric_max_dim: Option<usize>,
    /// Perturb one constant (beta, d-exponent or u-entry) as a negative control.
    #[arg(long)]
    fault: Option<String>,
}

#[derive(Args, Debug)]
struct TraceArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    expr: Option<String>,
}

/// Flag values with config-file fallback.
struct Settings {
    file: HashMap<String, String>,
}

impl Settings {
    fn load(path: Option<&Path>) -> Result<Self> {
        let mut file = HashMap::new();
        if let Some(p) = path {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            for (k, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) =
                    line.split_once('=').ok_or_else(|| anyhow!("{}:{}: expected key=value", p.display(), k + 1))?;
                file.insert(key.trim().replace('-', "_"), value.trim().to_string());
            }
        }
        Ok(Self { file })
    }

    fn get<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            Some(v) => v.parse().map(Some).map_err(|e| anyhow!("config key {key}: {e}")),
            None => Ok(None),
        }
    }

    fn or<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.get(flag, key)?.unwrap_or(default))
    }

    fn required<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        self.get(flag, key)?.ok_or_else(|| anyhow!("--{key} is required"))
    }
}

struct Resolved {
    big_n: usize,
    n: usize,
    variant: Variant,
    seed: u64,
    format: Option<Format>,
    output: Option<PathBuf>,
}

fn resolve(c: Common, st: &Settings, default_n: usize, default_small_n: usize) -> Result<Resolved> {
    let variant: String = st.or(c.variant, "variant", "plus".to_string())?;
    Ok(Resolved {
        big_n: st.or(c.big_n, "N", default_n)?,
        n: st.or(c.n, "n", default_small_n)?,
        variant: variant.parse().map_err(|e| anyhow!("{e}"))?,
        seed: st.or(c.seed, "seed", 0)?,
        format: st.get(c.format, "format")?,
        output: st.get(c.output, "output")?,
    })
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

fn cmd_bratteli(a: BratteliArgs, st: &Settings) -> Result<bool> {
    let r = resolve(a.common, st, 5, 2)?;
    let depth = st.or(a.depth, "depth", 3)?;
    let g = bratteli(r.big_n, depth)?;
    let text = match r.format.unwrap_or(Format::Dot) {
        Format::Dot => format!("// seed {}\n{}", r.seed, g.to_dot()),
        Format::Json => {
            let mut v = g.to_json();
            v["N"] = json!(r.big_n);
            v["seed"] = json!(r.seed);
            pretty(&v)
        }
        Format::Csv => g.to_csv(),
        Format::Text => {
            let mut s = format!("N = {}, seed {}\n", r.big_n, r.seed);
            let v = g.to_json();
            for level in v["levels"].as_array().into_iter().flatten() {
                let cells: Vec<String> = level["vertices"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .map(|x| format!("{}:{}", x["diagram"].as_str().unwrap_or(""), x["multiplicity"]))
                    .collect();
                s.push_str(&format!("{}: {}\n", level["level"], cells.join(" ")));
            }
            s
        }
    };
    emit(&text, r.output.as_deref())?;
    Ok(true)
}

fn cmd_dims(a: DimsArgs, st: &Settings) -> Result<bool> {
    let r = resolve(a.common, st, 5, 2)?;
    let n_max = st.or(a.n_max, "n_max", 4)?;
    if n_max > 8 {
        bail!("n-max {n_max} exceeds the budget of 8");
    }
    let rows: Vec<(usize, u64, Vec<u64>)> = (1..=n_max).map(|n| (n, end_dim_formula(n), end_dim_breakdown(n))).collect();
    let h: Vec<u64> = (0..=n_max).map(involution_number).collect();
    let text = match r.format.unwrap_or(Format::Text) {
        Format::Json => pretty(&json!({
            "seed": r.seed,
            "h": h,
            "dims": rows.iter().map(|(n, d, b)| json!({"n": n, "dim": d, "by_r": b})).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("n,dim,by_r\n");
            for (n, d, b) in &rows {
                let parts: Vec<String> = b.iter().map(u64::to_string).collect();
                s.push_str(&format!("{n},{d},\"{}\"\n", parts.join(";")));
            }
            s
        }
        Format::Text => {
            let mut s = format!("seed {}\n", r.seed);
            s.push_str(&format!("h: {}\n", h.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")));
            for (n, d, b) in &rows {
                s.push_str(&format!(
                    "n = {n}: {d} = {}\n",
                    b.iter().map(u64::to_string).collect::<Vec<_>>().join(" + ")
                ));
            }
            s
        }
        Format::Dot => bail!("dims supports json, csv and text"),
    };
    emit(&text, r.output.as_deref())?;
    Ok(true)
}

fn report_text(reports: &[Value]) -> String {
    let mut s = String::new();
    for rep in reports {
        let suite = rep["suite"].as_str().unwrap_or("");
        for c in rep["claims"].as_array().into_iter().flatten() {
            let id = c["id"].as_str().unwrap_or("");
            if c["passed"].as_bool() == Some(true) {
                s.push_str(&format!("PASS {suite}/{id}"));
            } else {
                s.push_str(&format!("FAIL {suite}/{id}: {}", c["witness"].as_str().unwrap_or("")));
            }
            if let Some(d) = c["detail"].as_str() {
                s.push_str(&format!(" ({d})"));
            }
            s.push('\n');
        }
    }
    s
}

fn cmd_verify(a: VerifyArgs, st: &Settings) -> Result<bool> {
    let r = resolve(a.common, st, 5, 2)?;
    let suite = st.required(a.suite, "suite")?;
    let strategy: Strategy = st.or(a.strategy, "strategy", "evaluated".to_string())?.parse()?;
    let mut ctx = RepContext::new(r.big_n, r.n, r.variant)?;
    if let Some(f) = st.get::<String>(a.fault, "fault")? {
        let fault: Fault = serde_json::from_value(Value::String(f.clone())).map_err(|_| anyhow!("unknown fault '{f}'"))?;
        ctx = ctx.with_fault(fault);
    }
    let defaults = BasisOptions::default();
    let point = st.get(a.point, "point")?;
    let basis_opts = BasisOptions {
        strategy,
        seed: r.seed,
        point: match point {
            Some(p) => Some(
                parse_scalar(&p)?
                    .as_constant()
                    .ok_or_else(|| anyhow!("--point must be a constant, got {p}"))?,
            ),
            None => None,
        },
        symbolic_max_dim: st.or(a.symbolic_max_dim, "symbolic_max_dim", defaults.symbolic_max_dim)?,
        numeric_max_dim: st.or(a.numeric_max_dim, "numeric_max_dim", defaults.numeric_max_dim)?,
        ..defaults
    };
    let seeds = st.or(a.seeds, "seeds", 3)?;
    let md = MarkovOptions::default();
    let markov_opts = MarkovOptions {
        seed: r.seed,
        points: st.or(a.points, "points", md.points)?,
        pairs: st.or(a.pairs, "pairs", md.pairs)?,
        ..md
    };
    let depth = st.or(a.r, "r", 1)?;
    let n_max = st.or(a.n_max, "n_max", 6)?;

    let mut reports: Vec<Value> = Vec::new();
    let mut push = |rep: SuiteReport, extra: Option<(&str, Value)>| {
        let mut v = rep.with_seed(r.seed).to_json();
        if let Some((k, x)) = extra {
            v[k] = x;
        }
        reports.push(v);
    };
    let wants = |s: Suite| s == suite || suite == Suite::All;
    if wants(Suite::Relations) {
        push(relations_suite(&ctx)?, None);
    }
    if wants(Suite::Markov) {
        push(markov_suite(&ctx, &markov_opts)?, None);
    }
    if wants(Suite::Basis) {
        let (rep, certs) = basis_suite(&ctx, &basis_opts, seeds)?;
        let certs: Vec<Value> = certs.iter().map(|c| c.to_json()).collect();
        push(rep, Some(("certificates", Value::Array(certs))));
    }
    if wants(Suite::Classical) {
        push(classical_limit_suite(r.big_n, r.n)?, None);
    }
    if wants(Suite::Dimensions) {
        push(dimension_suite(n_max)?, None);
    }
    if wants(Suite::VariantIso) {
        push(variant_iso_suite(&ctx)?, None);
    }
    if wants(Suite::Compression) && (suite == Suite::Compression || r.n >= 2) {
        push(compression_suite(&ctx, depth)?, None);
    }

    let passed = reports.iter().all(|v| {
        v["claims"].as_array().into_iter().flatten().all(|c| c["passed"].as_bool() == Some(true))
    });
    let text = match r.format.unwrap_or(Format::Json) {
        Format::Json if reports.len() == 1 => pretty(&reports[0]),
        Format::Json => pretty(&json!({"seed": r.seed, "passed": passed, "suites": reports})),
        Format::Text => format!("seed {}\n{}", r.seed, report_text(&reports)),
        f => bail!("verify supports json and text, not {f:?}"),
    };
    emit(&text, r.output.as_deref())?;
    Ok(passed)
}

fn cmd_trace(a: TraceArgs, st: &Settings) -> Result<bool> {
    let r = resolve(a.common, st, 5, 2)?;
    let text: String = st.required(a.expr, "expr")?;
    let ctx = RepContext::new(r.big_n, r.n, r.variant)?;
    let expr = AlgebraExpr::parse(&text, r.n, r.variant)?;
    let value = markov_phi(&ctx, &expr)?;
    let out = match r.format.unwrap_or(Format::Text) {
        Format::Text => format!("{value}\n"),
        Format::Json => {
            let mut v = TraceReport::new(text, r.variant, r.big_n, r.n, value, None).to_json();
            v["seed"] = json!(r.seed);
            pretty(&v)
        }
        f => bail!("trace supports json and text, not {f:?}"),
    };
    emit(&out, r.output.as_deref())?;
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    let st = Settings::load(cli.config.as_deref())?;
    if let Some(j) = st.get(cli.jobs, "jobs")? {
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
    }
    match cli.command {
        Command::Bratteli(a) => cmd_bratteli(a, &st),
        Command::Dims(a) => cmd_dims(a, &st),
        Command::Verify(a) => cmd_verify(a, &st),
        Command::Trace(a) => cmd_trace(a, &st),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
