//! Command-line front end for `semigroup-moments`.
//!
//! [`run`] parses arguments and returns everything the process should print
//! along with its exit code, so the binary is a thin wrapper and tests can
//! call the commands in-process.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error (bad flags, bad
//! range, unknown model or function, unsupported expansion).

mod output;

use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use semigroup_moments::arithfun::{moment_table, WarlimontFn};
use semigroup_moments::asymptotics::{lambda_pointwise, moment_expansion, verify_expansion, LambdaValue};
use semigroup_moments::diagnostics::{strictly_decreasing_abs, Criterion};
use semigroup_moments::golden;
use semigroup_moments::rat::{self, Rat};
use semigroup_moments::semigroups::Semigroup;
use semigroup_moments::triples::{check_axiom_wr, derive_beta};

pub use output::Format;
use output::{approx, json_text, rats, strings, Grid};

#[derive(Debug, Parser)]
#[command(name = "semigroup-moments", version, about = "Exact moments of arithmetical functions on additive semigroups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Counts G_n and prime counts G_n^+ for n <= N.
    Counts(Common),
    /// Prime counts G_n^+ for n <= N.
    Primes(Common),
    /// Coefficients of the inverse count series 1 / Σ G_n x^n.
    Beta(Common),
    /// The ψ, ν, ξ and τ tables of the moment expansion.
    Expansion(Common),
    /// Exact moments μ_{F,M}(n) for n <= N.
    Moment(Common),
    /// λ_s(n) = ξ_s q^{s n^a} G_{n-s} / G_n over a range of n.
    Lambda(LambdaArgs),
    /// Run a check suite; exits 1 on the first failing check.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// graphs, even-graphs, fq-poly or explicit.
    #[arg(long, default_value = "graphs")]
    pub semigroup: String,
    /// Field size for fq-poly.
    #[arg(long)]
    pub q: Option<u64>,
    /// Number of variables for fq-poly.
    #[arg(long)]
    pub k: Option<u32>,
    /// Comma-separated counts G_0, G_1, ... for the explicit semigroup.
    #[arg(long, value_delimiter = ',')]
    pub counts: Option<Vec<String>>,
    /// one, dN (N >= 2), dstar, bigB or custom.
    #[arg(long, default_value = "d2")]
    pub function: String,
    /// Comma-separated values F(p^1), F(p^2), ... for the custom function.
    #[arg(long, value_delimiter = ',')]
    pub values: Option<Vec<String>>,
    /// Moment order M.
    #[arg(long = "M", default_value_t = 1)]
    pub moment: u32,
    /// Number of expansion terms R.
    #[arg(long = "R")]
    pub order: Option<usize>,
    /// Largest degree N.
    #[arg(long = "max-n")]
    pub max_n: Option<usize>,
    /// Degree range a..b (inclusive).
    #[arg(long = "n", value_parser = parse_range)]
    pub range: Option<RangeInclusive<usize>>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Compute residual rows in parallel; output is unchanged.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Clone, Args)]
pub struct LambdaArgs {
    #[command(flatten)]
    pub common: Common,
    /// Index s >= 1.
    #[arg(long, default_value_t = 1)]
    pub s: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Residual ratios of the R-term moment expansion.
    Expansion,
    /// Exact identities linking totals, primes, v, β and b.
    Lemma2,
    /// The half-range prime inequality.
    Lemma3,
    /// Self-convolution and successive-ratio growth conditions.
    Axiom,
    /// Bundled (or given) golden files.
    Golden,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Stable,
    Bounded,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Stable => Criterion::Stable,
            CriterionArg::Bounded => Criterion::Bounded,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = Suite::Expansion)]
    pub suite: Suite,
    /// Ratio criterion for the expansion and axiom suites.
    #[arg(long, value_enum, default_value_t = CriterionArg::Stable)]
    pub criterion: CriterionArg,
    /// Golden file to check instead of the bundled ones.
    #[arg(long)]
    pub golden: Vec<PathBuf>,
}

/// `a..b` with `a <= b`, both inclusive.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a range a..b, got `{s}`"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad range start in `{s}`"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad range end in `{s}`"))?;
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok(a..=b)
}

/// What the process prints and returns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Self {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    execute(&cli.command).unwrap_or_else(Outcome::usage)
}

type CmdResult = Result<Outcome, String>;

pub fn execute(command: &Command) -> CmdResult {
    match command {
        Command::Counts(c) => cmd_counts(c),
        Command::Primes(c) => cmd_primes(c),
        Command::Beta(c) => cmd_beta(c),
        Command::Expansion(c) => cmd_expansion(c),
        Command::Moment(c) => cmd_moment(c),
        Command::Lambda(a) => cmd_lambda(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn semigroup(c: &Common) -> Result<Semigroup, String> {
    if c.semigroup == "explicit" {
        let raw = c.counts.as_ref().ok_or("the explicit semigroup needs --counts")?;
        let counts = raw
            .iter()
            .map(|s| s.trim().parse::<BigInt>().map_err(|_| format!("bad count `{s}`")))
            .collect::<Result<Vec<_>, _>>()?;
        return Semigroup::explicit(counts).map_err(err);
    }
    if c.counts.is_some() {
        return Err("--counts only applies to --semigroup explicit".into());
    }
    Semigroup::from_name(&c.semigroup, c.q, c.k).map_err(err)
}

fn function(c: &Common) -> Result<WarlimontFn, String> {
    let values = c
        .values
        .as_ref()
        .map(|v| v.iter().map(|s| rat::parse(s.trim())).collect::<Result<Vec<Rat>, _>>())
        .transpose()
        .map_err(err)?;
    WarlimontFn::from_name(&c.function, values).map_err(err)
}

/// `--max-n`, or `default` capped at the last known degree of the model.
fn max_n(c: &Common, default: usize, model: &Semigroup) -> usize {
    c.max_n.unwrap_or_else(|| model.max_degree().map_or(default, |m| m.min(default)))
}

fn header(model: &Semigroup) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("semigroup".into(), json!(model.name()));
    m.insert("params".into(), json!(model.params()));
    m
}

/// A JSON object with the model header plus `fields`.
fn with_header(model: &Semigroup, fields: Value) -> Value {
    let mut m = header(model);
    if let Value::Object(extra) = fields {
        m.extend(extra);
    }
    Value::Object(m)
}

fn render(format: Format, json: impl FnOnce() -> Value, grid: impl FnOnce() -> Grid) -> String {
    match format {
        Format::Json => json_text(&json()),
        Format::Csv => grid().to_csv(),
        Format::Plain => grid().to_plain(),
    }
}

fn cmd_counts(c: &Common) -> CmdResult {
    let model = semigroup(c)?;
    let n = max_n(c, 10, &model);
    let counts = model.counts(n).map_err(err)?;
    let primes = model.primes(n).map_err(err)?;
    Ok(Outcome::ok(render(
        c.format,
        || with_header(&model, json!({"counts": strings(&counts), "primes": strings(&primes)})),
        || {
            let mut g = Grid::new(&["n", "G_n", "G+_n"]);
            for (i, (a, b)) in counts.iter().zip(&primes).enumerate() {
                g.push(vec![i.to_string(), a.to_string(), b.to_string()]);
            }
            g
        },
    )))
}

fn sequence(c: &Common, key: &str, column: &str, values: Vec<String>, model: &Semigroup) -> String {
    render(
        c.format,
        || with_header(model, json!({ key: values.clone() })),
        || {
            let mut g = Grid::new(&["n", column]);
            for (i, v) in values.iter().enumerate() {
                g.push(vec![i.to_string(), v.clone()]);
            }
            g
        },
    )
}

fn cmd_primes(c: &Common) -> CmdResult {
    let model = semigroup(c)?;
    let primes = model.primes(max_n(c, 10, &model)).map_err(err)?;
    Ok(Outcome::ok(sequence(c, "primes", "G+_n", strings(&primes), &model)))
}

fn cmd_beta(c: &Common) -> CmdResult {
    let model = semigroup(c)?;
    let beta = derive_beta(&model.counts_rat(max_n(c, 10, &model)).map_err(err)?);
    Ok(Outcome::ok(sequence(c, "beta", "beta_n", rats(&beta), &model)))
}

fn cmd_expansion(c: &Common) -> CmdResult {
    let model = semigroup(c)?;
    let f = function(c)?;
    let order = c.order.unwrap_or(5);
    let e = moment_expansion(&f, &model, c.moment, order).map_err(err)?;
    let poly_json = |p: &semigroup_moments::polyasym::Poly| rats(p.coeffs());
    let out = match c.format {
        Format::Json => json_text(&with_header(
            &model,
            json!({
                "function": f.name(),
                "M": c.moment,
                "R": order,
                "base": rat::to_string(e.psi.base()),
                "psi": e.psi.terms().iter().map(poly_json).collect::<Vec<_>>(),
                "nu": e.nu.entries().map(|(s, t, p)| json!({"s": s, "t": t, "coeffs": poly_json(p)})).collect::<Vec<_>>(),
                "xi": rats(&e.xi.xi),
                "tau": e.tau.tau.terms().iter().map(poly_json).collect::<Vec<_>>(),
            }),
        )),
        Format::Csv => {
            let mut g = Grid::new(&["series", "s", "t", "k", "coefficient"]);
            let mut poly_rows = |name: &str, s: usize, t: &str, p: &semigroup_moments::polyasym::Poly| {
                for (k, a) in p.coeffs().iter().enumerate() {
                    g.push(vec![name.into(), s.to_string(), t.into(), k.to_string(), rat::to_string(a)]);
                }
            };
            for (s, p) in e.psi.terms().iter().enumerate() {
                poly_rows("psi", s, "", p);
            }
            for (s, t, p) in e.nu.entries() {
                poly_rows("nu", s, &t.to_string(), p);
            }
            for (s, p) in e.tau.tau.terms().iter().enumerate() {
                poly_rows("tau", s, "", p);
            }
            for (s, x) in e.xi.xi.iter().enumerate() {
                g.push(vec!["xi".into(), s.to_string(), String::new(), "0".into(), rat::to_string(x)]);
            }
            g.to_csv()
        }
        Format::Plain => {
            let mut out = format!(
                "{} on {}, M = {}, R = {}, base q = {}\n",
                f.name(),
                model.name(),
                c.moment,
                order,
                rat::to_string(e.psi.base())
            );
            for (s, p) in e.psi.terms().iter().enumerate().skip(1) {
                out.push_str(&format!("psi_{s}(n) = {p}\n"));
            }
            for (s, t, p) in e.nu.entries() {
                out.push_str(&format!("nu_{s},{t}(n) = {p}\n"));
            }
            for (s, x) in e.xi.xi.iter().enumerate().skip(1) {
                out.push_str(&format!("xi_{s} = {}\n", rat::to_string(x)));
            }
            for (s, p) in e.tau.tau.terms().iter().enumerate() {
                out.push_str(&format!("tau_{s}(n) = {p}\n"));
            }
            out
        }
    };
    Ok(Outcome::ok(out))
}

fn cmd_moment(c: &Common) -> CmdResult {
    let model = semigroup(c)?;
    let f = function(c)?;
    let table = moment_table(&f, &model, c.moment, max_n(c, 10, &model)).map_err(err)?;
    let values = rats(&table.entries);
    Ok(Outcome::ok(render(
        c.format,
        || with_header(&model, json!({"function": table.function, "M": c.moment, "moments": values})),
        || {
            let mut g = Grid::new(&["n", "mu"]);
            for (i, v) in values.iter().enumerate() {
                g.push(vec![i.to_string(), v.clone()]);
            }
            g
        },
    )))
}

fn lambda_string(v: &LambdaValue) -> String {
    match v {
        LambdaValue::Exact(r) => rat::to_string(r),
        LambdaValue::Approx(x) => format!("{x:e}"),
    }
}

fn cmd_lambda(a: &LambdaArgs) -> CmdResult {
    let c = &a.common;
    let model = semigroup(c)?;
    let f = function(c)?;
    let range = c.range.clone().unwrap_or(a.s.max(1)..=max_n(c, 10, &model).max(a.s));
    let mut rows = Vec::new();
    for n in range {
        let v = lambda_pointwise(&f, &model, c.moment, a.s, n).map_err(err)?;
        let exact = matches!(v, LambdaValue::Exact(_));
        rows.push((n, lambda_string(&v), exact));
    }
    Ok(Outcome::ok(render(
        c.format,
        || {
            let values: Vec<Value> = rows
                .iter()
                .map(|(n, v, exact)| json!({"n": n, "value": v, "exact": exact}))
                .collect();
            with_header(&model, json!({"function": f.name(), "M": c.moment, "s": a.s, "lambda": values}))
        },
        || {
            let mut g = Grid::new(&["n", "lambda", "exact"]);
            for (n, v, exact) in &rows {
                g.push(vec![n.to_string(), v.clone(), exact.to_string()]);
            }
            g
        },
    )))
}

/// One named check in a verify run.
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

impl Check {
    fn new(name: impl Into<String>, result: Result<(), String>) -> Self {
        let (passed, detail) = match result {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        Self {
            name: name.into(),
            passed,
            detail,
        }
    }
}

fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    let c = &a.common;
    let criterion: Criterion = a.criterion.into();
    let mut extra = Value::Null;
    let mut table = None;
    let checks = match a.suite {
        Suite::Golden => verify_golden(&a.golden)?,
        Suite::Lemma2 | Suite::Lemma3 => {
            let model = semigroup(c)?;
            let n = max_n(c, 12, &model);
            let tr = model.triple(n).map_err(err)?;
            let show = |r: Result<(), semigroup_moments::triples::Failure>| r.map_err(|f| f.to_string());
            if a.suite == Suite::Lemma2 {
                vec![
                    Check::new(format!("lemma2 identities, n <= {n}"), show(tr.check_lemma2_identities(n))),
                    Check::new("beta convolution", show(tr.check_beta_convolution())),
                    Check::new("euler product", show(tr.check_product_identity())),
                ]
            } else {
                vec![Check::new(format!("lemma3 inequality, n <= {n}"), show(tr.check_lemma3(n)))]
            }
        }
        Suite::Axiom => {
            let model = semigroup(c)?;
            let n = max_n(c, 20, &model);
            let order = c.order.unwrap_or(3);
            let counts = model.counts_rat(n).map_err(err)?;
            let mut checks = Vec::new();
            for r in 1..=order {
                let diag = check_axiom_wr(&counts, r, n).map_err(err)?;
                let conv = diag.convolution.check(criterion);
                checks.push(Check::new(
                    format!("R = {r}: self-convolution over G_(n-R)"),
                    ratio_result(conv, &diag.convolution),
                ));
            }
            let successive = check_axiom_wr(&counts, 1, n).map_err(err)?.successive;
            let tail = successive.from_n(n / 2 + 1);
            checks.push(Check::new(
                format!("G_(n-1)/G_n decreasing for n > {}", n / 2),
                if strictly_decreasing_abs(&tail.ratios()) {
                    Ok(())
                } else {
                    Err(format!("ratios: {}", tail.to_csv().replace('\n', " ")))
                },
            ));
            checks
        }
        Suite::Expansion => {
            let model = semigroup(c)?;
            let f = function(c)?;
            let order = c.order.unwrap_or(3);
            let hi = max_n(c, 20, &model);
            let range = c.range.clone().unwrap_or((hi / 2).max(1)..=hi);
            let report = verify_expansion(&f, &model, c.moment, order, range.clone(), c.parallel).map_err(err)?;
            let ratios = report.ratio_table();
            let name = format!(
                "{} on {}, M = {}, R = {}, n in {}..{}: {} residual ratio",
                report.function,
                model.name(),
                c.moment,
                order,
                range.start(),
                range.end(),
                criterion_name(criterion)
            );
            let check = Check::new(name, ratio_result(ratios.check(criterion), &ratios));
            extra = report.to_json();
            table = Some(report);
            vec![check]
        }
    };
    let passed = checks.iter().all(|ch| ch.passed);
    let stdout = match c.format {
        Format::Json => {
            let list: Vec<Value> = checks
                .iter()
                .map(|ch| json!({"name": ch.name, "passed": ch.passed, "detail": ch.detail}))
                .collect();
            let mut v = json!({"suite": a.suite.to_possible_value().map(|v| v.get_name().to_string()), "passed": passed, "checks": list});
            if !extra.is_null() {
                v["report"] = extra;
            }
            json_text(&v)
        }
        Format::Csv => {
            let mut g = Grid::new(&["check", "passed", "detail"]);
            for ch in &checks {
                g.push(vec![ch.name.clone(), ch.passed.to_string(), ch.detail.clone()]);
            }
            g.to_csv()
        }
        Format::Plain => {
            let mut out = String::new();
            if let Some(report) = &table {
                let mut g = Grid::new(&["n", "residual", "ratio"]);
                for r in &report.residuals {
                    g.push(vec![r.n.to_string(), approx(&r.residual), approx(&r.ratio)]);
                }
                out.push_str(&g.to_plain());
            }
            for ch in &checks {
                out.push_str(&format!("{}  {}\n", if ch.passed { "PASS" } else { "FAIL" }, ch.name));
            }
            out.push_str(if passed { "PASS\n" } else { "FAIL\n" });
            out
        }
    };
    let stderr = checks
        .iter()
        .find(|ch| !ch.passed)
        .map(|ch| format!("first failure: {}: {}\n", ch.name, ch.detail))
        .unwrap_or_default();
    Ok(Outcome {
        code: if passed { 0 } else { EXIT_CHECK_FAILED },
        stdout,
        stderr,
    })
}

fn criterion_name(c: Criterion) -> &'static str {
    match c {
        Criterion::Stable => "stable",
        Criterion::Bounded => "bounded",
    }
}

fn ratio_result(ok: bool, table: &semigroup_moments::diagnostics::Table) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        let cells: Vec<String> = table
            .rows
            .iter()
            .map(|r| format!("{}:{}", r.n, r.ratio.as_ref().map(approx).unwrap_or_else(|| "-".into())))
            .collect();
        Err(format!("ratios {}", cells.join(" ")))
    }
}

fn verify_golden(paths: &[PathBuf]) -> Result<Vec<Check>, String> {
    let files = if paths.is_empty() {
        golden::builtin()
    } else {
        paths
            .iter()
            .map(|p| Ok((p.display().to_string(), golden::load(p).map_err(err)?)))
            .collect::<Result<Vec<_>, String>>()?
    };
    let mut checks = Vec::new();
    for (name, file) in files {
        let bad = file.verify(&name).map_err(err)?;
        let result = match bad.first() {
            None => Ok(()),
            Some(m) => Err(format!("{} mismatched keys; first: {m}", bad.len())),
        };
        checks.push(Check::new(format!("{name} ({} keys)", file.len()), result));
    }
    Ok(checks)
}
