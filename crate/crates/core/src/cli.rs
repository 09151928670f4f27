//! Command-line front end.
//!
//! Every report opens with its run configuration serialized as JSON (a `# `
//! comment line for csv and pretty output, a `config` member for json), and
//! `rerun` accepts any such report to reproduce it.

use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::ddt::{CDdtReport, CParam, CSet, Ddt};
use crate::error::Error;
use crate::funcs::{parse_spec, Domain, FuncSpec};
use crate::gf::{parse_modulus, FieldCtx};
use crate::oracles;
use crate::predict::{verify, Verdict, VerifyRow};
use crate::quadext::{make_quadext, select_t, valid_t_candidates, QuadExtCtx};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cdiff", version, about = "c-differential uniformity of bivariate functions over F_q^2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summarize F_{p^m}: modulus, primitive element, admissible t.
    Field(FieldArgs),
    /// Full c-DDT reports (uniformity, spectrum, witness) for each c.
    Ddt(RunArgs),
    /// One csv row per c.
    Sweep(RunArgs),
    /// Compare predictions with brute force; exits 2 on any violation.
    Verify(RunArgs),
    /// Root-counting and inverse-function criteria next to exhaustive counts.
    Oracle(OracleArgs),
    /// Reproduce a report from its header.
    Rerun(RerunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    #[arg(short = 'p', default_value_t = 2)]
    pub p: u32,
    #[arg(short = 'm', default_value_t = 1)]
    pub m: u32,
    /// Coefficients constant term first, e.g. 1,1,0,0,1.
    #[arg(long)]
    pub modulus: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(short = 'p', default_value_t = 2)]
    pub p: u32,
    #[arg(short = 'm', default_value_t = 1)]
    pub m: u32,
    #[arg(long)]
    pub modulus: Option<String>,
    /// Parameter of x^2+x+t, e.g. w^3.
    #[arg(short = 't')]
    pub t: Option<String>,
    /// Function, e.g. 'genlinh{L=x;h=inv}'.
    #[arg(long)]
    pub spec: String,
    /// all | cq0 | sample:N | c1,c2;c1,c2;...
    #[arg(long = "c", default_value = "all")]
    pub c: String,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Seed for sample:N.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(short = 'p', default_value_t = 2, global = true)]
    pub p: u32,
    #[arg(short = 'm', default_value_t = 1, global = true)]
    pub m: u32,
    #[arg(long, global = true)]
    pub modulus: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub query: OracleQuery,
}

#[derive(Debug, Clone, Subcommand)]
pub enum OracleQuery {
    /// Roots of x^2 + ax + b.
    Quadratic {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Factorization type of x^4 + a2 x^2 + a1 x + a0 (characteristic 2).
    Quartic {
        #[arg(long)]
        a2: String,
        #[arg(long)]
        a1: String,
        #[arg(long)]
        a0: String,
    },
    /// Roots of x^{p^k+1} + ax + b.
    Bluher {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Number of b with x^{p^k+1} + x + b having p^gcd(m,k)+1 roots.
    BluherSpecial {
        #[arg(long)]
        k: u32,
    },
    /// c-differential uniformity of the inverse function.
    Inverse {
        #[arg(long)]
        c: String,
    },
}

#[derive(Debug, Clone, Args)]
pub struct RerunArgs {
    /// A report produced by ddt, sweep or verify.
    pub report: PathBuf,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunKind {
    Ddt,
    Sweep,
    Verify,
}

/// Everything that determines a report's contents. Thread count is left out
/// since output does not depend on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: RunKind,
    pub p: u32,
    pub m: u32,
    pub modulus: String,
    pub t: String,
    pub beta: String,
    pub spec: String,
    pub c_set: String,
    pub format: Format,
    pub seed: u64,
}

/// A failed invocation: message for stderr, exit code 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(format!("error: {e}"))
    }
}

/// Attaches the offending input to positional parse errors.
fn located<'a>(flag: &str, input: &'a str) -> impl FnOnce(Error) -> CliError + 'a {
    let flag = flag.to_string();
    move |e| match e {
        Error::Parse { pos, msg } => CliError(format!(
            "error: {flag}: {msg}\n  {input}\n  {}^",
            " ".repeat(pos.min(input.len()))
        )),
        other => CliError(format!("error: {flag}: {other}")),
    }
}

/// Output of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
    pub output: Option<PathBuf>,
}

fn build_field(p: u32, m: u32, modulus: Option<&str>) -> Result<FieldCtx, CliError> {
    let coeffs = match modulus {
        Some(s) => Some(parse_modulus(s).map_err(located("--modulus", s))?),
        None => None,
    };
    Ok(FieldCtx::new(p, m, coeffs.as_deref())?)
}

fn build_quadext(p: u32, m: u32, modulus: Option<&str>, t: Option<&str>) -> Result<QuadExtCtx, CliError> {
    let base = build_field(p, m, modulus)?;
    let t_override = match t {
        Some(s) => Some(base.parse_elem(s, &['w']).map_err(located("-t", s))?),
        None => None,
    };
    let t = select_t(&base, t_override)?;
    Ok(make_quadext(Arc::new(base), t)?)
}

/// Parses `all`, `cq0`, `sample:N` or `c1,c2;c1,c2;...`.
pub fn parse_c_set(s: &str, base: &FieldCtx, seed: u64) -> crate::Result<CSet> {
    let trimmed = s.trim();
    match trimmed {
        "all" => return Ok(CSet::All),
        "cq0" => return Ok(CSet::Cq0),
        _ => {}
    }
    if let Some(n) = trimmed.strip_prefix("sample:") {
        let n = n
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::parse(7, format!("bad sample size `{n}`")))?;
        return Ok(CSet::Sample { n, seed });
    }
    let mut list = Vec::new();
    let mut offset = 0;
    for item in s.split(';') {
        let start = offset;
        offset += item.len() + 1;
        if item.trim().is_empty() {
            continue;
        }
        let (x, y) = item
            .split_once(',')
            .ok_or_else(|| Error::parse(start, "expected c1,c2"))?;
        let elem = |v: &str, at: usize| {
            base.parse_elem(v, &['w']).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::parse(at, msg),
                other => other,
            })
        };
        list.push((elem(x, start)?, elem(y, start + x.len() + 1)?));
    }
    if list.is_empty() {
        return Err(Error::parse(0, "empty c set"));
    }
    Ok(CSet::List(list))
}

impl RunConfig {
    pub fn from_args(kind: RunKind, args: &RunArgs) -> Result<Self, CliError> {
        let qe = build_quadext(args.p, args.m, args.modulus.as_deref(), args.t.as_deref())?;
        let format = args.format.unwrap_or(match kind {
            RunKind::Ddt => Format::Pretty,
            RunKind::Sweep | RunKind::Verify => Format::Csv,
        });
        Ok(RunConfig {
            command: kind,
            p: args.p,
            m: args.m,
            modulus: qe.base().modulus_string(),
            t: qe.base().fmt_elem(qe.t(), 'w'),
            beta: qe.fmt_ext(qe.beta()),
            spec: args.spec.clone(),
            c_set: args.c.clone(),
            format,
            seed: args.seed,
        })
    }

    /// Recovers the configuration from a report's first line, or from the
    /// `config` member of a json report.
    pub fn from_report(text: &str) -> Result<Self, CliError> {
        let bad = |e: serde_json::Error| CliError(format!("error: unreadable report header: {e}"));
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            #[derive(Deserialize)]
            struct Wrapper {
                config: RunConfig,
            }
            return serde_json::from_str::<Wrapper>(trimmed).map(|w| w.config).map_err(bad);
        }
        let first = trimmed.lines().next().unwrap_or("");
        let json = first
            .strip_prefix("# ")
            .ok_or_else(|| CliError("error: report has no header line".into()))?;
        serde_json::from_str(json).map_err(bad)
    }

    fn header(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

struct Job {
    qe: QuadExtCtx,
    spec: FuncSpec,
    cs: CSet,
}

impl Job {
    fn new(cfg: &RunConfig) -> Result<Self, CliError> {
        let qe = build_quadext(cfg.p, cfg.m, Some(&cfg.modulus), Some(&cfg.t))?;
        let spec = parse_spec(&cfg.spec, &qe).map_err(located("--spec", &cfg.spec))?;
        let cs = parse_c_set(&cfg.c_set, qe.base(), cfg.seed).map_err(located("--c", &cfg.c_set))?;
        Ok(Job { qe, spec, cs })
    }

    fn c_coords(&self, c: CParam) -> (String, String) {
        let (c1, c2) = match c {
            CParam::Biv { c1, c2 } => (c1, c2),
            CParam::Uni(z) => self.qe.unpair(self.qe.phi_inv(z)),
        };
        let b = self.qe.base();
        (b.fmt_elem(c1, 'w'), b.fmt_elem(c2, 'w'))
    }

    fn fmt_point(&self, d: Domain, v: u32) -> String {
        match d {
            Domain::Biv => self.qe.fmt_pair(v),
            Domain::Ext => self.qe.fmt_ext(v),
        }
    }
}

#[derive(Serialize)]
struct SweepRow {
    c1: String,
    c2: String,
    uniformity: u32,
    class: String,
    witness_a: String,
    witness_b: String,
    spectrum: String,
}

#[derive(Serialize)]
struct VerifyOut {
    c1: String,
    c2: String,
    predicted: String,
    observed: u32,
    verdict: String,
}

fn spectrum_string(r: &CDdtReport) -> String {
    r.spectrum
        .iter()
        .map(|(v, n)| format!("{v}:{n}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn sweep_row(job: &Job, r: &CDdtReport) -> SweepRow {
    let shape = job.spec.shape();
    let (c1, c2) = job.c_coords(r.c);
    SweepRow {
        c1,
        c2,
        uniformity: r.uniformity,
        class: r.class.to_string(),
        witness_a: job.fmt_point(shape.domain(), r.witness.0),
        witness_b: job.fmt_point(shape.codomain(), r.witness.1),
        spectrum: spectrum_string(r),
    }
}

fn verify_out(job: &Job, r: &VerifyRow) -> VerifyOut {
    let (c1, c2) = job.c_coords(r.c);
    VerifyOut {
        c1,
        c2,
        predicted: r
            .prediction
            .as_ref()
            .map(|p| p.kind.to_string())
            .unwrap_or_else(|_| "-".into()),
        observed: r.observed.uniformity,
        verdict: r.verdict.to_string(),
    }
}

fn csv_body<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError(format!("error: csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError(format!("error: csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn render<T: Serialize>(cfg: &RunConfig, rows: &[T], pretty: impl FnOnce(&mut String)) -> Result<String, CliError> {
    match cfg.format {
        Format::Json => {
            let v = serde_json::json!({ "config": cfg, "rows": rows });
            Ok(serde_json::to_string_pretty(&v).expect("rows serialize") + "\n")
        }
        Format::Csv => Ok(format!("# {}\n{}", cfg.header(), csv_body(rows)?)),
        Format::Pretty => {
            let mut s = format!("# {}\n", cfg.header());
            pretty(&mut s);
            Ok(s)
        }
    }
}

fn violation_dump(job: &Job, r: &VerifyRow) -> String {
    let (c1, c2) = job.c_coords(r.c);
    let shape = job.spec.shape();
    let mut s = format!("VIOLATION at c=({c1},{c2})\n");
    if let Ok(p) = &r.prediction {
        let _ = writeln!(s, "  predicted {} by {}", p.kind, p.rule);
        for (k, v) in &p.trace {
            let _ = writeln!(s, "    {k} = {v}");
        }
    }
    let _ = writeln!(
        s,
        "  observed {} at a={} b={}",
        r.observed.uniformity,
        job.fmt_point(shape.domain(), r.observed.witness.0),
        job.fmt_point(shape.codomain(), r.observed.witness.1)
    );
    let _ = writeln!(s, "  spectrum {}", spectrum_string(&r.observed));
    s
}

/// Runs a ddt, sweep or verify job. The returned outcome holds the report
/// text; writing it to `-o` is left to the caller.
pub fn execute(cfg: &RunConfig, threads: Option<usize>) -> Result<Outcome, CliError> {
    let job = Job::new(cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError(format!("error: thread pool: {e}")))?;
    pool.install(|| match cfg.command {
        RunKind::Ddt | RunKind::Sweep => {
            let cs = job.cs.resolve(&job.qe, job.spec.shape().codomain())?;
            let reports = Ddt::new(&job.spec, &job.qe)?.sweep(&cs)?;
            let rows: Vec<SweepRow> = reports.iter().map(|r| sweep_row(&job, r)).collect();
            let ddt = cfg.command == RunKind::Ddt;
            let stdout = render(cfg, &rows, |s| {
                if ddt {
                    for r in &rows {
                        let _ = writeln!(s, "c = ({},{})  uniformity {}  {}", r.c1, r.c2, r.uniformity, r.class);
                        let _ = writeln!(s, "  witness a={} b={}", r.witness_a, r.witness_b);
                        let _ = writeln!(s, "  spectrum {}", r.spectrum);
                    }
                } else {
                    for r in &rows {
                        let _ = writeln!(s, "({},{})\t{}\t{}", r.c1, r.c2, r.uniformity, r.class);
                    }
                }
            })?;
            Ok(Outcome {
                stdout,
                ..Outcome::default()
            })
        }
        RunKind::Verify => {
            let rows = verify(&job.spec, &job.qe, &job.cs)?;
            let out: Vec<VerifyOut> = rows.iter().map(|r| verify_out(&job, r)).collect();
            let stdout = render(cfg, &out, |s| {
                for r in &out {
                    let _ = writeln!(s, "({},{})\t{}\t{}\t{}", r.c1, r.c2, r.predicted, r.observed, r.verdict);
                }
            })?;
            let stderr: String = rows
                .iter()
                .filter(|r| r.verdict == Verdict::Violation)
                .map(|r| violation_dump(&job, r))
                .collect();
            let code = if stderr.is_empty() { EXIT_OK } else { EXIT_VIOLATION };
            Ok(Outcome {
                stdout,
                stderr,
                code,
                output: None,
            })
        }
    })
}

fn kv_output(format: Format, pairs: &[(&str, String)]) -> String {
    match format {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = pairs
                .iter()
                .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone())))
                .collect();
            serde_json::to_string_pretty(&map).expect("map serializes") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("key,value\n");
            for (k, v) in pairs {
                let _ = writeln!(s, "{k},\"{v}\"");
            }
            s
        }
        Format::Pretty => {
            let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            pairs.iter().map(|(k, v)| format!("{k:width$}  {v}\n")).collect()
        }
    }
}

fn cmd_field(args: &FieldArgs) -> Result<Outcome, CliError> {
    let f = build_field(args.p, args.m, args.modulus.as_deref())?;
    let t = select_t(&f, None)?;
    let candidates: Vec<String> = valid_t_candidates(&f).take(8).map(|x| f.fmt_elem(x, 'w')).collect();
    let pairs = [
        ("field", f.to_string()),
        ("order", f.order().to_string()),
        ("modulus", f.modulus_string()),
        ("primitive", format!("w = index {}", f.primitive())),
        ("t", f.fmt_elem(t, 'w')),
        ("t_candidates", candidates.join(" ")),
    ];
    Ok(Outcome {
        stdout: kv_output(args.format, &pairs),
        ..Outcome::default()
    })
}

fn cmd_oracle(args: &OracleArgs) -> Result<Outcome, CliError> {
    let f = build_field(args.p, args.m, args.modulus.as_deref())?;
    let el = |flag: &str, s: &str| f.parse_elem(s, &['w']).map_err(located(flag, s));
    let pairs: Vec<(&str, String)> = match &args.query {
        OracleQuery::Quadratic { a, b } => {
            let (a, b) = (el("--a", a)?, el("--b", b)?);
            vec![
                ("roots", oracles::quadratic_root_count(&f, a, b).to_string()),
                ("roots_scan", oracles::quadratic_root_count_scan(&f, a, b).to_string()),
            ]
        }
        OracleQuery::Quartic { a2, a1, a0 } => {
            let (a2, a1, a0) = (el("--a2", a2)?, el("--a1", a1)?, el("--a0", a0)?);
            let criterion = match oracles::quartic_factor_type(&f, a2, a1, a0) {
                Ok(t) => t.to_string(),
                Err(Error::NotCovered(why)) => format!("not covered ({why})"),
                Err(e) => return Err(e.into()),
            };
            vec![
                ("factorization", criterion),
                ("factorization_scan", oracles::quartic_factor_type_scan(&f, a2, a1, a0).to_string()),
            ]
        }
        OracleQuery::Bluher { k, a, b } => {
            let (a, b) = (el("--a", a)?, el("--b", b)?);
            let r = oracles::bluher_root_count(&f, *k, a, b);
            let allowed = oracles::BluherCount::allowed(f.characteristic(), r.d);
            vec![
                ("roots", r.root_count.to_string()),
                ("d", r.d.to_string()),
                ("allowed", format!("{allowed:?}")),
            ]
        }
        OracleQuery::BluherSpecial { k } => {
            let (scanned, formula) = oracles::bluher_special_b_count(&f, *k);
            vec![("scanned", scanned.to_string()), ("formula", formula.to_string())]
        }
        OracleQuery::Inverse { c } => {
            let c = el("--c", c)?;
            let predicted = oracles::inverse_c_uniformity_predict(&f, c)?;
            let table: Vec<u32> = f.elements().map(|x| f.inv_or_zero(x)).collect();
            let observed = crate::ddt::univariate_uniformity(&f, &table, c)?.uniformity;
            vec![("predicted", predicted.to_string()), ("observed", observed.to_string())]
        }
    };
    Ok(Outcome {
        stdout: kv_output(args.format, &pairs),
        ..Outcome::default()
    })
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let (cfg, threads, output) = match &cli.command {
        Command::Field(a) => return cmd_field(a),
        Command::Oracle(a) => return cmd_oracle(a),
        Command::Ddt(a) => (RunConfig::from_args(RunKind::Ddt, a)?, a.threads, a.output.clone()),
        Command::Sweep(a) => (RunConfig::from_args(RunKind::Sweep, a)?, a.threads, a.output.clone()),
        Command::Verify(a) => (RunConfig::from_args(RunKind::Verify, a)?, a.threads, a.output.clone()),
        Command::Rerun(a) => {
            let text = std::fs::read_to_string(&a.report)
                .map_err(|e| CliError(format!("error: {}: {e}", a.report.display())))?;
            (RunConfig::from_report(&text)?, a.threads, a.output.clone())
        }
    };
    let mut out = execute(&cfg, threads)?;
    out.output = output;
    Ok(out)
}

/// Parses arguments, runs, writes output and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(out) => {
            match &out.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &out.stdout) {
                        eprintln!("error: {}: {e}", path.display());
                        return EXIT_USAGE;
                    }
                }
                None => print!("{}", out.stdout),
            }
            eprint!("{}", out.stderr);
            out.code
        }
        Err(e) => {
            eprintln!("{e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("cdiff").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn c_set_forms() {
        let f = FieldCtx::new(2, 2, None).unwrap();
        assert_eq!(parse_c_set("all", &f, 0), Ok(CSet::All));
        assert_eq!(parse_c_set("sample:5", &f, 9), Ok(CSet::Sample { n: 5, seed: 9 }));
        assert_eq!(parse_c_set("0,0; w,1", &f, 0), Ok(CSet::List(vec![(0, 0), (2, 1)])));
        assert!(matches!(parse_c_set("0,0;w^x,1", &f, 0), Err(Error::Parse { pos: 4, .. })));
    }

    #[test]
    fn identity_ddt_at_zero() {
        let out = run(&cli(&["ddt", "--spec", "identity", "--c", "0,0", "--format", "csv"])).unwrap();
        let row = out.stdout.lines().nth(2).unwrap();
        assert!(row.starts_with("0,0,1,PcN,"), "{row}");
    }

    #[test]
    fn spec_errors_point_at_the_input() {
        let err = run(&cli(&["sweep", "-p", "2", "-m", "3", "--spec", "genlinh{h=inv;q=1}"])).unwrap_err();
        assert!(err.0.contains("unknown key"), "{}", err.0);
        assert!(err.0.lines().last().unwrap().trim_start().starts_with('^'));
    }

    #[test]
    fn field_summary() {
        let out = run(&cli(&["field", "-p", "2", "-m", "4", "--format", "json"])).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["modulus"], "1,1,0,0,1");
        assert!(run(&cli(&["field", "-p", "4", "-m", "1"])).is_err());
    }
}
