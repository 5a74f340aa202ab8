//! Report-producing command line.
//!
//! Every command writes one JSON (or CSV) document: a schema id, an echo of
//! the run configuration and the result. Thread count and wall-clock time
//! only appear with `--timing`, so by default a report is a pure function of
//! its numeric inputs.
//!
//! Exit codes: 0 on success, 1 on I/O failure, 2 on invalid input, 3 when a
//! work guard refuses (or a time budget stops) an enumeration. Nothing is
//! written unless the command succeeds.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::bigint::BigInt;
use num::{BigRational, Num, Zero};
use serde::Serialize;

use crate::bounds::{bounds_report, BoundsReport, Quantity};
use crate::certificate::{
    minimal_n_threshold, verify_proof_chain, ChainOptions, ChainVariant, ContainerParams, LogBase, ThresholdReport,
};
use crate::clique_hypergraph::{brute_max_codegree, codegree, hypergraph_params, v_min, CliqueHypergraphStats};
use crate::graphs::LabeledGraph;
use crate::oracle::{
    count_free_graphs, maximal_free_family, min_cliques_at_edge_count, validate_container_family, ScanOptions,
    WorkOverride,
};
use crate::report::{sig17, sig17_opt, to_json, write_atomic};
use crate::{Error, LogMagnitude, Order, Result};

#[derive(Parser, Debug)]
#[command(name = "kfree", version, about = "Exact oracles and certificates for counting K_l-free graphs")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for enumerations; never changes numeric output.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub threads: u64,
    /// Include thread count and elapsed time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count K_l-free graphs on n labeled vertices by full scan.
    Census(CensusArgs),
    /// Minimum number of K_l copies among graphs with m edges.
    Supersat(SupersatArgs),
    /// Co-degrees of the K_l clique hypergraph.
    Codegree(CodegreeArgs),
    /// Evaluate the container hypotheses and the family-size argument.
    Certify(CertifyArgs),
    /// Turán, main-term, upper and supersaturation bounds.
    Bounds(BoundsArgs),
    /// Container families at small n.
    #[command(subcommand)]
    Containers(ContainersCommand),
}

#[derive(Args, Debug, Serialize)]
pub struct CensusArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub l: usize,
    /// Allow scans past the default guard, up to the time budget.
    #[arg(long, requires = "budget_secs")]
    pub override_guard: bool,
    #[arg(long, requires = "override_guard")]
    pub budget_secs: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct SupersatArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub l: usize,
    #[arg(long)]
    pub m: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct CodegreeArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub l: u32,
    /// Only this co-degree index.
    #[arg(long, conflicts_with = "sigma")]
    pub j: Option<u64>,
    /// Graph file holding the edge set sigma.
    #[arg(long)]
    pub sigma: Option<PathBuf>,
    /// Also compute the maxima by exhaustive search.
    #[arg(long, conflicts_with = "sigma")]
    pub brute: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum LogBaseArg {
    #[value(name = "e")]
    #[serde(rename = "e")]
    E,
    #[value(name = "2")]
    #[serde(rename = "2")]
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainArg {
    Printed,
    Repaired,
}

/// `n` exactly or as `log2 n`.
#[derive(Args, Debug, Serialize)]
#[group(required = true, multiple = false)]
pub struct OrderArgs {
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    #[serde(serialize_with = "sig17_opt")]
    pub log2_n: Option<f64>,
}

impl OrderArgs {
    fn order(&self) -> Result<Order> {
        match (self.n, self.log2_n) {
            (Some(n), None) => Ok(Order::Exact(n)),
            (None, Some(x)) if x.is_finite() && x > 0.0 => Ok(Order::Log2(x)),
            (None, Some(x)) => Err(Error::param(format!("log2 n = {x} must be positive and finite"))),
            _ => Err(Error::param("give exactly one of --n and --log2-n")),
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct CertifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub order: OrderArgs,
    #[arg(long)]
    pub l: u32,
    #[arg(long)]
    #[serde(serialize_with = "sig17")]
    pub delta: f64,
    #[arg(long, default_value_t = 1)]
    pub c: u64,
    #[arg(long, value_enum, default_value_t = LogBaseArg::E)]
    pub log_base: LogBaseArg,
    #[arg(long, value_enum, default_value_t = ChainArg::Printed)]
    pub chain: ChainArg,
    /// Also search for the smallest log2 n at which the chain passes.
    #[arg(long)]
    pub threshold: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct BoundsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub order: OrderArgs,
    #[arg(long)]
    pub l: u64,
    #[arg(long)]
    #[serde(serialize_with = "sig17_opt")]
    pub delta: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum ContainersCommand {
    /// Check a directory of graph files as a container family.
    Validate(ValidateArgs),
    /// Write all edge-maximal K_l-free graphs on [n].
    GenerateMaximal(GenerateArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct ValidateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub l: usize,
    #[arg(long)]
    pub family: PathBuf,
    /// Allowed fraction of K_l copies per member, as `a/b` or a decimal.
    #[arg(long)]
    pub epsilon: String,
    /// Compare the family size with the container-count bound at this p.
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub c: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub l: usize,
}

/// Echo of everything that determines the numeric output.
#[derive(Debug, Serialize)]
pub struct RunConfig<'a, P: Serialize> {
    pub command: &'static str,
    pub parameters: &'a P,
    pub format: Format,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Timing {
    pub threads: u64,
    pub elapsed_ms: u64,
}

#[derive(Serialize)]
struct Envelope<'a, P: Serialize, R: Serialize> {
    schema: &'static str,
    generator: &'static str,
    config: RunConfig<'a, P>,
    result: &'a R,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<Timing>,
}

/// Extra files written next to `--out`.
enum Sibling {
    File { suffix: &'static str, bytes: Vec<u8> },
    Dir { suffix: &'static str, files: Vec<(String, Vec<u8>)> },
}

/// A finished command, rendered but not yet written.
pub struct Output {
    body: Vec<u8>,
    siblings: Vec<Sibling>,
}

struct Ctx {
    format: Format,
    threads: u64,
    timing: bool,
}

impl Ctx {
    fn scan(&self) -> ScanOptions {
        ScanOptions::threads(self.threads as usize)
    }

    fn timing(&self, elapsed: Duration) -> Option<Timing> {
        self.timing.then_some(Timing {
            threads: self.threads,
            elapsed_ms: elapsed.as_millis() as u64,
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn render<P: Serialize, R: Serialize>(
        &self,
        schema: &'static str,
        command: &'static str,
        parameters: &P,
        result: &R,
        elapsed: Duration,
        csv: Csv,
        siblings: Vec<Sibling>,
    ) -> Result<Output> {
        let body = match self.format {
            Format::Json => to_json(&Envelope {
                schema,
                generator: concat!("kfree ", env!("CARGO_PKG_VERSION")),
                config: RunConfig {
                    command,
                    parameters,
                    format: self.format,
                },
                result,
                timing: self.timing(elapsed),
            })
            .into_bytes(),
            Format::Csv => csv.finish()?,
        };
        Ok(Output { body, siblings })
    }
}

struct Csv(csv::Writer<Vec<u8>>);

impl Csv {
    fn new(header: &[&str]) -> Result<Self> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).map_err(csv_error)?;
        Ok(Csv(w))
    }

    fn row<I: IntoIterator<Item = String>>(&mut self, fields: I) -> Result<()> {
        self.0.write_record(fields.into_iter().collect::<Vec<_>>()).map_err(csv_error)
    }

    fn finish(self) -> Result<Vec<u8>> {
        self.0.into_inner().map_err(|e| Error::param(format!("csv: {e}")))
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::param(format!("csv: {e}"))
}

fn f(x: f64) -> String {
    crate::report::format_f64(x)
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Parses `a/b`, an integer or a plain decimal into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::param(format!("cannot read {text:?} as a rational"));
    if let Some((int_part, frac)) = text.split_once('.') {
        let negative = int_part.starts_with('-');
        let digits = format!("{}{frac}", int_part.trim_start_matches(['-', '+']));
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let numer = BigInt::from_str_radix(&digits, 10).map_err(|_| bad())?;
        let denom = BigInt::from(10u32).pow(frac.len() as u32);
        let value = BigRational::new(numer, denom);
        return Ok(if negative { -value } else { value });
    }
    let value = BigRational::from_str(text).map_err(|_| bad())?;
    Ok(value)
}

fn census(args: &CensusArgs, ctx: &Ctx) -> Result<Output> {
    let options = ScanOptions {
        work_override: args.override_guard.then(|| WorkOverride {
            budget: Duration::from_secs(args.budget_secs.unwrap_or(0)),
        }),
        ..ctx.scan()
    };
    let result = count_free_graphs(args.n, args.l, options)?;
    let mut csv = Csv::new(&["n", "l", "count", "scanned", "threads", "elapsed_ms"])?;
    let timing = ctx.timing(result.elapsed);
    csv.row([
        result.n.to_string(),
        result.l.to_string(),
        result.count.to_string(),
        result.graphs_scanned.to_string(),
        opt(timing.map(|t| t.threads)),
        opt(timing.map(|t| t.elapsed_ms)),
    ])?;
    ctx.render("kfree.census.v1", "census", args, &result, result.elapsed, csv, vec![])
}

fn supersat(args: &SupersatArgs, ctx: &Ctx) -> Result<Output> {
    let start = Instant::now();
    let result = min_cliques_at_edge_count(args.n, args.l, args.m, ctx.scan())?;
    let mut csv = Csv::new(&["n", "l", "m", "min_count", "scanned"])?;
    csv.row([
        result.n.to_string(),
        result.l.to_string(),
        result.m.to_string(),
        result.min_count.to_string(),
        result.graphs_scanned.to_string(),
    ])?;
    let witness = Sibling::File {
        suffix: ".witness.txt",
        bytes: result.witness.to_text().into_bytes(),
    };
    ctx.render("kfree.supersat.v1", "supersat", args, &result, start.elapsed(), csv, vec![witness])
}

#[derive(Debug, Serialize)]
pub struct CodegreeRow {
    pub j: u64,
    pub v_min: u64,
    #[serde(serialize_with = "crate::report::decimal")]
    pub max_codegree: num::BigUint,
    pub brute_max_codegree: Option<u64>,
    pub agrees: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct SigmaCodegree {
    pub edges: usize,
    pub vertices: u32,
    #[serde(serialize_with = "crate::report::decimal")]
    pub codegree: num::BigUint,
}

#[derive(Debug, Serialize)]
pub struct CodegreeReport {
    pub stats: CliqueHypergraphStats,
    pub rows: Vec<CodegreeRow>,
    pub sigma: Option<SigmaCodegree>,
}

fn codegree_cmd(args: &CodegreeArgs, ctx: &Ctx) -> Result<Output> {
    let start = Instant::now();
    let stats = hypergraph_params(args.n, args.l)?;
    let exact = stats.exact.as_ref().expect("exact order");
    let r = stats.uniformity;
    let indices: Vec<u64> = match args.j {
        Some(j) if j == 0 || j > r => return Err(Error::param(format!("j = {j} outside 1..={r}"))),
        Some(j) => vec![j],
        None if args.sigma.is_some() => vec![],
        None => (1..=r).collect(),
    };
    let mut rows = Vec::with_capacity(indices.len());
    for j in indices {
        let brute = args.brute.then(|| brute_max_codegree(args.n, args.l, j)).transpose()?;
        let max_codegree = exact.max_codegrees[(j - 1) as usize].clone();
        rows.push(CodegreeRow {
            j,
            v_min: v_min(j)?,
            agrees: brute.map(|b| num::BigUint::from(b) == max_codegree),
            max_codegree,
            brute_max_codegree: brute,
        });
    }
    let sigma = match &args.sigma {
        Some(path) => {
            let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
            let g = LabeledGraph::read_text(std::io::BufReader::new(file))?;
            if g.n() as u64 != args.n {
                return Err(Error::MismatchedOrder(g.n(), args.n as usize));
            }
            Some(SigmaCodegree {
                edges: g.edge_count(),
                vertices: g.spanned_vertices().count_ones(),
                codegree: codegree(args.n, args.l, &g)?,
            })
        }
        None => None,
    };
    let mut csv = Csv::new(&["j", "v_min", "max_codegree", "brute_max_codegree", "sigma_edges", "sigma_codegree"])?;
    for row in &rows {
        csv.row([
            row.j.to_string(),
            row.v_min.to_string(),
            row.max_codegree.to_string(),
            opt(row.brute_max_codegree),
            String::new(),
            String::new(),
        ])?;
    }
    if let Some(s) = &sigma {
        csv.row([
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            s.edges.to_string(),
            s.codegree.to_string(),
        ])?;
    }
    let report = CodegreeReport { stats, rows, sigma };
    ctx.render("kfree.codegree.v1", "codegree", args, &report, start.elapsed(), csv, vec![])
}

#[derive(Debug, Serialize)]
pub struct CertifyReport {
    pub certificate: crate::certificate::CertificateReport,
    pub threshold: Option<ThresholdReport>,
}

fn certify(args: &CertifyArgs, ctx: &Ctx) -> Result<Output> {
    let start = Instant::now();
    let options = ChainOptions {
        log_base: match args.log_base {
            LogBaseArg::E => LogBase::Natural,
            LogBaseArg::Two => LogBase::Two,
        },
        variant: match args.chain {
            ChainArg::Printed => ChainVariant::Printed,
            ChainArg::Repaired => ChainVariant::Repaired,
        },
    };
    let certificate = verify_proof_chain(args.order.order()?, args.l, args.delta, args.c, options)?;
    let threshold = args
        .threshold
        .then(|| minimal_n_threshold(args.l, args.delta, args.c, options))
        .transpose()?;
    let mut csv = Csv::new(&["section", "step", "relation", "lhs_log", "rhs_log", "margin_log", "pass"])?;
    for (section, checks) in [("chain", &certificate.proof_chain), ("hypothesis", &certificate.hypotheses)] {
        for c in checks {
            let relation = serde_json::to_value(c.relation).expect("relation serializes");
            csv.row([
                section.to_string(),
                c.step.clone(),
                relation.as_str().unwrap_or_default().to_string(),
                f(c.lhs_log),
                f(c.rhs_log),
                f(c.margin_log),
                c.pass.to_string(),
            ])?;
        }
    }
    let report = CertifyReport { certificate, threshold };
    ctx.render("kfree.certify.v1", "certify", args, &report, start.elapsed(), csv, vec![])
}

fn bounds_cmd(args: &BoundsArgs, ctx: &Ctx) -> Result<Output> {
    let start = Instant::now();
    let report: BoundsReport = bounds_report(args.order.order()?, args.l, args.delta)?;
    let mut csv = Csv::new(&["quantity", "exact", "value", "log2"])?;
    let mut push = |name: &str, q: &Quantity| {
        csv.row([name.to_string(), opt(q.exact.clone()), opt(q.value.map(f)), f(q.log2)])
    };
    if let Some(q) = &report.lower_log2 {
        push("lower_log2", q)?;
    }
    if let Some(q) = &report.weak_lower_floor {
        push("weak_lower_floor", q)?;
    }
    push("main_term_log2", &report.main_term_log2)?;
    if let Some(u) = &report.upper_log2 {
        let quantity = |exact: &Option<BigRational>, m: LogMagnitude| match exact {
            Some(r) => Quantity::from_ratio(r),
            None => Quantity::from_magnitude(m),
        };
        push("upper_log2_half_square", &quantity(&u.half_square_exact, u.half_square))?;
        push("upper_log2_binomial", &quantity(&u.binomial_exact, u.binomial))?;
    }
    if let Some(a) = &report.case_analysis {
        let k = &a.threshold;
        push("k_threshold", &k.k_exact.as_ref().map_or(Quantity::from_magnitude(k.k_value), Quantity::from_ratio))?;
    }
    if let Some(e) = report.exact_log2 {
        push("exact_log2", &Quantity::from_magnitude(LogMagnitude::from_value(e)))?;
    }
    ctx.render("kfree.bounds.v1", "bounds", args, &report, start.elapsed(), csv, vec![])
}

/// Reads every `*.txt` graph file of `dir`, in file-name order.
pub fn read_family(dir: &Path) -> Result<Vec<LabeledGraph>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .map(|entry| entry.map(|e| e.path()).map_err(|e| Error::io(dir, e)))
        .collect::<Result<_>>()?;
    paths.retain(|p| p.extension().is_some_and(|ext| ext == "txt"));
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let file = fs::File::open(p).map_err(|e| Error::io(p, e))?;
            LabeledGraph::read_text(std::io::BufReader::new(file))
        })
        .collect()
}

fn validate(args: &ValidateArgs, ctx: &Ctx) -> Result<Output> {
    let start = Instant::now();
    let epsilon = parse_rational(&args.epsilon)?;
    if epsilon <= BigRational::zero() {
        return Err(Error::param("epsilon must be positive"));
    }
    let family = read_family(&args.family)?;
    let bound = match &args.p {
        Some(p) => {
            let p = LogMagnitude::from_ratio(&parse_rational(p)?);
            let eps = LogMagnitude::from_ratio(&epsilon);
            let params = ContainerParams::new(f64::NAN, eps, p, args.c)?;
            Some((hypergraph_params(args.n as u64, args.l as u32)?, params))
        }
        None => None,
    };
    let report = validate_container_family(
        args.n,
        args.l,
        &family,
        &epsilon,
        bound.as_ref().map(|(s, p)| (s, p)),
        ctx.scan(),
    )?;
    let mut csv = Csv::new(&[
        "n",
        "l",
        "family_size",
        "covers_all",
        "free_graphs",
        "max_clique_copies",
        "epsilon_budget",
        "copies_ok",
        "size_ok",
    ])?;
    csv.row([
        report.n.to_string(),
        report.l.to_string(),
        report.family_size.to_string(),
        report.covers_all.to_string(),
        report.free_graphs.to_string(),
        report.max_clique_copies.to_string(),
        report.epsilon_budget.to_string(),
        report.copies_ok.to_string(),
        opt(report.size_ok),
    ])?;
    ctx.render("kfree.containers-validate.v1", "containers validate", args, &report, start.elapsed(), csv, vec![])
}

#[derive(Debug, Serialize)]
pub struct MaximalFamily {
    pub n: usize,
    pub l: usize,
    pub size: usize,
    /// Members in graph text format, in increasing edge-mask order.
    pub members: Vec<String>,
}

fn generate(args: &GenerateArgs, ctx: &Ctx) -> Result<Output> {
    let start = Instant::now();
    let family = maximal_free_family(args.n, args.l, ctx.scan())?;
    let members: Vec<String> = family.iter().map(LabeledGraph::to_text).collect();
    let width = members.len().to_string().len().max(4);
    let files: Vec<(String, Vec<u8>)> = members
        .iter()
        .enumerate()
        .map(|(i, text)| (format!("member_{i:0width$}.txt"), text.clone().into_bytes()))
        .collect();
    let mut csv = Csv::new(&["index", "edge_count", "file"])?;
    for (i, (g, (name, _))) in family.iter().zip(&files).enumerate() {
        csv.row([i.to_string(), g.edge_count().to_string(), name.clone()])?;
    }
    let report = MaximalFamily {
        n: args.n,
        l: args.l,
        size: members.len(),
        members,
    };
    let dir = Sibling::Dir {
        suffix: ".members",
        files,
    };
    ctx.render(
        "kfree.containers-generate-maximal.v1",
        "containers generate-maximal",
        args,
        &report,
        start.elapsed(),
        csv,
        vec![dir],
    )
}

/// Parses nothing and writes nothing: runs the parsed command to a rendered
/// [`Output`].
pub fn execute(cli: &Cli) -> Result<Output> {
    let ctx = Ctx {
        format: cli.format,
        threads: cli.threads,
        timing: cli.timing,
    };
    match &cli.command {
        Command::Census(a) => census(a, &ctx),
        Command::Supersat(a) => supersat(a, &ctx),
        Command::Codegree(a) => codegree_cmd(a, &ctx),
        Command::Certify(a) => certify(a, &ctx),
        Command::Bounds(a) => bounds_cmd(a, &ctx),
        Command::Containers(ContainersCommand::Validate(a)) => validate(a, &ctx),
        Command::Containers(ContainersCommand::GenerateMaximal(a)) => generate(a, &ctx),
    }
}

fn sibling_path(out: &Path, suffix: &str) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn write_dir(dir: &Path, files: &[(String, Vec<u8>)]) -> Result<()> {
    let staging = sibling_path(dir, ".partial");
    if staging.exists() {
        fs::remove_dir_all(&staging).map_err(|e| Error::io(&staging, e))?;
    }
    fs::create_dir_all(&staging).map_err(|e| Error::io(&staging, e))?;
    for (name, bytes) in files {
        let path = staging.join(name);
        fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
    }
    if dir.exists() {
        fs::remove_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::rename(&staging, dir).map_err(|e| Error::io(dir, e))
}

/// Writes the report (and any sibling artifacts) to `out`, or the report
/// alone to `stdout` when no path is given.
pub fn emit(output: &Output, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    let Some(path) = out else {
        return stdout.write_all(&output.body).map_err(|e| Error::io("<stdout>", e));
    };
    for sibling in &output.siblings {
        match sibling {
            Sibling::File { suffix, bytes } => write_atomic(&sibling_path(path, suffix), bytes)?,
            Sibling::Dir { suffix, files } => write_dir(&sibling_path(path, suffix), files)?,
        }
    }
    write_atomic(path, &output.body)
}

pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::WorkGuard(_) | Error::BudgetExceeded { .. } => 3,
        Error::Io { .. } => 1,
        _ => 2,
    }
}

/// Runs one command line (program name first) against the given streams and
/// returns the process exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = execute(&cli).and_then(|output| emit(&output, cli.out.as_deref(), stdout));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("kfree").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/2").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("0.25").unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(parse_rational("3").unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(parse_rational("-1.5").unwrap(), BigRational::new((-3).into(), 2.into()));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err() || parse_rational("1/0").is_ok_and(|_| false));
    }

    #[test]
    fn census_json() {
        let (code, out, _) = run_capture(&["census", "--n", "4", "--l", "3"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["count"], "41");
        assert_eq!(v["schema"], "kfree.census.v1");
        assert!(v.get("timing").is_none());
    }

    #[test]
    fn census_csv_header() {
        let (code, out, _) = run_capture(&["census", "--n", "3", "--l", "3", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "n,l,count,scanned,threads,elapsed_ms\n3,3,7,8,,\n");
        let (_, timed, _) = run_capture(&["census", "--n", "3", "--l", "3", "--format", "csv", "--timing"]);
        assert!(timed.lines().nth(1).unwrap().starts_with("3,3,7,8,1,"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["census", "--n", "9", "--l", "3"]).0, 3);
        assert_eq!(run_capture(&["census", "--n", "4", "--l", "1"]).0, 2);
        assert_eq!(run_capture(&["census", "--n", "4"]).0, 2);
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["census", "--n", "4", "--l", "3", "--override-guard"]).0, 2);
        assert_eq!(run_capture(&["census", "--log2-n", "4", "--l", "3"]).0, 2);
        assert_eq!(run_capture(&["certify", "--n", "4", "--log2-n", "3", "--l", "3", "--delta", "0.1"]).0, 2);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn certify_small_order() {
        let (code, out, _) = run_capture(&["certify", "--log2-n", "20", "--l", "3", "--delta", "0.1", "--c", "1"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["certificate"]["overall_pass"], false);
        assert_eq!(v["result"]["certificate"]["first_failure"], crate::certificate::STEP_CLIQUE_SIZE);
    }
}
