//! `hhq`: tables, cup products, nilpotency checks and verification suites
//! for the Hochschild cohomology of Λ_q = kQ/⟨a², b², ab − qba, ac⟩.

mod cache;
mod table;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use hhq_core::bar_oracle::ORACLE_CAP;
use hhq_core::cochain::{cohomology_report, kernel_basis, Cochain, CoboundaryCache};
use hhq_core::cup::{cup_formula, cup_via_delta, is_nilpotent, random_cocycle, CohomologyClass, SignConvention, DEFAULT_MAX_POWER};
use hhq_core::report::{quotient_table, render_dims, render_quotient, to_json, Format};
use hhq_core::verify::{oracle_rows, run_suite, Suite};
use hhq_core::{make_field, FieldContext, FieldSpec};

use table::Table;

/// Hard cap on resolution degrees.
const MAX_DEGREE: usize = 64;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] hhq_core::Error),
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            Self::Core(_) | Self::Input(_) => ExitCode::from(2),
            Self::Io { .. } => ExitCode::from(3),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "hhq", version, about = "Hochschild cohomology of the algebras Λ_q")]
struct Cli {
    /// Coefficient field: `Q` or `Fp:p`.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Deformation parameter, e.g. `1`, `-1`, `1/2`.
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    q: String,
    /// Largest cohomological degree.
    #[arg(long, global = true, default_value_t = 6)]
    max_n: usize,
    /// Output format: json, csv or latex.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value = "koszul")]
    sign_convention: SignConvention,
    /// Directory for cached dimension tables.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads; `HHQ_THREADS` takes precedence.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions of Hom, ker d*, im d* and HH in each degree.
    Dims,
    /// Kernel bases and cohomology representatives.
    Basis {
        /// Restrict to one degree.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Cup product of two cochains, or a randomized method comparison.
    Cup {
        #[arg(long, required_unless_present = "random_pairs")]
        m: Option<usize>,
        #[arg(long, required_unless_present = "random_pairs", allow_hyphen_values = true)]
        lhs: Option<String>,
        #[arg(long, required_unless_present = "random_pairs")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "random_pairs", allow_hyphen_values = true)]
        rhs: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
        /// Compare both methods on this many random cocycle pairs of total degree ≤ max-n.
        #[arg(long, conflicts_with_all = ["m", "lhs", "n", "rhs"])]
        random_pairs: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Nilpotency verdicts for one cocycle, or for every kernel-basis class.
    Nilpotent {
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        cochain: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_POWER)]
        max_power: usize,
    },
    /// Dimensions and monomial labels of HH*/N.
    Quotient,
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long)]
        suite: Suite,
    },
    /// HH dimensions from the Koszul complex and the reduced bar complex side by side.
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Formula,
    Delta,
    Both,
}

/// What a command produced: the rendered text and whether it counts as a success.
struct Output {
    text: String,
    ok: bool,
    failure: Option<String>,
}

impl Output {
    fn success(text: String) -> Self {
        Self { text, ok: true, failure: None }
    }

    fn checked(text: String, ok: bool, failure: &str) -> Self {
        Self { text, ok, failure: (!ok).then(|| failure.to_string()) }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("hhq: {e}");
            e.exit_code()
        }
    }
}

fn thread_count(cli: &Cli) -> CliResult<Option<usize>> {
    let threads = match std::env::var("HHQ_THREADS") {
        Ok(s) => Some(s.trim().parse::<usize>().map_err(|_| CliError::Input(format!("HHQ_THREADS: invalid thread count `{s}`")))?),
        Err(_) => cli.threads,
    };
    if threads == Some(0) {
        return Err(CliError::Input("thread count must be at least 1".into()));
    }
    Ok(threads)
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let spec: FieldSpec = cli.field.parse()?;
    let ctx = make_field(spec, &cli.q)?;
    if cli.max_n > MAX_DEGREE {
        return Err(CliError::Input(format!("--max-n {} exceeds the cap {MAX_DEGREE}", cli.max_n)));
    }
    let output = match thread_count(&cli)? {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Input(format!("thread pool: {e}")))?
            .install(|| dispatch(&cli, &ctx))?,
        None => dispatch(&cli, &ctx)?,
    };
    match &cli.out {
        Some(path) => fs::write(path, &output.text).map_err(|source| CliError::Io { path: path.clone(), source })?,
        None => print!("{}", output.text),
    }
    if let Some(msg) = &output.failure {
        eprintln!("hhq: {msg}");
    }
    Ok(if output.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn dispatch(cli: &Cli, ctx: &FieldContext) -> CliResult<Output> {
    let format = cli.format.unwrap_or_default();
    match &cli.command {
        Command::Dims => {
            let report = match &cli.cache_dir {
                Some(dir) => cache::cached_report(dir, cli.max_n, ctx)?,
                None => cohomology_report(cli.max_n, ctx),
            };
            Ok(Output::success(render_dims(&report, format)))
        }
        Command::Basis { degree } => basis(cli, *degree, ctx, format),
        Command::Cup { random_pairs: Some(pairs), seed, .. } => random_cup_pairs(cli, *pairs, *seed, ctx),
        Command::Cup { m, lhs, n, rhs, method, .. } => {
            let (Some(m), Some(lhs), Some(n), Some(rhs)) = (m, lhs, n, rhs) else {
                return Err(CliError::Input("cup needs --m, --lhs, --n and --rhs".into()));
            };
            cup(cli, (*m, lhs), (*n, rhs), *method, ctx)
        }
        Command::Nilpotent { degree, cochain, max_power } => nilpotent(cli, *degree, cochain.as_deref(), *max_power, ctx, format),
        Command::Quotient => Ok(Output::success(render_quotient(&quotient_table(cli.max_n, ctx), format))),
        Command::Verify { suite } => {
            if *suite == Suite::Oracle && cli.max_n > ORACLE_CAP {
                return Err(CliError::Input(format!("--max-n {} exceeds the oracle cap {ORACLE_CAP}", cli.max_n)));
            }
            let report = run_suite(*suite, cli.max_n, ctx)?;
            let text = match format {
                Format::Json => to_json(&report),
                _ => Table::new(["check", "passed", "detail"])
                    .rows(report.checks.iter().map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone()]))
                    .render(format),
            };
            Ok(Output::checked(text, report.passed, &format!("suite {suite} failed")))
        }
        Command::Oracle => oracle(cli, ctx, format),
    }
}

fn check_degree(n: usize) -> CliResult<()> {
    if n > MAX_DEGREE {
        return Err(CliError::Input(format!("degree {n} exceeds the cap {MAX_DEGREE}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct BasisDegree {
    n: usize,
    dim_ker: usize,
    dim_hh: usize,
    kernel: Vec<String>,
    representatives: Vec<String>,
}

#[derive(Serialize)]
struct BasisReport {
    field: String,
    q: String,
    degrees: Vec<BasisDegree>,
}

fn basis(cli: &Cli, degree: Option<usize>, ctx: &FieldContext, format: Format) -> CliResult<Output> {
    let top = degree.unwrap_or(cli.max_n);
    check_degree(top)?;
    let report = cohomology_report(top, ctx);
    let strings = |v: &[Cochain]| v.iter().map(Cochain::to_string).collect::<Vec<_>>();
    let degrees: Vec<BasisDegree> = report
        .rows
        .iter()
        .filter(|r| degree.is_none_or(|d| d == r.n))
        .map(|r| BasisDegree {
            n: r.n,
            dim_ker: r.dim_ker,
            dim_hh: r.dim_hh,
            kernel: strings(&report.kernel_bases[r.n]),
            representatives: strings(&report.representatives[r.n]),
        })
        .collect();
    let text = match format {
        Format::Json => to_json(&BasisReport { field: report.field, q: report.q, degrees }),
        _ => {
            let mut t = Table::new(["n", "kind", "cochain"]);
            for d in &degrees {
                t.extend(d.kernel.iter().map(|c| vec![d.n.to_string(), "kernel".into(), c.clone()]));
                t.extend(d.representatives.iter().map(|c| vec![d.n.to_string(), "representative".into(), c.clone()]));
            }
            t.render(format)
        }
    };
    Ok(Output::success(text))
}

#[derive(Serialize)]
struct CupReport {
    field: String,
    q: String,
    sign_convention: SignConvention,
    method: Method,
    m: usize,
    n: usize,
    lhs: String,
    rhs: String,
    product: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    methods_agree: Option<bool>,
}

fn cup(cli: &Cli, (m, lhs): (usize, &str), (n, rhs): (usize, &str), method: Method, ctx: &FieldContext) -> CliResult<Output> {
    check_degree(m + n)?;
    let phi = Cochain::parse(m, lhs, ctx)?;
    let mu = Cochain::parse(n, rhs, ctx)?;
    let sign = cli.sign_convention;
    let (product, agree) = match method {
        Method::Formula => (cup_formula(&phi, &mu, sign, ctx), None),
        Method::Delta => (cup_via_delta(&phi, &mu, sign, ctx), None),
        Method::Both => {
            let f = cup_formula(&phi, &mu, sign, ctx);
            let same = f == cup_via_delta(&phi, &mu, sign, ctx);
            (f, Some(same))
        }
    };
    let ok = agree != Some(false);
    let text = match cli.format {
        None => match agree {
            Some(true) => format!("{product}\nmethods agree\n"),
            Some(false) => format!("{product}\nmethods disagree\n"),
            None => format!("{product}\n"),
        },
        Some(Format::Json) => to_json(&CupReport {
            field: ctx.spec().to_string(),
            q: ctx.q().to_string(),
            sign_convention: sign,
            method,
            m,
            n,
            lhs: phi.to_string(),
            rhs: mu.to_string(),
            product: product.to_string(),
            methods_agree: agree,
        }),
        Some(format) => {
            let agree = agree.map(|a| a.to_string()).unwrap_or_default();
            Table::new(["m", "n", "lhs", "rhs", "product", "methods_agree"])
                .rows([vec![m.to_string(), n.to_string(), phi.to_string(), mu.to_string(), product.to_string(), agree]])
                .render(format)
        }
    };
    Ok(Output::checked(text, ok, "cup methods disagree"))
}

#[derive(Serialize)]
struct Disagreement {
    m: usize,
    n: usize,
    lhs: String,
    rhs: String,
    formula: String,
    delta: String,
}

#[derive(Serialize)]
struct RandomCupReport {
    field: String,
    q: String,
    sign_convention: SignConvention,
    seed: u64,
    pairs: usize,
    methods_agree: bool,
    disagreements: Vec<Disagreement>,
}

fn random_cup_pairs(cli: &Cli, pairs: usize, seed: u64, ctx: &FieldContext) -> CliResult<Output> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sign = cli.sign_convention;
    let mut disagreements = Vec::new();
    for _ in 0..pairs {
        let m = rng.gen_range(0..=cli.max_n);
        let n = rng.gen_range(0..=cli.max_n - m);
        let phi = random_cocycle(m, &mut rng, ctx);
        let mu = random_cocycle(n, &mut rng, ctx);
        let f = cup_formula(&phi, &mu, sign, ctx);
        let d = cup_via_delta(&phi, &mu, sign, ctx);
        if f != d {
            disagreements.push(Disagreement { m, n, lhs: phi.to_string(), rhs: mu.to_string(), formula: f.to_string(), delta: d.to_string() });
        }
    }
    let ok = disagreements.is_empty();
    let text = match cli.format {
        None if ok => format!("methods agree on {pairs} pairs\n"),
        None => format!("methods disagree on {} of {pairs} pairs\n", disagreements.len()),
        Some(Format::Json) => to_json(&RandomCupReport {
            field: ctx.spec().to_string(),
            q: ctx.q().to_string(),
            sign_convention: sign,
            seed,
            pairs,
            methods_agree: ok,
            disagreements,
        }),
        Some(format) => Table::new(["m", "n", "lhs", "rhs", "formula", "delta"])
            .rows(disagreements.into_iter().map(|d| vec![d.m.to_string(), d.n.to_string(), d.lhs, d.rhs, d.formula, d.delta]))
            .render(format),
    };
    Ok(Output::checked(text, ok, "cup methods disagree"))
}

#[derive(Serialize)]
struct NilpotencyRow {
    degree: usize,
    cochain: String,
    nilpotent: bool,
    exponent: Option<usize>,
    witness: Option<String>,
    max_power: usize,
    structural_nilpotent: bool,
    agrees: bool,
}

#[derive(Serialize)]
struct NilpotencyReport {
    field: String,
    q: String,
    classes: Vec<NilpotencyRow>,
}

fn nilpotent(cli: &Cli, degree: Option<usize>, cochain: Option<&str>, max_power: usize, ctx: &FieldContext, format: Format) -> CliResult<Output> {
    if max_power == 0 {
        return Err(CliError::Input("--max-power must be at least 1".into()));
    }
    let cocycles: Vec<Cochain> = match (cochain, degree) {
        (Some(text), Some(d)) => vec![Cochain::parse(d, text, ctx)?],
        (Some(text), None) => vec![Cochain::parse_any(text, ctx)?],
        (None, Some(d)) => {
            check_degree(d)?;
            kernel_basis(d, ctx)
        }
        (None, None) => (0..=cli.max_n).flat_map(|d| kernel_basis(d, ctx)).collect(),
    };
    for c in &cocycles {
        check_degree(c.degree() * max_power)?;
    }
    let cache = CoboundaryCache::new(ctx);
    let classes = cocycles
        .into_iter()
        .map(|phi| {
            let cls = CohomologyClass::new(phi.clone(), ctx)?;
            let v = is_nilpotent(&cls, &cache, max_power)?;
            Ok(NilpotencyRow {
                degree: phi.degree(),
                cochain: phi.to_string(),
                nilpotent: v.nilpotent,
                exponent: v.exponent,
                witness: v.witness.map(|w| w.to_string()),
                max_power: v.max_power,
                structural_nilpotent: v.structural_nilpotent,
                agrees: v.agrees,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let text = match format {
        Format::Json => to_json(&NilpotencyReport { field: ctx.spec().to_string(), q: ctx.q().to_string(), classes }),
        _ => Table::new(["degree", "cochain", "nilpotent", "exponent", "structural_nilpotent", "agrees"])
            .rows(classes.into_iter().map(|r| {
                vec![
                    r.degree.to_string(),
                    r.cochain,
                    r.nilpotent.to_string(),
                    r.exponent.map(|e| e.to_string()).unwrap_or_default(),
                    r.structural_nilpotent.to_string(),
                    r.agrees.to_string(),
                ]
            }))
            .render(format),
    };
    Ok(Output::success(text))
}

#[derive(Serialize)]
struct OracleReport {
    field: String,
    q: String,
    agree: bool,
    rows: Vec<hhq_core::verify::OracleRow>,
}

fn oracle(cli: &Cli, ctx: &FieldContext, format: Format) -> CliResult<Output> {
    if cli.max_n > ORACLE_CAP {
        return Err(CliError::Input(format!("--max-n {} exceeds the oracle cap {ORACLE_CAP}", cli.max_n)));
    }
    let rows = oracle_rows(cli.max_n, ctx)?;
    let agree = rows.iter().all(|r| r.agree);
    let text = match format {
        Format::Json => to_json(&OracleReport { field: ctx.spec().to_string(), q: ctx.q().to_string(), agree, rows }),
        _ => Table::new(["n", "koszul", "bar", "agree"])
            .rows(rows.iter().map(|r| vec![r.n.to_string(), r.koszul.to_string(), r.bar.to_string(), r.agree.to_string()]))
            .render(format),
    };
    Ok(Output::checked(text, agree, "Koszul and bar dimensions disagree"))
}
