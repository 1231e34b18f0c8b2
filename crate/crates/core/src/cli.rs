//! Command-line front end.
//!
//! Exit codes: `0` success, `1` a verified property failed, `2` usage or
//! domain error, `3` internal consistency error (a formula or cross-check
//! produced an impossible value).

use std::env;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::arithmetic::{
    fundamental_discriminant, is_squarefree, primes_in, real_quadratic_character, require_prime,
    ArithmeticError,
};
use crate::dieudonne::{fermat_locus, LatticeError, PrimePowerField};
use crate::record::{OutputRecord, CSV_HEADER};
use crate::sigmacount::{sigma2_count_with_cache, SigmaCountBreakdown, SigmaError};
use crate::specialvalues::{
    bernoulli_b2_definitional, bernoulli_b2_even, class_number_analytic, class_number_field,
    ClassNumberCache, SpecialValueError,
};
use crate::verify::{self, Scope};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable consulted when `--cache` is absent.
pub const CACHE_ENV: &str = "SS_CACHE_PATH";

/// Largest prime bound accepted by `table`.
pub const TABLE_LIMIT: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "superspecial",
    version,
    about = "Counts F_p-rational components of the genus-2 supersingular locus"
)]
struct Cli {
    /// Class-number cache file (falls back to $SS_CACHE_PATH)
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    JsonLines,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Component count for one prime, with the formula breakdown
    Count {
        #[arg(long = "p")]
        p: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// One row per prime in [from, to]
    Table {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
        jobs: u64,
    },
    /// Class number of Q(sqrt(-m)) by both methods
    Classnumber {
        #[arg(short = 'm', long = "m")]
        m: u64,
    },
    /// B_{2,chi} for the character of Q(sqrt(p)) by both methods
    Bernoulli {
        #[arg(long = "p")]
        p: u64,
    },
    /// Points [a:b] of P^1(F_{p^e}) with a^(p+1) + b^(p+1) = 0
    Fermat {
        #[arg(long = "p")]
        p: u64,
        #[arg(long = "e", default_value_t = 1)]
        e: u8,
    },
    /// Run property sweeps up to pmax
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        scope: Scope,
        #[arg(long, default_value_t = 1000)]
        pmax: u64,
    },
}

/// A failure that maps onto an exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

impl From<ArithmeticError> for Failure {
    fn from(e: ArithmeticError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<SpecialValueError> for Failure {
    fn from(e: SpecialValueError) -> Self {
        match e {
            SpecialValueError::NonIntegralClassNumber { .. }
            | SpecialValueError::CacheConflict { .. } => Failure::internal(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<SigmaError> for Failure {
    fn from(e: SigmaError) -> Self {
        match e {
            SigmaError::SpecialValue(inner) => inner.into(),
            SigmaError::NonIntegral { .. } | SigmaError::NonPositive { .. } => {
                Failure::internal(e.to_string())
            }
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Consistency(_) => Failure::internal(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(format!("write failed: {e}"))
    }
}

type CmdResult = Result<i32, Failure>;

fn render_text(b: &SigmaCountBreakdown, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "p = {}", b.p)?;
    writeln!(out, "branch = {}", b.branch)?;
    if let (Some(ing), Some(t)) = (&b.ingredients, &b.terms) {
        writeln!(out, "B2,chi = {}", ing.bernoulli)?;
        writeln!(out, "h(sqrt(-p)) = {}", ing.h_p)?;
        writeln!(out, "h(sqrt(-2p)) = {}", ing.h_2p)?;
        writeln!(out, "h(sqrt(-3p)) = {}", ing.h_3p)?;
        writeln!(out, "(2/p) = {}", ing.leg2p)?;
        writeln!(
            out,
            "terms = {} + {} + {} + {}",
            t.bernoulli_term, t.h_p_term, t.h_2p_term, t.h_3p_term
        )?;
    }
    writeln!(out, "sigma2 = {}", b.total)
}

fn record(b: &SigmaCountBreakdown) -> Result<OutputRecord, Failure> {
    OutputRecord::try_from(b).map_err(|e| Failure::internal(e.to_string()))
}

fn cmd_count(p: u64, format: Format, cache: &ClassNumberCache, out: &mut dyn Write) -> CmdResult {
    require_prime(p)?;
    let b = sigma2_count_with_cache(p, cache)?;
    match format {
        Format::Text => render_text(&b, out)?,
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            writeln!(out, "{}", record(&b)?.to_csv_row())?;
        }
        Format::JsonLines => writeln!(out, "{}", record(&b)?.to_json_line())?,
    }
    Ok(EXIT_OK)
}

fn cmd_table(
    from: u64,
    to: u64,
    format: Format,
    jobs: usize,
    cache: &ClassNumberCache,
    out: &mut dyn Write,
) -> CmdResult {
    if !(2 <= from && from <= to && to <= TABLE_LIMIT) {
        return Err(Failure::usage(format!(
            "invalid range [{from}, {to}]: need 2 <= from <= to <= {TABLE_LIMIT}"
        )));
    }
    if format == Format::Text {
        return Err(Failure::usage("table supports --format csv or json-lines"));
    }
    let primes = primes_in(from, to);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::internal(format!("thread pool: {e}")))?;
    // collect() keeps input order regardless of which worker finished first
    let rows: Vec<Result<SigmaCountBreakdown, SigmaError>> = pool.install(|| {
        primes
            .par_iter()
            .map(|&p| sigma2_count_with_cache(p, cache))
            .collect()
    });
    if format == Format::Csv {
        writeln!(out, "{CSV_HEADER}")?;
    }
    for row in rows {
        let r = record(&row?)?;
        match format {
            Format::Csv => writeln!(out, "{}", r.to_csv_row())?,
            _ => writeln!(out, "{}", r.to_json_line())?,
        }
    }
    Ok(EXIT_OK)
}

fn cmd_classnumber(m: u64, cache: &ClassNumberCache, out: &mut dyn Write) -> CmdResult {
    let signed = i64::try_from(m).map_err(|_| ArithmeticError::OutOfRange(m))?;
    if m == 0 || !is_squarefree(signed) {
        return Err(Failure::usage(format!(
            "m = {m} must be a positive squarefree integer"
        )));
    }
    let d = fundamental_discriminant(-signed)?;
    let forms = class_number_field(m, cache)?;
    writeln!(out, "D = {d}")?;
    if d >= -4 {
        writeln!(
            out,
            "h = {forms} (forms) / n/a (Dirichlet sum needs D < -4)"
        )?;
        return Ok(EXIT_OK);
    }
    let analytic = class_number_analytic(d)?;
    writeln!(out, "h = {forms} (forms) / {analytic} (analytic)")?;
    if forms != analytic {
        return Err(Failure::internal(format!(
            "class number methods disagree for D = {d}: {forms} vs {analytic}"
        )));
    }
    Ok(EXIT_OK)
}

fn cmd_bernoulli(p: u64, out: &mut dyn Write) -> CmdResult {
    let chi = real_quadratic_character(p)?;
    let a = bernoulli_b2_definitional(&chi)?;
    let b = bernoulli_b2_even(&chi)?;
    writeln!(out, "D = {}", chi.discriminant())?;
    writeln!(
        out,
        "B2,chi = {a} (definitional) / {b} (even-character sum)"
    )?;
    if a != b {
        return Err(Failure::internal(format!(
            "Bernoulli routes disagree for p = {p}: {a} vs {b}"
        )));
    }
    Ok(EXIT_OK)
}

fn cmd_fermat(p: u64, e: u8, out: &mut dyn Write) -> CmdResult {
    let points = fermat_locus(p, e)?;
    let field = PrimePowerField::new(p, e)?;
    let q = if e == 1 {
        format!("F_{p}")
    } else {
        format!("F_{p}^{e}")
    };
    writeln!(
        out,
        "P^1({q}): {} of {} points satisfy a^{} + b^{} = 0",
        points.len(),
        field.order() + 1,
        p + 1,
        p + 1
    )?;
    if let Some(r) = field.non_residue() {
        writeln!(out, "(t^2 = {r})")?;
    } else if e == 2 {
        writeln!(out, "(t^2 = t + 1)")?;
    }
    if points.is_empty() {
        writeln!(out, "(none)")?;
    } else {
        let shown: Vec<String> = points.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", shown.join(", "))?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(scope: Scope, pmax: u64, cache: &ClassNumberCache, out: &mut dyn Write) -> CmdResult {
    if pmax < 7 {
        return Err(Failure::usage(format!(
            "--pmax must be at least 7 (got {pmax})"
        )));
    }
    for report in verify::run(scope, pmax, cache) {
        writeln!(out, "{report}")?;
        if !report.passed() {
            return Ok(EXIT_PROPERTY_FAILED);
        }
    }
    Ok(EXIT_OK)
}

fn resolve_cache_path(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| {
        env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    })
}

fn dispatch(cli: Cli, cache: &ClassNumberCache, out: &mut dyn Write) -> CmdResult {
    match cli.command {
        Command::Count { p, format } => cmd_count(p, format, cache, out),
        Command::Table {
            from,
            to,
            format,
            jobs,
        } => cmd_table(from, to, format, jobs as usize, cache, out),
        Command::Classnumber { m } => cmd_classnumber(m, cache, out),
        Command::Bernoulli { p } => cmd_bernoulli(p, out),
        Command::Fermat { p, e } => cmd_fermat(p, e, out),
        Command::Verify { scope, pmax } => cmd_verify(scope, pmax, cache, out),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let cache_path = resolve_cache_path(cli.cache.clone());
    let cache = match &cache_path {
        Some(path) => match ClassNumberCache::load(path) {
            Ok(c) => c,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
        },
        None => ClassNumberCache::new(),
    };
    let code = match dispatch(cli, &cache, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    };
    if let Some(path) = cache_path {
        if cache.is_dirty() {
            if let Err(e) = cache.save(&path) {
                let _ = writeln!(err, "error: {e}");
                return if code == EXIT_OK { EXIT_USAGE } else { code };
            }
        }
    }
    code
}
