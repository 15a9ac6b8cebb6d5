//! The `qkt` command line interface.
//!
//! [`run`] takes the argument vector and returns the exit code together with
//! the text destined for stdout and stderr, which keeps the binary a thin
//! wrapper and the whole interface testable in process.

pub mod cache;
pub mod config;
pub mod verify;

use cache::{Cache, CacheError};
use clap::{Parser, Subcommand, ValueEnum};
use config::{Config, CONFIG_ENV};
use qkt::bethe::{solve_bae, solve_bethe, solve_dual_bae, BetheRoot, Side, DEFAULT_ORDER};
use qkt::combinatorics::BoxPartition;
use qkt::json::Json;
use qkt::localization::{dual_class, localize, qk_pairing};
use qkt::module::ModuleElement;
use qkt::products::{qk_product_checked, qk_product_via_table, Q, YQ};
use qkt::scalar::{RatScalar, Render};
use qkt::vertex::{dual_transfer, transfer};
use qkt::weyl::AffineElement;
use serde_json::{json, Value};
use std::path::PathBuf;

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status for I/O trouble with the cache.
pub const EXIT_IO: i32 = 1;
/// Exit status for malformed arguments, ranks or partitions.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for a failed internal consistency check.
pub const EXIT_CONSISTENCY: i32 = 3;

/// Largest `n` accepted on the command line.
pub const N_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "qkt", version, about = "Exact equivariant quantum K-theory of Grassmannians")]
struct Cli {
    /// Output rendering.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Configuration file; overrides the QKT_CONFIG environment variable.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Cache directory; overrides the configuration file.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct Rank {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Quantum K-product O_a ⋆ O_b.
    Product {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// The transfer matrix t(y) (or its dual with --dual) applied to O_λ.
    Transfer {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        dual: bool,
    },
    /// Applies a word in s0, s1, …, rho, t1, … (with ^-1 for inverses) to O_λ.
    Act {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        word: String,
    },
    /// Bethe roots for the fixed point λ as power series in q.
    Bethe {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        order: Option<usize>,
        /// Solve the dual equations; λ then labels a point of Gr(n−k, n) given by --k.
        #[arg(long)]
        dual: bool,
    },
    /// Quantum K pairing (O_a, O_b), or (O_a, O^b) with --dual-b.
    Pair {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        dual_b: bool,
    },
    /// Restrictions of O_a to the fixed points, or with --order the pairings with every Bethe vector.
    Localize {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Runs the identity suites on every Gr(k,n) with n ≤ n-max.
    Verify {
        /// `all` or a comma-separated list of vertex, weyl, products, localization, bethe.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        q_order: Option<usize>,
    },
    /// Fills the on-disk cache for Gr(k,n), or with --check compares it with fresh solutions.
    Cache {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        check: bool,
    },
}

/// What one invocation printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum CliError {
    Usage(String),
    Io(String),
    Consistency { message: String, witness: Option<Rendered> },
}

impl From<CacheError> for CliError {
    fn from(e: CacheError) -> Self {
        match e {
            CacheError::Io { .. } => CliError::Io(e.to_string()),
            other => CliError::Consistency { message: other.to_string(), witness: None },
        }
    }
}

fn consistency(e: impl ToString) -> CliError {
    CliError::Consistency { message: e.to_string(), witness: None }
}

/// A result in all three renderings.
#[derive(Debug, Clone)]
struct Rendered {
    json: Value,
    text: String,
    latex: String,
}

impl Rendered {
    fn of<T: Json + Render>(v: &T) -> Self {
        Rendered { json: v.to_json(), text: v.render_text(), latex: v.render_latex() }
    }

    fn emit(&self, format: Format) -> String {
        let mut s = match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("JSON values always serialize"),
            Format::Text => self.text.clone(),
            Format::Latex => self.latex.clone(),
        };
        if !s.ends_with('\n') {
            s.push('\n');
        }
        s
    }
}

/// Reads `""`, `"2,1"` or `"2 1"` as a partition in the `k × (n−k)` box.
pub fn parse_partition(k: usize, n: usize, s: &str) -> Result<BoxPartition, String> {
    let parts = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| format!("`{t}` is not a part size")))
        .collect::<Result<Vec<_>, _>>()?;
    BoxPartition::new(k, n, &parts).map_err(|e| e.to_string())
}

fn check_rank(r: Rank) -> Result<(usize, usize), CliError> {
    if r.n == 0 || r.n > N_LIMIT {
        return Err(CliError::Usage(format!("n = {} outside 1..={N_LIMIT}", r.n)));
    }
    if r.k > r.n {
        return Err(CliError::Usage(format!("k = {} exceeds n = {}", r.k, r.n)));
    }
    Ok((r.k, r.n))
}

fn partition(k: usize, n: usize, s: &str) -> Result<BoxPartition, CliError> {
    parse_partition(k, n, s).map_err(|e| CliError::Usage(format!("invalid partition `{s}`: {e}")))
}

struct Context {
    config: Config,
    cache: Option<Cache>,
}

impl Context {
    fn order(&self, flag: Option<usize>) -> usize {
        flag.or(self.config.q_order).unwrap_or(DEFAULT_ORDER)
    }
}

fn root_rendering(root: &BetheRoot) -> Rendered {
    let text = root.roots.iter().enumerate().map(|(i, x)| format!("x_{} = {}", i + 1, x.render_text())).collect::<Vec<_>>();
    let latex = root
        .roots
        .iter()
        .enumerate()
        .map(|(i, x)| format!("x_{{{}}} = {}", i + 1, x.render_latex()))
        .collect::<Vec<_>>();
    Rendered { json: root.to_json(), text: text.join("\n"), latex: latex.join(" \\\\\n") }
}

fn cmd_product(ctx: &Context, rank: Rank, a: &str, b: &str) -> Result<Rendered, CliError> {
    let (k, n) = check_rank(rank)?;
    let oa = ModuleElement::<Q>::basis(&partition(k, n, a)?);
    let ob = ModuleElement::<Q>::basis(&partition(k, n, b)?);
    let p = match &ctx.cache {
        Some(c) => {
            c.structure(k, n)?;
            qk_product_via_table(&oa, &ob).map_err(consistency)?
        }
        None => qk_product_checked(&oa, &ob).map_err(consistency)?,
    };
    Ok(Rendered::of(&p))
}

fn cmd_transfer(rank: Rank, lambda: &str, dual: bool) -> Result<Rendered, CliError> {
    let (k, n) = check_rank(rank)?;
    let v = ModuleElement::<YQ>::basis(&partition(k, n, lambda)?);
    let y = YQ::var(n);
    let r = if dual { dual_transfer(&y, &v) } else { transfer(&y, &v) };
    Ok(Rendered::of(&r))
}

fn cmd_act(rank: Rank, lambda: &str, word: &str) -> Result<Rendered, CliError> {
    let (k, n) = check_rank(rank)?;
    let v = ModuleElement::<Q>::basis(&partition(k, n, lambda)?);
    let w = AffineElement::parse(n, word).map_err(|e| CliError::Usage(format!("invalid word `{word}`: {e}")))?;
    Ok(Rendered::of(&w.apply(&v)))
}

fn cmd_bethe(ctx: &Context, rank: Rank, lambda: &str, order: Option<usize>, dual: bool) -> Result<Rendered, CliError> {
    let (k, n) = check_rank(rank)?;
    let lam = partition(k, n, lambda)?;
    let order = ctx.order(order);
    let root = if dual {
        (*solve_dual_bae(&lam, order).map_err(consistency)?).clone()
    } else {
        if let Some(c) = &ctx.cache {
            c.bethe_roots(k, n, order)?;
        }
        (*solve_bae(&lam, order).map_err(consistency)?).clone()
    };
    Ok(root_rendering(&root))
}

fn cmd_pair(rank: Rank, a: &str, b: &str, dual_b: bool) -> Result<Rendered, CliError> {
    let (k, n) = check_rank(rank)?;
    let oa = ModuleElement::<RatScalar>::basis(&partition(k, n, a)?);
    let lb = partition(k, n, b)?;
    let ob = if dual_b { dual_class(&lb) } else { ModuleElement::basis(&lb) };
    Ok(Rendered::of(&qk_pairing(&oa, &ob).map_err(consistency)?))
}

fn cmd_localize(ctx: &Context, rank: Rank, a: &str, order: Option<usize>) -> Result<Rendered, CliError> {
    let (k, n) = check_rank(rank)?;
    let la = partition(k, n, a)?;
    let oa = ModuleElement::<RatScalar>::basis(&la);
    let mut points = Vec::new();
    let mut text = Vec::new();
    let mut latex = Vec::new();
    match order {
        None => {
            for (mu, c) in localize(&oa).iter() {
                points.push(json!({"fixed_point": mu.parts(), "value": c.to_json()}));
                text.push(format!("O_{la}|_{mu} = {}", c.render_text()));
                latex.push(format!("\\mathcal{{O}}_{{{}}}|_{{{}}} = {}", la.fmt_parts(), mu.fmt_parts(), c.render_latex()));
            }
        }
        Some(_) => {
            let order = ctx.order(order);
            if k == 0 || k == n {
                return Err(CliError::Usage(format!("quantum localization needs 0 < k < n, got Gr({k},{n})")));
            }
            if let Some(c) = &ctx.cache {
                c.bethe_roots(k, n, order)?;
            }
            for mu in BoxPartition::all(k, n) {
                let c = qkt::bethe::quantum_localize(&oa, &mu, order).map_err(consistency)?;
                points.push(json!({"fixed_point": mu.parts(), "value": c.to_json()}));
                text.push(format!("(O_{la}, b_{mu}) = {}", c.render_text()));
                latex.push(format!("(\\mathcal{{O}}_{{{}}}, b_{{{}}}) = {}", la.fmt_parts(), mu.fmt_parts(), c.render_latex()));
            }
        }
    }
    let mode = if order.is_some() { "quantum" } else { "classical" };
    let json = json!({"k": k, "n": n, "class": la.parts(), "mode": mode, "points": points});
    Ok(Rendered { json, text: text.join("\n"), latex: latex.join(" \\\\\n") })
}

fn cmd_verify(ctx: &Context, suite: &str, n_max: Option<usize>, q_order: Option<usize>) -> Result<Rendered, CliError> {
    let suites = verify::parse_suites(suite).map_err(CliError::Usage)?;
    let n_max = n_max.or(ctx.config.n_max).unwrap_or(3);
    if n_max == 0 || n_max > N_LIMIT {
        return Err(CliError::Usage(format!("n-max = {n_max} outside 1..={N_LIMIT}")));
    }
    let q_order = ctx.order(q_order);
    let report = verify::run_suites(&suites, n_max, q_order);
    let rendered = Rendered { json: report.to_json(), text: report.render_text(), latex: report.render_latex() };
    if report.failures() > 0 {
        let message = format!("{} of {} checks failed", report.failures(), report.checks());
        return Err(CliError::Consistency { message, witness: Some(rendered) });
    }
    Ok(rendered)
}

fn cmd_cache(ctx: &Context, rank: Rank, order: Option<usize>, check: bool) -> Result<Rendered, CliError> {
    let (k, n) = check_rank(rank)?;
    let cache = ctx.cache.as_ref().ok_or_else(|| CliError::Usage("no cache directory configured".into()))?;
    let order = ctx.order(order);
    // Compare before anything from disk reaches the in-memory root cache.
    if check {
        for cached in cache.load_bethe(k, n, order)?.unwrap_or_default().iter() {
            let fresh = solve_bethe(&cached.lambda, Side::Primal, order).map_err(consistency)?;
            let same = fresh.roots.len() == cached.roots.len()
                && fresh.roots.iter().zip(&cached.roots).all(|(a, b)| a == b && a.order() == b.order());
            if !same {
                let witness = root_rendering(cached);
                let message = format!("cached roots for {} differ from a fresh solve", cached.lambda);
                return Err(CliError::Consistency { message, witness: Some(witness) });
            }
        }
    }
    let roots = cache.bethe_roots(k, n, order)?;
    cache.structure(k, n)?;
    let bethe = cache.bethe_path(k, n, order).display().to_string();
    let structure = cache.structure_path(k, n).display().to_string();
    let json = json!({"k": k, "n": n, "order": order, "roots": roots.len(), "checked": check, "bethe": bethe, "structure": structure});
    let text = format!("{bethe}\n{structure}");
    let latex = format!("\\texttt{{{bethe}}} \\\\\n\\texttt{{{structure}}}");
    Ok(Rendered { json, text, latex })
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_env(argv, std::env::var(CONFIG_ENV).ok().as_deref())
}

/// [`run`] with the value of `QKT_CONFIG` passed explicitly.
pub fn run_with_env<I, T>(argv: I, config_env: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let config = match Config::resolve(cli.config.as_deref(), config_env) {
        Ok(c) => c,
        Err(e) => return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let cache = cli.cache_dir.clone().or_else(|| config.cache_dir.clone()).map(Cache::new);
    let ctx = Context { config, cache };
    let result = match &cli.command {
        Command::Product { rank, a, b } => cmd_product(&ctx, *rank, a, b),
        Command::Transfer { rank, lambda, dual } => cmd_transfer(*rank, lambda, *dual),
        Command::Act { rank, lambda, word } => cmd_act(*rank, lambda, word),
        Command::Bethe { rank, lambda, order, dual } => cmd_bethe(&ctx, *rank, lambda, *order, *dual),
        Command::Pair { rank, a, b, dual_b } => cmd_pair(*rank, a, b, *dual_b),
        Command::Localize { rank, a, order } => cmd_localize(&ctx, *rank, a, *order),
        Command::Verify { suite, n_max, q_order } => cmd_verify(&ctx, suite, *n_max, *q_order),
        Command::Cache { rank, order, check } => cmd_cache(&ctx, *rank, *order, *check),
    };
    match result {
        Ok(r) => Outcome { code: EXIT_OK, stdout: r.emit(cli.format), stderr: String::new() },
        Err(CliError::Usage(m)) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(CliError::Io(m)) => Outcome { code: EXIT_IO, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(CliError::Consistency { message, witness }) => Outcome {
            code: EXIT_CONSISTENCY,
            stdout: witness.map(|w| w.emit(cli.format)).unwrap_or_default(),
            stderr: format!("consistency failure: {message}\n"),
        },
    }
}
