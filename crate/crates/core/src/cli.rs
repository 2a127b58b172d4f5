//! Command-line front end: `coeff`, `sequence`, `fit`, `verify` and `cache`.
//!
//! [`run`] writes to the given sink and returns the process exit code; errors
//! are mapped by [`exit_code`] (2 for invalid input, 3 for the term budget).

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use crate::cache::{Cache, What};
use crate::error::{invalid, Error, Result};
use crate::hwv::multiplicity_by_character;
use crate::partitions::Partition;
use crate::quasipoly::{fit_validated, read_csv, FitOptions, Sample};
use crate::rational_to_string;
use crate::sequence::sequence;
use crate::symfunc::{plethysm_coefficient, plethysm_coefficient_fast, tensor_multiplicity, Inner};
use crate::verify::{verify_theorem, VerificationReport, VerifyOptions};

#[derive(Debug, Parser)]
#[command(
    name = "plethysm",
    version,
    about = "Exact plethysm coefficients, tensor multiplicities and their dilation asymptotics"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// a^π_{μ,λ}: coefficient of s_π in s_μ[s_λ] (or s_μ[h_k] with --k).
    Coeff(CoeffArgs),
    /// Sample d ↦ a^{dλ}_{μ,(dk)} and/or d ↦ c^{dλ}_{p,dk}.
    Sequence(SequenceArgs),
    /// Fit a quasi-polynomial to a sampled sequence.
    Fit(FitArgs),
    /// Check the asymptotic theorem on one instance.
    Verify(VerifyArgs),
    /// Inspect or clear the on-disk cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Symfunc,
    Hwv,
}

#[derive(Debug, Args)]
pub struct CoeffArgs {
    #[arg(long)]
    pub mu: Partition,
    /// Inner partition λ (general plethysm).
    #[arg(long, conflicts_with = "k", required_unless_present = "k")]
    pub lambda: Option<Partition>,
    /// Inner h_k.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub pi: Partition,
    #[arg(long, value_enum, default_value_t = Engine::Symfunc)]
    pub engine: Engine,
    /// Also print c^π_{p,k} (only with --k).
    #[arg(long)]
    pub with_c: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WhatArg {
    A,
    C,
    Both,
}

#[derive(Debug, Args)]
pub struct SequenceArgs {
    #[arg(long)]
    pub lambda: Partition,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub mu: Option<Partition>,
    #[arg(long, default_value_t = 0)]
    pub dmin: u64,
    #[arg(long)]
    pub dmax: u64,
    #[arg(long, value_enum, default_value_t = WhatArg::Both)]
    pub what: WhatArg,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// CSV with header `d,value`.
    #[arg(long, conflicts_with_all = ["lambda", "p", "k", "mu", "dmax"])]
    pub input: Option<PathBuf>,
    #[arg(long, requires_all = ["p", "k", "dmax"])]
    pub lambda: Option<Partition>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Fit the a-sequence for this μ; the c-sequence when absent.
    #[arg(long)]
    pub mu: Option<Partition>,
    #[arg(long)]
    pub dmax: Option<u64>,
    #[arg(long, default_value_t = 12)]
    pub max_period: usize,
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub drop_prefix: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub lambda: Partition,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub dmax: Option<u64>,
    #[arg(long, default_value_t = 12)]
    pub max_period: usize,
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Largest d the automatic sample growth may reach (case iii).
    #[arg(long, default_value_t = 72)]
    pub dmax_cap: u64,
    /// Seconds after which automatic sample growth stops (case iii).
    #[arg(long, default_value_t = 600)]
    pub time_budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// Print the cache directory.
    Path,
    /// Count cached files and values.
    Stats,
    /// Remove cached files.
    Clear,
}

/// Process exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidInput(_) => 2,
        Error::Resource { .. } => 3,
        _ => 1,
    }
}

/// Executes one command; the returned code is 0 on success and 1 when a
/// verification fails.
pub fn run(cli: &Cli, cache: &Cache, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Coeff(args) => coeff(args, cli.json, out),
        Command::Sequence(args) => sequence_cmd(args, cli.json, cache, out),
        Command::Fit(args) => fit_cmd(args, cli.json, cache, out),
        Command::Verify(args) => verify_cmd(args, cli.json, cache, out),
        Command::Cache { action } => cache_cmd(action, cli.json, cache, out),
    }
}

fn coeff(args: &CoeffArgs, json: bool, out: &mut dyn Write) -> Result<i32> {
    let p = args.mu.size();
    let (a, c): (BigUint, Option<BigUint>) = match (&args.lambda, args.k) {
        (Some(lambda), None) => {
            if args.engine == Engine::Hwv {
                return Err(invalid("--engine hwv needs an h_k inner function (--k)"));
            }
            if args.with_c {
                return Err(invalid("--with-c needs --k"));
            }
            (plethysm_coefficient(&args.mu, lambda, &args.pi)?, None)
        }
        (None, Some(k)) => {
            if args.pi.size() != p * k {
                return Err(invalid(format!("|π| = {} but |μ|·k = {}", args.pi.size(), p * k)));
            }
            let a = match args.engine {
                Engine::Symfunc => plethysm_coefficient_fast(&args.mu, k, &args.pi, Inner::H)?,
                Engine::Hwv => {
                    if args.pi.len() > p {
                        BigUint::default()
                    } else {
                        multiplicity_by_character(&args.pi, p, k, args.pi.len().max(1), &args.mu)?
                    }
                }
            };
            let c = if args.with_c { Some(tensor_multiplicity(&args.pi, p, k)?) } else { None };
            (a, c)
        }
        _ => return Err(invalid("give exactly one of --lambda and --k")),
    };
    if json {
        let mut record = json!({
            "mu": args.mu,
            "pi": args.pi,
            "engine": match args.engine { Engine::Symfunc => "symfunc", Engine::Hwv => "hwv" },
            "a": a.to_string(),
        });
        match (&args.lambda, args.k) {
            (Some(lambda), _) => record["lambda"] = json!(lambda),
            (_, Some(k)) => record["k"] = json!(k),
            _ => {}
        }
        if let Some(c) = &c {
            record["c"] = json!(c.to_string());
        }
        writeln!(out, "{record}")?;
    } else {
        writeln!(out, "{a}")?;
        if let Some(c) = c {
            writeln!(out, "c = {c}")?;
        }
    }
    Ok(0)
}

fn sequence_cmd(args: &SequenceArgs, json: bool, cache: &Cache, out: &mut dyn Write) -> Result<i32> {
    if args.dmin > args.dmax {
        return Err(invalid("--dmin exceeds --dmax"));
    }
    let range = args.dmin..=args.dmax;
    let need_mu = || args.mu.as_ref().ok_or_else(|| invalid("--what a/both needs --mu"));
    let c = match args.what {
        WhatArg::C | WhatArg::Both => {
            Some(sequence(What::C, &args.lambda, args.p, args.k, None, range.clone(), cache)?)
        }
        WhatArg::A => None,
    };
    let a = match args.what {
        WhatArg::A | WhatArg::Both => {
            let mu = need_mu()?;
            Some(sequence(What::A, &args.lambda, args.p, args.k, Some(mu), range.clone(), cache)?)
        }
        WhatArg::C => None,
    };
    let text = |s: &Sample| rational_to_string(&s.value);
    if json {
        let rows: Vec<serde_json::Value> = range
            .clone()
            .enumerate()
            .map(|(i, d)| {
                let mut row = json!({ "d": d });
                if let Some(c) = &c {
                    row["c"] = json!(text(&c[i]));
                }
                if let Some(a) = &a {
                    row["a"] = json!(text(&a[i]));
                }
                row
            })
            .collect();
        let record = json!({
            "lambda": args.lambda, "p": args.p, "k": args.k, "mu": args.mu, "values": rows,
        });
        writeln!(out, "{record}")?;
        return Ok(0);
    }
    match (&c, &a) {
        (Some(c), Some(a)) => {
            writeln!(out, "d,c,a")?;
            for (x, y) in c.iter().zip(a) {
                writeln!(out, "{},{},{}", x.d, text(x), text(y))?;
            }
        }
        (Some(s), None) | (None, Some(s)) => {
            writeln!(out, "d,value")?;
            for x in s {
                writeln!(out, "{},{}", x.d, text(x))?;
            }
        }
        (None, None) => unreachable!("at least one sequence is requested"),
    }
    Ok(0)
}

fn fit_cmd(args: &FitArgs, _json: bool, cache: &Cache, out: &mut dyn Write) -> Result<i32> {
    let samples = match (&args.input, &args.lambda) {
        (Some(path), _) => read_csv(&std::fs::read_to_string(path)?)?,
        (None, Some(lambda)) => {
            let (p, k, dmax) = (args.p.unwrap_or(0), args.k.unwrap_or(0), args.dmax.unwrap_or(0));
            match &args.mu {
                Some(mu) => sequence(What::A, lambda, p, k, Some(mu), 0..=dmax, cache)?,
                None => sequence(What::C, lambda, p, k, None, 0..=dmax, cache)?,
            }
        }
        (None, None) => return Err(invalid("give --input or --lambda/--p/--k/--dmax")),
    };
    let opts = FitOptions { max_degree: args.max_degree, max_period: args.max_period, drop_prefix: args.drop_prefix };
    let fit = fit_validated(&samples, &opts)?;
    let q = &fit.quasi_polynomial;
    let mut record = serde_json::to_value(q)?;
    let report = q.leading_term_report();
    record["degree"] = json!(report.degree);
    record["constant_leading"] = json!(report.is_constant_leading);
    record["validation"] = json!({
        "samples_used": fit.samples_used,
        "held_out": fit.held_out,
        "max_residual": rational_to_string(&fit.max_residual()),
    });
    writeln!(out, "{record}")?;
    Ok(0)
}

fn verify_cmd(args: &VerifyArgs, json: bool, cache: &Cache, out: &mut dyn Write) -> Result<i32> {
    let opts = VerifyOptions {
        dmax: args.dmax,
        max_period: args.max_period,
        max_degree: args.max_degree,
        dmax_cap: args.dmax_cap,
        time_budget_secs: args.time_budget,
    };
    let report = verify_theorem(&args.lambda, args.p, args.k, &opts, cache)?;
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    } else {
        write_report(&report, out)?;
    }
    Ok(if report.passed { 0 } else { 1 })
}

/// Human-readable summary of a report.
pub fn write_report(report: &VerificationReport, out: &mut dyn Write) -> Result<()> {
    let inst = &report.instance;
    writeln!(out, "instance: λ={} p={} k={}", inst.lambda, inst.p, inst.k)?;
    writeln!(out, "case ({}): {:?}", report.case.label(), report.route.class)?;
    if let Some(pattern) = &report.pattern {
        writeln!(out, "pattern: {pattern}")?;
    }
    if let Some(c) = &report.c_fit {
        writeln!(out, "c fit: {}", c.quasi_polynomial)?;
    }
    for f in &report.a_fits {
        writeln!(
            out,
            "a fit μ={}: {}  ratio {} (expected {})",
            f.mu,
            f.fit.quasi_polynomial,
            f.observed_ratio.as_deref().unwrap_or("-"),
            f.expected_ratio
        )?;
    }
    for check in &report.checks {
        let mu = check.mu.as_ref().map(|m| format!(" μ={m}")).unwrap_or_default();
        writeln!(out, "[{}] {}{mu}", if check.passed { "PASS" } else { "FAIL" }, check.name)?;
    }
    if !report.diffs.is_empty() {
        writeln!(out, "diff:")?;
        for d in &report.diffs {
            writeln!(out, "  {d}")?;
        }
    }
    writeln!(out, "{}", if report.passed { "PASS" } else { "FAIL" })?;
    Ok(())
}

fn cache_cmd(action: &CacheAction, json: bool, cache: &Cache, out: &mut dyn Write) -> Result<i32> {
    match action {
        CacheAction::Path => {
            let path = cache.path().map(|p| p.display().to_string()).unwrap_or_default();
            if json {
                writeln!(out, "{}", json!({ "path": path }))?;
            } else {
                writeln!(out, "{path}")?;
            }
        }
        CacheAction::Stats => {
            let stats = cache.stats()?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&stats)?)?;
            } else {
                writeln!(
                    out,
                    "{}: {} sequence files ({} values), {} character tables, {} bytes",
                    stats.path.display(),
                    stats.sequence_files,
                    stats.cached_values,
                    stats.character_tables,
                    stats.bytes
                )?;
            }
        }
        CacheAction::Clear => {
            let removed = cache.clear()?;
            if json {
                writeln!(out, "{}", json!({ "removed": removed }))?;
            } else {
                writeln!(out, "removed {removed} files")?;
            }
        }
    }
    Ok(0)
}
