//! Command logic for the `tracecert` binary.
//!
//! Each command writes its primary output to a writer and returns the
//! process exit code: 0 on success, 2 when no witness was found or no
//! feasible k exists, 1 on errors (including a certificate that fails to
//! verify).

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use tracecert::boundsearch::{feasibility, Strategy, DEFAULT_ATTEMPTS};
use tracecert::jaccert::DEFAULT_SYMBOLIC_GATE;
use tracecert::permgroup::{BuildLimits, GroupSpec};
use tracecert::pipeline::{self, RunParams};
use tracecert::report::{CertificateRecord, ReportStatus};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "tracecert", version, about = "Jacobian certificates for trace-polynomial families of transitive groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full pipeline and write a bound report.
    Certify(CertifyArgs),
    /// Recheck a certificate (or a report embedding one).
    Verify(VerifyArgs),
    /// Print the coset structure and permutation tables of a group.
    Inspect(InspectArgs),
    /// List feasible (k, l) pairs for given n and r, or for a group.
    Feasible(FeasibleArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GroupSource {
    /// Path to a group spec JSON file.
    #[arg(long, value_name = "PATH")]
    pub group: Option<PathBuf>,
    /// Group spec JSON given inline.
    #[arg(long, value_name = "JSON")]
    pub inline: Option<String>,
}

impl GroupSource {
    pub fn load(&self) -> Result<GroupSpec> {
        let text = match (&self.group, &self.inline) {
            (Some(path), _) => fs::read_to_string(path)
                .with_context(|| format!("reading group spec {}", path.display()))?,
            (None, Some(s)) => s.clone(),
            (None, None) => bail!("one of --group or --inline is required"),
        };
        Ok(GroupSpec::from_json(&text)?)
    }
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub source: GroupSource,
    /// Subset size k (defaults to the smallest feasible value).
    #[arg(long)]
    pub k: Option<usize>,
    /// Exponent t at the first coordinate.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub t: Option<u32>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    pub trials: u32,
    /// Witness coordinates are drawn from [1, bound].
    #[arg(long, default_value = "2147483648")]
    pub bound: BigUint,
    #[arg(long, default_value = "greedy-rank", value_parser = parse_strategy)]
    pub strategy: Strategy,
    #[arg(long, default_value_t = DEFAULT_ATTEMPTS, value_parser = clap::value_parser!(u32).range(1..))]
    pub attempts: u32,
    /// Compute the symbolic determinant as well.
    #[arg(long)]
    pub exact: bool,
    /// Largest n for which the symbolic determinant is attempted.
    #[arg(long, default_value_t = DEFAULT_SYMBOLIC_GATE)]
    pub gate: usize,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Certificate or report JSON.
    pub certificate: PathBuf,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    #[command(flatten)]
    pub source: GroupSource,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct FeasibleArgs {
    #[arg(long, requires = "r", conflicts_with_all = ["group", "inline"])]
    pub n: Option<usize>,
    #[arg(long, requires = "n")]
    pub r: Option<usize>,
    #[arg(long, value_name = "PATH")]
    pub group: Option<PathBuf>,
    #[arg(long, value_name = "JSON")]
    pub inline: Option<String>,
}

fn parse_strategy(s: &str) -> std::result::Result<Strategy, String> {
    s.parse().map_err(|e: tracecert::Error| e.to_string())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Certify(a) => certify(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Inspect(a) => inspect(a, out),
        Command::Feasible(a) => feasible(a, out),
    }
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn certify(a: &CertifyArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = a.source.load()?;
    let params = RunParams {
        k: a.k,
        t: a.t,
        seed: a.seed,
        trials: a.trials,
        bound: a.bound.clone(),
        strategy: a.strategy,
        attempts: a.attempts,
        exact: a.exact,
        gate: a.gate,
        limits: BuildLimits::default(),
    };
    let report = pipeline::certify(&spec, &params)?;
    emit(&report.to_json(), a.out.as_ref(), out)?;
    if let Some(note) = &report.note {
        eprintln!("note: {note}");
    }
    Ok(match report.status {
        ReportStatus::Certified => EXIT_OK,
        ReportStatus::NotCertified | ReportStatus::Infeasible => EXIT_NEGATIVE,
    })
}

pub fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let text = fs::read_to_string(&a.certificate)
        .with_context(|| format!("reading {}", a.certificate.display()))?;
    let record = CertificateRecord::from_json(&text)?;
    if pipeline::verify(&record, &BuildLimits::default())? {
        writeln!(out, "OK: determinant at witness is {}", record.det_value)?;
        Ok(EXIT_OK)
    } else {
        bail!("certificate does not verify (status {})", record.status.as_str())
    }
}

pub fn inspect(a: &InspectArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = a.source.load()?;
    let summary = pipeline::inspect(&spec, &BuildLimits::default())?;
    let text = if a.json {
        summary.to_json()
    } else {
        summary.render_text()
    };
    out.write_all(text.as_bytes())?;
    Ok(EXIT_OK)
}

pub fn feasible(a: &FeasibleArgs, out: &mut dyn Write) -> Result<i32> {
    let (n, r) = match (a.n, a.r) {
        (Some(n), Some(r)) => (n, r),
        _ => {
            let source = GroupSource {
                group: a.group.clone(),
                inline: a.inline.clone(),
            };
            let cs = pipeline::coset_system_for(&source.load()?, &BuildLimits::default())?;
            (cs.n(), cs.r())
        }
    };
    let f = feasibility(n, r);
    let value = serde_json::json!({
        "n": n,
        "r": r,
        "feasible_pairs": f
            .feasible_pairs
            .iter()
            .map(|(k, l)| serde_json::json!([k, l.to_string()]))
            .collect::<Vec<_>>(),
        "chosen": f.chosen.map(|(k, t)| serde_json::json!({"k": k, "t": t})),
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
    Ok(if f.is_feasible() { EXIT_OK } else { EXIT_NEGATIVE })
}
