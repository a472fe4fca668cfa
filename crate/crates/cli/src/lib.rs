//! Command-line front end: runs verification suites over a `(p, n)` grid
//! and prints the invariants the verifiers are built from.
//!
//! Exit status: 0 when every report passes, 1 on any failed report, 2 on
//! usage errors.

pub mod config;
pub mod runner;
pub mod show;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use extraspecial::report::VerificationReport;

pub use config::{FileConfig, Format, Suite, SuiteConfig};
pub use runner::{run, RunOutcome, UsageError};

#[derive(Debug, Parser)]
#[command(
    name = "extraspecial",
    version,
    about = "Exact verification of Chern class identities for extraspecial p-groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification suites and print their reports.
    Verify(VerifyArgs),
    /// Print a polynomial or class.
    Show(show::ShowArgs),
}

/// Flags override values from `--config`, which override the defaults.
#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Repeatable; defaults to all.
    #[arg(long = "suite", value_enum)]
    pub suites: Vec<Suite>,
    #[arg(long)]
    pub degree_bound: Option<u32>,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Seed for randomized sampling.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Record wall time in every report.
    #[arg(long)]
    pub timing: bool,
    /// Use at most this many evenly spaced base Lagrangians for theorem 5.2.
    #[arg(long)]
    pub base_points: Option<usize>,
    /// Permit grids with more than 156 Lagrangians.
    #[arg(long)]
    pub allow_large: bool,
    /// A file of `key = value` lines mirroring the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl VerifyArgs {
    pub fn resolve(&self) -> Result<SuiteConfig, UsageError> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
                FileConfig::parse(&text).map_err(|e| UsageError(e.to_string()))?
            }
            None => FileConfig::default(),
        };
        let d = SuiteConfig::default();
        let suites = if !self.suites.is_empty() {
            self.suites.clone()
        } else if !file.suites.is_empty() {
            file.suites
        } else {
            d.suites
        };
        Ok(SuiteConfig {
            p: self.p.or(file.p).unwrap_or(d.p),
            n: self.n.or(file.n).unwrap_or(d.n),
            suites,
            degree_bound: self.degree_bound.or(file.degree_bound),
            jobs: self.jobs.or(file.jobs),
            format: self.format.or(file.format).unwrap_or(d.format),
            seed: self.seed.or(file.seed).unwrap_or(d.seed),
            timing: self.timing || file.timing.unwrap_or(false),
            base_points: self.base_points.or(file.base_points),
            allow_large: self.allow_large || file.allow_large.unwrap_or(false),
        })
    }
}

/// Text rendering: one summary line per report, then the witness and
/// notes of failed reports, then a tally.
pub fn render_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&r.summary());
        out.push('\n');
        if let Some(w) = &r.witness {
            if let Some(d) = &w.detail {
                out.push_str(&format!("    detail: {d}\n"));
            }
            if !w.lagrangian_rref.is_empty() {
                out.push_str(&format!("    lagrangian: {:?}\n", w.lagrangian_rref));
            }
            if !w.difference_poly.is_empty() {
                out.push_str(&format!("    difference: {}\n", w.difference_poly));
            }
        }
        for note in &r.notes {
            out.push_str(&format!("    note: {note}\n"));
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    out.push_str(&format!("{} reports, {failed} failed\n", reports.len()));
    out
}

pub fn render(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Text => render_text(reports),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

/// Entry point with explicit arguments and streams; returns the exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match cli.command {
        Command::Verify(args) => {
            let outcome = args.resolve().and_then(|config| run(&config).map(|o| (config, o)));
            match outcome {
                Ok((config, outcome)) => {
                    for s in &outcome.skipped {
                        let _ = writeln!(err, "skipped {s}");
                    }
                    let _ = out.write_all(render(&outcome.reports, config.format).as_bytes());
                    outcome.exit_code()
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    2
                }
            }
        }
        Command::Show(args) => match show::show(&args) {
            Ok(text) => {
                let _ = writeln!(out, "{text}");
                0
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                2
            }
        },
    }
}
