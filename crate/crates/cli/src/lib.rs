//! Command-line driver: reads SpecFile JSON, runs the analysis, and renders reports.

pub mod commands;
pub mod report;
pub mod spec_file;

#[cfg(test)]
mod tests;

use clap::{Parser, Subcommand};
use commands::{CliError, Flags, Session};
use serde::Serialize;
use std::ffi::OsString;
use std::fmt::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "autvar", version, about = "Automorphism groups of Danielewski varieties and line suspensions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Machine-readable JSON output.
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Human-readable output (the default).
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Largest finite group to enumerate (overrides the spec's enum_order_bound; default 360).
    #[arg(long, global = true, value_name = "N")]
    pub max_enum_order: Option<u64>,
    /// Reject a nonzero z^(d-1) coefficient instead of shifting z.
    #[arg(long, global = true)]
    pub no_normalize: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants and automorphism group structure.
    Analyze { spec: PathBuf },
    /// exp(h·∂) for the canonical LND ∂ and h in its kernel.
    Exp { spec: PathBuf, h: String },
    /// Apply an automorphism to f: identity, exp:<h>, G[i], an element tuple, a generator id, or an inline map.
    Apply { spec: PathBuf, target: String, f: String },
    /// Filtration degree of f.
    Degree { spec: PathBuf, f: String },
    /// Leading form of f in the associated graded algebra.
    Gr { spec: PathBuf, f: String },
    /// Irreducibility test with the component decomposition.
    Irreducible { spec: PathBuf },
    /// Genus of the curve y^k = P(z).
    Genus { spec: PathBuf },
}

fn emit<T: Serialize>(json: bool, value: &T, pretty: impl FnOnce(&T) -> String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(value).expect("results serialize");
        s.push('\n');
        s
    } else {
        pretty(value)
    }
}

fn map_text(m: &commands::MapListing) -> String {
    let mut out = format!("{}\n", m.map);
    for i in &m.images {
        let _ = writeln!(out, "  {} ↦ {}", i.var, i.image);
    }
    if !m.inverse.is_empty() {
        out.push_str("inverse\n");
        for i in &m.inverse {
            let _ = writeln!(out, "  {} ↦ {}", i.var, i.image);
        }
    }
    let _ = writeln!(out, "verified: {}", if m.verified { "yes" } else { "no" });
    for w in &m.warnings {
        let _ = writeln!(out, "warning: {}", w);
    }
    out
}

/// Runs one command and returns its stdout text.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let flags = Flags { max_enum_order: cli.max_enum_order, no_normalize: cli.no_normalize };
    let json = cli.json;
    let load = |p: &PathBuf| Session::load(p, &flags);
    Ok(match &cli.command {
        Command::Analyze { spec } => {
            let r = commands::analyze(&load(spec)?)?;
            if json {
                let mut s = r.to_json();
                s.push('\n');
                s
            } else {
                report::render_pretty(&r)
            }
        }
        Command::Exp { spec, h } => emit(json, &commands::exp(&load(spec)?, h)?, map_text),
        Command::Apply { spec, target, f } => emit(json, &commands::apply(&load(spec)?, target, f)?, |r| format!("{}\n", r.result)),
        Command::Degree { spec, f } => emit(json, &commands::degree(&load(spec)?, f)?, |r| format!("{}\n", r.degree)),
        Command::Gr { spec, f } => emit(json, &commands::gr(&load(spec)?, f)?, |r| {
            let mut s = format!("{}\n", r.leading_form);
            if let Some(g) = &r.graded_relation {
                let _ = writeln!(s, "in {}", g);
            }
            s
        }),
        Command::Irreducible { spec } => emit(json, &commands::irreducible(&load(spec)?)?, |r| match r.l {
            None => "irreducible\n".into(),
            Some(l) => {
                let mut s = format!("reducible: P = ({})^{}\n", r.q.as_deref().unwrap_or(""), l);
                for c in &r.components {
                    let _ = writeln!(s, "  {} = 0", c);
                }
                let _ = writeln!(s, "product check: {}", if r.product_verified == Some(true) { "ok" } else { "failed" });
                s
            }
        }),
        Command::Genus { spec } => emit(json, &commands::genus_of(&load(spec)?)?, |r| format!("{}\n", r.genus)),
    })
}

/// Parses arguments, runs, prints, and returns the process exit code.
/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exit {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command without touching the process streams.
pub fn execute<I, T>(args: I) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Exit { code: 1, stdout: String::new(), stderr: text } } else { Exit { code: 0, stdout: text, stderr: String::new() } };
        }
    };
    match run(&cli) {
        Ok(stdout) => Exit { code: 0, stdout, stderr: String::new() },
        Err(e) => Exit { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {}\n", e) },
    }
}

pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let exit = execute(args);
    print!("{}", exit.stdout);
    eprint!("{}", exit.stderr);
    exit.code
}
