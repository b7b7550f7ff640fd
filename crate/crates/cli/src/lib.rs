//! The `insep` command line: argument handling, JSON reports and the
//! golden-corpus runner.

pub mod commands;
pub mod config;
pub mod corpus;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

pub use config::{OutputFormat, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FRAGMENT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// An error with its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Failure {
        Failure { code: EXIT_USAGE, message: msg.into() }
    }

    pub fn context(mut self, path: &Path) -> Failure {
        self.message = format!("{}: {}", path.display(), self.message);
        self
    }
}

impl From<insep::Error> for Failure {
    fn from(e: insep::Error) -> Failure {
        let code = match e {
            insep::Error::Fragment { .. } | insep::Error::Unsupported(_) => EXIT_FRAGMENT,
            insep::Error::Resource { .. } => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

/// A command result: the JSON report and an optional plain-text rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: Option<String>,
}

impl Report {
    pub fn json(json: Value) -> Report {
        Report { json, text: None }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match (format, &self.text) {
            (OutputFormat::Text, Some(t)) => t.clone(),
            (OutputFormat::Text, None) => text_lines(&self.json),
            (OutputFormat::Json, _) => serde_json::to_string_pretty(&self.json).unwrap() + "\n",
        }
    }
}

fn text_lines(v: &Value) -> String {
    let Value::Object(m) = v else { return format!("{v}\n") };
    let mut out = String::new();
    for (k, x) in m {
        match x {
            Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
            _ => out.push_str(&format!("{k}: {x}\n")),
        }
    }
    out
}

#[derive(Debug, Parser)]
#[command(name = "insep", version, about = "Inseparability checks for description logic ontologies")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_parser = ["json", "text"], default_value = "json")]
    pub format: String,
    /// Bound on anonymous chase elements (overrides INSEP_WITNESS_CAP).
    #[arg(long, global = true)]
    pub witness_cap: Option<usize>,
    /// Worker threads for `corpus run`.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct KbArgs {
    #[arg(long)]
    pub t1: PathBuf,
    #[arg(long)]
    pub a1: Option<PathBuf>,
    #[arg(long)]
    pub t2: PathBuf,
    #[arg(long)]
    pub a2: Option<PathBuf>,
    /// Signature file or inline `concept:A,B;role:r`.
    #[arg(long)]
    pub sigma: String,
    /// Only queries whose every component contains an answer variable.
    #[arg(long)]
    pub rooted: bool,
    #[arg(long, value_parser = ["forward", "set_state"])]
    pub variant: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a document and report its fragment.
    Parse {
        file: PathBuf,
        /// Validate against a fragment (EL, AcyclicEL, DLLiteCore, DLLiteCoreH, HornALC, ALCHI).
        #[arg(long)]
        fragment: Option<String>,
    },
    /// EL concept difference of t2 over t1.
    Diff {
        #[arg(long)]
        t1: PathBuf,
        #[arg(long)]
        t2: PathBuf,
        #[arg(long)]
        sigma: String,
        /// Example inclusions per witness.
        #[arg(long)]
        examples: Option<usize>,
        #[arg(long)]
        lhs_only: bool,
    },
    /// Model inseparability from the empty TBox.
    Safety {
        #[arg(long)]
        tbox: PathBuf,
        #[arg(long)]
        sigma: String,
    },
    /// Locality check of every axiom for a signature.
    Locality {
        #[arg(long)]
        tbox: PathBuf,
        #[arg(long)]
        sigma: String,
        #[arg(long, value_parser = ["semantic-empty", "syntactic-bot", "syntactic-top"], default_value = "syntactic-bot")]
        kind: String,
    },
    /// Locality-based module extraction.
    Module {
        #[arg(long)]
        tbox: PathBuf,
        #[arg(long)]
        sigma: String,
        #[arg(long, value_parser = ["bot-syntactic", "empty-semantic"], default_value = "bot-syntactic")]
        kind: String,
    },
    /// Dump the generating structure of a Horn KB.
    Chase {
        #[arg(long)]
        kb: PathBuf,
        /// Extra ABox file.
        #[arg(long)]
        abox: Option<PathBuf>,
        /// Unravel to this depth instead.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Greatest Σ-simulation or Σ-bisimulation between two interpretations.
    Sim {
        #[arg(long)]
        i1: PathBuf,
        #[arg(long)]
        i2: PathBuf,
        #[arg(long)]
        sigma: String,
        #[arg(long, value_parser = ["sim", "bisim"], default_value = "sim")]
        kind: String,
        /// Element of i1 (defaults to the first declared).
        #[arg(long)]
        d1: Option<String>,
        #[arg(long)]
        d2: Option<String>,
    },
    /// Σ-CQ entailment of K2 by K1.
    KbEntail(KbArgs),
    /// Σ-CQ inseparability of two KBs.
    KbInsep(KbArgs),
    /// DL-Lite TBox query entailment over singleton ABoxes.
    TboxEntailDllite {
        #[arg(long)]
        t1: PathBuf,
        #[arg(long)]
        t2: PathBuf,
        #[arg(long)]
        sigma1: String,
        #[arg(long)]
        sigma2: String,
        #[arg(long, value_parser = ["forward", "set_state"])]
        variant: Option<String>,
    },
    /// Golden-corpus runner.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusAction {
    /// Run every case below a directory.
    Run {
        dir: PathBuf,
        /// Overwrite expected outputs with the current ones.
        #[arg(long)]
        bless: bool,
    },
}

fn config(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = RunConfig::from_env()?;
    if let Some(n) = cli.witness_cap {
        cfg.witness_cap = n;
    }
    if let Some(n) = cli.jobs {
        cfg.parallelism = n;
    }
    if let Command::Diff { examples: Some(k), .. } = cli.command {
        cfg.example_cap = k;
    }
    cfg.output = OutputFormat::parse(&cli.format).unwrap_or(OutputFormat::Json);
    cfg.validate()?;
    Ok(cfg)
}

/// Runs one command line; the report goes to `out`, diagnostics to `err`.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = config(&cli).and_then(|cfg| commands::run(&cli.command, &cfg).map(|r| (r, cfg)));
    match result {
        Ok((report, cfg)) => {
            let _ = out.write_all(report.render(cfg.output).as_bytes());
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
