use std::fs;
use std::path::Path;

use insep::reasoner::DEFAULT_WITNESS_CAP;
use insep::syntax::{parse_document, parse_signature, parse_signature_inline, Document, Signature};

use crate::Failure;

pub const WITNESS_CAP_VAR: &str = "INSEP_WITNESS_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Option<OutputFormat> {
        match s {
            "json" => Some(OutputFormat::Json),
            "text" => Some(OutputFormat::Text),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    /// Bound on anonymous elements built by the chase.
    pub witness_cap: usize,
    /// Example inclusions reported per difference witness.
    pub example_cap: usize,
    /// Worker threads for the corpus runner.
    pub parallelism: usize,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { witness_cap: DEFAULT_WITNESS_CAP, example_cap: 1, parallelism: 1, output: OutputFormat::Json }
    }
}

impl RunConfig {
    /// Defaults with the environment override applied.
    pub fn from_env() -> Result<RunConfig, Failure> {
        let mut cfg = RunConfig::default();
        if let Ok(v) = std::env::var(WITNESS_CAP_VAR) {
            cfg.witness_cap = positive(&v).ok_or_else(|| Failure::usage(format!("{WITNESS_CAP_VAR}: expected a positive integer, found '{v}'")))?;
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), Failure> {
        if self.witness_cap == 0 || self.example_cap == 0 || self.parallelism == 0 {
            return Err(Failure::usage("caps must be positive"));
        }
        Ok(())
    }
}

fn positive(s: &str) -> Option<usize> {
    s.trim().parse().ok().filter(|&n| n > 0)
}

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn load_document(path: &Path) -> Result<Document, Failure> {
    parse_document(&read(path)?).map_err(|e| Failure::from(e).context(path))
}

/// A signature file, or inline `concept:A,B;role:r` text.
pub fn load_sigma(arg: &str) -> Result<Signature, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        return parse_signature(&read(path)?).map_err(|e| Failure::from(e).context(path));
    }
    if arg.contains(':') || arg.trim().is_empty() {
        return parse_signature_inline(arg).map_err(Failure::from);
    }
    Err(Failure::usage(format!("{arg}: no such signature file")))
}
