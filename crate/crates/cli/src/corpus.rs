//! Golden cases: each subdirectory holds an `args` file (the command line
//! after `insep`, `#` comments allowed) and `expected.json` with the exit
//! status and the JSON report. Arguments naming files inside the case
//! directory are resolved against it.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::config::{read, RunConfig};
use crate::{dispatch, Failure, Report};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub id: String,
    pub passed: bool,
    pub exit: i32,
    pub fragment: Value,
    pub detail: String,
}

pub fn case_dirs(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
    let mut out: Vec<PathBuf> = entries.filter_map(|e| e.ok()).map(|e| e.path()).filter(|p| p.join("args").is_file()).collect();
    out.sort();
    Ok(out)
}

pub fn case_args(case: &Path) -> Result<Vec<String>, Failure> {
    let text = read(&case.join("args"))?;
    let mut args = vec!["insep".to_string()];
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            let p = case.join(tok);
            args.push(if p.is_file() || p.is_dir() { p.to_string_lossy().into_owned() } else { tok.to_string() });
        }
    }
    Ok(args)
}

/// Exit status and parsed report of one case.
pub fn execute(case: &Path) -> Result<Value, Failure> {
    let args = case_args(case)?;
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = dispatch(&args, &mut out, &mut err);
    let output = serde_json::from_slice(&out).unwrap_or(Value::Null);
    Ok(json!({ "exit": code, "output": output }))
}

/// Serialization with sorted keys.
pub fn canonical(v: &Value) -> String {
    serde_json::to_string(v).unwrap()
}

fn run_case(case: &Path, bless: bool) -> CaseResult {
    let id = case.file_name().unwrap().to_string_lossy().into_owned();
    let got = match execute(case) {
        Ok(v) => v,
        Err(f) => return CaseResult { id, passed: false, exit: f.code, fragment: Value::Null, detail: f.message },
    };
    let exit = got["exit"].as_i64().unwrap_or(-1) as i32;
    let fragment = got["output"]["fragment"].clone();
    let expected_path = case.join("expected.json");
    if bless {
        let text = serde_json::to_string_pretty(&got).unwrap() + "\n";
        return match fs::write(&expected_path, text) {
            Ok(()) => CaseResult { id, passed: true, exit, fragment, detail: "blessed".into() },
            Err(e) => CaseResult { id, passed: false, exit, fragment, detail: e.to_string() },
        };
    }
    let expected: Value = match read(&expected_path).map(|t| serde_json::from_str(&t)) {
        Ok(Ok(v)) => v,
        Ok(Err(e)) => return CaseResult { id, passed: false, exit, fragment, detail: format!("expected.json: {e}") },
        Err(f) => return CaseResult { id, passed: false, exit, fragment, detail: f.message },
    };
    let passed = canonical(&expected) == canonical(&got);
    let detail = if passed { String::new() } else { format!("got {}", canonical(&got)) };
    CaseResult { id, passed, exit, fragment, detail }
}

pub fn run_cases(cases: &[PathBuf], bless: bool, jobs: usize) -> Vec<CaseResult> {
    let mut slots: Vec<Option<CaseResult>> = vec![None; cases.len()];
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs.max(1))
            .map(|w| {
                s.spawn(move || {
                    (w..cases.len()).step_by(jobs.max(1)).map(|i| (i, run_case(&cases[i], bless))).collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().unwrap() {
                slots[i] = Some(r);
            }
        }
    });
    slots.into_iter().map(Option::unwrap).collect()
}

pub fn run_dir(dir: &Path, bless: bool, cfg: &RunConfig) -> Result<Report, Failure> {
    let cases = case_dirs(dir)?;
    let results = run_cases(&cases, bless, cfg.parallelism);
    let passed = results.iter().filter(|r| r.passed).count();
    let mut text = String::new();
    for r in &results {
        let status = if bless { "BLESS" } else if r.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("{status:<5} {:<40} exit {}", r.id, r.exit));
        if !r.passed {
            text.push_str(&format!("  {}", r.detail));
        }
        text.push('\n');
    }
    text.push_str(&format!("{passed}/{} passed\n", results.len()));
    let json = json!({
        "command": "corpus",
        "variant": if bless { "bless" } else { "compare" },
        "fragment": "per-case",
        "passed": passed,
        "failed": results.len() - passed,
        "cases": results.iter().map(|r| json!({
            "id": r.id,
            "status": if r.passed { "pass" } else { "fail" },
            "exit": r.exit,
            "fragment": r.fragment,
        })).collect::<Vec<_>>(),
    });
    Ok(Report { json, text: Some(text) })
}
