use std::fs;

use hmstab_core::analyze::{analyze, AnalyzeOptions, Report};
use hmstab_core::singularity::ProjectivePoint;
use hmstab_core::{parse_point, parse_poly, Error, Field};

/// Exit code and the text destined for stdout or stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        CommandOutput { code, stdout: String::new(), stderr }
    }
}

#[derive(Debug, Clone, Default)]
pub struct AnalyzeArgs {
    pub poly: String,
    pub nvars: usize,
    pub field: String,
    pub s: Option<i32>,
    pub points: Option<String>,
    pub budget: Option<u64>,
    pub seed: Option<u64>,
}

fn read_arg(text: &str) -> std::io::Result<String> {
    match text.strip_prefix('@') {
        Some(path) => fs::read_to_string(path),
        None => Ok(text.to_string()),
    }
}

fn is_input_error(e: &Error) -> bool {
    !matches!(e, Error::Internal(_) | Error::BudgetExceeded { .. } | Error::BadPrimes(_))
}

/// Parses the arguments and runs the analysis.
pub fn build_report(args: &AnalyzeArgs) -> Result<Report, (i32, String)> {
    let input = |e: String| (2, e);
    let field: Field = args.field.parse().map_err(|e: Error| input(e.to_string()))?;
    let text = read_arg(&args.poly).map_err(|e| input(format!("cannot read polynomial: {e}")))?;
    let f = parse_poly(text.trim(), args.nvars, field).map_err(|e| input(e.to_string()))?;
    let mut opts = AnalyzeOptions { s_override: args.s, ..AnalyzeOptions::default() };
    if let Some(b) = args.budget {
        opts.budget = b;
    }
    if let Some(s) = args.seed {
        opts.seed = s;
    }
    if let Some(path) = &args.points {
        let body = fs::read_to_string(path).map_err(|e| input(format!("cannot read points: {e}")))?;
        for line in body.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let coords = parse_point(line, field).map_err(|e| input(e.to_string()))?;
            if coords.len() != args.nvars {
                return Err(input(format!("point {line} has {} coordinates, expected {}", coords.len(), args.nvars)));
            }
            opts.points.push(ProjectivePoint::new(coords).map_err(|e| input(e.to_string()))?);
        }
    }
    analyze(&f, &opts).map_err(|e| if is_input_error(&e) { (2, e.to_string()) } else { (3, e.to_string()) })
}

pub fn run_analyze(args: &AnalyzeArgs) -> CommandOutput {
    match build_report(args) {
        Ok(r) => CommandOutput::ok(serde_json::to_string_pretty(&r).expect("report serializes") + "\n"),
        Err((code, msg)) => CommandOutput::fail(code, format!("error: {msg}\n")),
    }
}

pub fn run_verify(path: &str) -> CommandOutput {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return CommandOutput::fail(2, format!("error: cannot read {path}: {e}\n")),
    };
    match crate::verify::verify_json(&text) {
        crate::verify::Outcome::Valid => CommandOutput::ok("valid\n".into()),
        crate::verify::Outcome::Failed(m) => CommandOutput::fail(1, format!("verification failed: {m}\n")),
        crate::verify::Outcome::Malformed(m) => CommandOutput::fail(2, format!("malformed certificate: {m}\n")),
    }
}
