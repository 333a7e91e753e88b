use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hmstab_cli::commands::{run_analyze, run_verify, AnalyzeArgs, CommandOutput};
use hmstab_cli::corpus;

#[derive(Parser)]
#[command(name = "hmstab", version, about = "Exact GIT (semi)stability analysis of projective hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a homogeneous polynomial and print a JSON report.
    Analyze {
        /// Polynomial text, or `@path` to read it from a file.
        #[arg(long)]
        poly: String,
        /// Number of variables X0..X{n-1}.
        #[arg(long)]
        nvars: usize,
        /// `q` or `fp:<p>`.
        #[arg(long, default_value = "q")]
        field: String,
        /// Dimension of the singular locus, overriding the computed value.
        #[arg(long, allow_hyphen_values = true)]
        s: Option<i32>,
        /// File with one point `[a0:...:aN]` per line.
        #[arg(long)]
        points: Option<String>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, env = "HMSTAB_SEED")]
        seed: Option<u64>,
    },
    /// Re-check a certificate (or every certificate of a report) from scratch.
    Verify { certificate: String },
    /// Run the built-in corpus, or a JSON list of entries.
    Corpus {
        /// Only entries whose name contains this text.
        filter: Option<String>,
        #[arg(long)]
        file: Option<String>,
        #[arg(long, env = "HMSTAB_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn emit(out: CommandOutput) -> ExitCode {
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}

fn corpus_cmd(filter: Option<String>, file: Option<String>, seed: u64, json: bool) -> CommandOutput {
    let entries = match file {
        None => corpus::builtin(),
        Some(path) => {
            let parsed = std::fs::read_to_string(&path)
                .map_err(|e| e.to_string())
                .and_then(|t| serde_json::from_str::<Vec<corpus::CorpusEntry>>(&t).map_err(|e| e.to_string()));
            match parsed {
                Ok(e) => e,
                Err(e) => {
                    return CommandOutput { code: 2, stdout: String::new(), stderr: format!("error: {path}: {e}\n") }
                }
            }
        }
    };
    let rows = corpus::run(&entries, filter.as_deref(), seed);
    let stdout = if json {
        serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"
    } else {
        corpus::render(&rows)
    };
    let failed = rows.iter().filter(|r| !r.pass).count();
    CommandOutput {
        code: if failed == 0 { 0 } else { 1 },
        stdout,
        stderr: if failed == 0 { String::new() } else { format!("{failed} mismatch(es)\n") },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = match cli.command {
        Command::Analyze { poly, nvars, field, s, points, budget, seed } => {
            run_analyze(&AnalyzeArgs { poly, nvars, field, s, points, budget, seed })
        }
        Command::Verify { certificate } => run_verify(&certificate),
        Command::Corpus { filter, file, seed, json } => corpus_cmd(filter, file, seed, json),
    };
    emit(out)
}
