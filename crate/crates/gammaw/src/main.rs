//! Thin command-line front end over the library pipeline.

use std::process::ExitCode;

use clap::Parser;

use gammaw::pf::CaseName;
use gammaw::report::{emit, parse_triple, run_case, run_hypergeom, Format, Outcome, RunOptions};

/// Certifies the modular groups attached to the Fermat simple elliptic
/// singularities via hypergeometric and Picard-Fuchs monodromy.
#[derive(Parser, Debug)]
#[command(name = "gammaw", version, about)]
struct Cli {
    /// Case to certify end to end (E6, E7 or E8).
    #[arg(long, conflicts_with = "hypergeom")]
    case: Option<String>,

    /// Hypergeometric parameters "alpha beta gamma" (rationals like 1/3).
    #[arg(long)]
    hypergeom: Option<String>,

    /// Normalization branch integer for the basis choice.
    #[arg(long)]
    m: Option<i64>,

    /// Working precision in decimal digits.
    #[arg(long)]
    digits: Option<u32>,

    /// Largest coordinate denominator accepted by recognition.
    #[arg(long)]
    denominator_bound: Option<u64>,

    /// Element bound for finite matrix-group closures.
    #[arg(long)]
    closure_bound: Option<usize>,

    /// Maximum word length for kernel certificates.
    #[arg(long)]
    word_max_len: Option<usize>,

    /// Run the numeric ODE transport cross-checks (slow path).
    #[arg(long)]
    ode_check: bool,

    /// Output format: text or json.
    #[arg(long)]
    format: Option<String>,

    /// Optional TOML config mirroring these flags (flags win on conflict).
    #[arg(long)]
    config: Option<std::path::PathBuf>,

    /// Write the report to a file in addition to stdout.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Debug, Default, serde::Deserialize)]
struct FileConfig {
    case: Option<String>,
    hypergeom: Option<String>,
    m: Option<i64>,
    digits: Option<u32>,
    denominator_bound: Option<u64>,
    closure_bound: Option<usize>,
    word_max_len: Option<usize>,
    ode_check: Option<bool>,
    format: Option<String>,
}

fn fail(msg: &str) -> ExitCode {
    eprintln!("gammaw: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file: FileConfig = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match toml::from_str(&text) {
                Ok(cfg) => cfg,
                Err(e) => return fail(&format!("config parse error: {e}")),
            },
            Err(e) => return fail(&format!("cannot read config {}: {e}", path.display())),
        },
        None => FileConfig::default(),
    };

    // Flags win over the config file; defaults last.
    let case = cli.case.or(file.case);
    let hypergeom = cli.hypergeom.or(file.hypergeom);
    let m = cli.m.or(file.m).unwrap_or(0);
    let digits = cli.digits.or(file.digits).unwrap_or(60);
    let defaults = RunOptions::default();
    let opts = RunOptions {
        denominator_bound: cli
            .denominator_bound
            .or(file.denominator_bound)
            .unwrap_or(defaults.denominator_bound),
        closure_bound: cli.closure_bound.or(file.closure_bound).unwrap_or(defaults.closure_bound),
        word_max_len: cli.word_max_len.or(file.word_max_len).unwrap_or(defaults.word_max_len),
        ode_check: cli.ode_check || file.ode_check.unwrap_or(false),
        ode_digits: defaults.ode_digits,
    };
    let format = match cli.format.or(file.format).as_deref().unwrap_or("text").parse::<Format>() {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };

    let report = match (case, hypergeom) {
        (Some(name), None) => {
            let name: CaseName = match name.parse() {
                Ok(n) => n,
                Err(e) => return fail(&format!("{e}")),
            };
            run_case(name, m, digits, &opts)
        }
        (None, Some(triple)) => {
            let (a, b, g) = match parse_triple(&triple) {
                Ok(t) => t,
                Err(e) => return fail(&format!("{e}")),
            };
            match run_hypergeom(&a, &b, &g, digits, opts.ode_check) {
                Ok(r) => r,
                Err(e) => return fail(&format!("{e}")),
            }
        }
        (Some(_), Some(_)) => return fail("--case and --hypergeom are mutually exclusive"),
        (None, None) => return fail("one of --case or --hypergeom is required"),
    };

    let rendered = emit(&report, format);
    println!("{rendered}");
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &rendered) {
            return fail(&format!("cannot write {}: {e}", path.display()));
        }
    }
    match report.outcome {
        Outcome::Verdict => ExitCode::SUCCESS,
        Outcome::Refuted => ExitCode::from(2),
        Outcome::ResourceLimited => ExitCode::from(3),
    }
}
