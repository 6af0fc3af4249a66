use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use speckit::{parse, parse_expr, specs, Interpreter, Output, EXIT_CAP, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use speckit_core::identities::{render_table, run_all, Identity, VerificationReport};
use speckit_core::oracle::{classify, Oracle, OracleError};
use speckit_core::{TruncationSpec, Var};

/// Exact series, labelled classes and operator identities.
#[derive(Parser)]
#[command(name = "speckit", version)]
struct Cli {
    /// Largest oracle size (defaults to SPECKIT_MAX_N or 7).
    #[arg(long, global = true)]
    max_n: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script; shipped scripts can be named directly (e.g. glaisher.spec).
    Run {
        file: PathBuf,
        /// Write all reports as a JSON array to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a named identity, or `all`.
    Verify {
        name: String,
        /// Cap overrides such as `x=8,y=8,t=4`.
        #[arg(long)]
        caps: Option<TruncationSpec>,
        /// Write all reports as a JSON array to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Expand a series expression.
    Expand {
        expr: String,
        #[arg(long)]
        caps: Option<TruncationSpec>,
        #[arg(long, value_enum, default_value_t = SeriesFormat::Text)]
        format: SeriesFormat,
    },
    /// List partial matchings on `n` doubletons.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Show the closed and open chain sizes of each matching.
        #[arg(long)]
        classify: bool,
        /// Print the generating function marked by chain counts.
        #[arg(long)]
        markers: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesFormat {
    Text,
    Json,
}

const MISMATCH_LINES: usize = 20;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let oracle = cli.max_n.map_or_else(Oracle::from_env, Oracle::with_max_n);
    let code = match cli.command {
        Command::Run { file, json } => run(&file, json.as_deref(), oracle),
        Command::Verify { name, caps, json } => verify(&name, &caps.unwrap_or_default(), json.as_deref(), oracle),
        Command::Expand { expr, caps, format } => expand(&expr, &caps.unwrap_or_default(), format),
        Command::Enumerate { n, classify, markers } => enumerate(n, classify, markers, oracle),
    };
    ExitCode::from(code as u8)
}

fn write_reports(path: Option<&Path>, reports: &[VerificationReport]) -> Result<(), i32> {
    let Some(path) = path else { return Ok(()) };
    let text = serde_json::to_string_pretty(reports).expect("reports are always serialisable");
    fs::write(path, text + "\n").map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        EXIT_USAGE
    })
}

fn status(reports: &[VerificationReport]) -> i32 {
    if reports.iter().all(VerificationReport::passed) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn run(file: &Path, json: Option<&Path>, oracle: Oracle) -> i32 {
    let text = match fs::read_to_string(file) {
        Ok(text) => text,
        Err(e) => match file.to_str().and_then(specs::builtin) {
            Some(text) => text.to_string(),
            None => {
                eprintln!("error: cannot read {}: {e}", file.display());
                return EXIT_USAGE;
            }
        },
    };
    let script = match parse(&text) {
        Ok(script) => script,
        Err(e) => {
            eprintln!("{}:{e}", file.display());
            return EXIT_USAGE;
        }
    };
    let mut interpreter = Interpreter::new(oracle);
    let mut reports = Vec::new();
    let mut failure = None;
    for (i, stmt) in script.statements.iter().enumerate() {
        match interpreter.execute(i + 1, stmt) {
            Ok(Some(Output::Emitted(s))) => println!("{s}"),
            Ok(Some(Output::Report(r))) => reports.push(r),
            Ok(None) => {}
            Err(e) => {
                eprintln!("{}: statement {}: {e}", file.display(), i + 1);
                failure = Some(if e.is_cap_exceeded() { EXIT_CAP } else { EXIT_USAGE });
                break;
            }
        }
    }
    if !reports.is_empty() {
        print!("{}", render_table(&reports, MISMATCH_LINES));
    }
    if let Err(code) = write_reports(json, &reports) {
        return code;
    }
    failure.unwrap_or_else(|| status(&reports))
}

fn verify(name: &str, caps: &TruncationSpec, json: Option<&Path>, oracle: Oracle) -> i32 {
    let identities = if name == "all" {
        Identity::ALL.to_vec()
    } else {
        match name.parse::<Identity>() {
            Ok(id) => vec![id],
            Err(e) => {
                let names: Vec<_> = Identity::ALL.iter().map(|i| i.name()).collect();
                eprintln!("error: {e}; expected one of: {}, all", names.join(", "));
                return EXIT_USAGE;
            }
        }
    };
    let mut reports = Vec::new();
    let mut code = EXIT_PASS;
    for (id, result) in run_all(&identities, caps, &oracle) {
        match result {
            Ok(r) => reports.push(r),
            Err(e) => {
                eprintln!("error: {id}: {e}");
                code = code.max(if e.is_cap_exceeded() { EXIT_CAP } else { EXIT_USAGE });
            }
        }
    }
    if !reports.is_empty() {
        print!("{}", render_table(&reports, MISMATCH_LINES));
    }
    if let Err(c) = write_reports(json, &reports) {
        return c;
    }
    code.max(status(&reports))
}

fn expand(text: &str, caps: &TruncationSpec, format: SeriesFormat) -> i32 {
    let expr = match parse_expr(text) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("expression:{e}");
            return EXIT_USAGE;
        }
    };
    match Interpreter::new(Oracle::from_env()).series(&expr, caps) {
        Ok(s) => {
            match format {
                SeriesFormat::Text => println!("{s}"),
                SeriesFormat::Json => println!("{}", s.to_json()),
            }
            EXIT_PASS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_cap_exceeded() {
                EXIT_CAP
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn cap_exceeded(e: OracleError) -> i32 {
    eprintln!("error: {e}");
    EXIT_CAP
}

fn enumerate(n: usize, show_classes: bool, markers: bool, oracle: Oracle) -> i32 {
    let matchings = match oracle.matchings(n) {
        Ok(m) => m,
        Err(e) => return cap_exceeded(e),
    };
    let mut by_pairs = vec![0u64; n + 1];
    for m in matchings {
        by_pairs[m.pairs().len()] += 1;
        if show_classes {
            println!("{m}  {}", classify(&m));
        } else {
            println!("{m}");
        }
    }
    for (k, count) in by_pairs.iter().enumerate() {
        println!("pairs {k}: {count}");
    }
    println!("total: {}", by_pairs.iter().sum::<u64>());
    if markers {
        let (u, v) = (Var::new("u"), Var::new("v"));
        match oracle.oracle_egf(n, Some((&u, &v))) {
            Ok(s) => println!("{s}"),
            Err(e) => return cap_exceeded(e),
        }
    }
    EXIT_PASS
}
