//! `fcohom`: batch front end for the twisted de Rham cohomology engine.
//!
//! Every subcommand reads a problem from `--problem FILE` and/or flags
//! (flags win) and prints either a JSON document or aligned text tables.
//!
//! Form grammar for `--eta`: a sum of terms `coeff * dv1 ^ dv2 ^ …` where
//! `coeff` is a polynomial in the declared variables and `dv` is the
//! differential of variable `v`; `*` and `^` both wedge forms, e.g.
//! `(x^2+y^2)*dx^dy` or `x*dy - y*dx`.

mod commands;
mod error;
mod problem;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use commands::{envelope, run, Command};
use error::CliError;
use problem::{ProblemArgs, ProblemSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "fcohom", version, about = "Exact graded cohomology of quasi-homogeneous polynomials")]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// JSON problem file; flags override its fields.
    #[arg(long)]
    problem: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    args: ProblemArgs,
}

fn configure_threads() {
    if let Some(n) = std::env::var("FCOHOM_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn emit_error(format: Format, command: Command, spec: &ProblemSpec, e: &CliError) -> ExitCode {
    match format {
        Format::Json => out(&pretty(&envelope(command, spec, Err(e)))),
        Format::Text => eprintln!("{}", e.render()),
    }
    ExitCode::from(e.exit as u8)
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let mut spec = match &cli.problem {
        Some(path) => match ProblemSpec::load(path) {
            Ok(s) => s,
            Err(e) => return emit_error(cli.format, cli.command, &ProblemSpec::default(), &e),
        },
        None => ProblemSpec::default(),
    };
    spec.apply(cli.args);
    let outcome = match run(cli.command, &mut spec) {
        Ok(o) => o,
        Err(e) => return emit_error(cli.format, cli.command, &spec, &e),
    };
    match cli.format {
        Format::Json => out(&pretty(&envelope(cli.command, &spec, Ok(&outcome)))),
        Format::Text => {
            out(&outcome.text);
            if let Some(e) = &outcome.failure {
                eprintln!("{}", e.render());
            }
        }
    }
    match &outcome.failure {
        Some(e) => ExitCode::from(e.exit as u8),
        None => ExitCode::SUCCESS,
    }
}
