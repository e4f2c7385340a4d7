//! Thin command-line front-end over the library's `cli` module.
//!
//! Exit codes: 0 success, 1 parse/validation error, 2 inconsistency.

use std::io::Read;
use std::process::ExitCode;

use interval_structures::cli::{self, CliError, Command, Format, RunOptions};

const USAGE: &str = "usage: istruct <synthesize|check|rough|belief|compat> [file] \
[--max-theta <n>] [--format <text|tsv>]\n\
\n\
Reads the document from <file>, or from stdin when no file (or `-`) is given.";

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err((message, code)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

fn run() -> Result<ExitCode, (String, u8)> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--help" || a == "-h") {
        println!("{USAGE}");
        return Ok(ExitCode::SUCCESS);
    }
    let mut command = None;
    let mut path: Option<String> = None;
    let mut options = RunOptions::default();

    let mut iter = args.into_iter();
    while let Some(arg) = iter.next() {
        match arg.as_str() {
            "--max-theta" => {
                let value = iter
                    .next()
                    .ok_or_else(|| ("--max-theta needs a value".to_string(), 1))?;
                options.cap = value
                    .parse()
                    .map_err(|_| (format!("invalid --max-theta value `{value}`"), 1))?;
            }
            "--format" => {
                let value = iter
                    .next()
                    .ok_or_else(|| ("--format needs a value".to_string(), 1))?;
                options.format = match value.as_str() {
                    "text" => Format::Text,
                    "tsv" => Format::Tsv,
                    other => return Err((format!("unknown format `{other}`"), 1)),
                };
            }
            flag if flag.starts_with("--") => {
                return Err((format!("unknown flag `{flag}`\n{USAGE}"), 1));
            }
            positional => {
                if command.is_none() {
                    command =
                        Some(Command::from_name(positional).ok_or_else(|| {
                            (format!("unknown command `{positional}`\n{USAGE}"), 1)
                        })?);
                } else if path.is_none() {
                    path = Some(positional.to_string());
                } else {
                    return Err((format!("unexpected argument `{positional}`\n{USAGE}"), 1));
                }
            }
        }
    }

    let command = command.ok_or_else(|| (format!("missing command\n{USAGE}"), 1))?;
    let text = match path.as_deref() {
        None | Some("-") => {
            let mut buffer = String::new();
            std::io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|e| (format!("cannot read stdin: {e}"), 1))?;
            buffer
        }
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| (format!("cannot read `{path}`: {e}"), 1))?
        }
    };

    let doc = cli::parse(&text).map_err(|e| (e.to_string(), 1))?;
    let report = cli::run(command, &doc, &options).map_err(|e| match e {
        CliError::Invalid(m) => (m, 1),
        CliError::Inconsistent(m) => (m, 2),
    })?;
    print!("{}", report.render(options.format));
    Ok(if report.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
