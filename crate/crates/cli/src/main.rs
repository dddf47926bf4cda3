use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use xlorentz_cli::{json, run, CliError, Command, JobSpec};

/// Evaluate, compose, invert and factorize extended Lorentz group elements,
/// print O+/Θ tables and run the verification suite. Jobs are JSON.
#[derive(Debug, Parser)]
#[command(name = "xlorentz", version)]
struct Args {
    /// Run this command with empty inputs instead of reading a job.
    #[arg(value_enum)]
    command: Option<Command>,

    /// Job file, or - for standard input.
    #[arg(long, default_value = "-")]
    input: String,

    /// Result file, or - for standard output.
    #[arg(long, default_value = "-")]
    output: String,

    /// Seed for `verify`; overrides the job.
    #[arg(long)]
    seed: Option<u64>,

    /// Draws per check for `verify`; overrides the job.
    #[arg(long)]
    samples: Option<usize>,

    /// Override a tolerance, e.g. --tol-override fact=1e-9. Repeatable.
    #[arg(long = "tol-override", value_name = "NAME=VALUE", value_parser = parse_override)]
    tol_override: Vec<(String, f64)>,

    /// Spaces per indentation level; 0 prints compact JSON.
    #[arg(long, default_value_t = 2)]
    json_indent: usize,
}

fn parse_override(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or("expected NAME=VALUE")?;
    let value: f64 = value.trim().parse().map_err(|e| format!("bad value {value:?}: {e}"))?;
    Ok((name.trim().to_string(), value))
}

fn read_job(args: &Args) -> Result<JobSpec, CliError> {
    let mut job = match args.command {
        Some(command) => JobSpec::new(command),
        None => {
            let text = if args.input == "-" {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
                s
            } else {
                fs::read_to_string(&args.input).map_err(|e| CliError::Io(format!("{}: {e}", args.input)))?
            };
            JobSpec::parse(&text)?
        }
    };
    if args.seed.is_some() {
        job.seed = args.seed;
    }
    if args.samples.is_some() {
        job.samples = args.samples;
    }
    for (name, value) in &args.tol_override {
        job.tolerances.insert(name.clone(), *value);
    }
    Ok(job)
}

fn write_output(path: &str, text: &str) -> io::Result<()> {
    if path == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())?;
        out.write_all(b"\n")
    } else {
        fs::write(PathBuf::from(path), format!("{text}\n"))
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (value, code) = match read_job(&args).and_then(|job| run(&job)) {
        Ok(v) => (v, 0),
        Err(e) => {
            eprintln!("xlorentz: {e}");
            (e.to_json(), e.exit_code())
        }
    };
    if let Err(e) = write_output(&args.output, &json::to_string(&value, args.json_indent)) {
        eprintln!("xlorentz: cannot write {}: {e}", args.output);
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
