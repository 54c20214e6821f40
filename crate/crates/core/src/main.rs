use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use twistperiod::periods::{period_report, MIN_PRECISION_BITS};
use twistperiod::verify::{read_curves, scan, ScanConfig, ScanFilter};
use twistperiod::{
    minimize, twist, twist_transformation, utilde_report, verify_theorem, Error, Model,
};

/// Quadratic twists, minimal models and periods of elliptic curves over Q.
///
/// Curves are written `[a1,a2,a3,a4,a6]` or in short form `[A,B]`.
#[derive(Parser, Debug)]
#[command(name = "twistperiod", version, about)]
struct Cli {
    /// Working precision for periods, in bits (at least 64).
    #[arg(long, global = true, env = "TWISTPERIOD_PRECISION", default_value_t = 128, value_parser = clap::value_parser!(u32).range(MIN_PRECISION_BITS as i64..))]
    precision_bits: u32,

    /// Relative tolerance for theorem checks.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = parse_tolerance)]
    tolerance: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// b- and c-invariants, discriminant and j-invariant.
    Invariants { model: String },
    /// The quadratic twist by a square-free d, with the map reaching it.
    #[command(allow_negative_numbers = true)]
    Twist { model: String, d: i64 },
    /// A global minimal model and the change of coordinates to it.
    Minimal { model: String },
    /// The scaling factor u~ of the twist by d, prime by prime.
    #[command(allow_negative_numbers = true)]
    Utilde { model: String, d: i64 },
    /// Real period, imaginary period and component count.
    Periods { model: String },
    /// Numerical check of the period relation for the twist by d.
    #[command(allow_negative_numbers = true)]
    Verify { model: String, d: i64 },
    /// Runs every (curve, d) pair from a JSON-lines curve file.
    #[command(allow_negative_numbers = true)]
    Scan {
        file: PathBuf,
        /// Square-free twist parameters, comma separated.
        #[arg(
            long = "d",
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        ds: Vec<i64>,
        /// `odd-prime` verifies pairs where an odd prime divides 2u~; `all` verifies every pair.
        #[arg(long, default_value = "odd-prime", value_parser = parse_filter)]
        filter: ScanFilter,
        /// JSON-lines results file, appended to and used to resume.
        #[arg(long)]
        results: Option<PathBuf>,
    },
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
        _ => Err(format!("tolerance must be a positive number, got {s:?}")),
    }
}

fn parse_filter(s: &str) -> Result<ScanFilter, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Singular => 3,
        Error::NotPrime(_) | Error::Zero | Error::NotSquareFree(_) | Error::DivisionByZero => 4,
        Error::Precision(_) | Error::AmbiguousLattice { .. } => 5,
        Error::Inconsistent(_) => 6,
        Error::Io(_) => 7,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotPrime(_) => "not_prime",
        Error::Zero => "zero",
        Error::NotSquareFree(_) => "not_square_free",
        Error::DivisionByZero => "division_by_zero",
        Error::Singular => "singular",
        Error::Parse(_) => "parse",
        Error::Precision(_) => "precision",
        Error::AmbiguousLattice { .. } => "ambiguous_lattice",
        Error::Inconsistent(_) => "inconsistent",
        Error::Io(_) => "io",
    }
}

fn report_error(kind: &str, message: &str) {
    let obj = json!({ "error": { "kind": kind, "message": message } });
    eprintln!("{obj}");
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// `key = value` lines; nested objects get dotted keys, arrays are written
/// inline as `[a,b,...]`, and strings lose their quotes.
fn render_text(v: &Value) -> String {
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Array(items) => format!(
                "[{}]",
                items.iter().map(scalar).collect::<Vec<_>>().join(",")
            ),
            Value::Object(_) => v.to_string(),
            other => other.to_string(),
        }
    }
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, x, out);
                }
            }
            _ => {
                out.push_str(prefix);
                out.push_str(" = ");
                out.push_str(&scalar(v));
                out.push('\n');
            }
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{v}\n"),
        Format::Text => render_text(v),
    }
}

struct Outcome {
    body: String,
    /// Nonzero when the command ran but its check failed.
    code: u8,
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let bits = cli.precision_bits;
    let one = |v: Value| Outcome {
        body: render(&v, cli.format),
        code: 0,
    };
    Ok(match &cli.command {
        Command::Invariants { model } => {
            let m: Model = model.parse()?;
            one(to_value(&m.invariants()))
        }
        Command::Twist { model, d } => {
            let m: Model = model.parse()?;
            let t = twist(&m, *d)?;
            let map = twist_transformation(*d, &m)?;
            one(json!({
                "curve": m,
                "d": d,
                "twist": t,
                "map": { "u": map.u.to_string(), "r": map.r.to_string(), "s": map.s.to_string(), "t": map.t.to_string() },
            }))
        }
        Command::Minimal { model } => {
            let m: Model = model.parse()?;
            let r = minimize(&m)?;
            one(
                json!({ "curve": m, "minimal": r.minimal, "map": r.map, "discriminant": r.minimal.discriminant() }),
            )
        }
        Command::Utilde { model, d } => one(to_value(&utilde_report(&model.parse()?, *d)?)),
        Command::Periods { model } => {
            one(to_value(&period_report(&model.parse()?, bits)?.to_json()))
        }
        Command::Verify { model, d } => {
            let r = verify_theorem(&model.parse()?, *d, bits, cli.tolerance)?;
            let code = if r.passed { 0 } else { 1 };
            Outcome {
                body: render(&to_value(&r), cli.format),
                code,
            }
        }
        Command::Scan {
            file,
            ds,
            filter,
            results,
        } => {
            let curves = read_curves(file)?;
            let config = ScanConfig {
                filter: *filter,
                precision_bits: bits,
                tolerance: cli.tolerance,
                ..ScanConfig::default()
            };
            let out = scan(&curves, ds, &config, results.as_deref())?;
            let mut body = String::new();
            for r in &out.records {
                match cli.format {
                    Format::Json => {
                        body.push_str(&to_value(r).to_string());
                        body.push('\n');
                    }
                    Format::Text => {
                        body.push_str(&render_text(&to_value(r)));
                        body.push('\n');
                    }
                }
            }
            let summary = json!({
                "pairs": out.records.len() + out.skipped,
                "computed": out.records.len(),
                "skipped": out.skipped,
                "hits": out.hits().count(),
                "errors": out.records.iter().filter(|r| r.error.is_some()).count(),
                "failed": out.records.iter().filter(|r| r.report.as_ref().is_some_and(|v| !v.passed)).count(),
            });
            eprint!("{}", render(&summary, cli.format));
            Outcome { body, code: 0 }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            report_error("usage", e.to_string().trim());
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &out.body),
                None => io::stdout().write_all(out.body.as_bytes()),
            };
            if let Err(e) = written {
                report_error("io", &e.to_string());
                return ExitCode::from(7);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            report_error(error_kind(&e), &e.to_string());
            ExitCode::from(exit_code(&e))
        }
    }
}
