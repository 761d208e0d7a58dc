//! The `quadstab` command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid input, 3 the
//! iteration did not converge.

mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

pub use config::{parse_experiment, ExperimentFile};

use crate::error::{Error, Result};
use crate::exact::{parse_rational, Rational};
use crate::funceq::{
    default_sweep, parse_function, residual_main, residual_quadratic, solution_space,
    symbolic_residual, verify_identity, EquationId, FunctionKind, IdentityId,
};
use crate::stability::{run_experiment, OutputFormat, StabilityReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "quadstab", version, about = "Quadratic functional equation lab")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EquationArg {
    /// The three-variable equation with parameter c.
    Main,
    /// f(x+y) + f(x-y) = 2f(x) + 2f(y).
    Base,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate or expand the residual of a function.
    Residual {
        /// Function: polynomial in x, quadpow(a,eps0,p) or quadnoise(a,eta,seed).
        #[arg(long = "f", allow_hyphen_values = true)]
        function: String,
        #[arg(long, value_enum, default_value = "main")]
        eq: EquationArg,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        c: i64,
        /// Point `x,y,z` (or `x,y` for the base equation); repeatable.
        #[arg(long = "at", allow_hyphen_values = true)]
        at: Vec<String>,
        /// Print the residual expanded as a polynomial in x, y, z.
        #[arg(long)]
        symbolic: bool,
    },
    /// Verify the catalogue of algebraic identities.
    Lemmas {
        /// Verify a single identity, e.g. `2.23`.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        a: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        b: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        c: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
    },
    /// Basis of the polynomial solutions up to a degree.
    SolveSpace {
        #[arg(long, value_enum, default_value = "main")]
        eq: EquationArg,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        c: i64,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    /// Run a stability experiment described by a config file.
    Experiment {
        config: PathBuf,
        /// Overrides `output.format`.
        #[arg(long)]
        format: Option<String>,
        /// Overrides `output.path`; `-` writes to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Pretty-print a saved json-lines report.
    Report { file: PathBuf },
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_INVALID
                }
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::NotConverged { .. } => EXIT_NOT_CONVERGED,
                _ => EXIT_INVALID,
            }
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Residual {
            function,
            eq,
            c,
            at,
            symbolic,
        } => cmd_residual(&function, eq, c, &at, symbolic, out),
        Command::Lemmas { only, a, b, c, k } => cmd_lemmas(only.as_deref(), a, b, c, k, out),
        Command::SolveSpace { eq, c, max_degree } => cmd_solve_space(eq, c, max_degree, out),
        Command::Experiment {
            config,
            format,
            output,
        } => cmd_experiment(&config, format.as_deref(), output.as_deref(), out, err),
        Command::Report { file } => cmd_report(&file, out),
    }
}

fn equation(eq: EquationArg, c: i64) -> Result<EquationId> {
    match eq {
        EquationArg::Main => EquationId::main(c),
        EquationArg::Base => Ok(EquationId::QuadBase),
    }
}

fn coordinates(text: &str, n: usize) -> Result<Vec<String>> {
    let parts: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    if parts.len() != n || parts.iter().any(String::is_empty) {
        return Err(Error::Parse(format!("--at '{text}' needs {n} comma-separated numbers")));
    }
    Ok(parts)
}

pub fn cmd_residual(
    function: &str,
    eq: EquationArg,
    c: i64,
    at: &[String],
    symbolic: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let eq = equation(eq, c)?;
    let f = parse_function(function)?;
    if at.is_empty() && !symbolic {
        return Err(Error::Config("give --at x,y,z and/or --symbolic".into()));
    }
    let dims = match eq {
        EquationId::QuadBase => 2,
        EquationId::QuadMain(_) => 3,
    };
    for point in at {
        let parts = coordinates(point, dims)?;
        let exact: Option<Vec<Rational>> = parts.iter().map(|s| parse_rational(s)).collect();
        let value = match (f.kind(), exact) {
            (FunctionKind::Polynomial(p), Some(mut v)) => {
                v.resize(3, Rational::from_integer(0.into()));
                let pt = [v[0].clone(), v[1].clone(), v[2].clone()];
                eq.form().eval_exact(p, &pt).to_string()
            }
            _ => {
                let v = parts
                    .iter()
                    .map(|s| s.parse::<f64>().map_err(|_| Error::Parse(format!("'{s}' is not a number"))))
                    .collect::<Result<Vec<f64>>>()?;
                match eq {
                    EquationId::QuadMain(cc) => residual_main(&f, cc, v[0], v[1], v[2]),
                    EquationId::QuadBase => residual_quadratic(&f, v[0], v[1]),
                }
                .to_string()
            }
        };
        writeln!(out, "residual({}) = {value}", parts.join(", "))?;
    }
    if symbolic {
        let FunctionKind::Polynomial(p) = f.kind() else {
            return Err(Error::Config("--symbolic needs a polynomial function".into()));
        };
        writeln!(out, "{}", symbolic_residual(p, eq))?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_lemmas(
    only: Option<&str>,
    a: Option<i64>,
    b: Option<i64>,
    c: Option<i64>,
    k: Option<i64>,
    out: &mut dyn Write,
) -> Result<i32> {
    let ids = match only {
        Some(label) => vec![IdentityId::from_label(label, a, b, c, k)?],
        None => default_sweep(),
    };
    let mut all = true;
    for id in ids {
        let v = verify_identity(id)?;
        all &= v.holds;
        let mut record = json!({
            "id": v.id,
            "params": v.params,
            "verdict": if v.holds { "pass" } else { "fail" },
        });
        if !v.holds {
            record["difference"] = json!(v.difference.to_string());
        }
        writeln!(out, "{record}")?;
    }
    Ok(if all { EXIT_OK } else { EXIT_CHECK_FAILED })
}

pub fn cmd_solve_space(eq: EquationArg, c: i64, max_degree: u32, out: &mut dyn Write) -> Result<i32> {
    let eq = equation(eq, c)?;
    let basis = solution_space(eq, max_degree)?;
    writeln!(out, "equation {eq}, degree <= {max_degree}")?;
    writeln!(out, "dimension {}", basis.len())?;
    for p in &basis {
        writeln!(out, "basis {p}")?;
    }
    Ok(EXIT_OK)
}

/// Serializes a report in the given format.
pub fn render_report(report: &StabilityReport, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::JsonLines => report.to_json_lines(),
        OutputFormat::Csv => report.to_csv(),
    }
}

pub fn cmd_experiment(
    path: &Path,
    format: Option<&str>,
    output: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let text = std::fs::read_to_string(path)?;
    let file = parse_experiment(&text)?;
    let format = match format {
        Some(f) => f.parse()?,
        None => file.format,
    };
    let report = run_experiment(&file.config)?;
    let body = render_report(&report, format)?;
    let target = output.map(Path::to_path_buf).or(file.output);
    match target {
        Some(p) if p.as_os_str() != "-" => std::fs::write(&p, body)?,
        _ => out.write_all(body.as_bytes())?,
    }
    let verdict = report.verdict();
    writeln!(err, "verdict: {}", serde_json::to_value(verdict)?.as_str().unwrap_or("?"))?;
    Ok(verdict.exit_code())
}

pub fn cmd_report(path: &Path, out: &mut dyn Write) -> Result<i32> {
    let report = StabilityReport::from_json_lines(&std::fs::read_to_string(path)?)?;
    write!(out, "{}", report.render())?;
    Ok(EXIT_OK)
}
