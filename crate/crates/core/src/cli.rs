//! The `tsdyn` command line.
//!
//! ```text
//! tsdyn solve      --scale <path|json> --problem <path|json> [--from-coeffs <path|json>] [--format csv|json] [--out <path>]
//! tsdyn coeffs     --problem <path|json> [--scale <path|json>] [--out <path>]
//! tsdyn verify     --scale <path|json> --problem <path|json> [--out <path>]
//! tsdyn scale-info --scale <path|json> [--problem <path|json>] [--format csv|json] [--out <path>]
//! ```
//!
//! Exit codes: 0 success, 1 input error (one-line diagnostic on stderr),
//! 2 verification failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::solver::{self, regressivity_polynomial, ProblemSpec, Solution};
use crate::timescale::{ScaleSpec, TimeScale};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Solve,
    Coeffs,
    Verify,
    ScaleInfo,
}

/// A parsed invocation. Specs are paths or inline JSON objects.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub scale: Option<String>,
    pub problem: Option<String>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub from_coeffs: Option<String>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            scale: None,
            problem: None,
            output: None,
            format: None,
            from_coeffs: None,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tsdyn", version, about = "Second-order dynamic equations on time scales")]
pub struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Evaluate the solution of an initial value problem; CSV `t,y_re,y_im,residual`.
    Solve(CommonArgs),
    /// Roots, particular coefficients, ω and (with initial values) c₁, c₂ as JSON.
    Coeffs(CommonArgs),
    /// Run every oracle and emit a verification report; exit 2 on failure.
    Verify(CommonArgs),
    /// Points, graininess and (with a problem) the regressivity polynomial.
    ScaleInfo(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Time-scale spec: a file path or an inline JSON object.
    #[arg(long)]
    scale: Option<String>,
    /// Problem spec: a file path or an inline JSON object.
    #[arg(long)]
    problem: Option<String>,
    /// Write the artifact here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Coefficients previously emitted by `coeffs` (solve only).
    #[arg(long = "from-coeffs")]
    from_coeffs: Option<String>,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let (command, args) = match cli.command {
            CliCommand::Solve(a) => (Command::Solve, a),
            CliCommand::Coeffs(a) => (Command::Coeffs, a),
            CliCommand::Verify(a) => (Command::Verify, a),
            CliCommand::ScaleInfo(a) => (Command::ScaleInfo, a),
        };
        RunConfig {
            command,
            scale: args.scale,
            problem: args.problem,
            output: args.out,
            format: args.format,
            from_coeffs: args.from_coeffs,
        }
    }
}

/// Input or validation failure; always exit code 1.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{field}: {message}")]
pub struct InputError {
    pub field: String,
    pub message: String,
}

impl InputError {
    fn new(field: impl Into<String>, message: impl ToString) -> Self {
        InputError {
            field: field.into(),
            message: message.to_string().replace('\n', " "),
        }
    }
}

/// Artifact text plus the exit code it should be emitted with.
#[derive(Debug, Clone, PartialEq)]
pub struct Emitted {
    pub body: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Scalar> for Complex64 {
    fn from(s: Scalar) -> Self {
        match s {
            Scalar::Real(x) => Complex64::new(x, 0.0),
            Scalar::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct InitialValues {
    y: Scalar,
    yd: Scalar,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    alpha: f64,
    beta: f64,
    gamma: Vec<f64>,
    anchor: f64,
    ic: Option<InitialValues>,
}

fn read_source(field: &str, source: &str) -> Result<String, InputError> {
    if source.trim_start().starts_with('{') {
        Ok(source.to_string())
    } else {
        fs::read_to_string(source).map_err(|e| InputError::new(field, format!("cannot read {source}: {e}")))
    }
}

fn required<'a>(field: &str, value: &'a Option<String>) -> Result<&'a str, InputError> {
    value
        .as_deref()
        .ok_or_else(|| InputError::new(field, "required for this command"))
}

fn load_scale(source: &str) -> Result<TimeScale, InputError> {
    let text = read_source("scale", source)?;
    let spec: ScaleSpec =
        serde_json::from_str(&text).map_err(|e| InputError::new("scale", e))?;
    TimeScale::from_spec(&spec).map_err(|e| InputError::new("scale", e))
}

fn load_problem(source: &str) -> Result<(ProblemSpec, Option<(Complex64, Complex64)>), InputError> {
    let text = read_source("problem", source)?;
    let file: ProblemFile =
        serde_json::from_str(&text).map_err(|e| InputError::new("problem", e))?;
    let spec = ProblemSpec::new(file.alpha, file.beta, file.gamma, file.anchor)
        .map_err(|e| InputError::new("problem", e))?;
    let ic = file.ic.map(|ic| (ic.y.into(), ic.yd.into()));
    Ok((spec, ic))
}

fn load_coeffs(source: &str) -> Result<Solution, InputError> {
    let text = read_source("from-coeffs", source)?;
    serde_json::from_str(&text).map_err(|e| InputError::new("from-coeffs", e))
}

fn num(x: f64) -> String {
    format!("{x:?}")
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Runs one command and returns the artifact to emit.
pub fn run(config: &RunConfig) -> Result<Emitted, InputError> {
    match config.command {
        Command::Solve => run_solve(config),
        Command::Coeffs => run_coeffs(config),
        Command::Verify => run_verify(config),
        Command::ScaleInfo => run_scale_info(config),
    }
}

fn run_solve(config: &RunConfig) -> Result<Emitted, InputError> {
    let ts = load_scale(required("scale", &config.scale)?)?;
    let (spec, ic) = load_problem(required("problem", &config.problem)?)?;
    let sol = match &config.from_coeffs {
        Some(src) => {
            let sol = load_coeffs(src)?;
            if sol.xi.len() != spec.gamma.len() {
                return Err(InputError::new(
                    "from-coeffs.xi",
                    format!("expected {} entries, got {}", spec.gamma.len(), sol.xi.len()),
                ));
            }
            if sol.c1.is_none() || sol.c2.is_none() {
                return Err(InputError::new("from-coeffs.c1", "integration constants missing"));
            }
            sol
        }
        None => {
            let (y0, yd0) = ic.ok_or_else(|| InputError::new("problem.ic", "required for solve"))?;
            solver::solve_ivp(&spec, &ts, y0, yd0).map_err(|e| InputError::new("problem", e))?
        }
    };
    let y = solver::evaluate_solution(&sol, &spec, &ts).map_err(|e| InputError::new("problem", e))?;
    let residual = if ts.is_discrete() {
        verify::residual(&ts, &y, &spec)
    } else {
        verify::residual_analytic(&sol, &spec, &ts)
    }
    .map_err(|e| InputError::new("problem", e))?;
    let residual: Vec<Option<f64>> = (0..ts.len())
        .map(|i| residual.value(i).map(|r| r.norm()))
        .collect();

    let body = match config.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("t,y_re,y_im,residual\n");
            for (i, &t) in ts.points().iter().enumerate() {
                let v = y.values()[i];
                let r = residual[i].map(num).unwrap_or_default();
                s.push_str(&format!("{},{},{},{}\n", num(t), num(v.re), num(v.im), r));
            }
            s
        }
        Format::Json => to_json(&json!({
            "t": ts.points(),
            "y": y.values(),
            "residual": residual,
        })),
    };
    Ok(Emitted {
        body,
        exit_code: EXIT_OK,
    })
}

fn run_coeffs(config: &RunConfig) -> Result<Emitted, InputError> {
    if config.format == Some(Format::Csv) {
        return Err(InputError::new("format", "coeffs emits json only"));
    }
    let (spec, ic) = load_problem(required("problem", &config.problem)?)?;
    let sol = match (&config.scale, ic) {
        (Some(scale), Some((y0, yd0))) => {
            let ts = load_scale(scale)?;
            solver::solve_ivp(&spec, &ts, y0, yd0)
        }
        (None, Some((y0, yd0))) => solver::general_solution(&spec)
            .map(|g| solver::with_initial_values(g, y0, yd0)),
        (_, None) => solver::general_solution(&spec),
    }
    .map_err(|e| InputError::new("problem", e))?;
    Ok(Emitted {
        body: to_json(&sol),
        exit_code: EXIT_OK,
    })
}

fn run_verify(config: &RunConfig) -> Result<Emitted, InputError> {
    if config.format == Some(Format::Csv) {
        return Err(InputError::new("format", "verify emits json only"));
    }
    let ts = load_scale(required("scale", &config.scale)?)?;
    let (spec, ic) = load_problem(required("problem", &config.problem)?)?;
    let (y0, yd0) = ic.unwrap_or((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
    let report =
        verify::full_report(&spec, &ts, y0, yd0).map_err(|e| InputError::new("problem", e))?;
    Ok(Emitted {
        body: to_json(&report),
        exit_code: if report.passed() { EXIT_OK } else { EXIT_VERIFY },
    })
}

fn run_scale_info(config: &RunConfig) -> Result<Emitted, InputError> {
    let ts = load_scale(required("scale", &config.scale)?)?;
    let problem = match &config.problem {
        Some(src) => Some(load_problem(src)?.0),
        None => None,
    };
    let mu = ts.graininess_all();
    let regressivity: Option<Vec<f64>> = problem.as_ref().map(|p| {
        mu.iter()
            .map(|&m| regressivity_polynomial(p.alpha, p.beta, m))
            .collect()
    });
    let body = match config.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut v = json!({
                "kind": ts.kind(),
                "points": ts.points(),
                "mu": mu,
            });
            if let (Some(p), Some(r)) = (&problem, &regressivity) {
                v["alpha"] = json!(p.alpha);
                v["beta"] = json!(p.beta);
                v["regressivity"] = json!(r);
            }
            to_json(&v)
        }
        Format::Csv => {
            let mut s = String::from("t,mu,regressivity\n");
            for (i, &t) in ts.points().iter().enumerate() {
                let m = mu.get(i).copied().map(num).unwrap_or_default();
                let r = regressivity
                    .as_ref()
                    .and_then(|r| r.get(i).copied())
                    .map(num)
                    .unwrap_or_default();
                s.push_str(&format!("{},{m},{r}\n", num(t)));
            }
            s
        }
    };
    Ok(Emitted {
        body,
        exit_code: EXIT_OK,
    })
}

/// Runs `config`, writes the artifact to `--out` or `stdout`, and reports
/// input errors on `stderr`. Returns the process exit code.
pub fn execute(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let emitted = match run(config) {
        Ok(e) => e,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let written = match &config.output {
        Some(path) => fs::write(path, &emitted.body)
            .map_err(|e| InputError::new("out", format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(emitted.body.as_bytes())
            .map_err(|e| InputError::new("out", e)),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_INPUT;
    }
    emitted.exit_code
}

/// Entry point for the binary: parses `args` (including the program name).
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let config = RunConfig::from(cli);
    execute(&config, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(command: Command, scale: Option<&str>, problem: Option<&str>) -> RunConfig {
        RunConfig {
            scale: scale.map(str::to_string),
            problem: problem.map(str::to_string),
            ..RunConfig::new(command)
        }
    }

    #[test]
    fn parses_subcommands_and_flags() {
        let cli = Cli::try_parse_from([
            "tsdyn",
            "solve",
            "--scale",
            "s.json",
            "--problem",
            "{}",
            "--format",
            "json",
            "--from-coeffs",
            "c.json",
        ])
        .unwrap();
        let c = RunConfig::from(cli);
        assert_eq!(c.command, Command::Solve);
        assert_eq!(c.format, Some(Format::Json));
        assert_eq!(c.from_coeffs.as_deref(), Some("c.json"));
        assert!(Cli::try_parse_from(["tsdyn", "scale-info", "--scale", "x"]).is_ok());
        assert!(Cli::try_parse_from(["tsdyn", "integrate"]).is_err());
    }

    #[test]
    fn missing_field_is_named() {
        let c = config(
            Command::Coeffs,
            None,
            Some(r#"{"alpha":1,"gamma":[1],"anchor":0}"#),
        );
        let err = run(&c).unwrap_err();
        assert_eq!(err.field, "problem");
        assert!(err.message.contains("beta"), "{err}");
        assert!(!err.to_string().contains('\n'));
    }

    #[test]
    fn solve_requires_initial_values() {
        let c = config(
            Command::Solve,
            Some(r#"{"kind":"uniform","start":0,"step":1,"count":5}"#),
            Some(r#"{"alpha":0,"beta":2,"gamma":[1],"anchor":0}"#),
        );
        assert_eq!(run(&c).unwrap_err().field, "problem.ic");
    }

    #[test]
    fn bad_scale_is_input_error() {
        let c = config(
            Command::ScaleInfo,
            Some(r#"{"kind":"grid","points":[0,1,1,2]}"#),
            None,
        );
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(execute(&c, &mut out, &mut err), EXIT_INPUT);
        let msg = String::from_utf8(err).unwrap();
        assert!(msg.starts_with("error: scale:"), "{msg}");
        assert_eq!(msg.lines().count(), 1);
    }

    #[test]
    fn nonregressive_solve_names_index() {
        let c = RunConfig {
            problem: Some(
                r#"{"alpha":0,"beta":-1,"gamma":[1],"anchor":0,"ic":{"y":1,"yd":0}}"#.into(),
            ),
            scale: Some(r#"{"kind":"grid","points":[0,0.5,1.5,2]}"#.into()),
            ..RunConfig::new(Command::Solve)
        };
        let err = run(&c).unwrap_err();
        assert!(err.message.contains("grid index 1"), "{err}");
    }

    #[test]
    fn complex_initial_values_accepted() {
        let c = config(
            Command::Coeffs,
            None,
            Some(r#"{"alpha":0,"beta":1,"gamma":[0],"anchor":0,"ic":{"y":[0,1],"yd":0.5}}"#),
        );
        let out = run(&c).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.body).unwrap();
        assert!(v["c1"].is_array());
    }

    #[test]
    fn scale_info_csv() {
        let c = RunConfig {
            format: Some(Format::Csv),
            ..config(
                Command::ScaleInfo,
                Some(r#"{"kind":"grid","points":[0,0.5,0.75,2]}"#),
                Some(r#"{"alpha":1,"beta":1,"gamma":[1],"anchor":0}"#),
            )
        };
        let out = run(&c).unwrap();
        assert_eq!(
            out.body,
            "t,mu,regressivity\n0.0,0.5,0.25\n0.5,0.25,0.5625\n0.75,1.25,0.0625\n2.0,,\n"
        );
    }
}
