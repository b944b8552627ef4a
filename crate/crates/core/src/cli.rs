//! The `cube-spectra` command line.
//!
//! Every subcommand parses its inputs, calls the library and renders the
//! result; no numerics live here. Exit codes: 0 success, 1 a violated check
//! or a disagreement between eigenvalue routes, 2 invalid input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::ball_spectra::{
    lambda_ball_exact, lambda_for_radius_recurrence, lambda_subset_bruteforce, SubsetGraph,
};
use crate::bounds::{
    covering_radius_report, finite_code_bound, rate_report, rate_table, rate_table_csv, BoundKind,
    BoundReport,
};
use crate::codes::{parse_code, Code};
use crate::cube_fourier::{wht, CubeFunction};
use crate::error::Error;
use crate::limits::DEFAULT_TOL;
use crate::lp_witness::{
    check_covering, check_prop_ineq, covered_count, exhaustive_verify, FamilyMode, Neighborhood,
    PropositionReport, Verdict, VerifyError,
};
use crate::numfmt::{fmt_sig9, serialize_sig9, sig9};

/// Agreement required between eigenvalue routes before `lambda` reports.
const RECURRENCE_AGREEMENT: f64 = 1e-7;
const BRUTEFORCE_AGREEMENT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "cube-spectra",
    version,
    about = "Hamming-cube spectra and first linear programming bound certificates"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Absolute tolerance for floating comparisons.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Top adjacency eigenvalue of a Hamming ball.
    Lambda(LambdaArgs),
    /// Finite code-size bound, covering-radius bound or asymptotic rate.
    Bound(BoundArgs),
    /// Check the code-size and covering inequalities.
    Verify(VerifyArgs),
    /// Fourier transform of a code indicator or a stored cube function.
    Wht(WhtArgs),
    /// Fraction of the cube within distance r of a code.
    Cover(CoverArgs),
    /// Tabulate the asymptotic rate bound.
    RateTable(RateTableArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("method").required(true).args(["exact", "recurrence", "bruteforce"]))]
pub struct LambdaArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub recurrence: bool,
    #[arg(long)]
    pub bruteforce: bool,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, requires = "d", conflicts_with = "delta")]
    pub n: Option<usize>,
    #[arg(long, requires = "n")]
    pub d: Option<usize>,
    #[arg(long, required_unless_present = "n")]
    pub delta: Option<f64>,
    /// Report the essential covering radius bound instead of the code size.
    #[arg(long, requires = "n")]
    pub covering: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, required_unless_present = "code", conflicts_with = "code")]
    pub n: Option<usize>,
    #[arg(long, requires = "n", conflicts_with = "random_general")]
    pub all_linear: bool,
    #[arg(long, requires = "n")]
    pub random_general: bool,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, requires = "r")]
    pub code: Option<PathBuf>,
    #[arg(long)]
    pub r: Option<usize>,
}

#[derive(Debug, Args)]
pub struct WhtArgs {
    #[arg(
        long,
        required_unless_present = "function",
        conflicts_with = "function"
    )]
    pub code: Option<PathBuf>,
    /// Cube function in text (`index value`) or binary form.
    #[arg(long)]
    pub function: Option<PathBuf>,
    /// Also write the transform in binary form.
    #[arg(long)]
    pub binary_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    #[arg(long)]
    pub code: PathBuf,
    #[arg(long)]
    pub r: usize,
}

#[derive(Debug, Args)]
pub struct RateTableArgs {
    /// Comma-separated relative distances.
    #[arg(long, conflicts_with = "steps")]
    pub deltas: Option<String>,
    /// Uniform grid `i/(2·steps)` for `i = 0..=steps`.
    #[arg(long)]
    pub steps: Option<usize>,
}

/// Failure of a subcommand, mapped onto the exit code contract.
#[derive(Debug)]
enum Failure {
    /// Exit 2.
    Input(String),
    /// Exit 1, with the payload already rendered to stdout.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = std::result::Result<String, Failure>;

/// Run the CLI on `args` (including the program name), writing to the given
/// streams. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Lambda(a) => cmd_lambda(&cli, a),
        Command::Bound(a) => cmd_bound(&cli, a),
        Command::Verify(a) => cmd_verify(&cli, a, out),
        Command::Wht(a) => cmd_wht(&cli, a),
        Command::Cover(a) => cmd_cover(&cli, a),
        Command::RateTable(a) => cmd_rate_table(&cli, a),
    };
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            1
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("reports serialize");
    s.push('\n');
    s
}

fn seed_header(cli: &Cli) -> String {
    format!("# seed={}\n", cli.seed)
}

fn read_code(path: &Path) -> std::result::Result<Code, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_code(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

#[derive(Debug, Serialize)]
struct LambdaOutput {
    n: usize,
    r: usize,
    method: &'static str,
    #[serde(serialize_with = "serialize_sig9")]
    lambda: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<usize>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_profile"
    )]
    profile: Option<Vec<f64>>,
}

fn serialize_profile<S: serde::Serializer>(
    v: &Option<Vec<f64>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    crate::numfmt::serialize_vec_sig9(v.as_deref().unwrap_or(&[]), s)
}

fn cmd_lambda(cli: &Cli, a: &LambdaArgs) -> CmdResult {
    let exact = lambda_ball_exact(a.n, a.r)?;
    let output = if a.exact {
        LambdaOutput {
            n: a.n,
            r: a.r,
            method: "exact",
            lambda: exact,
            p: None,
            profile: None,
        }
    } else if a.recurrence {
        let w = lambda_for_radius_recurrence(a.n, a.r)?;
        let reference = lambda_ball_exact(a.n, w.p)?;
        if (w.lambda - reference).abs() > RECURRENCE_AGREEMENT {
            return Err(Failure::Check(format!(
                "recurrence lambda {} disagrees with tridiagonal {} at n={}, p={}",
                w.lambda, reference, a.n, w.p
            )));
        }
        LambdaOutput {
            n: a.n,
            r: a.r,
            method: "recurrence",
            lambda: w.lambda,
            p: Some(w.p),
            profile: Some(w.profile.values().to_vec()),
        }
    } else {
        let lambda = lambda_subset_bruteforce(&SubsetGraph::ball(a.n, a.r)?)?;
        if (lambda - exact).abs() > BRUTEFORCE_AGREEMENT {
            return Err(Failure::Check(format!(
                "power iteration {lambda} disagrees with tridiagonal {exact} at n={}, r={}",
                a.n, a.r
            )));
        }
        LambdaOutput {
            n: a.n,
            r: a.r,
            method: "bruteforce",
            lambda,
            p: None,
            profile: None,
        }
    };
    Ok(match cli.format {
        Format::Json => to_json(&output),
        Format::Csv => format!(
            "n,r,method,lambda,p\n{},{},{},{},{}\n",
            output.n,
            output.r,
            output.method,
            fmt_sig9(output.lambda),
            output.p.map(|p| p.to_string()).unwrap_or_default()
        ),
        Format::Text => {
            let mut s = seed_header(cli);
            s.push_str(&format!("lambda = {}\n", fmt_sig9(output.lambda)));
            if let (Some(p), Some(profile)) = (output.p, &output.profile) {
                s.push_str(&format!("p = {p}\n"));
                let values: Vec<String> = profile.iter().map(|v| fmt_sig9(*v)).collect();
                s.push_str(&format!("profile = {}\n", values.join(" ")));
            }
            s
        }
    })
}

fn render_bound(cli: &Cli, report: &BoundReport) -> String {
    let opt = |v: Option<f64>| v.map(fmt_sig9).unwrap_or_default();
    match cli.format {
        Format::Json => to_json(report),
        Format::Csv => match report.kind {
            BoundKind::Rate => format!("delta,rate\n{},{}\n", opt(report.delta), report.bound),
            BoundKind::CoveringRadius | BoundKind::Comparator => format!(
                "n,d,r_finite,r_asymptotic,tietavainen\n{},{},{},{},{}\n",
                report.n.unwrap_or_default(),
                report.d.unwrap_or_default(),
                report.bound,
                opt(report.r_asymptotic),
                opt(report.comparator)
            ),
            BoundKind::FiniteCode => format!(
                "n,d,r_star,lambda,bound\n{},{},{},{},{}\n",
                report.n.unwrap_or_default(),
                report.d.unwrap_or_default(),
                report.r_star.unwrap_or_default(),
                opt(report.lambda),
                report.bound
            ),
        },
        Format::Text => {
            let mut s = seed_header(cli);
            let value = serde_json::to_value(report).ok();
            // field order follows the JSON form
            if let Some(serde_json::Value::Object(map)) = value {
                for (k, v) in map {
                    let v = match v {
                        serde_json::Value::String(s) => s,
                        other => other.to_string(),
                    };
                    s.push_str(&format!("{k} = {v}\n"));
                }
            } else {
                s.push_str(&format!("bound = {}\n", report.bound));
            }
            s
        }
    }
}

fn cmd_bound(cli: &Cli, a: &BoundArgs) -> CmdResult {
    let report = match (a.n, a.d, a.delta) {
        (Some(n), Some(d), _) if a.covering => covering_radius_report(n, d)?,
        (Some(n), Some(d), _) => finite_code_bound(n, d)?,
        (_, _, Some(delta)) => rate_report(delta)?,
        _ => return Err(Failure::Input("need --n and --d, or --delta".into())),
    };
    Ok(render_bound(cli, &report))
}

#[derive(Debug, Serialize)]
struct CodeVerifyOutput<'a> {
    n: usize,
    code_size: usize,
    r: usize,
    reports: &'a [PropositionReport],
    violations: usize,
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    if let Some(path) = &a.code {
        let code = read_code(path)?;
        let r = a.r.expect("clap enforces --r with --code");
        let set = Neighborhood::Ball(r);
        let reports = vec![
            check_prop_ineq(&code, &set, cli.tol)?,
            check_covering(&code, &set, cli.tol)?,
        ];
        let violations = reports
            .iter()
            .filter(|r| r.verdict == Verdict::Violated)
            .count();
        let output = CodeVerifyOutput {
            n: code.n(),
            code_size: code.len(),
            r,
            reports: &reports,
            violations,
        };
        let text = match cli.format {
            Format::Json => to_json(&output),
            Format::Csv | Format::Text => {
                let mut s = String::from(
                    "proposition,n,d,r,lambda,premise_ok,ef2,ef_sq,covered,bound_lhs,bound_rhs,verdict\n",
                );
                for rep in &reports {
                    let v = serde_json::to_value(rep).expect("reports serialize");
                    let field = |k: &str| match &v[k] {
                        serde_json::Value::Null => String::new(),
                        serde_json::Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    let row: Vec<String> = [
                        "proposition",
                        "n",
                        "d",
                        "r",
                        "lambda",
                        "premise_ok",
                        "ef2",
                        "ef_sq",
                        "covered",
                        "bound_lhs",
                        "bound_rhs",
                        "verdict",
                    ]
                    .iter()
                    .map(|k| field(k))
                    .collect();
                    s.push_str(&row.join(","));
                    s.push('\n');
                }
                s
            }
        };
        if violations > 0 {
            let _ = out.write_all(text.as_bytes());
            return Err(Failure::Check(format!("{violations} violated check(s)")));
        }
        return Ok(text);
    }

    let n = a.n.expect("clap enforces --n without --code");
    let mode = if a.random_general {
        FamilyMode::RandomGeneral
    } else if a.all_linear {
        FamilyMode::AllLinear
    } else {
        return Err(Failure::Input(
            "--n needs --all-linear or --random-general".into(),
        ));
    };
    match exhaustive_verify(n, mode, a.trials, cli.seed, cli.tol, cli.threads) {
        Ok(summary) => Ok(match cli.format {
            Format::Json => to_json(&summary),
            Format::Csv => format!(
                "n,mode,trials,seed,codes,checks,holds,premise_unmet,violations\n{},{},{},{},{},{},{},{},{}\n",
                summary.n,
                serde_json::to_value(summary.mode).unwrap().as_str().unwrap_or_default(),
                summary.trials,
                summary.seed,
                summary.codes,
                summary.checks,
                summary.holds,
                summary.premise_unmet,
                summary.violations
            ),
            Format::Text => format!(
                "{}codes = {}\nchecks = {}\nholds = {}\npremise_unmet = {}\nviolations = {}\n",
                seed_header(cli),
                summary.codes,
                summary.checks,
                summary.holds,
                summary.premise_unmet,
                summary.violations
            ),
        }),
        Err(VerifyError::Library(e)) => Err(e.into()),
        Err(VerifyError::Violation(dump)) => {
            let _ = out.write_all(to_json(&dump).as_bytes());
            Err(Failure::Check(format!(
                "violation at n={}, d={}, r={:?}",
                dump.report.n, dump.report.d, dump.report.r
            )))
        }
    }
}

#[derive(Debug, Serialize)]
struct FunctionOutput<'a> {
    n: usize,
    #[serde(serialize_with = "crate::numfmt::serialize_vec_sig9")]
    values: &'a [f64],
}

fn cmd_wht(cli: &Cli, a: &WhtArgs) -> CmdResult {
    let f = match (&a.code, &a.function) {
        (Some(path), _) => read_code(path)?.indicator()?,
        (None, Some(path)) => {
            let bytes = std::fs::read(path)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            if CubeFunction::is_binary(&bytes) {
                CubeFunction::from_bytes(&bytes)?
            } else {
                CubeFunction::read_text(&bytes[..])?
            }
        }
        (None, None) => return Err(Failure::Input("need --code or --function".into())),
    };
    let fhat = wht(&f);
    if let Some(path) = &a.binary_out {
        std::fs::write(path, fhat.to_bytes())
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(match cli.format {
        Format::Json => to_json(&FunctionOutput {
            n: fhat.n(),
            values: fhat.values(),
        }),
        Format::Csv => {
            let mut s = String::from("index,value\n");
            for (i, v) in fhat.values().iter().enumerate() {
                s.push_str(&format!("{i},{}\n", fmt_sig9(*v)));
            }
            s
        }
        Format::Text => {
            let mut s = format!("{}n={}\n", seed_header(cli), fhat.n());
            for (i, v) in fhat.values().iter().enumerate() {
                s.push_str(&format!("{i} {}\n", fmt_sig9(*v)));
            }
            s
        }
    })
}

#[derive(Debug, Serialize)]
struct CoverOutput {
    n: usize,
    r: usize,
    covered: u64,
    #[serde(serialize_with = "serialize_sig9")]
    fraction: f64,
}

fn cmd_cover(cli: &Cli, a: &CoverArgs) -> CmdResult {
    let code = read_code(&a.code)?;
    let covered = covered_count(&code, a.r)?;
    let output = CoverOutput {
        n: code.n(),
        r: a.r,
        covered,
        fraction: covered as f64 / (code.n() as f64).exp2(),
    };
    Ok(match cli.format {
        Format::Json => to_json(&output),
        Format::Csv => format!(
            "n,r,covered,fraction\n{},{},{},{}\n",
            output.n,
            output.r,
            output.covered,
            fmt_sig9(output.fraction)
        ),
        Format::Text => format!("{}{}\n", seed_header(cli), fmt_sig9(output.fraction)),
    })
}

fn cmd_rate_table(cli: &Cli, a: &RateTableArgs) -> CmdResult {
    let deltas: Vec<f64> = match (&a.deltas, a.steps) {
        (Some(list), _) => list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| Failure::Input(format!("bad delta `{s}`")))
            })
            .collect::<std::result::Result<_, _>>()?,
        (None, Some(steps)) if steps > 0 => {
            (0..=steps).map(|i| i as f64 / (2 * steps) as f64).collect()
        }
        _ => return Err(Failure::Input("need --deltas or --steps >= 1".into())),
    };
    let rows = rate_table(&deltas)?;
    Ok(match cli.format {
        Format::Json => to_json(&rows),
        Format::Csv => rate_table_csv(&rows),
        Format::Text => {
            let mut s = seed_header(cli);
            for row in &rows {
                s.push_str(&format!("{} {}\n", sig9(row.delta), sig9(row.rate)));
            }
            s
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("cube-spectra").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn lambda_outputs() {
        let (code, out, _) = run_str(&["lambda", "--n", "4", "--r", "2", "--exact"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "{\"n\":4,\"r\":2,\"method\":\"exact\",\"lambda\":3.16227766}\n"
        );
        let (_, out, _) = run_str(&[
            "lambda", "--n", "5", "--r", "5", "--exact", "--format", "text",
        ]);
        assert_eq!(out, "# seed=0\nlambda = 5\n");
        let (code, out, _) = run_str(&["lambda", "--n", "2", "--r", "1", "--recurrence"]);
        assert_eq!(code, 0);
        assert!(
            out.contains("\"lambda\":1.41421356") && out.contains("\"p\":1"),
            "{out}"
        );
        let (code, _, _) = run_str(&["lambda", "--n", "6", "--r", "3", "--bruteforce"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn invalid_flags_exit_two() {
        assert_eq!(run_str(&["lambda", "--n", "4", "--r", "2"]).0, 2);
        assert_eq!(run_str(&["lambda", "--n", "4", "--r", "9", "--exact"]).0, 2);
        assert_eq!(run_str(&["bound", "--delta", "0.7"]).0, 2);
        assert_eq!(run_str(&["bound", "--n", "4"]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["verify", "--n", "3"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn bound_outputs() {
        let (code, out, _) = run_str(&["bound", "--delta", "0.1"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "{\"kind\":\"rate\",\"delta\":0.1,\"bound\":0.721928095}\n"
        );
        let (_, out, _) = run_str(&["bound", "--delta", "0.5"]);
        assert_eq!(out, "{\"kind\":\"rate\",\"delta\":0.5,\"bound\":0}\n");
        let (_, out, _) = run_str(&["bound", "--n", "7", "--d", "3", "--format", "csv"]);
        assert_eq!(out, "n,d,r_star,lambda,bound\n7,3,1,2.64575131,56\n");
        let (code, out, _) = run_str(&["bound", "--n", "100", "--d", "30", "--covering"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"comparator\":14.2928"), "{out}");
    }

    #[test]
    fn rate_table_outputs() {
        let (_, out, _) = run_str(&["rate-table", "--deltas", "0,0.5", "--format", "csv"]);
        assert_eq!(out, "delta,rate\n0,1\n0.5,0\n");
        let (code, out, _) = run_str(&["rate-table", "--deltas", ""]);
        assert_eq!((code, out.as_str()), (0, "[]\n"));
        let (_, out, _) = run_str(&["rate-table", "--steps", "2", "--format", "csv"]);
        assert_eq!(out.lines().count(), 4);
    }

    #[test]
    fn verify_family() {
        let (code, out, _) = run_str(&["verify", "--n", "4", "--all-linear"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"violations\":0"), "{out}");
        let (code, _, _) = run_str(&["verify", "--n", "1", "--all-linear"]);
        assert_eq!(code, 0);
    }
}
