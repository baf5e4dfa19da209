//! Command-line front end: `gconv solve | transform | symbol | verify`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 symbol not elliptic,
//! 3 input or usage error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use gconv::config::{EquationConfig, SymbolConfig, TransformConfig};
use gconv::gfourier::{DEFAULT_COUNT, DEFAULT_HALF_WIDTH, DEFAULT_TOLERANCE, DEFAULT_XI_COUNT, DEFAULT_XI_MAX};
use gconv::spaces::lp_norm;
use gconv::symbols::{ellipticity_scan, multiplier_diagnostics, DIAGNOSTIC_POINTS};
use gconv::verify::{run_checks, CheckResult};
use gconv::{Chart, Error, FreqGrid, LineGrid, SampledFunction, Transform, Warning};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_NOT_ELLIPTIC: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Largest accepted grid size.
pub const MAX_COUNT: usize = 1 << 20;

#[derive(Debug, Parser)]
#[command(name = "gconv", version, about = "Convolution equations on the group (-1, 1)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Solve a Prandtl, Tricomi, Lavrentjev-Bitsadze or integro-differential equation.
    Solve,
    /// Forward group-Fourier transform of a function.
    Transform,
    /// Tabulate a symbol and report multiplier diagnostics.
    Symbol,
    /// Run the closed-form verification suite.
    Verify,
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct Options {
    /// JSON input file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Half-width T of the line grid.
    #[arg(long = "grid-T", global = true)]
    pub grid_t: Option<f64>,
    /// Number N of line-grid nodes (power of two).
    #[arg(long = "grid-N", global = true)]
    pub grid_n: Option<usize>,
    /// Frequency cutoff.
    #[arg(long = "xi-max", global = true)]
    pub xi_max: Option<f64>,
    /// Number of frequency nodes.
    #[arg(long = "xi-N", global = true)]
    pub xi_n: Option<usize>,
    /// Truncation tolerance for warnings.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Comma-separated check names for `verify`.
    #[arg(long, global = true)]
    pub checks: Option<String>,
    /// Smoothness index of the Zygmund diagnostic for `solve`.
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
    pub details: serde_json::Value,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            kind: "input",
            message: message.into(),
            details: serde_json::Value::Null,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::NotElliptic { margin, xi } => Failure {
                code: EXIT_NOT_ELLIPTIC,
                kind: "not_elliptic",
                message,
                details: json!({ "xi": xi, "margin": margin }),
            },
            Error::OrderHypothesis { term, total, order } => Failure {
                code: EXIT_INPUT,
                kind: "order_hypothesis",
                message,
                details: json!({ "term": term, "total": total, "order": order }),
            },
            Error::NonDecaying { magnitude, .. } => Failure {
                code: EXIT_INPUT,
                kind: "non_decaying",
                message,
                details: json!({ "end_magnitude": magnitude }),
            },
            _ => Failure::input(message),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> i32 {
    let result = match cli.command {
        Command::Solve => cmd_solve(&cli.options),
        Command::Transform => cmd_transform(&cli.options),
        Command::Symbol => cmd_symbol(&cli.options),
        Command::Verify => cmd_verify(&cli.options),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            if let Some(dir) = &cli.options.out {
                let body = json!({
                    "exit_code": f.code,
                    "kind": f.kind,
                    "message": f.message,
                    "details": f.details,
                });
                if fs::create_dir_all(dir).is_ok() {
                    let _ = fs::write(dir.join("error.json"), pretty(&body));
                }
            }
            f.code
        }
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

fn read_config<T: DeserializeOwned>(opts: &Options) -> std::result::Result<T, Failure> {
    let path = opts
        .config
        .as_ref()
        .ok_or_else(|| Failure::input("--config <path> is required for this command"))?;
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text, path)
}

fn parse_config<T: DeserializeOwned>(text: &str, path: &Path) -> std::result::Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| {
        let what = match e.classify() {
            serde_json::error::Category::Syntax | serde_json::error::Category::Eof => "malformed JSON",
            _ => "invalid configuration",
        };
        Failure {
            code: EXIT_INPUT,
            kind: "input",
            message: format!(
                "{}: {what} at line {}, column {}: {e}",
                path.display(),
                e.line(),
                e.column()
            ),
            details: json!({ "line": e.line(), "column": e.column() }),
        }
    })
}

fn check_count(name: &str, n: usize) -> std::result::Result<usize, Failure> {
    if n > MAX_COUNT {
        return Err(Failure::input(format!("{name} = {n} exceeds the limit {MAX_COUNT}")));
    }
    Ok(n)
}

fn transform_from(opts: &Options) -> std::result::Result<Transform, Failure> {
    let xi_max = opts.xi_max.unwrap_or(DEFAULT_XI_MAX);
    let count = check_count("--xi-N", opts.xi_n.unwrap_or(DEFAULT_XI_COUNT))?;
    let tol = opts.tol.unwrap_or(DEFAULT_TOLERANCE);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::input(format!("--tol must be positive, got {tol}")));
    }
    Ok(Transform::new(FreqGrid::new(xi_max, count)?).with_tolerance(tol))
}

fn apply_grid_overrides(opts: &Options, t: &mut f64, n: &mut usize) -> std::result::Result<(), Failure> {
    if let Some(v) = opts.grid_t {
        *t = v;
    }
    if let Some(v) = opts.grid_n {
        *n = v;
    }
    check_count("grid N", *n)?;
    Ok(())
}

fn out_dir(opts: &Options) -> std::result::Result<PathBuf, Failure> {
    let dir = opts.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir)
        .map_err(|e| Failure::input(format!("cannot create {}: {e}", dir.display())))?;
    Ok(dir)
}

fn write(dir: &Path, name: &str, body: &str) -> std::result::Result<(), Failure> {
    fs::write(dir.join(name), body)
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", dir.join(name).display())))
}

/// Run metadata goes here so that the data files stay byte-identical
/// between runs of the same configuration.
fn write_manifest(dir: &Path, command: &str, opts: &Options, files: &[&str]) -> std::result::Result<(), Failure> {
    let unix_time = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let body = json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "config": opts.config.as_ref().map(|p| p.display().to_string()),
        "files": files,
        "unix_time": unix_time,
    });
    write(dir, "manifest.json", &pretty(&body))
}

fn warn_all(warnings: &[Warning]) {
    for w in warnings {
        eprintln!("warning: {}", serde_json::to_string(w).unwrap_or_default());
    }
}

fn coordinate(chart: Chart, t: f64) -> f64 {
    match chart {
        Chart::Group => t.tanh(),
        Chart::Line => t,
        Chart::HalfInterval => 0.5 * (1.0 + t.tanh()),
    }
}

/// `t,x,re,im` rows with `x` the coordinate of the function's chart.
pub fn function_csv(f: &SampledFunction) -> String {
    let mut out = String::from("t,x,re,im\n");
    for (j, v) in f.values.iter().enumerate() {
        let t = f.grid.node(j);
        let _ = writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", t, coordinate(f.chart, t), v.re, v.im);
    }
    out
}

/// `xi,re,im` rows.
pub fn table_csv(rows: impl Iterator<Item = (f64, Complex64)>) -> String {
    let mut out = String::from("xi,re,im\n");
    for (x, v) in rows {
        let _ = writeln!(out, "{:.16e},{:.16e},{:.16e}", x, v.re, v.im);
    }
    out
}

fn cmd_solve(opts: &Options) -> Outcome {
    let mut cfg: EquationConfig = read_config(opts)?;
    apply_grid_overrides(opts, &mut cfg.grid.half_width, &mut cfg.grid.count)?;
    let tr = transform_from(opts)?;
    let eq = cfg.build()?;
    let mut report = eq.solve(&tr)?;
    report.diagnostics.solution_l2 = lp_norm(&report.weighted, 2.0).ok();
    if let Some(alpha) = opts.alpha {
        report = report.with_smoothness(&tr, alpha)?;
    }
    warn_all(&report.warnings);

    let dir = out_dir(opts)?;
    write(&dir, "solution.csv", &function_csv(&report.solution))?;
    let mut body = serde_json::to_value(&report).expect("serializable report");
    body["grid"] = json!({ "T": cfg.grid.half_width, "N": cfg.grid.count });
    body["freqs"] = json!({ "xi_max": tr.freqs.xi_max, "count": tr.freqs.count });
    write(&dir, "report.json", &pretty(&body))?;
    write_manifest(&dir, "solve", opts, &["solution.csv", "report.json"])?;
    println!(
        "solved {} equation: margin {:.3e}, freq residual {:.3e}{}",
        report.family.name(),
        report.symbol_margin,
        report.freq_residual,
        report
            .space_residual
            .map(|s| format!(", space residual {s:.3e}"))
            .unwrap_or_default()
    );
    Ok(EXIT_OK)
}

fn cmd_transform(opts: &Options) -> Outcome {
    let mut cfg: TransformConfig = read_config(opts)?;
    apply_grid_overrides(opts, &mut cfg.grid.half_width, &mut cfg.grid.count)?;
    let tr = transform_from(opts)?;
    let grid = cfg.grid.line_grid()?;
    let f = cfg.function.sample(grid, Chart::Group)?;
    let out = tr.forward(&f);
    let mut warnings = out.warnings.clone();
    let round_trip = if cfg.round_trip {
        let back = tr.inverse(&out.value, grid);
        warnings.extend(back.warnings.iter().cloned());
        Some(back.value.relative_l2_error(&f)?)
    } else {
        None
    };
    warn_all(&warnings);

    let dir = out_dir(opts)?;
    write(&dir, "spectrum.csv", &table_csv(out.value.freqs.nodes().into_iter().zip(out.value.values.iter().copied())))?;
    let body = json!({
        "grid": { "T": grid.half_width, "N": grid.count },
        "freqs": { "xi_max": tr.freqs.xi_max, "count": tr.freqs.count },
        "end_magnitude": f.end_magnitude(),
        "round_trip_error": round_trip,
        "warnings": warnings,
    });
    write(&dir, "report.json", &pretty(&body))?;
    write_manifest(&dir, "transform", opts, &["spectrum.csv", "report.json"])?;
    println!("transformed {} samples onto {} frequencies", grid.count, tr.freqs.count);
    Ok(EXIT_OK)
}

fn cmd_symbol(opts: &Options) -> Outcome {
    let cfg: SymbolConfig = read_config(opts)?;
    let tr = transform_from(opts)?;
    let a = cfg.build()?;
    let xis = cfg.xi.clone().unwrap_or_else(|| tr.freqs.nodes());
    let mut poles = Vec::new();
    let rows: Vec<(f64, Complex64)> = xis
        .iter()
        .map(|&xi| match a.eval(xi) {
            Ok(v) => (xi, v),
            Err(_) => {
                poles.push(xi);
                (xi, Complex64::new(f64::NAN, f64::NAN))
            }
        })
        .collect();
    let r = a.weight_order();
    let scan = ellipticity_scan(&a, r);
    let report = multiplier_diagnostics(&a, DIAGNOSTIC_POINTS);

    let dir = out_dir(opts)?;
    write(&dir, "symbol.csv", &table_csv(rows.into_iter()))?;
    let body = json!({
        "family": cfg.family,
        "elliptic": scan.is_elliptic(),
        "ellipticity": { "margin": scan.margin, "xi": scan.xi, "weight_order": r },
        "multiplier": report,
        "poles": poles,
    });
    write(&dir, "diagnostics.json", &pretty(&body))?;
    write_manifest(&dir, "symbol", opts, &["symbol.csv", "diagnostics.json"])?;
    println!(
        "{} symbol: margin {:.3e} near xi = {}, {}",
        cfg.family, scan.margin, scan.xi, report.verdict
    );
    Ok(EXIT_OK)
}

fn cmd_verify(opts: &Options) -> Outcome {
    let mut t = DEFAULT_HALF_WIDTH;
    let mut n = DEFAULT_COUNT;
    apply_grid_overrides(opts, &mut t, &mut n)?;
    let grid = LineGrid::new(t, n)?;
    let tr = transform_from(opts)?;
    let selection: Option<Vec<String>> = opts.checks.as_ref().map(|s| {
        s.split(',')
            .map(str::trim)
            .filter(|c| !c.is_empty())
            .map(String::from)
            .collect()
    });
    if selection.as_ref().is_some_and(Vec::is_empty) {
        eprintln!("warning: no checks selected, nothing to run");
    }
    let results = run_checks(grid, &tr, selection.as_deref());
    print!("{}", verify_table(&results));
    let failed = results.iter().filter(|r| !r.pass).count();
    println!("{} of {} checks passed", results.len() - failed, results.len());
    if let Some(dir) = &opts.out {
        fs::create_dir_all(dir).map_err(|e| Failure::input(format!("cannot create {}: {e}", dir.display())))?;
        write(dir, "verify.json", &pretty(&results))?;
        write_manifest(dir, "verify", opts, &["verify.json"])?;
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

pub fn verify_table(results: &[CheckResult]) -> String {
    let mut out = format!(
        "{:<22} {:>12} {:>12} {:>10} {:>5}\n",
        "check", "expected", "got", "tolerance", "pass"
    );
    for r in results {
        let _ = write!(
            out,
            "{:<22} {:>12.4e} {:>12.4e} {:>10.1e} {:>5}",
            r.name,
            r.expected,
            r.got,
            r.tolerance,
            if r.pass { "yes" } else { "NO" }
        );
        if let Some(d) = &r.detail {
            let _ = write!(out, "  {d}");
        }
        out.push('\n');
    }
    out
}
