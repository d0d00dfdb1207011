//! Command-line front end.
//!
//! Exit codes: `0` success (and `PD` for `certify`), `2` invalid input,
//! `3` domain or unsupported-geometry error, `4` `NotPD`, `5`
//! `Inconclusive`, `1` anything else. Errors are a single JSON line
//! `{"error": code, "message": text}` on standard error. Numeric tables are
//! CSV with a header row. `ISOKERNEL_SEED` sets the default seed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use crate::fields::{self, ProductPointSet, SpaceTimePointSet, SpherePointSet};
use crate::gegenbauer::GegenbauerBasis;
use crate::interp::MonotoneCubic;
use crate::kernel_spec::{AnyKernel, AnyPoints, CharFnFile, KernelSpecFile};
use crate::product_spheres::Separability;
use crate::schoenberg::{certify, recover_coefficients, CertifyOptions, Verdict};

pub const SEED_ENV: &str = "ISOKERNEL_SEED";

/// Tail mass above which `coeffs` prints a warning.
pub const TAIL_WARNING: f64 = 1e-6;

/// Tolerance on `|‖p‖ - 1|` for points read from a file; accepted points are
/// renormalized.
pub const POINT_FILE_TOL: f64 = 1e-6;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_NOT_PD: i32 = 4;
pub const EXIT_INCONCLUSIVE: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "isokernel",
    version,
    about = "Isotropic positive definite kernels on spheres, sphere x line and products of spheres"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a kernel spec at a point or on a grid (CSV on stdout).
    Eval(EvalArgs),
    /// Recover Gegenbauer coefficients of a function (CSV on stdout).
    Coeffs(FunctionArgs),
    /// Certify positive definiteness of a function (JSON on stdout).
    Certify(CertifyArgs),
    /// Test a space-time or product kernel for separability (JSON on stdout).
    Separable(SeparableArgs),
    /// Simulate a Gaussian field with the kernel as covariance (CSV file).
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
struct EvalArgs {
    spec: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Uniform grid with this many nodes per free coordinate.
    #[arg(long)]
    grid: Option<usize>,
    /// Time range `[-t_max, t_max]` of the grid for sphere_time kernels.
    #[arg(long, default_value_t = 1.0)]
    t_max: f64,
}

#[derive(Debug, Args)]
struct FunctionArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda: f64,
    #[arg(long, default_value_t = 30)]
    nmax: usize,
    /// Defaults to `max(2 (nmax + 1), 64)`.
    #[arg(long)]
    quad_order: Option<usize>,
    /// CSV table `x,g(x)` (header optional), interpolated monotone-cubically.
    #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
    table: Option<PathBuf>,
    /// Built-in function: one, x, negx, xsquared, legendre3, exp.
    #[arg(long)]
    expr: Option<String>,
}

#[derive(Debug, Args)]
struct CertifyArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[arg(long, default_value_t = 5)]
    gram_trials: usize,
    #[arg(long, default_value_t = 25)]
    gram_points: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1e-8)]
    coeff_tol: f64,
    /// Defaults to `1e-8 * gram_points`.
    #[arg(long)]
    eig_tol: Option<f64>,
}

#[derive(Debug, Args)]
struct SeparableArgs {
    spec: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Factorized,
    Spectral,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    spec: PathBuf,
    /// CSV of sites: sphere coordinates, then the time (sphere_time) or the
    /// second sphere's coordinates (product_spheres).
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    points: Option<PathBuf>,
    /// Number of uniformly random sites.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Method::Factorized)]
    method: Method,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0.0)]
    jitter: f64,
    /// Harmonic degree cap for the spectral method (default: kernel truncation).
    #[arg(long)]
    degree_cap: Option<usize>,
    /// Random times are drawn from `[0, t_max]`.
    #[arg(long, default_value_t = 1.0)]
    t_max: f64,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub exit_code: i32,
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    fn validation(message: impl Into<String>) -> Self {
        Self {
            exit_code: EXIT_VALIDATION,
            code: "validation_error",
            message: message.into(),
        }
    }

    fn to_json(&self) -> String {
        json!({"error": self.code, "message": self.message}).to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let (exit_code, code) = match &e {
            Error::Domain { .. } => (EXIT_DOMAIN, "domain_error"),
            Error::GeometryMismatch(_)
            | Error::Unsupported(_)
            | Error::DegreeCapTooSmall { .. } => (EXIT_DOMAIN, "unsupported_geometry"),
            Error::Io(_) => (EXIT_VALIDATION, "io_error"),
            Error::Factorization { .. }
            | Error::QuadratureConvergence { .. }
            | Error::Evaluation { .. } => (EXIT_INTERNAL, "numerical_error"),
            _ => (EXIT_VALIDATION, "validation_error"),
        };
        Self {
            exit_code,
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{}", CliError::validation(first).to_json());
            return EXIT_VALIDATION;
        }
    };
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(&a, out),
        Command::Coeffs(a) => cmd_coeffs(&a, out, err),
        Command::Certify(a) => cmd_certify(&a, out),
        Command::Separable(a) => cmd_separable(&a, out),
        Command::Simulate(a) => cmd_simulate(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            e.exit_code
        }
    }
}

fn fmt(v: f64) -> String {
    format!("{v:?}")
}

fn load_kernel(path: &Path) -> CliResult<AnyKernel> {
    Ok(KernelSpecFile::load(path)?.to_kernel()?)
}

fn parse_coord(name: &str, raw: &str) -> CliResult<f64> {
    raw.trim()
        .parse::<f64>()
        .map_err(|_| CliError::validation(format!("--{name}: `{raw}` is not a number")))
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

fn emit(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::from(Error::from(e)))
}

fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> CliResult<i32> {
    let kernel = load_kernel(&a.spec)?;
    let n = match a.grid {
        Some(n) if n < 2 => return Err(CliError::validation("--grid needs at least 2 nodes")),
        other => other,
    };
    // Coordinates are echoed as given on the command line, grid nodes in
    // shortest round-trip form.
    let fixed = |name: &str, v: &Option<String>| -> CliResult<Option<(String, f64)>> {
        v.as_ref()
            .map(|raw| Ok((raw.trim().to_string(), parse_coord(name, raw)?)))
            .transpose()
    };
    let axis = |fixed: Option<(String, f64)>,
                lo: f64,
                hi: f64,
                name: &str|
     -> CliResult<Vec<(String, f64)>> {
        match (fixed, n) {
            (Some(f), _) => Ok(vec![f]),
            (None, Some(n)) => Ok(grid(lo, hi, n).into_iter().map(|v| (fmt(v), v)).collect()),
            (None, None) => Err(CliError::validation(format!(
                "--{name} or --grid is required"
            ))),
        }
    };

    let mut text = String::new();
    match &kernel {
        AnyKernel::Sphere(k) => {
            if a.x1.is_some() || a.x2.is_some() || a.t.is_some() {
                return Err(CliError::validation("sphere kernels take --x only"));
            }
            text.push_str("x,value\n");
            for (sx, x) in axis(fixed("x", &a.x)?, -1.0, 1.0, "x")? {
                let v = k.eval(x)?;
                writeln!(text, "{sx},{}", fmt(v)).unwrap();
            }
        }
        AnyKernel::SphereTime(k) => {
            if a.x1.is_some() || a.x2.is_some() {
                return Err(CliError::validation("sphere_time kernels take --x and --t"));
            }
            if !(a.t_max > 0.0 && a.t_max.is_finite()) {
                return Err(CliError::validation("--t-max must be positive"));
            }
            let xs = axis(fixed("x", &a.x)?, -1.0, 1.0, "x")?;
            let ts = axis(fixed("t", &a.t)?, -a.t_max, a.t_max, "t")?;
            text.push_str("x,t,value\n");
            for (sx, x) in &xs {
                for (st, t) in &ts {
                    let v = k.eval(*x, *t)?;
                    writeln!(text, "{sx},{st},{}", fmt(v)).unwrap();
                }
            }
        }
        AnyKernel::ProductSpheres(k) => {
            if a.x.is_some() || a.t.is_some() {
                return Err(CliError::validation(
                    "product_spheres kernels take --x1 and --x2",
                ));
            }
            let x1s = axis(fixed("x1", &a.x1)?, -1.0, 1.0, "x1")?;
            let x2s = axis(fixed("x2", &a.x2)?, -1.0, 1.0, "x2")?;
            text.push_str("x1,x2,value\n");
            for (s1, x1) in &x1s {
                for (s2, x2) in &x2s {
                    let v = k.eval(*x1, *x2)?;
                    writeln!(text, "{s1},{s2},{}", fmt(v)).unwrap();
                }
            }
        }
    }
    emit(out, &text)?;
    Ok(EXIT_OK)
}

/// Built-in test functions on `[-1, 1]`.
pub fn builtin_expression(name: &str) -> Option<fn(f64) -> f64> {
    let f: fn(f64) -> f64 = match name {
        "one" => |_| 1.0,
        "x" => |x| x,
        "negx" => |x| -x,
        "xsquared" => |x| x * x,
        "legendre3" => |x| 0.5 * (5.0 * x * x * x - 3.0 * x),
        "exp" => |x| (x - 1.0).exp(),
        _ => return None,
    };
    Some(f)
}

/// Reads a two-column `x,g(x)` CSV. A non-numeric first line is a header.
pub fn read_table(path: &Path) -> crate::Result<MonotoneCubic> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Option<Vec<f64>> = cells.iter().map(|c| c.parse().ok()).collect();
        match parsed {
            Some(v) if v.len() >= 2 => {
                xs.push(v[0]);
                ys.push(v[v.len() - 1]);
            }
            None if lineno == 0 => continue,
            _ => {
                return Err(Error::Table(format!(
                    "line {}: expected numeric `x,g(x)`",
                    lineno + 1
                )))
            }
        }
    }
    MonotoneCubic::new(xs, ys)
}

enum Function {
    Builtin(fn(f64) -> f64),
    Table(MonotoneCubic),
}

impl Function {
    fn eval(&self, x: f64) -> f64 {
        match self {
            Self::Builtin(f) => f(x),
            Self::Table(t) => t.eval(x).unwrap_or(f64::NAN),
        }
    }
}

fn load_function(a: &FunctionArgs, quad_order: usize) -> CliResult<(GegenbauerBasis, Function)> {
    let basis = GegenbauerBasis::from_lambda(a.lambda)?;
    let function = match (&a.expr, &a.table) {
        (Some(name), _) => Function::Builtin(builtin_expression(name).ok_or_else(|| {
            CliError::validation(format!(
                "unknown expression `{name}` (one, x, negx, xsquared, legendre3, exp)"
            ))
        })?),
        (None, Some(path)) => {
            let table = read_table(path)?;
            let needed = (2 * a.nmax).max(2);
            if table.len() < needed {
                return Err(CliError::validation(format!(
                    "table has {} nodes; at least 2 * nmax = {needed} are required",
                    table.len()
                )));
            }
            let rule = basis.quadrature(quad_order)?;
            let (lo, hi) = table.domain();
            if lo > rule.nodes[0] || hi < rule.nodes[rule.len() - 1] {
                return Err(CliError::validation(format!(
                    "table covers [{lo}, {hi}] but the quadrature needs [{}, {}]",
                    rule.nodes[0],
                    rule.nodes[rule.len() - 1]
                )));
            }
            Function::Table(table)
        }
        (None, None) => return Err(CliError::validation("--table or --expr is required")),
    };
    Ok((basis, function))
}

fn quad_order_for(a: &FunctionArgs) -> usize {
    a.quad_order.unwrap_or_else(|| (2 * (a.nmax + 1)).max(64))
}

fn tail_mass(coeffs: &[f64]) -> f64 {
    let n_max = coeffs.len() - 1;
    coeffs.iter().skip(n_max / 2 + 1).map(|a| a.abs()).sum()
}

fn cmd_coeffs(a: &FunctionArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let quad_order = quad_order_for(a);
    let (basis, function) = load_function(a, quad_order)?;
    let coeffs = recover_coefficients(|x| function.eval(x), &basis, a.nmax, quad_order)?;
    let mut text = String::from("n,a_n\n");
    for (n, v) in coeffs.iter().enumerate() {
        writeln!(text, "{n},{}", fmt(*v)).unwrap();
    }
    emit(out, &text)?;
    let tail = tail_mass(&coeffs);
    if tail > TAIL_WARNING {
        let _ = writeln!(
            err,
            "{}",
            json!({"warning": "tail_mass", "tail_mass": tail, "threshold": TAIL_WARNING})
        );
    }
    Ok(EXIT_OK)
}

fn default_seed() -> CliResult<u64> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| {
            CliError::validation(format!("{SEED_ENV}=`{s}` is not an unsigned integer"))
        }),
        Err(_) => Ok(0),
    }
}

fn cmd_certify(a: &CertifyArgs, out: &mut dyn Write) -> CliResult<i32> {
    let quad_order = quad_order_for(&a.function);
    let (basis, function) = load_function(&a.function, quad_order)?;
    let seed = match a.seed {
        Some(s) => s,
        None => default_seed()?,
    };
    let opts = CertifyOptions {
        n_max: a.function.nmax,
        quad_order: Some(quad_order),
        coeff_tol: a.coeff_tol,
        eig_tol: a.eig_tol,
        gram_trials: a.gram_trials,
        gram_points: a.gram_points,
        seed,
    };
    let cert = certify(|x| function.eval(x), &basis, &opts)?;
    let mut text = serde_json::to_string_pretty(&cert).expect("certificate serializes");
    text.push('\n');
    emit(out, &text)?;
    Ok(match cert.verdict {
        Verdict::Pd => EXIT_OK,
        Verdict::NotPd => EXIT_NOT_PD,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn cmd_separable(a: &SeparableArgs, out: &mut dyn Write) -> CliResult<i32> {
    if !(a.tol > 0.0) {
        return Err(CliError::validation("--tol must be positive"));
    }
    let value = match load_kernel(&a.spec)? {
        AnyKernel::Sphere(_) => {
            return Err(CliError::validation(
                "separability applies to sphere_time and product_spheres kernels",
            ))
        }
        AnyKernel::SphereTime(k) => match k.common_charfn(a.tol) {
            Some(phi) => json!({
                "kind": "sphere_time",
                "separable": true,
                "charfn": CharFnFile::from_spec(&phi),
                "spatial_coeffs": k.terms().iter().map(|t| t.a).collect::<Vec<_>>(),
            }),
            None if k.is_separable(a.tol) => json!({"kind": "sphere_time", "separable": true}),
            None => {
                let observable: Vec<usize> = (0..k.terms().len())
                    .filter(|&i| k.terms()[i].a > a.tol)
                    .collect();
                let first = observable[0];
                let other = observable
                    .iter()
                    .copied()
                    .find(|&i| !k.terms()[i].phi.approx_eq(&k.terms()[first].phi, a.tol))
                    .expect("non-separable kernels have two distinct factors");
                json!({
                    "kind": "sphere_time",
                    "separable": false,
                    "witness": {
                        "terms": [first, other],
                        "charfns": [
                            CharFnFile::from_spec(&k.terms()[first].phi),
                            CharFnFile::from_spec(&k.terms()[other].phi),
                        ],
                    },
                })
            }
        },
        AnyKernel::ProductSpheres(k) => match k.separability_test(a.tol)? {
            Separability::Separable {
                b,
                c,
                reconstruction_error,
            } => json!({
                "kind": "product_spheres",
                "separable": true,
                "b": b,
                "c": c,
                "reconstruction_error": reconstruction_error,
            }),
            Separability::NonSeparable { witness } => json!({
                "kind": "product_spheres",
                "separable": false,
                "witness": {
                    "rows": [witness.rows.0, witness.rows.1],
                    "cols": [witness.cols.0, witness.cols.1],
                    "minor": witness.value,
                },
            }),
        },
    };
    let mut text = serde_json::to_string_pretty(&value).expect("verdict serializes");
    text.push('\n');
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn read_rows(path: &Path) -> crate::Result<Vec<Vec<f64>>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parsed: Option<Vec<f64>> = line.split(',').map(|c| c.trim().parse().ok()).collect();
        match parsed {
            Some(v) => rows.push(v),
            None if lineno == 0 => continue,
            None => {
                return Err(Error::Table(format!(
                    "line {}: non-numeric entry",
                    lineno + 1
                )))
            }
        }
    }
    Ok(rows)
}

fn sphere_from_rows(d: u32, rows: Vec<Vec<f64>>) -> crate::Result<SpherePointSet> {
    for (index, r) in rows.iter().enumerate() {
        let norm = r.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !((norm - 1.0).abs() <= POINT_FILE_TOL) {
            return Err(Error::NotUnitVector { index, norm });
        }
    }
    SpherePointSet::normalized(d, rows)
}

fn load_points(kernel: &AnyKernel, path: &Path) -> crate::Result<AnyPoints> {
    let rows = read_rows(path)?;
    if rows.is_empty() {
        return Err(Error::Table("no points".into()));
    }
    let width = |expected: usize| -> crate::Result<()> {
        match rows.iter().find(|r| r.len() != expected) {
            Some(r) => Err(Error::DimensionMismatch {
                expected,
                found: r.len(),
            }),
            None => Ok(()),
        }
    };
    match kernel {
        AnyKernel::Sphere(k) => {
            let d = k.basis().dimension();
            width(d as usize + 1)?;
            Ok(AnyPoints::Sphere(sphere_from_rows(d, rows)?))
        }
        AnyKernel::SphereTime(k) => {
            let d = k.basis().dimension();
            width(d as usize + 2)?;
            let times = rows.iter().map(|r| r[d as usize + 1]).collect();
            let coords = rows.into_iter().map(|mut r| {
                r.pop();
                r
            });
            let sphere = sphere_from_rows(d, coords.collect())?;
            Ok(AnyPoints::SphereTime(SpaceTimePointSet::new(
                sphere, times,
            )?))
        }
        AnyKernel::ProductSpheres(k) => {
            let (b1, b2) = k.bases();
            let n1 = b1.dimension() as usize + 1;
            width(n1 + b2.dimension() as usize + 1)?;
            let first = rows.iter().map(|r| r[..n1].to_vec()).collect();
            let second = rows.iter().map(|r| r[n1..].to_vec()).collect();
            Ok(AnyPoints::ProductSpheres(ProductPointSet::new(
                sphere_from_rows(b1.dimension(), first)?,
                sphere_from_rows(b2.dimension(), second)?,
            )?))
        }
    }
}

/// Uniform random sites for a kernel's geometry; times uniform on `[0, t_max]`.
pub fn random_points(
    kernel: &AnyKernel,
    n: usize,
    seed: u64,
    t_max: f64,
) -> crate::Result<AnyPoints> {
    Ok(match kernel {
        AnyKernel::Sphere(k) => AnyPoints::Sphere(fields::uniform_sphere_points(
            k.basis().dimension(),
            n,
            seed,
        )?),
        AnyKernel::SphereTime(k) => AnyPoints::SphereTime(SpaceTimePointSet::new(
            fields::uniform_sphere_points(k.basis().dimension(), n, seed)?,
            fields::uniform_times(n, t_max, seed),
        )?),
        AnyKernel::ProductSpheres(k) => {
            let (b1, b2) = k.bases();
            AnyPoints::ProductSpheres(ProductPointSet::new(
                fields::uniform_sphere_points(b1.dimension(), n, seed)?,
                fields::uniform_sphere_points(b2.dimension(), n, fields::derive_seed(seed, 1))?,
            )?)
        }
    })
}

fn point_labels(points: &AnyPoints) -> Vec<String> {
    let coords = |p: &[f64]| p.iter().map(|v| fmt(*v)).collect::<Vec<_>>().join(" ");
    match points {
        AnyPoints::Sphere(s) => s.points().iter().map(|p| coords(p)).collect(),
        AnyPoints::SphereTime(s) => s
            .sphere()
            .points()
            .iter()
            .zip(s.times())
            .map(|(p, t)| format!("{} t={}", coords(p), fmt(*t)))
            .collect(),
        AnyPoints::ProductSpheres(s) => s
            .first()
            .points()
            .iter()
            .zip(s.second().points())
            .map(|(p, q)| format!("{} | {}", coords(p), coords(q)))
            .collect(),
    }
}

fn cmd_simulate(a: &SimulateArgs) -> CliResult<i32> {
    let kernel = load_kernel(&a.spec)?;
    if a.samples == 0 {
        return Err(CliError::validation("--samples must be at least 1"));
    }
    let seed = match a.seed {
        Some(s) => s,
        None => default_seed()?,
    };
    let points = match (&a.points, a.random) {
        (Some(path), _) => load_points(&kernel, path)?,
        (None, Some(n)) if n > 0 => random_points(&kernel, n, seed, a.t_max)?,
        _ => {
            return Err(CliError::validation(
                "--points or --random n (n >= 1) is required",
            ))
        }
    };
    let sample = match a.method {
        Method::Factorized => kernel.sample_factorized(&points, a.samples, seed, a.jitter)?,
        Method::Spectral => {
            let (AnyKernel::Sphere(k), AnyPoints::Sphere(p)) = (&kernel, &points) else {
                return Err(Error::Unsupported(format!(
                    "spectral sampling supports sphere kernels on S^2 only, not {}",
                    kernel.kind()
                ))
                .into());
            };
            let cap = a.degree_cap.unwrap_or(k.truncation());
            fields::sample_spectral_s2(k, p, a.samples, seed, cap)?
        }
    };

    let mut text = point_labels(&points).join(",");
    text.push('\n');
    for r in 0..sample.n_samples() {
        let row: Vec<String> = sample.values.row(r).iter().map(|v| fmt(*v)).collect();
        text.push_str(&row.join(","));
        text.push('\n');
    }
    write_atomically(&a.out, text.as_bytes())?;
    Ok(EXIT_OK)
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed run leaves no partial output.
pub fn write_atomically(path: &Path, bytes: &[u8]) -> crate::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}
