//! Shared driver for the `isokernel` binary and its golden files.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use isokernel::gegenbauer::GegenbauerBasis;
use isokernel::schoenberg::multiquadric_sequence;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_NOT_PD: i32 = 4;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

/// Runs the binary in the golden directory with `ISOKERNEL_SEED` cleared.
pub fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isokernel"))
        .args(args)
        .current_dir(golden_dir())
        .env_remove("ISOKERNEL_SEED")
        .output()
        .expect("binary runs")
}

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
    /// `error` field of the JSON line on stderr, for failing invocations.
    pub error: Option<&'static str>,
}

/// Every documented command example plus the error contract. Cases with
/// `exit` 0 or 4 have stdout golden files named `<name>.out`.
pub const CASES: &[Case] = &[
    Case {
        name: "eval_sphere_constant",
        args: &["eval", "sphere_constant.json", "--x", "0.3"],
        exit: 0,
        error: None,
    },
    Case {
        name: "eval_sphere_time_gaussian",
        args: &["eval", "sphere_time_gaussian.json", "--x", "1", "--t", "1"],
        exit: 0,
        error: None,
    },
    Case {
        name: "eval_product_a11",
        args: &["eval", "product_a11.json", "--x1", "0.3", "--x2", "-0.4"],
        exit: 0,
        error: None,
    },
    Case {
        name: "eval_sphere_grid",
        args: &["eval", "sphere_smooth.json", "--grid", "5"],
        exit: 0,
        error: None,
    },
    Case {
        name: "coeffs_legendre3",
        args: &[
            "coeffs",
            "--lambda",
            "0.5",
            "--nmax",
            "10",
            "--expr",
            "legendre3",
        ],
        exit: 0,
        error: None,
    },
    Case {
        name: "coeffs_xsquared",
        args: &[
            "coeffs", "--lambda", "0.5", "--nmax", "6", "--expr", "xsquared",
        ],
        exit: 0,
        error: None,
    },
    Case {
        name: "certify_x",
        args: &["certify", "--lambda", "0.5", "--nmax", "10", "--expr", "x"],
        exit: 0,
        error: None,
    },
    Case {
        name: "certify_negx",
        args: &[
            "certify", "--lambda", "0.5", "--nmax", "10", "--expr", "negx",
        ],
        exit: 4,
        error: None,
    },
    Case {
        name: "certify_xsquared",
        args: &[
            "certify", "--lambda", "0.5", "--nmax", "10", "--expr", "xsquared",
        ],
        exit: 0,
        error: None,
    },
    Case {
        name: "separable_outer",
        args: &["separable", "product_outer.json"],
        exit: 0,
        error: None,
    },
    Case {
        name: "separable_identity",
        args: &["separable", "product_identity.json"],
        exit: 0,
        error: None,
    },
    Case {
        name: "separable_sphere_time_equal",
        args: &["separable", "sphere_time_equal.json"],
        exit: 0,
        error: None,
    },
    Case {
        name: "error_domain",
        args: &["eval", "sphere_constant.json", "--x", "2"],
        exit: 3,
        error: Some("domain_error"),
    },
    Case {
        name: "error_unknown_field",
        args: &["eval", "invalid_field.json", "--x", "0.5"],
        exit: 2,
        error: Some("validation_error"),
    },
    Case {
        name: "error_negative",
        args: &["eval", "invalid_negative.json", "--x", "0.5"],
        exit: 2,
        error: Some("validation_error"),
    },
    Case {
        name: "error_malformed_table",
        args: &[
            "coeffs",
            "--lambda",
            "0.5",
            "--nmax",
            "1",
            "--table",
            "malformed_table.csv",
        ],
        exit: 2,
        error: Some("validation_error"),
    },
    Case {
        name: "error_separable_sphere",
        args: &["separable", "sphere_constant.json"],
        exit: 2,
        error: Some("validation_error"),
    },
    Case {
        name: "error_missing_argument",
        args: &["eval"],
        exit: 2,
        error: Some("validation_error"),
    },
    Case {
        name: "error_missing_spec",
        args: &["eval", "no_such_file.json", "--x", "0"],
        exit: 2,
        error: Some("io_error"),
    },
];

fn tokens(s: &str) -> Vec<&str> {
    s.split(|c: char| c.is_whitespace() || ",:[]{}\"".contains(c))
        .filter(|t| !t.is_empty())
        .collect()
}

/// Token-wise comparison; numbers agree to `1e-12` relative, everything else
/// exactly.
pub fn compare_output(actual: &str, expected: &str) -> Result<(), String> {
    let (a, e) = (tokens(actual), tokens(expected));
    if a.len() != e.len() {
        return Err(format!("{} tokens, expected {}", a.len(), e.len()));
    }
    for (x, y) in a.iter().zip(&e) {
        match (x.parse::<f64>(), y.parse::<f64>()) {
            (Ok(u), Ok(v)) if (u - v).abs() <= 1e-12 * v.abs().max(1.0) => {}
            (Ok(_), Ok(_)) => return Err(format!("value {x}, expected {y}")),
            _ if x == y => {}
            _ => return Err(format!("token `{x}`, expected `{y}`")),
        }
    }
    Ok(())
}

pub fn check_case(case: &Case) -> Result<(), String> {
    let out = run_cli(case.args);
    let code = out.status.code().unwrap_or(-1);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let stderr = String::from_utf8_lossy(&out.stderr);
    if code != case.exit {
        return Err(format!(
            "exit {code}, expected {}; stderr {stderr}",
            case.exit
        ));
    }
    match case.error {
        Some(expected) => {
            if !stdout.is_empty() {
                return Err("failing command wrote to stdout".into());
            }
            let lines: Vec<&str> = stderr.lines().collect();
            if lines.len() != 1 {
                return Err(format!("stderr is {} lines, expected 1", lines.len()));
            }
            let v: serde_json::Value =
                serde_json::from_str(lines[0]).map_err(|e| format!("stderr not JSON: {e}"))?;
            if v["error"] != expected || !v["message"].is_string() {
                return Err(format!("stderr {}, expected error {expected}", lines[0]));
            }
        }
        None => {
            let path = golden_dir().join(format!("{}.out", case.name));
            let golden =
                std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            compare_output(&stdout, &golden)?;
        }
    }
    Ok(())
}

pub fn check_all_cases() -> Result<(), String> {
    for case in CASES {
        check_case(case).map_err(|e| format!("{}: {e}", case.name))?;
    }
    Ok(())
}

fn read_csv(path: &Path) -> Vec<Vec<f64>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

fn simulate_to(dir: &Path, name: &str, extra: &[&str]) -> Result<PathBuf, String> {
    let out = dir.join(name);
    let mut args = vec!["simulate"];
    args.extend_from_slice(extra);
    args.extend_from_slice(&["--out", out.to_str().unwrap()]);
    let res = run_cli(&args);
    if res.status.code() != Some(0) {
        return Err(format!(
            "simulate exited {:?}: {}",
            res.status.code(),
            String::from_utf8_lossy(&res.stderr)
        ));
    }
    Ok(out)
}

/// Constant kernel, three sites, seed 7: every row is constant, and the file
/// matches its golden copy.
pub fn check_simulate_constant() -> Result<(), String> {
    let dir = tempfile::tempdir().unwrap();
    let path = simulate_to(
        dir.path(),
        "constant.csv",
        &[
            "sphere_constant.json",
            "--random",
            "3",
            "--seed",
            "7",
            "--samples",
            "2",
        ],
    )?;
    let rows = read_csv(&path);
    if rows.len() != 2
        || rows
            .iter()
            .any(|r| r.len() != 3 || r.iter().any(|v| *v != r[0]))
    {
        return Err(format!("rows are not constant: {rows:?}"));
    }
    let text = std::fs::read_to_string(&path).unwrap();
    let golden = std::fs::read_to_string(golden_dir().join("simulate_constant.csv")).unwrap();
    compare_output(&text, &golden)
}

/// Two runs with the same flags give byte-identical files.
pub fn check_simulate_repeatable() -> Result<(), String> {
    let dir = tempfile::tempdir().unwrap();
    for (spec, method) in [
        ("sphere_smooth.json", "factorized"),
        ("sphere_smooth.json", "spectral"),
        ("sphere_time_equal.json", "factorized"),
        ("product_outer.json", "factorized"),
    ] {
        let flags = [
            spec,
            "--random",
            "12",
            "--seed",
            "99",
            "--samples",
            "50",
            "--method",
            method,
        ];
        let a = simulate_to(dir.path(), "a.csv", &flags)?;
        let first = std::fs::read(&a).unwrap();
        let b = simulate_to(dir.path(), "b.csv", &flags)?;
        if first != std::fs::read(&b).unwrap() {
            return Err(format!("{spec} {method}: outputs differ"));
        }
    }
    Ok(())
}

/// `a_1 = 1` on S^2, sites at cosine 0.5, 10^4 realizations: the empirical
/// covariance is 0.5 within 0.04.
pub fn check_simulate_monte_carlo() -> Result<(), String> {
    let dir = tempfile::tempdir().unwrap();
    let path = simulate_to(
        dir.path(),
        "mc.csv",
        &[
            "sphere_legendre1.json",
            "--points",
            "two_points_cos_half.csv",
            "--seed",
            "2024",
            "--samples",
            "10000",
        ],
    )?;
    let rows = read_csv(&path);
    let cov = rows.iter().map(|r| r[0] * r[1]).sum::<f64>() / rows.len() as f64;
    if rows.len() != 10_000 || (cov - 0.5).abs() > 0.04 {
        return Err(format!("{} rows, covariance {cov}", rows.len()));
    }
    Ok(())
}

/// Spectral sampling on a sphere_time kernel exits 3 and leaves no file.
pub fn check_spectral_refusal() -> Result<(), String> {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.csv");
    let res = run_cli(&[
        "simulate",
        "sphere_time_gaussian.json",
        "--random",
        "4",
        "--samples",
        "2",
        "--method",
        "spectral",
        "--out",
        out.to_str().unwrap(),
    ]);
    let stderr = String::from_utf8_lossy(&res.stderr);
    if res.status.code() != Some(EXIT_DOMAIN) || !stderr.contains("unsupported_geometry") {
        return Err(format!("exit {:?}, stderr {stderr}", res.status.code()));
    }
    if out.exists() || std::fs::read_dir(dir.path()).unwrap().count() != 0 {
        return Err("output directory is not empty".into());
    }
    Ok(())
}

fn coeffs_from_table(table: &Path, lambda: &str, nmax: usize) -> Result<Vec<f64>, String> {
    let nmax = nmax.to_string();
    let res = run_cli(&[
        "coeffs",
        "--lambda",
        lambda,
        "--nmax",
        &nmax,
        "--table",
        table.to_str().unwrap(),
    ]);
    if res.status.code() != Some(0) {
        return Err(String::from_utf8_lossy(&res.stderr).into_owned());
    }
    Ok(String::from_utf8_lossy(&res.stdout)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect())
}

/// `eval --grid` output fed back to `coeffs --table` recovers the spec's
/// coefficients within 1e-6.
pub fn check_grid_round_trip() -> Result<(), String> {
    let res = run_cli(&["eval", "sphere_smooth.json", "--grid", "2001"]);
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("grid.csv");
    std::fs::write(&table, &res.stdout).unwrap();
    let got = coeffs_from_table(&table, "0.5", 12)?;
    let spec: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(golden_dir().join("sphere_smooth.json")).unwrap(),
    )
    .unwrap();
    let want: Vec<f64> = spec["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    for (n, a) in got.iter().enumerate() {
        let w = want.get(n).copied().unwrap_or(0.0);
        if (a - w).abs() > 1e-6 {
            return Err(format!("a_{n} = {a}, expected {w}"));
        }
    }
    Ok(())
}

/// A tabulated multiquadric (delta = 0.4, lambda = 1/2) matches the library's
/// multiquadric sequence within 1e-6.
pub fn check_multiquadric_table() -> Result<(), String> {
    let got = coeffs_from_table(&golden_dir().join("multiquadric_0.4.csv"), "0.5", 20)?;
    let basis = GegenbauerBasis::for_sphere(2).unwrap();
    let want = multiquadric_sequence(0.4, basis, 20).unwrap();
    for (n, (a, w)) in got.iter().zip(want.coeffs()).enumerate() {
        if (a - w).abs() > 1e-6 {
            return Err(format!("a_{n} = {a}, expected {w}"));
        }
    }
    Ok(())
}
