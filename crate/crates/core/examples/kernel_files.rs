// JSON kernel specs and the command-line entry point, driven in-process.

use isokernel::cli;
use isokernel::KernelSpecFile;

const SPEC: &str = r#"{
  "kind": "sphere_time",
  "d": 2,
  "terms": [
    {"a": 0.6, "charfn": {"family": "gaussian", "params": {"sigma": 1.0}}},
    {"a": 0.4, "charfn": {"family": "gaussian", "params": {"sigma": 1.0}}}
  ]
}"#;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = KernelSpecFile::parse(SPEC)?;
    let kernel = spec.to_kernel()?;
    println!("{} kernel, id {}", kernel.kind(), kernel.kernel_id());

    let dir = tempfile::tempdir()?;
    let path = dir.path().join("kernel.json");
    std::fs::write(&path, spec.to_json())?;
    let path = path.to_str().ok_or("non-UTF-8 temp path")?;

    for args in [
        vec!["isokernel", "eval", path, "--x", "0.5", "--t", "1"],
        vec!["isokernel", "separable", path],
        vec![
            "isokernel",
            "certify",
            "--lambda",
            "0.5",
            "--nmax",
            "8",
            "--expr",
            "negx",
        ],
    ] {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cli::run(&args, &mut out, &mut err);
        println!("$ {}  (exit {code})", args[1..].join(" "));
        print!("{}", String::from_utf8_lossy(&out));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
