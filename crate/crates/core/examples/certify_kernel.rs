// Decide whether a function of the angle is positive definite on a sphere.

use isokernel::gegenbauer::GegenbauerBasis;
use isokernel::schoenberg::{certify, CertifyOptions, Verdict};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let basis = GegenbauerBasis::for_sphere(2)?;
    let opts = CertifyOptions {
        n_max: 20,
        seed: 11,
        ..CertifyOptions::default()
    };

    let exp_kernel = certify(|x: f64| (x - 1.0).exp(), &basis, &opts)?;
    println!("exp(x - 1): {:?}", exp_kernel.verdict);
    assert_eq!(exp_kernel.verdict, Verdict::Pd);

    // 0.6 + 0.4 P_2 - 0.1 P_3 has a negative degree-3 coefficient.
    let bad = |x: f64| 0.6 + 0.4 * (1.5 * x * x - 0.5) - 0.1 * (2.5 * x * x * x - 1.5 * x);
    let cert = certify(bad, &basis, &opts)?;
    println!("{}", serde_json::to_string_pretty(&cert)?);
    assert_eq!(cert.verdict, Verdict::NotPd);

    // cos(4 theta) is positive definite on the circle but not on S^2.
    let circle = |x: f64| (4.0 * x.clamp(-1.0, 1.0).acos()).cos();
    let on_circle = certify(circle, &GegenbauerBasis::for_sphere(1)?, &opts)?;
    let on_sphere = certify(circle, &basis, &opts)?;
    println!(
        "cos(4 theta): S^1 {:?}, S^2 {:?}",
        on_circle.verdict, on_sphere.verdict
    );
    assert_eq!(on_circle.verdict, Verdict::Pd);
    assert_eq!(on_sphere.verdict, Verdict::NotPd);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
