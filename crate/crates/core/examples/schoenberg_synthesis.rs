// Build a correlation function from coefficients and get the coefficients back.

use isokernel::gegenbauer::GegenbauerBasis;
use isokernel::schoenberg::{
    multiquadric_closed_form, multiquadric_sequence, recover_coefficients, SchoenbergSequence,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let basis = GegenbauerBasis::for_sphere(3)?;

    // Raw weights are normalized to sum 1; their total becomes the variance.
    let k = SchoenbergSequence::new(vec![2.0, 1.0, 0.0, 1.0], basis, true)?;
    println!("coefficients {:?}, variance {}", k.coeffs(), k.variance());
    for x in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        println!("  C({x:>4}) = {:.6}", k.eval(x)?);
    }

    let correlation = SchoenbergSequence::new(k.coeffs().to_vec(), basis, false)?;
    let back = recover_coefficients(|x| correlation.eval(x).unwrap(), &basis, 6, 16)?;
    println!("recovered: {back:.3?}");
    for (n, a) in back.iter().enumerate() {
        let expected = correlation.coeffs().get(n).copied().unwrap_or(0.0);
        assert!((a - expected).abs() < 1e-12);
    }

    // The multiquadric has geometric coefficients and a closed form.
    let delta = 0.5;
    let mq = multiquadric_sequence(delta, basis, 80)?;
    let x = 0.3;
    let closed = multiquadric_closed_form(delta, basis.lambda(), x);
    println!(
        "multiquadric delta = {delta}: series {:.15} closed form {closed:.15}",
        mq.eval(x)?
    );
    assert!((mq.eval(x)? - closed).abs() < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
