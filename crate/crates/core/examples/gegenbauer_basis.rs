// Normalized Gegenbauer polynomials and their Gauss quadrature.

use isokernel::gegenbauer::GegenbauerBasis;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // S^2 gives lambda = 1/2, the Legendre polynomials.
    let basis = GegenbauerBasis::for_sphere(2)?;
    let values = basis.eval_sequence(4, 0.3)?;
    println!("P~_0..P~_4 at x = 0.3 on S^2: {values:?}");
    assert!((values[2] - (1.5 * 0.09 - 0.5)).abs() < 1e-15);

    for d in [1, 2, 4] {
        let b = GegenbauerBasis::for_sphere(d)?;
        assert_eq!(b.eval(7, 1.0)?, 1.0);
        println!(
            "S^{d}: lambda = {}, |P~_3|^2 = {:.6e}",
            b.lambda(),
            b.norm_squared(3)
        );
    }

    // A 20-node rule is exact for degree 39, enough for <P~_m, P~_n> with m + n <= 39.
    let basis = GegenbauerBasis::from_lambda(2.5)?;
    let rule = basis.quadrature(20)?;
    let mut worst: f64 = 0.0;
    for m in 0..=15 {
        for n in 0..=15 {
            let ip = rule.integrate(|x| basis.eval(m, x).unwrap() * basis.eval(n, x).unwrap());
            let expected = if m == n { basis.norm_squared(n) } else { 0.0 };
            worst = worst.max((ip - expected).abs());
        }
    }
    println!("lambda = 2.5, 20 nodes: max Gram error over degrees <= 15 is {worst:.2e}");
    assert!(worst < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
