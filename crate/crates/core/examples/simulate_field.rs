// Seeded Gaussian field samples and their empirical covariance.

use isokernel::fields::{self, SpherePointSet};
use isokernel::gegenbauer::GegenbauerBasis;
use isokernel::schoenberg::SchoenbergSequence;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let basis = GegenbauerBasis::for_sphere(2)?;
    let k = SchoenbergSequence::new(vec![0.1, 0.5, 0.4], basis, false)?;
    let points = SpherePointSet::new(
        2,
        vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.6, 0.8, 0.0],
            vec![0.0, 0.0, 1.0],
        ],
    )?;
    let g = fields::gram(&k, &points)?;

    let n = 4000;
    let exact = fields::sample_factorized(&k, &points, n, 42, 0.0)?;
    let again = fields::sample_factorized(&k, &points, n, 42, 0.0)?;
    assert_eq!(exact.values, again.values);

    let spectral = fields::sample_spectral_s2(&k, &points, n, 42, k.truncation())?;
    let cov_f = fields::empirical_covariance(&exact)?;
    let cov_s = fields::empirical_covariance(&spectral)?;
    println!("  i j    kernel  factorized  spectral");
    for i in 0..points.len() {
        for j in i..points.len() {
            println!(
                "  {i} {j} {:>9.4} {:>11.4} {:>9.4}",
                g.get(i, j),
                cov_f.get(i, j),
                cov_s.get(i, j)
            );
        }
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
