// Kernels on a product of two spheres and the rank-one separability test.

use isokernel::fields::{self, ProductPointSet};
use isokernel::gegenbauer::GegenbauerBasis;
use isokernel::product_spheres::{ProductSphereKernel, Separability};
use isokernel::schoenberg::SchoenbergSequence;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let b1 = GegenbauerBasis::for_sphere(2)?;
    let b2 = GegenbauerBasis::for_sphere(1)?;

    let s1 = SchoenbergSequence::new(vec![0.2, 0.8], b1, false)?;
    let s2 = SchoenbergSequence::new(vec![0.5, 0.25, 0.25], b2, false)?;
    let product = ProductSphereKernel::from_product(&s1, &s2)?;
    match product.separability_test(1e-9)? {
        Separability::Separable {
            b,
            c,
            reconstruction_error,
        } => {
            println!(
                "product kernel factors as b = {b:?}, c = {c:?} (error {reconstruction_error:e})"
            )
        }
        Separability::NonSeparable { .. } => unreachable!(),
    }

    let mixed = ProductSphereKernel::new(
        vec![vec![0.4, 0.0, 0.1], vec![0.0, 0.5, 0.0]],
        b1,
        b2,
        false,
    )?;
    if let Separability::NonSeparable { witness } = mixed.separability_test(1e-9)? {
        println!(
            "mixed kernel: minor over rows {:?}, cols {:?} is {}",
            witness.rows, witness.cols, witness.value
        );
    }
    println!("C(0.3, -0.4) = {:.6}", mixed.eval(0.3, -0.4)?);

    let points = ProductPointSet::new(
        fields::uniform_sphere_points(2, 25, 5)?,
        fields::uniform_sphere_points(1, 25, 6)?,
    )?;
    let g = fields::gram(&mixed, &points)?;
    println!(
        "25-site Gram matrix: min eigenvalue {:.3e}",
        g.min_eigenvalue()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
