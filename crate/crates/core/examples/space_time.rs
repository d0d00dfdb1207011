// Kernels on the sphere times the real line.

use isokernel::fields::{self, SpaceTimePointSet};
use isokernel::gegenbauer::GegenbauerBasis;
use isokernel::schoenberg::SchoenbergSequence;
use isokernel::spacetime::{CharFnSpec, SpaceTimeKernel, SpaceTimeTerm};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let basis = GegenbauerBasis::for_sphere(2)?;

    // Each degree gets its own temporal decay: higher degrees decorrelate faster.
    let terms = vec![
        SpaceTimeTerm {
            a: 0.5,
            phi: CharFnSpec::gaussian(0.5)?,
        },
        SpaceTimeTerm {
            a: 0.3,
            phi: CharFnSpec::exponential(1.0)?,
        },
        SpaceTimeTerm {
            a: 0.2,
            phi: CharFnSpec::stable(2.0, 1.5)?,
        },
    ];
    let k = SpaceTimeKernel::new(terms, basis, false)?;
    assert!(!k.is_separable(1e-12));

    for t in [0.0, 0.5, 1.0, 2.0] {
        println!("C(x = 0.5, t = {t}) = {:.6}", k.eval(0.5, t)?);
    }
    let spatial = k.spatial();
    assert!((k.eval(0.5, 0.0)? - spatial.eval(0.5)?).abs() < 1e-15);

    let points = SpaceTimePointSet::new(
        fields::uniform_sphere_points(2, 30, 3)?,
        fields::uniform_times(30, 5.0, 3),
    )?;
    let g = fields::gram(&k, &points)?;
    println!(
        "30-site Gram matrix: min eigenvalue {:.3e}",
        g.min_eigenvalue()
    );

    let spatial = SchoenbergSequence::new(vec![0.4, 0.6], basis, false)?;
    let sep = SpaceTimeKernel::separable(&spatial, CharFnSpec::triangle_sinc(2.0)?)?;
    println!(
        "separable: {}, common factor {:?}",
        sep.is_separable(1e-12),
        sep.common_charfn(1e-12)
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
