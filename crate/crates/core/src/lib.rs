//! Isotropic positive definite kernels on spheres, on sphere × line, and on
//! products of two spheres.
//!
//! On `S^d` every continuous isotropic covariance is, up to scale, a convex
//! combination of normalized Gegenbauer polynomials of index `λ = (d-1)/2`
//! evaluated at the cosine of the angle between the two points. This crate
//! turns that representation into working tools:
//!
//! | module | what it does |
//! |--------|--------------|
//! | [`gegenbauer`] | normalized polynomials, norms, Gauss-Gegenbauer rules |
//! | [`schoenberg`] | kernel synthesis, coefficient recovery, PD certification |
//! | [`spacetime`] | `S^d × R` kernels `Σ a_n P̃_n(x) φ_n(t)` and separability |
//! | [`product_spheres`] | `S^{d1} × S^{d2}` kernels `Σ a_{mn} P̃_m(x1) P̃_n(x2)` and rank-one tests |
//! | [`fields`] | point sets, Gram matrices, eigenvalue oracle, Gaussian field samplers |
//! | [`kernel_spec`] | JSON kernel specification files |
//! | [`cli`] | the `isokernel` command |
//!
//! ```
//! use isokernel::gegenbauer::GegenbauerBasis;
//! use isokernel::schoenberg::{recover_coefficients, SchoenbergSequence};
//!
//! let basis = GegenbauerBasis::for_sphere(2).unwrap();
//! let k = SchoenbergSequence::new(vec![0.5, 0.3, 0.2], basis, false).unwrap();
//! assert_eq!(k.eval(1.0).unwrap(), 1.0);
//!
//! let a = recover_coefficients(|x| k.eval(x).unwrap(), &basis, 4, 8).unwrap();
//! assert!((a[2] - 0.2).abs() < 1e-12);
//! ```
//!
//! The runnable programs under `examples/` walk through each capability.

// `!(a <= b)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fields;
pub mod gegenbauer;
pub mod interp;
pub mod kernel_spec;
pub mod product_spheres;
pub mod schoenberg;
pub mod spacetime;

pub use error::{Error, Result};
pub use fields::{CovarianceKernel, GramMatrix};
pub use gegenbauer::GegenbauerBasis;
pub use kernel_spec::{AnyKernel, AnyPoints, KernelSpecFile};
pub use product_spheres::ProductSphereKernel;
pub use schoenberg::SchoenbergSequence;
pub use spacetime::{CharFnSpec, SpaceTimeKernel};
