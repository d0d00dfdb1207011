//! Point sets, Gram matrices, the eigenvalue PSD oracle and Gaussian field
//! simulation.
//!
//! Two samplers are provided. [`sample_factorized`] works for any
//! [`CovarianceKernel`] on any finite point set by factoring the Gram matrix;
//! [`sample_spectral_s2`] draws the spherical-harmonic expansion of a kernel on
//! the 2-sphere and serves as an independent check on the first.

mod geometry;
mod gram;
mod harmonics;
pub mod rng;
mod sampling;

pub(crate) use geometry::geodesic_cosine_unchecked;
pub use geometry::{
    geodesic_cosine, uniform_sphere_points, uniform_times, ProductPointSet, SpaceTimePointSet,
    SpherePointSet, UNIT_TOL,
};
pub use gram::{gram, min_eigenvalue, schur_product, CovarianceKernel, GramMatrix, SYMMETRY_TOL};
pub use harmonics::{harmonic_count_s2, harmonic_dimension, real_spherical_harmonics};
pub use rng::derive_seed;
pub use sampling::{
    covariance_factor, default_jitter, empirical_covariance, sample_factorized, sample_gram,
    sample_spectral_s2, FieldSample,
};
