use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand_distr::{Distribution, StandardNormal};

use super::gram::{gram, CovarianceKernel, GramMatrix};
use super::harmonics::{fill_real_spherical_harmonics, harmonic_count_s2};
use super::rng::{substream, Purpose};
use super::SpherePointSet;
use crate::error::{Error, Result};
use crate::schoenberg::SchoenbergSequence;

/// Realizations of a Gaussian field on a fixed point set, one per row.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSample {
    pub values: DMatrix<f64>,
    pub seed: u64,
    pub kernel_id: String,
}

impl FieldSample {
    pub fn n_samples(&self) -> usize {
        self.values.nrows()
    }

    pub fn n_points(&self) -> usize {
        self.values.ncols()
    }

    pub fn realization(&self, r: usize) -> Vec<f64> {
        self.values.row(r).iter().copied().collect()
    }
}

/// Jitter used when none is requested: `1e-10 · trace(G) / dim`.
pub fn default_jitter(g: &GramMatrix) -> f64 {
    if g.dim() == 0 {
        0.0
    } else {
        1e-10 * g.trace() / g.dim() as f64
    }
}

/// A square factor `L` with `L Lᵀ = G + jitter·I`.
///
/// Tries a semidefinite Cholesky first. If that fails it falls back to the eigen-decomposition with eigenvalues at rounding level
/// or below set to zero. Negative eigenvalues beyond
/// `1e-8 · ‖G‖ + jitter` are reported as a factorization error.
pub fn covariance_factor(g: &GramMatrix, jitter: f64) -> Result<DMatrix<f64>> {
    if !(jitter >= 0.0 && jitter.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "jitter",
            value: jitter,
            reason: "jitter must be finite and nonnegative",
        });
    }
    let n = g.dim();
    if n == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let mut m = g.entries().clone();
    for i in 0..n {
        m[(i, i)] += jitter;
    }
    let max_diag = (0..n).map(|i| m[(i, i)].abs()).fold(0.0, f64::max);
    let rounding = 16.0 * n as f64 * f64::EPSILON * max_diag.max(f64::MIN_POSITIVE);

    if let Some(l) = semidefinite_cholesky(&m, rounding) {
        return Ok(l);
    }

    let eig = m.symmetric_eigen();
    let lo = eig.eigenvalues.min();
    let hi = eig.eigenvalues.amax();
    if lo < -(1e-8 * hi + jitter) {
        return Err(Error::Factorization { min_eigenvalue: lo });
    }
    let cutoff = 16.0 * n as f64 * f64::EPSILON * hi;
    let roots = eig
        .eigenvalues
        .map(|v| if v > cutoff { v.sqrt() } else { 0.0 });
    Ok(eig.eigenvectors * DMatrix::from_diagonal(&roots))
}

/// Lower-triangular `L` with `L Lᵀ = m`. A pivot at rounding level whose
/// residual column also vanishes gives a zero column, so exactly low-rank
/// matrices such as all-ones factor without error. Anything else that is
/// not positive gives `None`.
fn semidefinite_cholesky(m: &DMatrix<f64>, rounding: f64) -> Option<DMatrix<f64>> {
    let n = m.nrows();
    let max_diag = (0..n).map(|i| m[(i, i)].abs()).fold(0.0, f64::max);
    let off_tol = (rounding * max_diag).sqrt();
    let mut l = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        let row_j = l.row(j).columns(0, j).into_owned();
        let pivot = m[(j, j)] - row_j.norm_squared();
        let residual: Vec<f64> = (j + 1..n)
            .map(|i| m[(i, j)] - l.row(i).columns(0, j).dot(&row_j))
            .collect();
        if pivot > rounding {
            let root = pivot.sqrt();
            l[(j, j)] = root;
            for (k, r) in residual.into_iter().enumerate() {
                l[(j + 1 + k, j)] = r / root;
            }
        } else if pivot < -rounding || residual.iter().any(|r| r.abs() > off_tol) {
            return None;
        }
    }
    Some(l)
}

/// Exact Gaussian sampling on a finite point set through a factor of the
/// Gram matrix. Realization `r` is `L z_r` with `z_r` drawn from substream
/// `r` of `seed`, so the output is independent of evaluation order.
pub fn sample_factorized<K: CovarianceKernel>(
    kernel: &K,
    points: &K::Points,
    n_samples: usize,
    seed: u64,
    jitter: f64,
) -> Result<FieldSample> {
    let g = gram(kernel, points)?;
    sample_gram(&g, n_samples, seed, jitter)
}

/// [`sample_factorized`] for a precomputed Gram matrix.
pub fn sample_gram(
    g: &GramMatrix,
    n_samples: usize,
    seed: u64,
    jitter: f64,
) -> Result<FieldSample> {
    if n_samples == 0 {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let l = covariance_factor(g, jitter)?;
    let n = g.dim();
    let mut values = DMatrix::zeros(n_samples, n);
    let mut z = DVector::zeros(n);
    for r in 0..n_samples {
        let mut rng = substream(seed, Purpose::Factorized, r as u64);
        z.iter_mut()
            .for_each(|v| *v = StandardNormal.sample(&mut rng));
        let row = &l * &z;
        values.row_mut(r).copy_from(&row.transpose());
    }
    Ok(FieldSample {
        values,
        seed,
        kernel_id: g.provenance().to_string(),
    })
}

/// Gaussian field on `S^2` from the harmonic expansion
/// `X(p) = Σ_n sqrt(4π c a_n / (2n+1)) Σ_m z_{n,m} Y_{n,m}(p)`, whose
/// covariance is `c Σ a_n P_n(<p, q>)`. Realization `r` draws the
/// `(degree_cap + 1)²` coefficients `z_{n,m}` in index order from substream
/// `r` of `seed`.
pub fn sample_spectral_s2(
    seq: &SchoenbergSequence,
    points: &SpherePointSet,
    n_samples: usize,
    seed: u64,
    degree_cap: usize,
) -> Result<FieldSample> {
    if seq.basis().dimension() != 2 {
        return Err(Error::Unsupported(format!(
            "spectral sampling needs the 2-sphere (lambda = 1/2), got S^{}",
            seq.basis().dimension()
        )));
    }
    if points.dimension() != 2 {
        return Err(Error::GeometryMismatch(format!(
            "kernel on S^2, points on S^{}",
            points.dimension()
        )));
    }
    if degree_cap < seq.truncation() {
        return Err(Error::DegreeCapTooSmall {
            cap: degree_cap,
            needed: seq.truncation(),
        });
    }
    if n_samples == 0 {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let n_harm = harmonic_count_s2(degree_cap);
    let n_points = points.len();

    // Design matrix with the spectral amplitudes folded in.
    let mut design = DMatrix::zeros(n_points, n_harm);
    let mut buf = vec![0.0; n_harm];
    let amplitudes: Vec<f64> = (0..=degree_cap)
        .map(|n| {
            let a = seq.coeffs().get(n).copied().unwrap_or(0.0);
            (4.0 * PI * seq.scale() * a / (2 * n + 1) as f64).sqrt()
        })
        .collect();
    for i in 0..n_points {
        fill_real_spherical_harmonics(degree_cap, points.point(i), &mut buf);
        for (n, &amp) in amplitudes.iter().enumerate() {
            for k in n * n..(n + 1) * (n + 1) {
                design[(i, k)] = amp * buf[k];
            }
        }
    }

    let mut values = DMatrix::zeros(n_samples, n_points);
    let mut z = DVector::zeros(n_harm);
    for r in 0..n_samples {
        let mut rng = substream(seed, Purpose::Spectral, r as u64);
        z.iter_mut()
            .for_each(|v| *v = StandardNormal.sample(&mut rng));
        let row = &design * &z;
        values.row_mut(r).copy_from(&row.transpose());
    }
    Ok(FieldSample {
        values,
        seed,
        kernel_id: format!("spectral S^2 expansion to degree {degree_cap}"),
    })
}

/// Unbiased sample covariance across realizations (divisor `n - 1`).
pub fn empirical_covariance(s: &FieldSample) -> Result<GramMatrix> {
    let n = s.n_samples();
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    let p = s.n_points();
    let mean = s.values.row_mean();
    let mut centred = s.values.clone();
    for mut row in centred.row_iter_mut() {
        row -= &mean;
    }
    let mut cov = centred.transpose() * &centred / (n as f64 - 1.0);
    // Enforce exact symmetry lost to summation order.
    for i in 0..p {
        for j in (i + 1)..p {
            let v = 0.5 * (cov[(i, j)] + cov[(j, i)]);
            cov[(i, j)] = v;
            cov[(j, i)] = v;
        }
    }
    GramMatrix::new(
        cov,
        format!("empirical covariance of {n} realizations ({})", s.kernel_id),
    )
}
