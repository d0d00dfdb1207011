use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Symmetry tolerance, relative to `max(1, max |a_ij|)`.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// A covariance kernel together with the geometry it lives on.
pub trait CovarianceKernel {
    type Points;

    /// Short human-readable identifier, recorded as Gram provenance.
    fn kernel_id(&self) -> String;

    fn num_points(points: &Self::Points) -> usize;

    fn describe_points(points: &Self::Points) -> String;

    /// Fails when the points do not live on the kernel's space.
    fn check_geometry(&self, points: &Self::Points) -> Result<()>;

    /// Covariance between sites `i` and `j`; geometry is already checked.
    fn covariance(&self, points: &Self::Points, i: usize, j: usize) -> f64;
}

/// Symmetric matrix of kernel values on a finite point set.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    entries: DMatrix<f64>,
    provenance: String,
}

impl GramMatrix {
    /// Wraps a square matrix, rejecting asymmetric input.
    pub fn new(entries: DMatrix<f64>, provenance: impl Into<String>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::DimensionMismatch {
                expected: entries.nrows(),
                found: entries.ncols(),
            });
        }
        let scale = entries.amax().max(1.0);
        let n = entries.nrows();
        for i in 0..n {
            for j in (i + 1)..n {
                let deviation = (entries[(i, j)] - entries[(j, i)]).abs();
                if !(deviation <= SYMMETRY_TOL * scale) {
                    return Err(Error::NotSymmetric {
                        row: i,
                        col: j,
                        deviation,
                    });
                }
            }
        }
        Ok(Self {
            entries,
            provenance: provenance.into(),
        })
    }

    pub fn from_rows(rows: &[Vec<f64>], provenance: impl Into<String>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]), provenance)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        if self.dim() == 0 {
            return Vec::new();
        }
        let mut ev: Vec<f64> = self
            .entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(0.0)
    }

    /// Spectral norm `max |λ_i|`.
    pub fn norm(&self) -> f64 {
        let ev = self.eigenvalues();
        match (ev.first(), ev.last()) {
            (Some(lo), Some(hi)) => lo.abs().max(hi.abs()),
            _ => 0.0,
        }
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace()
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.entries
    }
}

/// Gram matrix of `kernel` on `points`; upper triangle computed and mirrored.
pub fn gram<K: CovarianceKernel>(kernel: &K, points: &K::Points) -> Result<GramMatrix> {
    kernel.check_geometry(points)?;
    let n = K::num_points(points);
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = kernel.covariance(points, i, j);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    Ok(GramMatrix {
        entries: m,
        provenance: format!("{} on {}", kernel.kernel_id(), K::describe_points(points)),
    })
}

/// Smallest eigenvalue from a symmetric eigen-solver.
pub fn min_eigenvalue(m: &GramMatrix) -> f64 {
    m.min_eigenvalue()
}

/// Entrywise (Hadamard) product.
pub fn schur_product(a: &GramMatrix, b: &GramMatrix) -> Result<GramMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(GramMatrix {
        entries: a.entries.component_mul(&b.entries),
        provenance: format!("({}) o ({})", a.provenance, b.provenance),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(v: &[f64]) -> GramMatrix {
        GramMatrix::new(
            DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(v)),
            "diag",
        )
        .unwrap()
    }

    #[test]
    fn eigenvalue_examples() {
        assert!((min_eigenvalue(&diag(&[1.0, 1.0, 1.0])) - 1.0).abs() < 1e-14);
        let ones = GramMatrix::new(DMatrix::from_element(6, 6, 1.0), "ones").unwrap();
        assert!(min_eigenvalue(&ones).abs() < 1e-14);
        assert!((ones.norm() - 6.0).abs() < 1e-13);
        assert!((min_eigenvalue(&diag(&[1.0, -0.5])) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_asymmetric_and_ragged() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.4, 1.0]);
        assert!(matches!(
            GramMatrix::new(m, "x"),
            Err(Error::NotSymmetric { row: 0, col: 1, .. })
        ));
        assert!(GramMatrix::new(DMatrix::zeros(2, 3), "x").is_err());
        assert!(GramMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0]], "x").is_err());
    }

    #[test]
    fn schur_examples() {
        let p = schur_product(&diag(&[1.0, 2.0]), &diag(&[3.0, 4.0])).unwrap();
        assert_eq!(p.entries(), diag(&[3.0, 8.0]).entries());

        let a = GramMatrix::from_rows(&[vec![2.0, 0.3], vec![0.3, 1.0]], "a").unwrap();
        let ones = GramMatrix::new(DMatrix::from_element(2, 2, 1.0), "1").unwrap();
        assert_eq!(schur_product(&a, &ones).unwrap().entries(), a.entries());

        assert!(schur_product(&a, &diag(&[1.0, 1.0, 1.0])).is_err());
    }
}
