//! Kernels on `S^{d1} × S^{d2}` with a doubly indexed nonnegative expansion
//! `c · Σ_{m,n} a_{mn} P̃_m^{λ1}(x1) P̃_n^{λ2}(x2)`.
//!
//! The kernel is a product of a function of `x1` and a function of `x2`
//! exactly when the coefficient matrix has rank one, `a_{mn} = b_m c_n`.

use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};
use crate::fields::{self, CovarianceKernel, ProductPointSet};
use crate::gegenbauer::{fill_sequence, GegenbauerBasis, MAX_DEGREE};
use crate::schoenberg::{check_scale, dot, SchoenbergSequence, MASS_TOL};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductSphereKernel {
    coeff_matrix: Vec<Vec<f64>>,
    scale_c: f64,
    basis1: GegenbauerBasis,
    basis2: GegenbauerBasis,
    normalized: bool,
}

impl ProductSphereKernel {
    /// Validates the coefficient matrix; `normalize` behaves as in
    /// [`SchoenbergSequence::new`].
    pub fn new(
        matrix: Vec<Vec<f64>>,
        basis1: GegenbauerBasis,
        basis2: GegenbauerBasis,
        normalize: bool,
    ) -> Result<Self> {
        let total = validate_matrix(&matrix)?;
        let (coeff_matrix, scale_c, normalized) = if normalize {
            let m = matrix
                .into_iter()
                .map(|row| row.into_iter().map(|a| a / total).collect())
                .collect();
            (m, total, true)
        } else {
            (matrix, 1.0, (total - 1.0).abs() <= MASS_TOL)
        };
        Ok(Self {
            coeff_matrix,
            scale_c,
            basis1,
            basis2,
            normalized,
        })
    }

    /// Tensor product of two sphere kernels: `a_{mn} = a1_m · a2_n`, scale
    /// `c1 · c2`.
    pub fn from_product(first: &SchoenbergSequence, second: &SchoenbergSequence) -> Result<Self> {
        let matrix = first
            .coeffs()
            .iter()
            .map(|&a| second.coeffs().iter().map(|&b| a * b).collect())
            .collect();
        Self::new(matrix, *first.basis(), *second.basis(), false)?
            .with_scale(first.scale() * second.scale())
    }

    pub fn with_scale(mut self, scale_c: f64) -> Result<Self> {
        check_scale(scale_c)?;
        self.scale_c = scale_c;
        Ok(self)
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.coeff_matrix
    }

    pub fn scale(&self) -> f64 {
        self.scale_c
    }

    pub fn bases(&self) -> (&GegenbauerBasis, &GegenbauerBasis) {
        (&self.basis1, &self.basis2)
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// `(M, N)`: highest degrees in each factor.
    pub fn truncation(&self) -> (usize, usize) {
        (self.coeff_matrix.len() - 1, self.coeff_matrix[0].len() - 1)
    }

    pub fn eval(&self, x1: f64, x2: f64) -> Result<f64> {
        ps_kernel_eval(self, x1, x2)
    }

    fn eval_unchecked(&self, x1: f64, x2: f64, v1: &mut Vec<f64>, v2: &mut Vec<f64>) -> f64 {
        let (m, n) = self.truncation();
        fill_sequence(self.basis1.lambda(), x1, m, v1);
        fill_sequence(self.basis2.lambda(), x2, n, v2);
        let s: f64 = self
            .coeff_matrix
            .iter()
            .zip(v1.iter())
            .map(|(row, p)| p * dot(row, v2))
            .sum();
        self.scale_c * s
    }

    pub fn separability_test(&self, tol: f64) -> Result<Separability> {
        separability_test(self, tol)
    }
}

pub fn make_ps_kernel(
    matrix: Vec<Vec<f64>>,
    basis1: GegenbauerBasis,
    basis2: GegenbauerBasis,
    normalize: bool,
) -> Result<ProductSphereKernel> {
    ProductSphereKernel::new(matrix, basis1, basis2, normalize)
}

fn validate_matrix(matrix: &[Vec<f64>]) -> Result<f64> {
    let cols = matrix.first().map_or(0, Vec::len);
    if matrix.is_empty() || cols == 0 {
        return Err(Error::Empty("coefficient matrix"));
    }
    if matrix.len() > MAX_DEGREE + 1 || cols > MAX_DEGREE + 1 {
        return Err(Error::InvalidParameter {
            name: "matrix",
            value: matrix.len().max(cols) as f64,
            reason: "truncation degree above MAX_DEGREE",
        });
    }
    let mut total = 0.0;
    for (row, r) in matrix.iter().enumerate() {
        if r.len() != cols {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: r.len(),
            });
        }
        for (col, &value) in r.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "matrix",
                    value,
                    reason: "coefficients must be finite",
                });
            }
            if value < 0.0 {
                return Err(Error::NegativeMatrixEntry { row, col, value });
            }
            total += value;
        }
    }
    if total == 0.0 {
        return Err(Error::ZeroMass);
    }
    Ok(total)
}

/// `c · v1ᵀ A v2` with `v_i` the basis values at `x_i`.
pub fn ps_kernel_eval(k: &ProductSphereKernel, x1: f64, x2: f64) -> Result<f64> {
    check_unit_interval(x1)?;
    check_unit_interval(x2)?;
    let (mut v1, mut v2) = (Vec::new(), Vec::new());
    Ok(k.eval_unchecked(x1, x2, &mut v1, &mut v2))
}

/// A 2×2 minor `a_{mn} a_{m'n'} - a_{mn'} a_{m'n}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub rows: (usize, usize),
    pub cols: (usize, usize),
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Separability {
    /// `a_{mn} ≈ b_m c_n`.
    Separable {
        b: Vec<f64>,
        c: Vec<f64>,
        /// `max |b_m c_n - a_{mn}|`.
        reconstruction_error: f64,
    },
    NonSeparable {
        witness: MinorWitness,
    },
}

impl Separability {
    pub fn is_separable(&self) -> bool {
        matches!(self, Self::Separable { .. })
    }
}

/// Rank-one test of the kernel's coefficient matrix.
pub fn separability_test(k: &ProductSphereKernel, tol: f64) -> Result<Separability> {
    rank_one_test(&k.coeff_matrix, tol)
}

/// Exhaustive 2×2-minor rank-one test.
///
/// Separable when every minor is at most `tol · (max entry)²` in absolute
/// value; the factors are `b = ` the column through the largest entry and
/// `c = ` its row divided by that entry. Otherwise the first violating minor
/// in `(m, m', n, n')` lexicographic order is returned.
pub fn rank_one_test(matrix: &[Vec<f64>], tol: f64) -> Result<Separability> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "tolerance must be positive",
        });
    }
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(Error::Empty("coefficient matrix"));
    }
    if let Some(r) = matrix.iter().find(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch {
            expected: cols,
            found: r.len(),
        });
    }

    let mut pivot = (0, 0);
    let mut max_abs = 0.0f64;
    for (i, r) in matrix.iter().enumerate() {
        for (j, &v) in r.iter().enumerate() {
            if v.abs() > max_abs {
                max_abs = v.abs();
                pivot = (i, j);
            }
        }
    }
    if max_abs == 0.0 {
        return Err(Error::DegenerateZero);
    }

    let bound = tol * max_abs * max_abs;
    for m in 0..rows {
        for m2 in (m + 1)..rows {
            for n in 0..cols {
                for n2 in (n + 1)..cols {
                    let value = matrix[m][n] * matrix[m2][n2] - matrix[m][n2] * matrix[m2][n];
                    if value.abs() > bound {
                        return Ok(Separability::NonSeparable {
                            witness: MinorWitness {
                                rows: (m, m2),
                                cols: (n, n2),
                                value,
                            },
                        });
                    }
                }
            }
        }
    }

    let (pi, pj) = pivot;
    let b: Vec<f64> = matrix.iter().map(|r| r[pj]).collect();
    let c: Vec<f64> = matrix[pi].iter().map(|v| v / matrix[pi][pj]).collect();
    let reconstruction_error = matrix
        .iter()
        .zip(&b)
        .flat_map(|(r, bm)| r.iter().zip(&c).map(move |(a, cn)| (bm * cn - a).abs()))
        .fold(0.0, f64::max);
    Ok(Separability::Separable {
        b,
        c,
        reconstruction_error,
    })
}

impl CovarianceKernel for ProductSphereKernel {
    type Points = ProductPointSet;

    fn kernel_id(&self) -> String {
        let (m, n) = self.truncation();
        format!(
            "product kernel on S^{} x S^{} (degrees {m}x{n}, scale {})",
            self.basis1.dimension(),
            self.basis2.dimension(),
            self.scale_c
        )
    }

    fn num_points(points: &Self::Points) -> usize {
        points.len()
    }

    fn describe_points(points: &Self::Points) -> String {
        points.describe()
    }

    fn check_geometry(&self, points: &Self::Points) -> Result<()> {
        let (d1, d2) = (points.first().dimension(), points.second().dimension());
        if d1 != self.basis1.dimension() || d2 != self.basis2.dimension() {
            return Err(Error::GeometryMismatch(format!(
                "kernel on S^{} x S^{}, points on S^{d1} x S^{d2}",
                self.basis1.dimension(),
                self.basis2.dimension()
            )));
        }
        Ok(())
    }

    fn covariance(&self, points: &Self::Points, i: usize, j: usize) -> f64 {
        let (p, q) = (points.first(), points.second());
        let x1 = fields::geodesic_cosine_unchecked(p.point(i), p.point(j));
        let x2 = fields::geodesic_cosine_unchecked(q.point(i), q.point(j));
        let (mut v1, mut v2) = (Vec::new(), Vec::new());
        self.eval_unchecked(x1, x2, &mut v1, &mut v2)
    }
}
