//! Kernels on `S^d × R` of the form `c · Σ a_n P̃_n^λ(x) φ_n(t)`.
//!
//! Each degree carries its own temporal characteristic function `φ_n`. The
//! kernel is separable (space and time independent) exactly when all
//! observable `φ_n` coincide.

use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};
use crate::fields::{self, CovarianceKernel, SpaceTimePointSet};
use crate::gegenbauer::{fill_sequence, GegenbauerBasis};
use crate::schoenberg::{check_scale, validate_coefficients, SchoenbergSequence, MASS_TOL};

/// Characteristic function of a symmetric probability law on `R`; real, even,
/// `φ(0) = 1`, `|φ| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CharFnSpec {
    /// `exp(-σ² t² / 2)`.
    Gaussian { sigma: f64 },
    /// `exp(-c |t|)` (Cauchy law).
    Exponential { rate: f64 },
    /// `exp(-c |t|^α)`, `0 < α <= 2`.
    Stable { scale: f64, alpha: f64 },
    /// `sin(w t) / (w t)` (uniform law on `[-w, w]`).
    TriangleSinc { width: f64 },
    /// `1` (law concentrated at zero).
    PointMassAtZero,
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be a positive finite real",
        })
    }
}

impl CharFnSpec {
    pub fn gaussian(sigma: f64) -> Result<Self> {
        positive("sigma", sigma)?;
        Ok(Self::Gaussian { sigma })
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        positive("rate", rate)?;
        Ok(Self::Exponential { rate })
    }

    pub fn stable(scale: f64, alpha: f64) -> Result<Self> {
        positive("scale", scale)?;
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "stable exponent must lie in (0, 2]",
            });
        }
        Ok(Self::Stable { scale, alpha })
    }

    pub fn triangle_sinc(width: f64) -> Result<Self> {
        positive("width", width)?;
        Ok(Self::TriangleSinc { width })
    }

    /// Re-checks parameters, e.g. after deserialization.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Gaussian { sigma } => Self::gaussian(sigma).map(drop),
            Self::Exponential { rate } => Self::exponential(rate).map(drop),
            Self::Stable { scale, alpha } => Self::stable(scale, alpha).map(drop),
            Self::TriangleSinc { width } => Self::triangle_sinc(width).map(drop),
            Self::PointMassAtZero => Ok(()),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            Self::Gaussian { .. } => "gaussian",
            Self::Exponential { .. } => "exponential",
            Self::Stable { .. } => "stable",
            Self::TriangleSinc { .. } => "triangle_sinc",
            Self::PointMassAtZero => "point_mass_at_zero",
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        charfn_eval(self, t)
    }

    /// Same family and every parameter within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= tol;
        match (*self, *other) {
            (Self::Gaussian { sigma: a }, Self::Gaussian { sigma: b }) => close(a, b),
            (Self::Exponential { rate: a }, Self::Exponential { rate: b }) => close(a, b),
            (Self::Stable { scale: a, alpha: p }, Self::Stable { scale: b, alpha: q }) => {
                close(a, b) && close(p, q)
            }
            (Self::TriangleSinc { width: a }, Self::TriangleSinc { width: b }) => close(a, b),
            (Self::PointMassAtZero, Self::PointMassAtZero) => true,
            _ => false,
        }
    }
}

/// `φ(t)` for a characteristic-function specification.
pub fn charfn_eval(spec: &CharFnSpec, t: f64) -> f64 {
    match *spec {
        CharFnSpec::Gaussian { sigma } => (-0.5 * sigma * sigma * t * t).exp(),
        CharFnSpec::Exponential { rate } => (-rate * t.abs()).exp(),
        CharFnSpec::Stable { scale, alpha } => (-scale * t.abs().powf(alpha)).exp(),
        CharFnSpec::TriangleSinc { width } => {
            let u = width * t;
            if u.abs() < 1e-4 {
                // Taylor: 1 - u²/6 + u⁴/120, error below 1e-22.
                let u2 = u * u;
                1.0 - u2 / 6.0 + u2 * u2 / 120.0
            } else {
                u.sin() / u
            }
        }
        CharFnSpec::PointMassAtZero => 1.0,
    }
}

/// One degree of the expansion: weight `a_n` and temporal factor `φ_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceTimeTerm {
    pub a: f64,
    pub phi: CharFnSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceTimeKernel {
    terms: Vec<SpaceTimeTerm>,
    scale_c: f64,
    basis: GegenbauerBasis,
    normalized: bool,
}

impl SpaceTimeKernel {
    /// Validates weights and temporal factors; `normalize` behaves as in
    /// [`SchoenbergSequence::new`].
    pub fn new(terms: Vec<SpaceTimeTerm>, basis: GegenbauerBasis, normalize: bool) -> Result<Self> {
        let weights: Vec<f64> = terms.iter().map(|t| t.a).collect();
        let total = validate_coefficients(&weights)?;
        for t in &terms {
            t.phi.validate()?;
        }
        let (terms, scale_c, normalized) = if normalize {
            let terms = terms
                .into_iter()
                .map(|t| SpaceTimeTerm {
                    a: t.a / total,
                    ..t
                })
                .collect();
            (terms, total, true)
        } else {
            (terms, 1.0, (total - 1.0).abs() <= MASS_TOL)
        };
        Ok(Self {
            terms,
            scale_c,
            basis,
            normalized,
        })
    }

    /// Every degree shares the same `φ`.
    pub fn separable(spatial: &SchoenbergSequence, phi: CharFnSpec) -> Result<Self> {
        let terms = spatial
            .coeffs()
            .iter()
            .map(|&a| SpaceTimeTerm { a, phi })
            .collect();
        Self::new(terms, *spatial.basis(), false)?.with_scale(spatial.scale())
    }

    pub fn with_scale(mut self, scale_c: f64) -> Result<Self> {
        check_scale(scale_c)?;
        self.scale_c = scale_c;
        Ok(self)
    }

    pub fn terms(&self) -> &[SpaceTimeTerm] {
        &self.terms
    }

    pub fn scale(&self) -> f64 {
        self.scale_c
    }

    pub fn basis(&self) -> &GegenbauerBasis {
        &self.basis
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn truncation(&self) -> usize {
        self.terms.len() - 1
    }

    /// The purely spatial kernel `k(x, 0)`.
    pub fn spatial(&self) -> SchoenbergSequence {
        let coeffs = self.terms.iter().map(|t| t.a).collect();
        SchoenbergSequence::new(coeffs, self.basis, false)
            .and_then(|s| s.with_scale(self.scale_c))
            .expect("weights validated at construction")
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<f64> {
        st_kernel_eval(self, x, t)
    }

    fn eval_unchecked(&self, x: f64, t: f64, buf: &mut Vec<f64>) -> f64 {
        fill_sequence(self.basis.lambda(), x, self.truncation(), buf);
        let s: f64 = self
            .terms
            .iter()
            .zip(buf.iter())
            .map(|(term, p)| term.a * p * term.phi.eval(t))
            .sum();
        self.scale_c * s
    }

    /// `(a_n φ_n(t))_n`: the spatial coefficients of `x ↦ k(x, t)` before scaling.
    pub fn schoenberg_functions_at(&self, t: f64) -> Vec<f64> {
        schoenberg_functions_at(self, t)
    }

    pub fn is_separable(&self, tol: f64) -> bool {
        is_separable(self, tol)
    }

    /// The shared temporal factor when the kernel is separable.
    pub fn common_charfn(&self, tol: f64) -> Option<CharFnSpec> {
        let mut observable = self.terms.iter().filter(|t| t.a > tol);
        let first = observable.next()?.phi;
        observable
            .all(|t| t.phi.approx_eq(&first, tol))
            .then_some(first)
    }
}

/// `c · Σ a_n P̃_n(x) φ_n(t)`.
pub fn st_kernel_eval(k: &SpaceTimeKernel, x: f64, t: f64) -> Result<f64> {
    check_unit_interval(x)?;
    if !t.is_finite() {
        return Err(Error::Domain {
            value: t,
            domain: "finite time lag",
        });
    }
    let mut buf = Vec::with_capacity(k.terms.len());
    Ok(k.eval_unchecked(x, t, &mut buf))
}

pub fn schoenberg_functions_at(k: &SpaceTimeKernel, t: f64) -> Vec<f64> {
    k.terms
        .iter()
        .map(|term| term.a * term.phi.eval(t))
        .collect()
}

/// True iff every `φ_n` with `a_n > tol` equals the others as a
/// specification. Zero-weight degrees are ignored.
pub fn is_separable(k: &SpaceTimeKernel, tol: f64) -> bool {
    let mut observable = k.terms.iter().filter(|t| t.a > tol);
    match observable.next() {
        None => true,
        Some(first) => observable.all(|t| t.phi.approx_eq(&first.phi, tol)),
    }
}

impl CovarianceKernel for SpaceTimeKernel {
    type Points = SpaceTimePointSet;

    fn kernel_id(&self) -> String {
        format!(
            "space-time kernel on S^{} x R (degree {}, scale {})",
            self.basis.dimension(),
            self.truncation(),
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
        if points.sphere().dimension() != self.basis.dimension() {
            return Err(Error::GeometryMismatch(format!(
                "kernel on S^{} x R, points on S^{} x R",
                self.basis.dimension(),
                points.sphere().dimension()
            )));
        }
        Ok(())
    }

    fn covariance(&self, points: &Self::Points, i: usize, j: usize) -> f64 {
        let s = points.sphere();
        let x = fields::geodesic_cosine_unchecked(s.point(i), s.point(j));
        let t = points.times()[i] - points.times()[j];
        let mut buf = Vec::with_capacity(self.terms.len());
        self.eval_unchecked(x, t, &mut buf)
    }
}
