//! Isotropic kernels on `S^d` as nonnegative Gegenbauer expansions.
//!
//! A [`SchoenbergSequence`] holds a truncated coefficient sequence
//! `a_0, ..., a_N` together with an overall scale `c`; the kernel it
//! represents is `c · Σ a_n P̃_n^λ(x)`. Going the other way,
//! [`recover_coefficients`] projects a black-box function onto the basis by
//! Gauss quadrature and [`certify`] decides positive definiteness from the
//! signs of those coefficients, cross-checked against Gram matrices on random
//! point sets.

use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};
use crate::fields::{self, GramMatrix};
use crate::gegenbauer::{fill_sequence, norm_squared, quadrature, GegenbauerBasis, MAX_DEGREE};

/// Tolerance on `Σ a_n = 1` for a sequence to count as normalized.
pub const MASS_TOL: f64 = 1e-12;

/// Truncated Schoenberg coefficients plus scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchoenbergSequence {
    coeffs: Vec<f64>,
    scale_c: f64,
    basis: GegenbauerBasis,
    normalized: bool,
}

impl SchoenbergSequence {
    /// Validates `coeffs` and builds a sequence.
    ///
    /// With `normalize` the coefficients are rescaled to unit mass and the
    /// original total becomes the scale. Without it the coefficients are kept
    /// as given with scale 1; the sequence is flagged unnormalized unless the
    /// mass is already 1.
    pub fn new(coeffs: Vec<f64>, basis: GegenbauerBasis, normalize: bool) -> Result<Self> {
        let total = validate_coefficients(&coeffs)?;
        if normalize {
            let coeffs = coeffs.into_iter().map(|a| a / total).collect();
            Ok(Self {
                coeffs,
                scale_c: total,
                basis,
                normalized: true,
            })
        } else {
            Ok(Self {
                coeffs,
                scale_c: 1.0,
                basis,
                normalized: (total - 1.0).abs() <= MASS_TOL,
            })
        }
    }

    /// Replaces the scale `c`.
    pub fn with_scale(mut self, scale_c: f64) -> Result<Self> {
        check_scale(scale_c)?;
        self.scale_c = scale_c;
        Ok(self)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
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

    /// Highest stored degree `N`.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `Σ a_n` over the stored coefficients.
    pub fn mass(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    /// Kernel value at zero distance, `c · Σ a_n`.
    pub fn variance(&self) -> f64 {
        self.scale_c * self.mass()
    }

    /// `Σ_{n >= from} a_n`.
    pub fn tail_mass(&self, from: usize) -> f64 {
        self.coeffs.iter().skip(from).sum()
    }

    /// `c · Σ a_n P̃_n(x)`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        kernel_eval(self, x)
    }

    pub(crate) fn eval_unchecked(&self, x: f64, buf: &mut Vec<f64>) -> f64 {
        fill_sequence(self.basis.lambda(), x, self.truncation(), buf);
        self.scale_c * dot(&self.coeffs, buf)
    }
}

impl fields::CovarianceKernel for SchoenbergSequence {
    type Points = fields::SpherePointSet;

    fn kernel_id(&self) -> String {
        format!(
            "sphere kernel on S^{} (degree {}, scale {})",
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
        if points.dimension() != self.basis.dimension() {
            return Err(Error::GeometryMismatch(format!(
                "kernel on S^{}, points on S^{}",
                self.basis.dimension(),
                points.dimension()
            )));
        }
        Ok(())
    }

    fn covariance(&self, points: &Self::Points, i: usize, j: usize) -> f64 {
        let x = fields::geodesic_cosine_unchecked(points.point(i), points.point(j));
        let mut buf = Vec::with_capacity(self.coeffs.len());
        self.eval_unchecked(x, &mut buf)
    }
}

/// Builds a sequence; see [`SchoenbergSequence::new`].
pub fn make_sequence(
    coeffs: Vec<f64>,
    basis: GegenbauerBasis,
    normalize: bool,
) -> Result<SchoenbergSequence> {
    SchoenbergSequence::new(coeffs, basis, normalize)
}

/// `c · Σ a_n P̃_n^λ(x)` for `x` in `[-1, 1]`.
pub fn kernel_eval(seq: &SchoenbergSequence, x: f64) -> Result<f64> {
    check_unit_interval(x)?;
    let mut buf = Vec::with_capacity(seq.coeffs.len());
    Ok(seq.eval_unchecked(x, &mut buf))
}

pub(crate) fn validate_coefficients(coeffs: &[f64]) -> Result<f64> {
    if coeffs.is_empty() {
        return Err(Error::Empty("coefficient list"));
    }
    if coeffs.len() > MAX_DEGREE + 1 {
        return Err(Error::InvalidParameter {
            name: "coeffs",
            value: coeffs.len() as f64,
            reason: "truncation degree above MAX_DEGREE",
        });
    }
    for (index, &value) in coeffs.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::InvalidParameter {
                name: "coeffs",
                value,
                reason: "coefficients must be finite",
            });
        }
        if value < 0.0 {
            return Err(Error::NegativeCoefficient { index, value });
        }
    }
    let total: f64 = coeffs.iter().sum();
    if total == 0.0 {
        return Err(Error::ZeroMass);
    }
    Ok(total)
}

pub(crate) fn check_scale(scale_c: f64) -> Result<()> {
    if scale_c.is_finite() && scale_c > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "scale",
            value: scale_c,
            reason: "scale must be a positive finite real",
        })
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gegenbauer coefficients of `g` by Gauss quadrature:
/// `â_n = (1 / h_n) Σ_i w_i g(x_i) P̃_n(x_i)` for `n = 0..=n_max`.
///
/// Exact for polynomial `g` of degree `D` when `D + n_max <= 2 · quad_order - 1`.
pub fn recover_coefficients<F>(
    g: F,
    basis: &GegenbauerBasis,
    n_max: usize,
    quad_order: usize,
) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64,
{
    if quad_order < n_max + 1 {
        return Err(Error::InvalidParameter {
            name: "quad_order",
            value: quad_order as f64,
            reason: "quadrature order must be at least n_max + 1",
        });
    }
    let rule = quadrature(basis.lambda(), quad_order)?;
    let mut acc = vec![0.0; n_max + 1];
    let mut buf = Vec::with_capacity(n_max + 1);
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let gx = g(x);
        if !gx.is_finite() {
            return Err(Error::Evaluation { node: x, value: gx });
        }
        fill_sequence(basis.lambda(), x, n_max, &mut buf);
        let wg = w * gx;
        for (a, p) in acc.iter_mut().zip(&buf) {
            *a += wg * p;
        }
    }
    for (n, a) in acc.iter_mut().enumerate() {
        *a /= norm_squared(basis, n);
    }
    Ok(acc)
}

/// Normalized coefficients of the Gegenbauer generating function,
/// `a_n ∝ δ^n C_n^λ(1)`, truncated at `n_max` and rescaled to unit mass.
///
/// As `n_max → ∞` the kernel tends to `(1 - δ)^{2λ} / (1 - 2δx + δ²)^λ`.
pub fn multiquadric_sequence(
    delta: f64,
    basis: GegenbauerBasis,
    n_max: usize,
) -> Result<SchoenbergSequence> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain {
            value: delta,
            domain: "(0, 1)",
        });
    }
    if basis.lambda() == 0.0 {
        return Err(Error::InvalidBasis(
            "the multiquadric family needs lambda > 0".into(),
        ));
    }
    let two_lambda = 2.0 * basis.lambda();
    let mut term = 1.0;
    let mut coeffs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        coeffs.push(term);
        // δ^{n+1} C_{n+1}(1) = δ^n C_n(1) · δ (n + 2λ) / (n + 1)
        term *= delta * (n as f64 + two_lambda) / (n as f64 + 1.0);
    }
    SchoenbergSequence::new(coeffs, basis, true).map(|s| SchoenbergSequence { scale_c: 1.0, ..s })
}

/// Closed form `(1 - δ)^{2λ} (1 - 2δx + δ²)^{-λ}` of the multiquadric kernel.
pub fn multiquadric_closed_form(delta: f64, lambda: f64, x: f64) -> f64 {
    (1.0 - delta).powf(2.0 * lambda) * (1.0 - 2.0 * delta * x + delta * delta).powf(-lambda)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PD")]
    Pd,
    #[serde(rename = "NotPD")]
    NotPd,
    Inconclusive,
}

/// The concrete reason a function was declared not positive definite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Coefficient {
        index: usize,
        value: f64,
    },
    Gram {
        size: usize,
        min_eigenvalue: f64,
        /// Seed for `uniform_sphere_points` that reproduces the point set.
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientEvidence {
    pub coefficients: Vec<f64>,
    pub min_index: usize,
    pub min_value: f64,
    /// `Σ |â_n|` for `n > n_max / 2`.
    pub tail_mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramEvidence {
    pub trials: usize,
    pub size: usize,
    /// Most negative eigenvalue seen across all trials.
    pub min_eigenvalue: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub coeff_tol: f64,
    pub eig_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PdCertificate {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub coefficients: CoefficientEvidence,
    /// Absent when a coefficient witness settled the verdict first.
    pub gram: Option<GramEvidence>,
    pub tolerances: Tolerances,
}

/// Knobs for [`certify`].
#[derive(Debug, Clone, PartialEq)]
pub struct CertifyOptions {
    pub n_max: usize,
    /// Defaults to `max(2 (n_max + 1), 64)`.
    pub quad_order: Option<usize>,
    pub coeff_tol: f64,
    /// Defaults to `1e-8 · gram_points`.
    pub eig_tol: Option<f64>,
    pub gram_trials: usize,
    pub gram_points: usize,
    pub seed: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            n_max: 30,
            quad_order: None,
            coeff_tol: 1e-8,
            eig_tol: None,
            gram_trials: 5,
            gram_points: 25,
            seed: 0,
        }
    }
}

impl CertifyOptions {
    pub fn quad_order(&self) -> usize {
        self.quad_order
            .unwrap_or_else(|| (2 * (self.n_max + 1)).max(64))
    }

    pub fn eig_tol(&self) -> f64 {
        self.eig_tol.unwrap_or(1e-8 * self.gram_points as f64)
    }
}

/// Positive-definiteness verdict for an isotropic function `g` on `S^d`.
///
/// `NotPD` is only returned with a concrete witness: a recovered coefficient
/// below `-coeff_tol`, or a Gram matrix on a seeded random point set with an
/// eigenvalue below `-eig_tol`. `PD` additionally requires the recovered
/// coefficients past `n_max / 2` to carry less than `coeff_tol` of absolute
/// mass; otherwise the result is `Inconclusive`.
pub fn certify<F>(g: F, basis: &GegenbauerBasis, opts: &CertifyOptions) -> Result<PdCertificate>
where
    F: Fn(f64) -> f64,
{
    let tolerances = Tolerances {
        coeff_tol: opts.coeff_tol,
        eig_tol: opts.eig_tol(),
    };
    for (name, value) in [
        ("coeff_tol", tolerances.coeff_tol),
        ("eig_tol", tolerances.eig_tol),
    ] {
        if !(value > 0.0) {
            return Err(Error::InvalidParameter {
                name,
                value,
                reason: "tolerances must be positive",
            });
        }
    }

    let coefficients = recover_coefficients(&g, basis, opts.n_max, opts.quad_order())?;
    let (min_index, min_value) = coefficients
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("n_max + 1 >= 1 coefficients");
    let tail_mass = coefficients
        .iter()
        .skip(opts.n_max / 2 + 1)
        .map(|a| a.abs())
        .sum();
    let evidence = CoefficientEvidence {
        coefficients,
        min_index,
        min_value,
        tail_mass,
    };

    if min_value < -tolerances.coeff_tol {
        return Ok(PdCertificate {
            verdict: Verdict::NotPd,
            witness: Some(Witness::Coefficient {
                index: min_index,
                value: min_value,
            }),
            coefficients: evidence,
            gram: None,
            tolerances,
        });
    }

    let mut worst: Option<(f64, u64)> = None;
    for trial in 0..opts.gram_trials {
        let seed = fields::derive_seed(opts.seed, trial as u64);
        let points = fields::uniform_sphere_points(basis.dimension(), opts.gram_points, seed)?;
        let gram = function_gram(&g, &points)?;
        let lo = gram.min_eigenvalue();
        if worst.is_none_or(|(w, _)| lo < w) {
            worst = Some((lo, seed));
        }
        if lo < -tolerances.eig_tol {
            return Ok(PdCertificate {
                verdict: Verdict::NotPd,
                witness: Some(Witness::Gram {
                    size: gram.dim(),
                    min_eigenvalue: lo,
                    seed,
                }),
                coefficients: evidence,
                gram: Some(GramEvidence {
                    trials: trial + 1,
                    size: gram.dim(),
                    min_eigenvalue: lo,
                    seed,
                }),
                tolerances,
            });
        }
    }
    let gram = worst.map(|(min_eigenvalue, seed)| GramEvidence {
        trials: opts.gram_trials,
        size: opts.gram_points,
        min_eigenvalue,
        seed,
    });

    let verdict = if evidence.tail_mass < tolerances.coeff_tol {
        Verdict::Pd
    } else {
        Verdict::Inconclusive
    };
    Ok(PdCertificate {
        verdict,
        witness: None,
        coefficients: evidence,
        gram,
        tolerances,
    })
}

/// Gram matrix `[g(<p_i, p_j>)]` of a bare function on a point set.
pub fn function_gram<F>(g: F, points: &fields::SpherePointSet) -> Result<GramMatrix>
where
    F: Fn(f64) -> f64,
{
    let n = points.len();
    let mut m = nalgebra::DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = fields::geodesic_cosine_unchecked(points.point(i), points.point(j));
            let v = g(x);
            if !v.is_finite() {
                return Err(Error::Evaluation { node: x, value: v });
            }
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    GramMatrix::new(m, format!("function on {}", points.describe()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn legendre() -> GegenbauerBasis {
        GegenbauerBasis::for_sphere(2).unwrap()
    }

    fn random_sequence(
        rng: &mut ChaCha20Rng,
        basis: GegenbauerBasis,
        n_max: usize,
    ) -> SchoenbergSequence {
        let coeffs = (0..=n_max).map(|_| rng.random::<f64>()).collect();
        SchoenbergSequence::new(coeffs, basis, true)
            .and_then(|s| s.with_scale(1.0))
            .unwrap()
    }

    #[test]
    fn construction() {
        let s = make_sequence(vec![1.0], legendre(), false).unwrap();
        assert_eq!(s.coeffs(), &[1.0]);
        assert_eq!(s.scale(), 1.0);
        assert!(s.is_normalized());

        let s = make_sequence(vec![2.0, 2.0], legendre(), true).unwrap();
        assert_eq!(s.coeffs(), &[0.5, 0.5]);
        assert_eq!(s.scale(), 4.0);

        assert_eq!(
            make_sequence(vec![0.5, -0.1], legendre(), false),
            Err(Error::NegativeCoefficient {
                index: 1,
                value: -0.1
            })
        );
        assert_eq!(
            make_sequence(vec![0.0, 0.0], legendre(), true),
            Err(Error::ZeroMass)
        );
        assert!(make_sequence(vec![], legendre(), true).is_err());
        assert!(make_sequence(vec![f64::NAN], legendre(), true).is_err());

        let raw = make_sequence(vec![0.2, 0.3], legendre(), false).unwrap();
        assert!(!raw.is_normalized());
        assert!((raw.variance() - 0.5).abs() < 1e-15);
        assert!(raw.clone().with_scale(0.0).is_err());
        assert_eq!(raw.with_scale(3.0).unwrap().scale(), 3.0);
    }

    #[test]
    fn evaluation() {
        let constant = make_sequence(vec![1.0], legendre(), false).unwrap();
        assert_eq!(kernel_eval(&constant, -0.8).unwrap(), 1.0);
        let p1 = make_sequence(vec![0.0, 1.0], legendre(), false).unwrap();
        assert_eq!(kernel_eval(&p1, 0.3).unwrap(), 0.3);
        assert!(kernel_eval(&p1, 1.5).is_err());

        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for d in 1..=4 {
            let s = random_sequence(&mut rng, GegenbauerBasis::for_sphere(d).unwrap(), 20)
                .with_scale(2.5)
                .unwrap();
            assert!((kernel_eval(&s, 1.0).unwrap() - 2.5).abs() < 1e-12);
        }
    }

    #[test]
    fn recovers_basis_element_and_x_squared() {
        let b = GegenbauerBasis::from_lambda(1.0).unwrap();
        let a = recover_coefficients(|x| b.eval(3, x).unwrap(), &b, 5, 6).unwrap();
        for (n, v) in a.iter().enumerate() {
            let expected = if n == 3 { 1.0 } else { 0.0 };
            assert!((v - expected).abs() < 1e-10);
        }

        // x² = (2 P_2 + P_0) / 3
        let a = recover_coefficients(|x| x * x, &legendre(), 4, 5).unwrap();
        let expected = [1.0 / 3.0, 0.0, 2.0 / 3.0, 0.0, 0.0];
        for (v, e) in a.iter().zip(expected) {
            assert!((v - e).abs() < 1e-10);
        }
    }

    #[test]
    fn round_trip_random_sequence() {
        let mut rng = ChaCha20Rng::seed_from_u64(17);
        let s = random_sequence(&mut rng, legendre(), 30);
        let a = recover_coefficients(|x| s.eval(x).unwrap(), s.basis(), 30, 64).unwrap();
        let err = a
            .iter()
            .zip(s.coeffs())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        assert!(err <= 1e-8, "{err}");
    }

    #[test]
    fn recovery_errors() {
        assert!(recover_coefficients(|x| x, &legendre(), 10, 10).is_err());
        let err = recover_coefficients(|x| 1.0 / x, &legendre(), 0, 1).unwrap_err();
        assert!(matches!(err, Error::Evaluation { node, .. } if node == 0.0));
    }

    #[test]
    fn scale_equivariance() {
        let b = GegenbauerBasis::for_sphere(3).unwrap();
        let g = |x: f64| (x - 1.0).exp() + 0.3 * x.powi(3);
        let base = recover_coefficients(g, &b, 20, 40).unwrap();
        for alpha in [0.5, 2.0, 10.0] {
            let scaled = recover_coefficients(|x| alpha * g(x), &b, 20, 40).unwrap();
            for (s, a) in scaled.iter().zip(&base) {
                assert!((s - alpha * a).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn certify_examples() {
        let opts = CertifyOptions::default();
        let c = certify(|x| x, &legendre(), &opts).unwrap();
        assert_eq!(c.verdict, Verdict::Pd);
        assert!((c.coefficients.coefficients[1] - 1.0).abs() < 1e-12);

        let c = certify(|x| -x, &legendre(), &opts).unwrap();
        assert_eq!(c.verdict, Verdict::NotPd);
        match c.witness {
            Some(Witness::Coefficient { index, value }) => {
                assert_eq!(index, 1);
                assert!((value + 1.0).abs() < 1e-12);
            }
            other => panic!("unexpected witness {other:?}"),
        }

        let c = certify(|x| (x - 1.0).exp(), &legendre(), &opts).unwrap();
        assert_eq!(c.verdict, Verdict::Pd);
        assert!(c
            .coefficients
            .coefficients
            .iter()
            .take(15)
            .all(|&a| a > 0.0));
        let gram = c.gram.unwrap();
        assert_eq!(gram.trials, 5);
        assert!(gram.min_eigenvalue > -c.tolerances.eig_tol);
    }

    #[test]
    fn certify_inconclusive_on_slow_tail() {
        // Coefficients decay like 0.9^n: still heavy past n_max / 2 = 5.
        let s = multiquadric_sequence(0.9, legendre(), 400).unwrap();
        let opts = CertifyOptions {
            n_max: 10,
            ..Default::default()
        };
        let c = certify(|x| s.eval(x).unwrap(), &legendre(), &opts).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert!(c.witness.is_none());
    }

    #[test]
    fn certify_gram_witness_beyond_truncation() {
        // The negative coefficient sits at degree 12, above n_max = 6, so only
        // the Gram oracle can see it.
        let b = GegenbauerBasis::for_sphere(2).unwrap();
        let g = |x: f64| 0.05 + 0.05 * x - 0.9 * b.eval(12, x).unwrap();
        let opts = CertifyOptions {
            n_max: 6,
            seed: 4,
            ..Default::default()
        };
        let c = certify(g, &b, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::NotPd);
        let Some(Witness::Gram {
            size,
            min_eigenvalue,
            seed,
        }) = c.witness
        else {
            panic!("expected a Gram witness");
        };
        assert_eq!(size, 25);
        assert!(min_eigenvalue < -c.tolerances.eig_tol);
        // The witness seed reproduces the offending point set.
        let pts = fields::uniform_sphere_points(2, 25, seed).unwrap();
        let again = function_gram(g, &pts).unwrap().min_eigenvalue();
        assert_eq!(again, min_eigenvalue);
    }

    #[test]
    fn certify_rejects_bad_tolerance() {
        let opts = CertifyOptions {
            coeff_tol: 0.0,
            ..Default::default()
        };
        assert!(certify(|x| x, &legendre(), &opts).is_err());
    }

    #[test]
    fn certificate_serializes() {
        let c = certify(|x| -x, &legendre(), &CertifyOptions::default()).unwrap();
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["verdict"], "NotPD");
        assert_eq!(json["witness"]["kind"], "coefficient");
        assert_eq!(json["witness"]["index"], 1);
    }

    #[test]
    fn multiquadric_family() {
        let s = multiquadric_sequence(1e-12, legendre(), 10).unwrap();
        assert!((s.coeffs()[0] - 1.0).abs() < 1e-11);
        assert!(s.coeffs()[1..].iter().all(|&a| a < 1e-11));

        let s = multiquadric_sequence(0.5, legendre(), 60).unwrap();
        assert!((s.eval(1.0).unwrap() - 1.0).abs() < 1e-9);

        let b = GegenbauerBasis::from_lambda(1.0).unwrap();
        let s = multiquadric_sequence(0.4, b, 80).unwrap();
        for i in 0..100 {
            let x = -1.0 + 2.0 * i as f64 / 99.0;
            let err = (s.eval(x).unwrap() - multiquadric_closed_form(0.4, 1.0, x)).abs();
            assert!(err <= 1e-8, "x={x} err={err}");
        }

        assert!(multiquadric_sequence(1.0, b, 5).is_err());
        assert!(multiquadric_sequence(0.0, b, 5).is_err());
        assert!(multiquadric_sequence(0.3, GegenbauerBasis::for_sphere(1).unwrap(), 5).is_err());
    }
}
