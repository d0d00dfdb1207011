//! Normalized Gegenbauer (ultraspherical) polynomials on `[-1, 1]`.
//!
//! Everything in this crate expands kernels in the normalized family
//! `P̃_n^λ(x) = C_n^λ(x) / C_n^λ(1)`, so that `P̃_n^λ(1) = 1` and a convex
//! combination of basis functions is a correlation function. The index is
//! tied to the sphere: `λ = (d - 1) / 2` on `S^d`. At `λ = 1/2` the family is
//! Legendre, at `λ = 0` (the circle) it is Chebyshev of the first kind.
//!
//! The kernel argument is always the cosine of the geodesic angle,
//! `x = <p, q>`, never the angle itself.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{check_unit_interval, Error, Result};

/// Largest supported polynomial degree. Upward recursion in double precision
/// loses accuracy slowly with degree; above roughly 2000 expect errors well
/// above machine epsilon.
pub const MAX_DEGREE: usize = 10_000;

const NEWTON_TOL: f64 = 1e-14;
const NEWTON_MAX_ITER: usize = 100;

/// Index of the Gegenbauer family attached to the sphere `S^d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GegenbauerBasis {
    lambda: f64,
    dimension_d: u32,
}

impl GegenbauerBasis {
    /// Basis for `S^d`, `λ = (d - 1) / 2`.
    pub fn for_sphere(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidBasis("sphere dimension must be >= 1".into()));
        }
        Ok(Self {
            lambda: f64::from(d - 1) / 2.0,
            dimension_d: d,
        })
    }

    /// Basis from its index; `2λ + 1` must be a positive integer.
    pub fn from_lambda(lambda: f64) -> Result<Self> {
        let d = 2.0 * lambda + 1.0;
        if !lambda.is_finite() || lambda < 0.0 || d.fract() != 0.0 || d > f64::from(u32::MAX) {
            return Err(Error::InvalidBasis(format!(
                "lambda = {lambda} does not correspond to a sphere S^d"
            )));
        }
        Self::for_sphere(d as u32)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn dimension(&self) -> u32 {
        self.dimension_d
    }

    /// `true` for the circle, where the family is Chebyshev.
    pub fn is_chebyshev(&self) -> bool {
        self.dimension_d == 1
    }

    /// `P̃_n^λ(x)`.
    pub fn eval(&self, n: usize, x: f64) -> Result<f64> {
        eval_normalized(self, n, x)
    }

    /// `[P̃_0(x), ..., P̃_{n_max}(x)]`.
    pub fn eval_sequence(&self, n_max: usize, x: f64) -> Result<Vec<f64>> {
        eval_sequence(self, n_max, x)
    }

    pub fn norm_squared(&self, n: usize) -> f64 {
        norm_squared_lambda(self.lambda, n)
    }

    /// Gauss rule for the weight `(1 - x^2)^(λ - 1/2)`.
    pub fn quadrature(&self, order: usize) -> Result<QuadratureRule> {
        quadrature(self.lambda, order)
    }
}

/// `P̃_n^λ(x)` for the basis.
pub fn eval_normalized(basis: &GegenbauerBasis, n: usize, x: f64) -> Result<f64> {
    check_degree(n)?;
    check_unit_interval(x)?;
    if x == 1.0 {
        return Ok(1.0);
    }
    if x == -1.0 {
        return Ok(if n.is_multiple_of(2) { 1.0 } else { -1.0 });
    }
    let lambda = basis.lambda;
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = x;
    for k in 1..n {
        let next = step(lambda, k, x, cur, prev);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// All of `P̃_0(x), ..., P̃_{n_max}(x)` in one forward pass.
pub fn eval_sequence(basis: &GegenbauerBasis, n_max: usize, x: f64) -> Result<Vec<f64>> {
    check_degree(n_max)?;
    check_unit_interval(x)?;
    let mut out = Vec::with_capacity(n_max + 1);
    fill_sequence(basis.lambda, x, n_max, &mut out);
    Ok(out)
}

/// Unchecked kernel of `eval_sequence`, reusing the caller's buffer.
pub(crate) fn fill_sequence(lambda: f64, x: f64, n_max: usize, out: &mut Vec<f64>) {
    out.clear();
    if x == 1.0 {
        out.resize(n_max + 1, 1.0);
        return;
    }
    if x == -1.0 {
        out.extend((0..=n_max).map(|n| if n % 2 == 0 { 1.0 } else { -1.0 }));
        return;
    }
    out.push(1.0);
    if n_max == 0 {
        return;
    }
    out.push(x);
    for k in 1..n_max {
        let next = step(lambda, k, x, out[k], out[k - 1]);
        out.push(next);
    }
}

// (k + 2λ) P̃_{k+1} = 2 (k + λ) x P̃_k - k P̃_{k-1}, valid for k >= 1 and λ >= 0.
#[inline]
fn step(lambda: f64, k: usize, x: f64, cur: f64, prev: f64) -> f64 {
    let k = k as f64;
    (2.0 * (k + lambda) * x * cur - k * prev) / (k + 2.0 * lambda)
}

fn check_degree(n: usize) -> Result<()> {
    if n > MAX_DEGREE {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n as f64,
            reason: "degree above MAX_DEGREE",
        });
    }
    Ok(())
}

/// `h_n = ∫ P̃_n(x)^2 (1 - x^2)^(λ - 1/2) dx` over `[-1, 1]`.
pub fn norm_squared(basis: &GegenbauerBasis, n: usize) -> f64 {
    norm_squared_lambda(basis.lambda, n)
}

pub(crate) fn norm_squared_lambda(lambda: f64, n: usize) -> f64 {
    if lambda == 0.0 {
        return if n == 0 { PI } else { PI / 2.0 };
    }
    // h_n / h_{n-1} = n (n - 1 + λ) / ((n + λ)(n - 1 + 2λ))
    let mut h = weight_mass(lambda);
    for k in 1..=n {
        let k = k as f64;
        h *= k * (k - 1.0 + lambda) / ((k + lambda) * (k - 1.0 + 2.0 * lambda));
    }
    h
}

/// `∫ (1 - x^2)^(λ - 1/2) dx = √π Γ(λ + 1/2) / Γ(λ + 1)`.
pub fn weight_mass(lambda: f64) -> f64 {
    // m(λ + 1) = m(λ) (λ + 1/2) / (λ + 1), seeded exactly at λ = 0 and 1/2.
    let base = lambda.fract();
    let steps = lambda.trunc() as usize;
    if steps > 200 {
        return (0.5 * PI.ln() + ln_gamma(lambda + 0.5) - ln_gamma(lambda + 1.0)).exp();
    }
    let mut m = if base == 0.0 {
        PI
    } else if base == 0.5 {
        2.0
    } else {
        (0.5 * PI.ln() + ln_gamma(base + 0.5) - ln_gamma(base + 1.0)).exp()
    };
    for k in 0..steps {
        let l = base + k as f64;
        m *= (l + 0.5) / (l + 1.0);
    }
    m
}

/// A Gauss rule for the Gegenbauer weight `(1 - x^2)^(λ - 1/2)` on `(-1, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub lambda: f64,
    pub order: usize,
}

impl QuadratureRule {
    /// `Σ w_i f(x_i)`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Order-`order` Gauss-Gegenbauer rule.
///
/// For `λ > 0` the nodes are the roots of `P̃_order^λ`, found by Newton
/// iteration with deflation from Chebyshev-like initial guesses; only the
/// positive half is solved for and mirrored, so the rule is exactly
/// symmetric. Weights come from the Christoffel function
/// `w_i = 1 / Σ_{k<order} P̃_k(x_i)^2 / h_k`. For `λ = 0` the closed-form
/// Chebyshev-Gauss rule is used.
pub fn quadrature(lambda: f64, order: usize) -> Result<QuadratureRule> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
            reason: "must be a finite nonnegative real",
        });
    }
    if order == 0 {
        return Err(Error::InvalidParameter {
            name: "order",
            value: 0.0,
            reason: "quadrature order must be >= 1",
        });
    }
    check_degree(order)?;

    if lambda == 0.0 {
        let n = order as f64;
        let mut nodes: Vec<f64> = (1..=order)
            .map(|k| ((2 * k - 1) as f64 * PI / (2.0 * n)).cos())
            .collect();
        nodes.reverse();
        symmetrize(&mut nodes);
        return Ok(QuadratureRule {
            weights: vec![PI / n; order],
            nodes,
            lambda,
            order,
        });
    }

    let half = order / 2;
    let mut positive: Vec<f64> = Vec::with_capacity(half);
    let denom = order as f64 + lambda + 0.5;
    for k in 1..=half {
        let mut x = (PI * (k as f64 - 0.25) / denom).cos();
        let mut converged = false;
        let mut last_step = f64::NAN;
        for _ in 0..NEWTON_MAX_ITER {
            let (p, dp) = value_and_derivative(lambda, order, x);
            // Deflate the roots already found, including mirrored ones and
            // the origin for odd orders.
            let mut deflation = 0.0;
            for &r in &positive {
                deflation += 1.0 / (x - r) + 1.0 / (x + r);
            }
            if order % 2 == 1 {
                deflation += 1.0 / x;
            }
            let dx = p / (dp - p * deflation);
            x -= dx;
            last_step = dx;
            if dx.abs() <= NEWTON_TOL {
                converged = true;
                break;
            }
        }
        if !converged || !(0.0..1.0).contains(&x) {
            return Err(Error::QuadratureConvergence {
                lambda,
                order,
                root: k,
                last_step,
            });
        }
        positive.push(x);
    }

    positive.sort_by(|a, b| a.total_cmp(b));
    let mut nodes: Vec<f64> = positive.iter().rev().map(|&x| -x).collect();
    if order % 2 == 1 {
        nodes.push(0.0);
    }
    nodes.extend(positive.iter().copied());

    let norms: Vec<f64> = (0..order).map(|k| norm_squared_lambda(lambda, k)).collect();
    let mut buf = Vec::with_capacity(order);
    let weights = nodes
        .iter()
        .map(|&x| {
            fill_sequence(lambda, x, order - 1, &mut buf);
            let christoffel: f64 = buf.iter().zip(&norms).map(|(p, h)| p * p / h).sum();
            1.0 / christoffel
        })
        .collect();

    Ok(QuadratureRule {
        nodes,
        weights,
        lambda,
        order,
    })
}

fn symmetrize(nodes: &mut [f64]) {
    let n = nodes.len();
    for i in 0..n / 2 {
        let v = 0.5 * (nodes[n - 1 - i] - nodes[i]);
        nodes[i] = -v;
        nodes[n - 1 - i] = v;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
}

// P̃_n(x) and its derivative from the differentiated recurrence.
fn value_and_derivative(lambda: f64, n: usize, x: f64) -> (f64, f64) {
    let (mut p_prev, mut p) = (1.0, x);
    let (mut d_prev, mut d) = (0.0, 1.0);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let a = 2.0 * (kf + lambda);
        let c = kf + 2.0 * lambda;
        let p_next = (a * x * p - kf * p_prev) / c;
        let d_next = (a * (p + x * d) - kf * d_prev) / c;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    (p, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn basis(lambda: f64) -> GegenbauerBasis {
        GegenbauerBasis::from_lambda(lambda).unwrap()
    }

    // Explicit Legendre polynomials, independent of the recurrence.
    fn legendre_closed(n: usize, x: f64) -> f64 {
        match n {
            0 => 1.0,
            1 => x,
            2 => (3.0 * x * x - 1.0) / 2.0,
            3 => (5.0 * x.powi(3) - 3.0 * x) / 2.0,
            4 => (35.0 * x.powi(4) - 30.0 * x * x + 3.0) / 8.0,
            5 => (63.0 * x.powi(5) - 70.0 * x.powi(3) + 15.0 * x) / 8.0,
            _ => unreachable!(),
        }
    }

    // Explicit power sum for C_n^λ, independent of the three-term recurrence.
    fn gegenbauer_explicit(lambda: f64, n: usize, x: f64) -> f64 {
        let lg_lambda = ln_gamma(lambda);
        let mut s = 0.0;
        for k in 0..=n / 2 {
            let m = n - 2 * k;
            let log_mag = ln_gamma(n as f64 - k as f64 + lambda)
                - lg_lambda
                - ln_gamma(k as f64 + 1.0)
                - ln_gamma(m as f64 + 1.0);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            s += sign * log_mag.exp() * (2.0 * x).powi(m as i32);
        }
        s
    }

    #[test]
    fn basis_index_follows_dimension() {
        assert_eq!(GegenbauerBasis::for_sphere(1).unwrap().lambda(), 0.0);
        assert_eq!(GegenbauerBasis::for_sphere(2).unwrap().lambda(), 0.5);
        assert_eq!(GegenbauerBasis::for_sphere(6).unwrap().lambda(), 2.5);
        assert_eq!(GegenbauerBasis::from_lambda(1.5).unwrap().dimension(), 4);
        assert!(GegenbauerBasis::for_sphere(0).is_err());
        assert!(GegenbauerBasis::from_lambda(0.3).is_err());
        assert!(GegenbauerBasis::from_lambda(-0.5).is_err());
        assert!(basis(0.0).is_chebyshev());
    }

    #[test]
    fn spot_values() {
        assert_eq!(basis(0.5).eval(0, 0.37).unwrap(), 1.0);
        assert_eq!(basis(0.5).eval(1, 0.5).unwrap(), 0.5);
        let c = basis(0.0).eval(3, 0.2f64.cos()).unwrap();
        assert!((c - 0.6f64.cos()).abs() < 1e-14);
        assert_eq!(basis(2.0).eval(7, -1.0).unwrap(), -1.0);
    }

    #[test]
    fn sequences() {
        assert_eq!(
            basis(0.5).eval_sequence(2, 1.0).unwrap(),
            vec![1.0, 1.0, 1.0]
        );
        let s = basis(0.5).eval_sequence(2, 0.0).unwrap();
        assert_eq!(s, vec![1.0, 0.0, -0.5]);
        assert_eq!(basis(1.0).eval_sequence(1, 0.25).unwrap(), vec![1.0, 0.25]);
        assert_eq!(basis(1.0).eval_sequence(0, 0.25).unwrap(), vec![1.0]);
    }

    #[test]
    fn sequence_matches_single_evaluations() {
        for lambda in [0.0, 0.5, 1.0, 2.5] {
            let b = basis(lambda);
            for &x in &[-0.93, -0.2, 0.0, 0.41, 0.999] {
                let seq = b.eval_sequence(25, x).unwrap();
                for (n, v) in seq.iter().enumerate() {
                    assert_eq!(*v, b.eval(n, x).unwrap());
                }
            }
        }
    }

    #[test]
    fn matches_legendre_closed_forms() {
        let b = basis(0.5);
        for i in 0..=40 {
            let x = -1.0 + i as f64 / 20.0;
            for n in 0..=5 {
                assert!((b.eval(n, x).unwrap() - legendre_closed(n, x)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn matches_chebyshev_closed_form() {
        let b = basis(0.0);
        for i in 0..50 {
            let theta = i as f64 * PI / 49.0;
            for n in [0usize, 1, 2, 5, 17, 40] {
                let v = b.eval(n, theta.cos()).unwrap();
                assert!(
                    (v - (n as f64 * theta).cos()).abs() < 1e-12,
                    "n={n} θ={theta}"
                );
            }
        }
    }

    #[test]
    fn matches_explicit_gegenbauer_sum() {
        for lambda in [1.0, 1.5, 3.0] {
            let b = basis(lambda);
            for n in 0..12 {
                let at_one = gegenbauer_explicit(lambda, n, 1.0);
                for &x in &[-0.7, -0.1, 0.33, 0.8] {
                    let expected = gegenbauer_explicit(lambda, n, x) / at_one;
                    assert!((b.eval(n, x).unwrap() - expected).abs() < 1e-11);
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_domain() {
        let b = basis(0.5);
        assert!(matches!(b.eval(2, 1.0001), Err(Error::Domain { .. })));
        assert!(b.eval_sequence(2, f64::NAN).is_err());
        assert!(b.eval(MAX_DEGREE + 1, 0.0).is_err());
    }

    #[test]
    fn normalization_and_bound() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for lambda in [0.0, 0.5, 1.0, 1.5, 3.0] {
            let b = basis(lambda);
            for n in 0..=60 {
                assert_eq!(b.eval(n, 1.0).unwrap(), 1.0);
            }
            for _ in 0..1000 {
                let x: f64 = rng.random_range(-1.0..=1.0);
                for v in b.eval_sequence(60, x).unwrap() {
                    assert!(v.abs() <= 1.0 + 1e-12);
                }
            }
        }
    }

    #[test]
    fn parity() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for lambda in [0.0, 0.5, 2.0] {
            let b = basis(lambda);
            for _ in 0..200 {
                let x: f64 = rng.random_range(-1.0..=1.0);
                let pos = b.eval_sequence(40, x).unwrap();
                let neg = b.eval_sequence(40, -x).unwrap();
                for n in 0..=40 {
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    assert!((neg[n] - sign * pos[n]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn norms_closed_forms() {
        let b = basis(0.5);
        assert!((b.norm_squared(0) - 2.0).abs() < 1e-15);
        assert!((b.norm_squared(2) - 0.4).abs() < 1e-15);
        for n in 0..50 {
            assert!((b.norm_squared(n) - 2.0 / (2.0 * n as f64 + 1.0)).abs() < 1e-13);
        }
        assert_eq!(basis(0.0).norm_squared(0), PI);
        assert_eq!(basis(0.0).norm_squared(3), PI / 2.0);
        // λ = 1: Chebyshev of the second kind, U_n(1) = n + 1, ∫U_n² √(1-x²) = π/2.
        for n in 0..50 {
            let expected = PI / (2.0 * ((n + 1) as f64).powi(2));
            assert!((basis(1.0).norm_squared(n) / expected - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn quadrature_mass_and_moment() {
        let rule = quadrature(0.5, 10).unwrap();
        assert!((rule.weights.iter().sum::<f64>() - 2.0).abs() < 1e-10);
        assert!((rule.integrate(|x| x * x) - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_nodes_closed_form() {
        let rule = quadrature(0.0, 8).unwrap();
        let mut expected: Vec<f64> = (1..=8)
            .map(|k| ((2 * k - 1) as f64 * PI / 16.0).cos())
            .collect();
        expected.reverse();
        for (a, b) in rule.nodes.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((rule.weights.iter().sum::<f64>() - PI).abs() < 1e-13);
    }

    #[test]
    fn quadrature_rule_invariants() {
        for lambda in [0.0, 0.5, 1.0, 2.5, 5.0, 0.37] {
            for order in [1usize, 2, 3, 7, 40, 41, 128, 512] {
                let rule = quadrature(lambda, order).unwrap();
                assert_eq!(rule.len(), order);
                for w in rule.nodes.windows(2) {
                    assert!(w[0] < w[1]);
                }
                for i in 0..order {
                    assert!(rule.nodes[i].abs() < 1.0);
                    assert!((rule.nodes[i] + rule.nodes[order - 1 - i]).abs() <= 1e-12);
                    assert!(rule.weights[i] > 0.0);
                }
                let mass: f64 = rule.weights.iter().sum();
                assert!(
                    (mass - weight_mass(lambda)).abs() < 1e-10,
                    "λ={lambda} N={order} mass={mass}"
                );
            }
        }
    }

    #[test]
    fn quadrature_exactness_against_beta_moments() {
        // ∫ x^{2k} (1-x²)^{λ-1/2} dx = Γ(k+1/2) Γ(λ+1/2) / Γ(k+λ+1); odd moments vanish.
        for lambda in [0.0, 0.5, 1.0, 2.5] {
            for order in [1usize, 4, 9, 20] {
                let rule = quadrature(lambda, order).unwrap();
                for k in 0..(2 * order) {
                    let est = rule.integrate(|x| x.powi(k as i32));
                    let exact = if k % 2 == 1 {
                        0.0
                    } else {
                        let h = (k / 2) as f64;
                        (ln_gamma(h + 0.5) + ln_gamma(lambda + 0.5) - ln_gamma(h + lambda + 1.0))
                            .exp()
                    };
                    assert!((est - exact).abs() < 1e-10, "λ={lambda} N={order} k={k}");
                }
            }
        }
    }

    #[test]
    fn quadrature_rejects_bad_input() {
        assert!(quadrature(0.5, 0).is_err());
        assert!(quadrature(-1.0, 3).is_err());
        assert!(quadrature(f64::NAN, 3).is_err());
    }
}
