//! Real spherical harmonics on `S^2` and harmonic-space dimensions on `S^d`.
//!
//! Harmonics are orthonormal over the surface measure of the unit sphere
//! (total area `4π`) and carry no Condon-Shortley phase:
//!
//! ```text
//! Y_{n,0}  = N_{n,0} P_n(cos θ)
//! Y_{n,m}  = √2 N_{n,m} P_n^m(cos θ) cos(mφ)    (m > 0)
//! Y_{n,-m} = √2 N_{n,m} P_n^m(cos θ) sin(mφ)
//! ```
//!
//! with `N_{n,m} = sqrt((2n+1)/(4π) · (n-m)!/(n+m)!)`. Values for degree `n`
//! occupy indices `n² .. (n+1)²`, ordered `m = -n, ..., n`.

use std::f64::consts::PI;

/// Dimension `N(d, n)` of the space of degree-`n` spherical harmonics on `S^d`:
/// `1` for `n = 0`, otherwise `(2n + d - 1) (n + d - 2)! / (n! (d - 1)!)`.
///
/// # Panics
/// If `d == 0` or the result overflows `u128`.
pub fn harmonic_dimension(d: u32, n: u32) -> u128 {
    assert!(d >= 1, "sphere dimension must be >= 1");
    if n == 0 {
        return 1;
    }
    let (d, n) = (u128::from(d), u128::from(n));
    // (n + d - 2)! / (n! (d - 1)!) = Π_{k=1}^{d-2} (n + k) / (d - 1)!, times (2n + d - 1).
    let mut num: u128 = 2 * n + d - 1;
    let mut den: u128 = 1;
    for k in 1..d.saturating_sub(1) {
        num = num.checked_mul(n + k).expect("harmonic dimension overflow");
        den = den.checked_mul(k + 1).expect("harmonic dimension overflow");
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    if d == 1 {
        // (n - 1)! / n! = 1 / n
        den = n;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    debug_assert_eq!(den, 1);
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Number of real harmonics of degree `<= n_max` on `S^2`.
pub fn harmonic_count_s2(n_max: usize) -> usize {
    (n_max + 1) * (n_max + 1)
}

/// All real harmonics `Y_{n,m}(p)`, `n <= n_max`, at a unit vector `p ∈ R^3`.
pub fn real_spherical_harmonics(n_max: usize, p: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; harmonic_count_s2(n_max)];
    fill_real_spherical_harmonics(n_max, p, &mut out);
    out
}

pub(crate) fn fill_real_spherical_harmonics(n_max: usize, p: &[f64], out: &mut [f64]) {
    debug_assert_eq!(p.len(), 3);
    debug_assert_eq!(out.len(), harmonic_count_s2(n_max));
    let z = p[2].clamp(-1.0, 1.0);
    let rho = (p[0] * p[0] + p[1] * p[1]).sqrt();
    let sin_theta = rho;
    let (cos_phi, sin_phi) = if rho > 0.0 {
        (p[0] / rho, p[1] / rho)
    } else {
        (1.0, 0.0)
    };

    // Fully normalized associated Legendre functions p̄_n^m (without the
    // 1/√(4π) and √2 factors baked in below), computed per order m.
    let inv_sqrt_4pi = 1.0 / (4.0 * PI).sqrt();
    let sqrt2 = std::f64::consts::SQRT_2;

    let mut pmm = inv_sqrt_4pi; // p̄_0^0
    let (mut cos_m, mut sin_m) = (1.0, 0.0); // cos(mφ), sin(mφ)
    for m in 0..=n_max {
        if m > 0 {
            let mf = m as f64;
            pmm *= ((2.0 * mf + 1.0) / (2.0 * mf)).sqrt() * sin_theta;
            (cos_m, sin_m) = (
                cos_m * cos_phi - sin_m * sin_phi,
                sin_m * cos_phi + cos_m * sin_phi,
            );
        }
        let mut emit = |n: usize, v: f64| {
            if m == 0 {
                out[n * n + n] = v;
            } else {
                out[n * n + n + m] = sqrt2 * v * cos_m;
                out[n * n + n - m] = sqrt2 * v * sin_m;
            }
        };
        emit(m, pmm);
        if m == n_max {
            break;
        }
        let mf = m as f64;
        let mut prev = pmm;
        let mut cur = (2.0 * mf + 3.0).sqrt() * z * pmm;
        emit(m + 1, cur);
        for n in (m + 2)..=n_max {
            let nf = n as f64;
            let a = ((4.0 * nf * nf - 1.0) / (nf * nf - mf * mf)).sqrt();
            let b = (((nf - 1.0).powi(2) - mf * mf) / (4.0 * (nf - 1.0).powi(2) - 1.0)).sqrt();
            let next = a * (z * cur - b * prev);
            prev = cur;
            cur = next;
            emit(n, cur);
        }
    }
}
