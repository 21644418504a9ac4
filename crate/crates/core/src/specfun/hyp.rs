//! Scalar confluent hypergeometric limit function `0F1(; c; z)`.

use num_complex::Complex64;
use statrs::function::gamma::gamma;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const MAX_TERMS: usize = 1_000_000;

/// Bessel-argument threshold `w = 2 sqrt(|z|)` above which negative real
/// arguments use the Hankel expansion.
fn asymptotic_threshold(nu: f64) -> f64 {
    20.0f64.max(2.0 * nu * nu)
}

fn is_nonpositive_integer(c: f64) -> bool {
    c <= 0.0 && c.fract() == 0.0
}

/// `0F1(; c; z) = sum_k z^k / ((c)_k k!)` for complex `z`.
///
/// Negative real arguments with large modulus switch to
/// `Gamma(c) x^{-nu/2} J_nu(2 sqrt x)` (`nu = c - 1`) with the Hankel
/// expansion of `J_nu`; the power series cancels catastrophically there.
pub fn hyp0f1(c: f64, z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(c) {
        return Err(Error::Hyp0f1Pole(c));
    }
    if z.im == 0.0 && z.re < 0.0 {
        let nu = c - 1.0;
        let w = 2.0 * (-z.re).sqrt();
        if w >= asymptotic_threshold(nu) {
            return Ok(Complex64::new(hyp0f1_negative_asymptotic(c, -z.re)?, 0.0));
        }
    }
    hyp0f1_series(c, z)
}

/// Real-argument convenience wrapper.
pub fn hyp0f1_real(c: f64, x: f64) -> Result<f64> {
    Ok(hyp0f1(c, Complex64::new(x, 0.0))?.re)
}

/// Power series summed until the terms stagnate below machine precision.
pub fn hyp0f1_series(c: f64, z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(c) {
        return Err(Error::Hyp0f1Pole(c));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut max_term = 1.0f64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= z / ((c + kf) * (kf + 1.0));
        sum += term;
        let t = term.norm();
        max_term = max_term.max(t);
        let decreasing = (kf + 1.0) * (c + kf).abs() > z.norm();
        if decreasing && (t <= 1e-17 * sum.norm() || t <= 1e-34 * max_term) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence { terms: MAX_TERMS })
}

/// `0F1(; c; -x)` for large positive `x` via the Hankel expansion of `J_nu`.
fn hyp0f1_negative_asymptotic(c: f64, x: f64) -> Result<f64> {
    let nu = c - 1.0;
    let w = 2.0 * x.sqrt();
    let (p, q) = hankel_pq(nu, w);
    let chi = w - 0.5 * nu * PI - 0.25 * PI;
    let j = (2.0 / (PI * w)).sqrt() * (p * chi.cos() - q * chi.sin());
    Ok(gamma(c) * x.powf(-0.5 * nu) * j)
}

/// Hankel `P(nu, w)` and `Q(nu, w)` sums, truncated at the smallest term.
fn hankel_pq(nu: f64, w: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let (mut p, mut q) = (1.0, 0.0);
    let mut a = 1.0f64;
    let mut last = f64::INFINITY;
    for k in 1..200usize {
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (k as f64 * 8.0 * w);
        let t = a.abs();
        if t > last || t < 1e-18 {
            break;
        }
        last = t;
        // a_k / w^k with sign (-1)^{floor(k/2)}
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
    }
    (p, q)
}
