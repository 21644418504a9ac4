//! Incomplete multiple Hermite polynomial
//! `Gamma^{(r+1)}(u; {a_k}) = int_{-i inf}^{i inf} exp(y^2/4 + u y) y^{N-r} prod_j (y - a_j) dy / (2 pi i)`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::airy::adaptive_panels;
use super::orthopoly::hermite_table;
use super::quadrature::{quadrature_rule, QuadratureKind};
use super::ScaledValue;
use crate::error::{Error, Result};

/// Default cap on the Hermite degree used by the expansion route.
pub const DEFAULT_DEGREE_LIMIT: usize = 1 << 16;

/// Largest `N` accepted by the contour route.
pub const CONTOUR_MAX_N: usize = 40;

/// Coefficients of `prod_j (y - a_j)`, ascending, by repeated convolution.
pub fn poly_from_roots(roots: &[f64]) -> Vec<f64> {
    let mut c = vec![1.0];
    for &a in roots {
        let mut next = vec![0.0; c.len() + 1];
        for (k, &ck) in c.iter().enumerate() {
            next[k + 1] += ck;
            next[k] -= a * ck;
        }
        c = next;
    }
    c
}

/// Expansion route: with `prod_j (y - a_j) = sum_m c_m y^m` and the moments
/// `int exp(y^2/4 + u y) y^k dy/(2 pi i) = (-1)^k H_k(u) exp(-u^2) / sqrt(pi)`,
/// the integral is a finite signed sum of Hermite values.
///
/// `r = a.len()`; requires `r <= n`.
pub fn incomplete_hermite(n: usize, u: f64, a: &[f64]) -> Result<ScaledValue> {
    incomplete_hermite_capped(n, u, a, DEFAULT_DEGREE_LIMIT)
}

/// [`incomplete_hermite`] with an explicit cap on the Hermite degree.
pub fn incomplete_hermite_capped(
    n: usize,
    u: f64,
    a: &[f64],
    degree_limit: usize,
) -> Result<ScaledValue> {
    let r = a.len();
    if r > n {
        return Err(Error::InvalidArgument(format!(
            "incomplete Hermite needs r <= N (r = {r}, N = {n})"
        )));
    }
    if n > degree_limit {
        return Err(Error::DegreeLimit {
            degree: n,
            limit: degree_limit,
        });
    }
    let coeffs = poly_from_roots(a);
    let table = hermite_table(n, u);
    let terms = coeffs.iter().enumerate().map(|(m, &c)| {
        let k = n - r + m;
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        table[k] * (sign * c)
    });
    let (sum, _) = ScaledValue::sum_with_magnitude(terms);
    Ok(sum.scale_exp(-u * u - 0.5 * PI.ln()))
}

/// Contour route along the vertical line `y = y0 + i t`, used as an
/// independent check of [`incomplete_hermite`].
///
/// `y0 = -u + sqrt(u^2 - 2(N - r))` when real, else `-u`; for `N = r` the
/// saddle of `exp(y^2/4 + u y)` at `-2u`.
pub fn incomplete_hermite_contour(n: usize, u: f64, a: &[f64]) -> Result<ScaledValue> {
    let r = a.len();
    if r > n {
        return Err(Error::InvalidArgument(format!(
            "incomplete Hermite needs r <= N (r = {r}, N = {n})"
        )));
    }
    if n > CONTOUR_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "contour route supports N <= {CONTOUR_MAX_N}"
        )));
    }
    let disc = u * u - 2.0 * (n - r) as f64;
    let y0 = if n == r {
        -2.0 * u
    } else if disc >= 0.0 {
        -u + disc.sqrt()
    } else {
        -u
    };
    let log_integrand = |t: f64| -> Complex64 {
        let y = Complex64::new(y0, t);
        let mut l = y * y / 4.0 + u * y;
        if n > r {
            l += (n - r) as f64 * y.ln();
        }
        for &aj in a {
            l += (y - aj).ln();
        }
        l
    };
    // integrate (1/pi) Re F(y0 + i t) over t >= 0, with F rescaled by the
    // peak modulus on a coarse grid
    let amax = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut upper = 2.0f64;
    loop {
        let t = upper;
        let bound =
            -(t * t) / 4.0 + n as f64 * (t + y0.abs() + amax + 1.0).ln() + (y0 * y0) / 4.0 + u * y0;
        let peak = peak_log(&log_integrand, upper);
        if bound < peak - 80.0 {
            break;
        }
        upper += 1.0;
    }
    let peak = peak_log(&log_integrand, upper);
    let f = |t: f64| {
        let l = log_integrand(t);
        if !l.re.is_finite() {
            return 0.0;
        }
        (l - peak).exp().re / PI
    };
    let rule = quadrature_rule(QuadratureKind::GaussLegendre, 16)?;
    let modulus = super::quadrature::composite_legendre(&rule, 0.0, upper, 64, |t| {
        let l = log_integrand(t);
        if l.re.is_finite() {
            (l.re - peak).exp() / PI
        } else {
            0.0
        }
    });
    let val = adaptive_panels(&rule, 0.0, upper, f, 1e-15, 1e-15 * modulus)?;
    let mag = super::quadrature::composite_legendre(&rule, 0.0, upper, 256, |t| f(t).abs());
    if val == 0.0 || mag / val.abs() > 1e12 {
        if mag > 0.0 && val.abs() < 1e-300 {
            return Ok(ScaledValue::ZERO);
        }
        return Err(Error::Cancellation {
            ratio: mag / val.abs(),
        });
    }
    Ok(ScaledValue::from_f64(val).scale_exp(peak))
}

fn peak_log<F: Fn(f64) -> Complex64>(f: &F, upper: f64) -> f64 {
    (0..=400)
        .map(|i| upper * i as f64 / 400.0)
        .map(|t| f(t).re)
        .filter(|v| v.is_finite())
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::hermite;

    #[test]
    fn odd_integrand_vanishes() {
        assert!(incomplete_hermite(1, 0.0, &[]).unwrap().is_zero());
        let c = incomplete_hermite_contour(1, 0.0, &[]).unwrap();
        assert!(c.to_f64().abs() < 1e-14);
    }

    #[test]
    fn moment_identity_for_r_zero() {
        for n in 0..=30usize {
            for &u in &[-2.0, -0.3, 0.0, 0.8, 3.1] {
                let g = incomplete_hermite(n, u, &[]).unwrap();
                let back = g.scale_exp(u * u + 0.5 * PI.ln()) * if n % 2 == 0 { 1.0 } else { -1.0 };
                let h = hermite(n, u);
                if h.is_zero() {
                    assert!(back.is_zero());
                } else {
                    assert!(((back - h) / h).abs().to_f64() < 1e-10, "n={n} u={u}");
                }
            }
        }
    }

    #[test]
    fn contour_moment_identity() {
        let g = incomplete_hermite_contour(4, 1.0, &[]).unwrap().to_f64();
        let expect = hermite(4, 1.0).to_f64() * (-1.0f64).exp() / PI.sqrt();
        assert!((g - expect).abs() < 1e-12 * expect.abs());
    }

    #[test]
    fn contour_matches_expansion_examples() {
        let cases: [(usize, f64, Vec<f64>); 2] = [(3, 0.5, vec![1.0]), (5, 0.3, vec![-1.0, 2.0])];
        for (n, u, a) in cases {
            let e = incomplete_hermite(n, u, &a).unwrap().to_f64();
            let c = incomplete_hermite_contour(n, u, &a).unwrap().to_f64();
            assert!((e - c).abs() <= 1e-8 * e.abs(), "n={n}: {e} vs {c}");
        }
    }

    #[test]
    fn degree_limit_flag() {
        assert_eq!(
            incomplete_hermite_capped(50, 0.1, &[1.0], 40).unwrap_err(),
            Error::DegreeLimit {
                degree: 50,
                limit: 40
            }
        );
    }

    #[test]
    fn poly_from_roots_expands() {
        assert_eq!(poly_from_roots(&[1.0, -2.0]), vec![-2.0, 1.0, 1.0]);
    }
}
