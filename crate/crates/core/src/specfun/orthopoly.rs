//! Classical Hermite and Laguerre polynomials by three-term recurrence.
//!
//! The recurrences carry a running log-scale so that values far outside the
//! double range (the soft-edge regime) come out exactly in sign and to full
//! relative precision in modulus.

use super::ScaledValue;
use crate::error::{Error, Result};

const RESCALE_HI: f64 = 1e150;
const RESCALE_LO: f64 = 1e-150;

/// Runs a two-term recurrence `next = step(k, cur, prev)` for `k = 1..n`,
/// starting from `(p0, p1)`, and returns every value as a [`ScaledValue`].
fn scaled_recurrence<F>(n: usize, p0: f64, p1: f64, mut step: F) -> Vec<ScaledValue>
where
    F: FnMut(usize, f64, f64) -> f64,
{
    let mut out = Vec::with_capacity(n + 1);
    out.push(ScaledValue::from_f64(p0));
    if n == 0 {
        return out;
    }
    out.push(ScaledValue::from_f64(p1));
    let (mut prev, mut cur, mut log_scale) = (p0, p1, 0.0f64);
    for k in 1..n {
        let next = step(k, cur, prev);
        prev = cur;
        cur = next;
        let m = cur.abs().max(prev.abs());
        if m > RESCALE_HI || (m < RESCALE_LO && m > 0.0) {
            prev /= m;
            cur /= m;
            log_scale += m.ln();
        }
        out.push(ScaledValue::from_f64(cur).scale_exp(log_scale));
    }
    out
}

/// Physicists' Hermite polynomials `H_0(x), ..., H_n(x)`.
pub fn hermite_table(n: usize, x: f64) -> Vec<ScaledValue> {
    scaled_recurrence(n, 1.0, 2.0 * x, |k, cur, prev| {
        2.0 * x * cur - 2.0 * k as f64 * prev
    })
}

/// Physicists' Hermite polynomial `H_n(x)`.
pub fn hermite(n: usize, x: f64) -> ScaledValue {
    *hermite_table(n, x).last().expect("table is never empty")
}

/// Generalized Laguerre polynomials `L_0^a(x), ..., L_p^a(x)`.
pub fn laguerre_table(p: usize, a: f64, x: f64) -> Result<Vec<ScaledValue>> {
    if !(a > -1.0) {
        return Err(Error::LaguerreParameter(a));
    }
    Ok(scaled_recurrence(p, 1.0, 1.0 + a - x, |k, cur, prev| {
        let kf = k as f64;
        ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0)
    }))
}

/// Generalized Laguerre polynomial `L_p^a(x)`; rejects `a <= -1`.
pub fn laguerre(p: usize, a: f64, x: f64) -> Result<ScaledValue> {
    Ok(*laguerre_table(p, a, x)?
        .last()
        .expect("table is never empty"))
}

/// `exp(-x/2) * L_p^a(x)`, the combination used at the Laguerre soft edge.
pub fn laguerre_exp_weighted(p: usize, a: f64, x: f64) -> Result<ScaledValue> {
    Ok(laguerre(p, a, x)?.scale_exp(-0.5 * x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_low_degrees() {
        assert_eq!(hermite(0, 3.7).to_f64(), 1.0);
        assert_eq!(hermite(1, 2.0).to_f64(), 4.0);
        // H_2 = 4x^2 - 2
        assert!((hermite(2, 1.0).to_f64() - 2.0).abs() < 1e-15);
        // H_5(x) = 32x^5 - 160x^3 + 120x
        let x = 0.7f64;
        let h5 = 32.0 * x.powi(5) - 160.0 * x.powi(3) + 120.0 * x;
        assert!((hermite(5, x).to_f64() - h5).abs() < 1e-12);
    }

    #[test]
    fn hermite_odd_at_zero_is_exact_zero() {
        assert!(hermite(7, 0.0).is_zero());
        assert_eq!(hermite(6, 0.0).sign(), -1);
    }

    #[test]
    fn hermite_recurrence_holds_relative() {
        for n in 1..50usize {
            for &x in &[-10.0, -3.3, -0.4, 0.9, 2.5, 7.1, 10.0] {
                let t = hermite_table(n + 1, x);
                let lhs = t[n + 1];
                let rhs = t[n] * (2.0 * x) - t[n - 1] * (2.0 * n as f64);
                let scale = (t[n] * (2.0 * x)).abs() + (t[n - 1] * (2.0 * n as f64)).abs();
                let err = (lhs - rhs).abs();
                assert!(
                    err.is_zero() || (err / scale).to_f64() < 1e-10,
                    "n={n} x={x}"
                );
            }
        }
    }

    #[test]
    fn hermite_beyond_double_range() {
        let n = 300;
        let x = (2.0 * n as f64).sqrt();
        let h = hermite(n, x);
        assert!(h.to_finite().is_none());
        assert_eq!(h.sign(), 1);
    }

    #[test]
    fn laguerre_low_degrees() {
        assert_eq!(laguerre(0, 1.5, 9.0).unwrap().to_f64(), 1.0);
        assert!((laguerre(1, 2.0, 1.0).unwrap().to_f64() - 2.0).abs() < 1e-15);
        assert!((laguerre(2, 0.0, 0.0).unwrap().to_f64() - 1.0).abs() < 1e-15);
        // L_2^a(x) = (x^2 - 2(a+2)x + (a+1)(a+2)) / 2
        let (a, x) = (0.3f64, 1.7f64);
        let l2 = (x * x - 2.0 * (a + 2.0) * x + (a + 1.0) * (a + 2.0)) / 2.0;
        assert!((laguerre(2, a, x).unwrap().to_f64() - l2).abs() < 1e-14);
    }

    #[test]
    fn laguerre_at_zero_is_binomial() {
        // L_p^a(0) = binom(p + a, p)
        let a = 2.0;
        let mut binom = 1.0;
        for p in 0..20usize {
            if p > 0 {
                binom *= (p as f64 + a) / p as f64;
            }
            let v = laguerre(p, a, 0.0).unwrap().to_f64();
            assert!((v - binom).abs() < 1e-12 * binom);
        }
    }

    #[test]
    fn laguerre_rejects_bad_parameter() {
        assert_eq!(
            laguerre(3, -1.0, 0.5).unwrap_err(),
            Error::LaguerreParameter(-1.0)
        );
    }

    #[test]
    fn exp_weighted_mode() {
        let v = laguerre_exp_weighted(3, 0.5, 2.0).unwrap().to_f64();
        let w = laguerre(3, 0.5, 2.0).unwrap().to_f64() * (-1.0f64).exp();
        assert!((v - w).abs() < 1e-14);
    }
}
