//! Averaged characteristic polynomials of Gaussian and chiral Gaussian
//! ensembles with a source: closed forms by quadrature and by finite sums,
//! and the Monte Carlo estimator used to check them against samplers.

mod mc;

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::specfun::{
    hyp0f1_real, incomplete_hermite, laguerre_table, quadrature_rule, QuadratureKind, ScaledValue,
};

pub use mc::{log_product, mc_estimate, mc_product_estimate, Accumulator, MCEstimate};

/// Tolerance on the discarded imaginary part of the Gauss-Hermite route,
/// relative to the summed modulus.
pub const IMAGINARY_TOLERANCE: f64 = 1e-12;

/// Extra Gauss-Hermite nodes beyond `N`.
pub const HERMITE_EXTRA_NODES: usize = 8;

/// Extra Gauss-Laguerre nodes beyond `p`.
pub const LAGUERRE_EXTRA_NODES: usize = 40;

/// Sorted copy; every closed form sorts its source first so that permuting
/// the source reproduces the value bit for bit.
fn sorted(v: &[f64]) -> Vec<f64> {
    let mut v = v.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Elementary symmetric polynomials `e_0..e_n` of `v`.
pub fn elementary_symmetric(v: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; v.len() + 1];
    e[0] = 1.0;
    for (k, &x) in v.iter().enumerate() {
        for r in (1..=k + 1).rev() {
            e[r] += x * e[r - 1];
        }
    }
    e
}

/// `< prod_j (lambda - s_j + i x) >` over `x` with density `exp(-x^2)/sqrt(pi)`
/// by `m`-point Gauss-Hermite quadrature.
pub fn gauss_avg_quadrature(lambda: f64, s: &[f64], m: usize) -> Result<f64> {
    let n = s.len();
    if 2 * m < n + 1 {
        return Err(Error::InvalidArgument(format!(
            "{m} nodes cannot integrate degree {n} exactly"
        )));
    }
    let s = sorted(s);
    let rule = quadrature_rule(QuadratureKind::GaussHermite, m)?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut modulus = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let f: Complex64 = s.iter().map(|&sj| Complex64::new(lambda - sj, x)).product();
        sum += f * w;
        modulus += w * f.norm();
    }
    let mass = rule.kind.mass();
    let (value, residue) = (sum.re / mass, sum.im.abs() / mass);
    let tolerance = IMAGINARY_TOLERANCE * (modulus / mass).max(f64::MIN_POSITIVE);
    if residue > tolerance {
        return Err(Error::ImaginaryResidue { residue, tolerance });
    }
    Ok(value)
}

/// [`gauss_avg_quadrature`] with the default `N + 8` nodes.
pub fn gauss_avg(lambda: f64, s: &[f64]) -> Result<f64> {
    gauss_avg_quadrature(lambda, s, s.len() + HERMITE_EXTRA_NODES)
}

/// Finite-sum route: fixed points contribute `lambda - s_l`, each 2-cycle
/// `-1/2`, giving `sum_j (-1)^j 2^-j (2j-1)!! e_{N-2j}(lambda - s)`.
pub fn gauss_avg_combinatorial(lambda: f64, s: &[f64]) -> Result<f64> {
    let n = s.len();
    if n > 30 {
        return Err(Error::InvalidArgument(format!(
            "combinatorial route needs N <= 30, got {n}"
        )));
    }
    let shifted: Vec<f64> = sorted(s).iter().map(|&sj| lambda - sj).collect();
    let e = elementary_symmetric(&shifted);
    let mut total = 0.0;
    let mut pairing = 1.0; // (-1)^j 2^-j (2j-1)!!
    for j in 0..=n / 2 {
        if j > 0 {
            pairing *= -0.5 * (2 * j - 1) as f64;
        }
        total += pairing * e[n - 2 * j];
    }
    Ok(total)
}

/// Finite-sum route for the chiral ensemble:
/// `(-1)^p lambda^{n-p} sum_r e_r(s^2) (p-r)! L_{p-r}^{n-p}(lambda^2)`.
pub fn chiral_avg_series(lambda: f64, n: usize, p: usize, s: &[f64]) -> Result<f64> {
    check_chiral(n, p, s)?;
    let s2: Vec<f64> = s.iter().map(|v| v * v).collect();
    let inner = box_avg_series(lambda * lambda, (n - p) as f64, &s2)?;
    Ok(lambda.powi((n - p) as i32) * inner)
}

/// Quadrature route for the chiral ensemble: `lambda^{n-p}` times the
/// Wishart integral at `lambda^2` with source `s^2`.
pub fn chiral_avg_integral(lambda: f64, n: usize, p: usize, s: &[f64]) -> Result<f64> {
    check_chiral(n, p, s)?;
    let s2: Vec<f64> = s.iter().map(|v| v * v).collect();
    let inner = box_avg(lambda * lambda, (n - p) as f64, &s2)?;
    Ok(lambda.powi((n - p) as i32) * inner)
}

fn check_chiral(n: usize, p: usize, s: &[f64]) -> Result<()> {
    if n < p || s.len() != p {
        return Err(Error::InvalidArgument(format!(
            "need n >= p and p source entries (n = {n}, p = {p}, got {})",
            s.len()
        )));
    }
    Ok(())
}

/// `< det(lambda - (X + X0)^dagger (X + X0)) >` for an `n x p` data matrix
/// with source eigenvalues `mu`.
pub fn wishart_avg(lambda: f64, n: usize, p: usize, mu: &[f64]) -> Result<f64> {
    if n < p || mu.len() != p || mu.iter().any(|&m| m < 0.0) {
        return Err(Error::InvalidArgument(
            "need n >= p and p nonnegative mu".into(),
        ));
    }
    box_avg(lambda, (n - p) as f64, mu)
}

/// `(-1)^p e^lambda / Gamma(a+1) int_0^inf t^a e^-t 0F1(a+1; -lambda t)
/// prod_k (t + m_k) dt` by Gauss-Laguerre quadrature with `p + 40` nodes.
///
/// The prefactor `e^lambda` is applied in log-space after the quadrature
/// sum; the sum itself cancels down to `O(e^-lambda)`, so accuracy degrades
/// for large positive `lambda` (use [`box_avg_series`] there).
pub fn box_avg(lambda: f64, a: f64, m: &[f64]) -> Result<f64> {
    box_avg_nodes(lambda, a, m, m.len() + LAGUERRE_EXTRA_NODES)
}

/// [`box_avg`] with an explicit node count.
pub fn box_avg_nodes(lambda: f64, a: f64, m: &[f64], nodes: usize) -> Result<f64> {
    if !(a > -1.0) {
        return Err(Error::LaguerreParameter(a));
    }
    let m = sorted(m);
    let p = m.len();
    let rule = quadrature_rule(QuadratureKind::GaussLaguerre(a), nodes)?;
    let mut terms = Vec::with_capacity(nodes);
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let f = hyp0f1_real(a + 1.0, -lambda * t)?;
        let poly: f64 = m.iter().map(|&mk| t + mk).product();
        terms.push(ScaledValue::from_f64(w * f * poly));
    }
    let (sum, _) = ScaledValue::sum_with_magnitude(terms);
    let sign = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok((sum.scale_exp(lambda - ln_gamma(a + 1.0)) * sign).to_f64())
}

/// Finite-sum route: `(-1)^p sum_r e_r(m) (p-r)! L_{p-r}^a(lambda)`.
pub fn box_avg_series(lambda: f64, a: f64, m: &[f64]) -> Result<f64> {
    let p = m.len();
    let e = elementary_symmetric(&sorted(m));
    let lag = laguerre_table(p, a, lambda)?;
    let mut fact = 1.0;
    let mut terms = Vec::with_capacity(p + 1);
    // r = p down to 0, so (p - r)! builds incrementally
    for r in (0..=p).rev() {
        let k = p - r;
        if k > 0 {
            fact *= k as f64;
        }
        terms.push(lag[k] * (e[r] * fact));
    }
    let (sum, _) = ScaledValue::sum_with_magnitude(terms);
    let sign = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok((sum * sign).to_f64())
}

/// `(-1)^N (sqrt(pi)/2^N) e^{lambda^2} Gamma^{(r+1)}(lambda; {-2 x_k})`,
/// with `r` the number of nonzero entries of `x` and `N = x.len()`; equals
/// [`gauss_avg`] with source `x`.
pub fn incomplete_hermite_form(lambda: f64, x: &[f64]) -> Result<ScaledValue> {
    let n = x.len();
    let a: Vec<f64> = sorted(x)
        .iter()
        .filter(|&&v| v != 0.0)
        .map(|&v| -2.0 * v)
        .collect();
    let g = incomplete_hermite(n, lambda, &a)?;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let log_pref =
        0.5 * std::f64::consts::PI.ln() - n as f64 * std::f64::consts::LN_2 + lambda * lambda;
    Ok((g * sign).scale_exp(log_pref))
}
