//! Airy function, its derivative, and the incomplete multiple Airy functions
//! `prod_k (-d/dX + s_k) Ai(X)`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::quadrature::{composite_legendre, quadrature_rule, QuadratureKind, QuadratureRule};
use crate::error::{Error, Result};

/// `Ai(0)`.
pub const AI_ZERO: f64 = 0.355_028_053_887_817_2;
/// `Ai'(0)`.
pub const AI_PRIME_ZERO: f64 = -0.258_819_403_792_806_8;

/// Above this point the exponentially small asymptotic expansion is used.
pub const POSITIVE_ASYMPTOTIC_FROM: f64 = 5.0;
/// Below this point the oscillatory asymptotic expansion is used.
pub const NEGATIVE_ASYMPTOTIC_FROM: f64 = -12.0;

/// `(Ai(x), Ai'(x))`.
pub fn airy(x: f64) -> (f64, f64) {
    if x >= POSITIVE_ASYMPTOTIC_FROM {
        airy_asymptotic_positive(x)
    } else if x >= 0.0 {
        taylor_step(0.0, AI_ZERO, AI_PRIME_ZERO, x)
    } else if x >= NEGATIVE_ASYMPTOTIC_FROM {
        // Both Airy solutions oscillate with equal amplitude on the negative
        // axis, so unit Taylor steps from the origin do not amplify error.
        let steps = x.abs().ceil().max(1.0) as usize;
        let h = x / steps as f64;
        let (mut y, mut dy) = (AI_ZERO, AI_PRIME_ZERO);
        for i in 0..steps {
            (y, dy) = taylor_step(i as f64 * h, y, dy, h);
        }
        (y, dy)
    } else {
        airy_asymptotic_negative(-x)
    }
}

/// Taylor series of the Airy equation `y'' = x y` about `x0`, evaluated at
/// `x0 + h`.
fn taylor_step(x0: f64, y0: f64, dy0: f64, h: f64) -> (f64, f64) {
    // a_{k+2} = (x0 a_k + a_{k-1}) / ((k+1)(k+2))
    let (mut a_km1, mut a_k, mut a_kp1) = (0.0f64, y0, dy0);
    let mut y = y0 + dy0 * h;
    let mut dy = dy0;
    let mut hk = h; // h^{k+1}
    let mut quiet = 0;
    for k in 0..400usize {
        let kf = k as f64;
        let a_kp2 = (x0 * a_k + a_km1) / ((kf + 1.0) * (kf + 2.0));
        let t = a_kp2 * hk * h;
        let dt = (kf + 2.0) * a_kp2 * hk;
        y += t;
        dy += dt;
        hk *= h;
        a_km1 = a_k;
        a_k = a_kp1;
        a_kp1 = a_kp2;
        if t.abs() <= 1e-18 * y.abs().max(1e-300) && dt.abs() <= 1e-18 * dy.abs().max(1e-300)
            || (t == 0.0 && dt == 0.0)
        {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    (y, dy)
}

/// `u_k` coefficients of the Airy asymptotic expansions.
fn u_coefficients(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    let mut u = 1.0f64;
    out.push((1.0, 1.0));
    for k in 1..n {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        out.push((u, v));
    }
    out
}

fn airy_asymptotic_positive(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let coef = u_coefficients(60);
    let (mut su, mut sv) = (0.0, 0.0);
    let (mut last_u, mut last_v) = (f64::INFINITY, f64::INFINITY);
    let mut zk = 1.0;
    let (mut u_live, mut v_live) = (true, true);
    for (k, &(u, v)) in coef.iter().enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let tu = u / zk;
        let tv = v / zk;
        if u_live {
            if tu.abs() > last_u {
                u_live = false;
            } else {
                su += sign * tu;
                last_u = tu.abs();
            }
        }
        if v_live {
            if tv.abs() > last_v {
                v_live = false;
            } else {
                sv += sign * tv;
                last_v = tv.abs();
            }
        }
        if !u_live && !v_live {
            break;
        }
        zk *= zeta;
    }
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = x.powf(0.25);
    (e / q * su, -e * q * sv)
}

fn airy_asymptotic_negative(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let coef = u_coefficients(60);
    // even/odd partial sums with alternating signs, truncated at the
    // smallest term
    let (mut ue, mut uo, mut ve, mut vo) = (0.0, 0.0, 0.0, 0.0);
    let mut last = f64::INFINITY;
    let mut zk = 1.0;
    for (k, &(u, v)) in coef.iter().enumerate() {
        let t = u.abs().max(v.abs()) / zk;
        if t > last {
            break;
        }
        last = t;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            ue += sign * u / zk;
            ve += sign * v / zk;
        } else {
            uo += sign * u / zk;
            vo += sign * v / zk;
        }
        zk *= zeta;
    }
    let phase = zeta - 0.25 * PI;
    let (s, c) = phase.sin_cos();
    let q = x.powf(0.25);
    let ai = (c * ue + s * uo) / (PI.sqrt() * q);
    let aip = q / PI.sqrt() * (s * ve - c * vo);
    (ai, aip)
}

/// Real polynomial with ascending coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly(pub Vec<f64>);

impl Poly {
    pub fn constant(c: f64) -> Self {
        Poly(vec![c])
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|&c| c != 0.0)
    }

    fn derivative(&self) -> Poly {
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    fn shift_up(&self) -> Poly {
        let mut v = vec![0.0];
        v.extend_from_slice(&self.0);
        Poly(v)
    }

    fn scale(&self, s: f64) -> Poly {
        Poly(self.0.iter().map(|c| c * s).collect())
    }

    fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0.0) + other.0.get(i).unwrap_or(&0.0))
                .collect(),
        )
    }
}

/// `a(X) Ai(X) + b(X) Ai'(X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AiryOperatorForm {
    pub a_poly: Poly,
    pub b_poly: Poly,
}

impl AiryOperatorForm {
    /// The bare `Ai(X)`.
    pub fn identity() -> Self {
        AiryOperatorForm {
            a_poly: Poly::constant(1.0),
            b_poly: Poly::default(),
        }
    }

    /// Applies `(-d/dX + s)`, reducing `Ai''` to `X Ai`.
    pub fn apply_shifted_derivative(&self, s: f64) -> Self {
        // d/dX (a Ai + b Ai') = (a' + X b) Ai + (a + b') Ai'
        let da = self.a_poly.derivative().add(&self.b_poly.shift_up());
        let db = self.a_poly.add(&self.b_poly.derivative());
        AiryOperatorForm {
            a_poly: self.a_poly.scale(s).add(&da.scale(-1.0)),
            b_poly: self.b_poly.scale(s).add(&db.scale(-1.0)),
        }
    }

    /// `prod_k (-d/dX + s_k) Ai(X)` as an operator form.
    pub fn for_shifts(s: &[f64]) -> Self {
        s.iter()
            .fold(Self::identity(), |f, &sk| f.apply_shifted_derivative(sk))
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (ai, aip) = airy(x);
        self.a_poly.eval(x) * ai + self.b_poly.eval(x) * aip
    }
}

/// `(-1)^{r+1} Ai^{(r+1)}(X, {s_k}) = prod_{k=1}^r (-d/dX + s_k) Ai(X)`,
/// with `r = s.len()`.
pub fn incomplete_airy(x: f64, s: &[f64]) -> f64 {
    AiryOperatorForm::for_shifts(s).eval(x)
}

/// Contour-integral evaluation of [`incomplete_airy`]:
/// `int_A exp(-X w + w^3/3) prod_k (w + s_k) dw / (2 pi i)`, with `A` the two
/// rays `arg w = ±pi/3` joined at the origin.
pub fn incomplete_airy_contour(x: f64, s: &[f64]) -> Result<f64> {
    let e = Complex64::from_polar(1.0, PI / 3.0);
    let complex_integrand = |t: f64| {
        let w = e * t;
        let mut f = (-x * w + w * w * w / 3.0).exp() * e;
        for &sk in s {
            f *= w + sk;
        }
        f / PI
    };
    let integrand = |t: f64| complex_integrand(t).im;
    // truncation: |integrand| <= exp(-t^3/3 - X t / 2) (t + max|s|)^r
    let smax = s.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let r = s.len() as f64;
    let mut upper = 1.0f64;
    while upper.powi(3) / 3.0 + 0.5 * x * upper - r * (upper + smax + 1.0).ln() < 60.0 {
        upper += 0.25;
    }
    let rule = legendre16();
    let modulus = composite_legendre(&rule, 0.0, upper, 64, |t| complex_integrand(t).norm());
    adaptive_panels(&rule, 0.0, upper, integrand, 1e-14, 1e-15 * modulus)
}

fn legendre16() -> QuadratureRule {
    quadrature_rule(QuadratureKind::GaussLegendre, 16).expect("fixed size rule")
}

/// Composite Gauss-Legendre with panel doubling until two successive
/// estimates agree to `rel_tol` of the absolute integral, or to the absolute
/// `noise` floor (rounding level of an integrand that cancels).
pub(crate) fn adaptive_panels<F: Fn(f64) -> f64>(
    rule: &QuadratureRule,
    a: f64,
    b: f64,
    f: F,
    rel_tol: f64,
    noise: f64,
) -> Result<f64> {
    let mut panels = 8;
    let mut prev = composite_legendre(rule, a, b, panels, &f);
    let mut delta = f64::INFINITY;
    for _ in 0..8 {
        panels *= 2;
        let cur = composite_legendre(rule, a, b, panels, &f);
        let scale = composite_legendre(rule, a, b, panels, |t| f(t).abs()).max(1e-300);
        delta = (cur - prev).abs();
        if delta <= rel_tol * scale || delta <= noise {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::QuadratureNonConvergence { delta })
}
