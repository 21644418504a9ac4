//! Jack polynomials `P_kappa(x; alpha)` and the truncated hypergeometric
//! series of two matrix arguments built from them.
//!
//! Evaluation uses the branching rule
//! `P_kappa(x_1..x_n) = sum_mu psi_{kappa/mu} x_n^{|kappa/mu|} P_mu(x_1..x_{n-1})`
//! over horizontal strips `kappa/mu`. The branching coefficients depend only on
//! `(kappa, n, alpha)` and are cached per [`JackContext`].

mod partition;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
pub use partition::Partition;

/// Default truncation degree of the hypergeometric series.
pub const DEFAULT_MAX_DEGREE: usize = 20;

/// Relative tail level above which a truncated series is flagged.
pub const TAIL_TOLERANCE: f64 = 1e-10;

type Branching = Arc<Vec<(Partition, f64)>>;

/// Jack parameter, degree cap, and the branching-coefficient cache.
///
/// The cache is read-mostly; concurrent population is idempotent.
#[derive(Debug)]
pub struct JackContext {
    alpha: f64,
    max_degree: usize,
    branching: RwLock<HashMap<(Partition, usize), Branching>>,
}

/// A truncated series value with its tail estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    /// Geometric extrapolation of the omitted shells from the last two.
    pub tail: f64,
    /// `tail <= TAIL_TOLERANCE * max(1, |value|)`.
    pub converged: bool,
}

impl JackContext {
    pub fn new(alpha: f64, max_degree: usize) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "alpha must be > 0, got {alpha}"
            )));
        }
        Ok(JackContext {
            alpha,
            max_degree,
            branching: RwLock::new(HashMap::new()),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn check_degree(&self, k: &Partition) -> Result<()> {
        if k.weight() > self.max_degree {
            return Err(Error::DegreeLimit {
                degree: k.weight(),
                limit: self.max_degree,
            });
        }
        Ok(())
    }

    /// `b_lambda(s) = (alpha a + l + 1) / (alpha a + l + alpha)`.
    fn b(&self, lam: &Partition, conj: &Partition, i: usize, j: usize) -> f64 {
        let a = lam.arm(i, j) as f64;
        let l = Partition::leg_with(conj, i, j) as f64;
        (self.alpha * a + l + 1.0) / (self.alpha * a + l + self.alpha)
    }

    /// `psi_{kappa/mu} = prod_{s in R - C} b_mu(s) / b_kappa(s)`, with `R`
    /// (`C`) the rows (columns) meeting the strip.
    fn psi(&self, kappa: &Partition, mu: &Partition) -> f64 {
        let (kc, mc) = (kappa.conjugate(), mu.conjugate());
        let rows: Vec<bool> = (0..kappa.len())
            .map(|i| kappa.part(i) > mu.part(i))
            .collect();
        let in_strip_col =
            |j: usize| (0..kappa.len()).any(|i| mu.part(i) <= j && j < kappa.part(i));
        let mut out = 1.0;
        for (i, j) in mu.cells() {
            if rows[i] && !in_strip_col(j) {
                out *= self.b(mu, &mc, i, j) / self.b(kappa, &kc, i, j);
            }
        }
        out
    }

    /// Horizontal strips `kappa/mu` with `len(mu) <= n - 1`, with their
    /// coefficients.
    fn branching(&self, kappa: &Partition, n: usize) -> Branching {
        let key = (kappa.clone(), n);
        if let Some(b) = self.branching.read().expect("cache lock").get(&key) {
            return b.clone();
        }
        let mut out = Vec::new();
        let rows = n - 1;
        let mut mu = vec![0usize; rows];
        strips(kappa, 0, &mut mu, &mut |m| {
            let mu = Partition::from_sorted(m.iter().copied().filter(|&p| p > 0).collect());
            let c = self.psi(kappa, &mu);
            out.push((mu, c));
        });
        let b = Arc::new(out);
        self.branching
            .write()
            .expect("cache lock")
            .entry(key)
            .or_insert(b)
            .clone()
    }

    /// `P_kappa(x; alpha)`, normalized so that the leading monomial has
    /// coefficient 1.
    pub fn jack_poly(&self, kappa: &Partition, x: &[Complex64]) -> Result<Complex64> {
        self.check_degree(kappa)?;
        let mut memo = HashMap::new();
        Ok(self.eval(kappa, x, &mut memo))
    }

    fn eval(
        &self,
        kappa: &Partition,
        x: &[Complex64],
        memo: &mut HashMap<(Partition, usize), Complex64>,
    ) -> Complex64 {
        let n = x.len();
        if kappa.len() > n {
            return Complex64::new(0.0, 0.0);
        }
        if kappa.is_empty() {
            return Complex64::new(1.0, 0.0);
        }
        if n == 1 {
            return x[0].powu(kappa.weight() as u32);
        }
        let key = (kappa.clone(), n);
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let last = x[n - 1];
        let mut total = Complex64::new(0.0, 0.0);
        for (mu, c) in self.branching(kappa, n).iter() {
            let sub = self.eval(mu, &x[..n - 1], memo);
            total += sub * last.powu((kappa.weight() - mu.weight()) as u32) * *c;
        }
        memo.insert(key, total);
        total
    }

    /// `P_kappa(1^n)` from the closed product formula.
    pub fn at_ones(&self, kappa: &Partition, n: usize) -> f64 {
        let conj = kappa.conjugate();
        kappa
            .cells()
            .map(|(i, j)| {
                let num = n as f64 - i as f64 + self.alpha * j as f64;
                let a = kappa.arm(i, j) as f64;
                let l = Partition::leg_with(&conj, i, j) as f64;
                num / (self.alpha * a + l + 1.0)
            })
            .product()
    }

    /// `d'_kappa`.
    pub fn dprime(&self, kappa: &Partition) -> f64 {
        dprime(kappa, self.alpha)
    }

    /// Sum of `alpha^|k| P_k(x) P_k(y) / (d'_k P_k(1^N) w(k))` over
    /// `|k| <= K`, with `w` an extra per-partition divisor.
    fn two_argument_series<W>(
        &self,
        x: &[Complex64],
        y: &[Complex64],
        k_max: usize,
        divisor: W,
    ) -> Result<SeriesValue>
    where
        W: Fn(&Partition) -> Result<f64>,
    {
        if x.len() != y.len() {
            return Err(Error::InvalidArgument(format!(
                "argument lengths differ: {} vs {}",
                x.len(),
                y.len()
            )));
        }
        if k_max > self.max_degree {
            return Err(Error::DegreeLimit {
                degree: k_max,
                limit: self.max_degree,
            });
        }
        let n = x.len();
        let (mut mx, mut my) = (HashMap::new(), HashMap::new());
        let mut shells = Vec::with_capacity(k_max + 1);
        for shell in Partition::up_to_weight(k_max, n) {
            let mut s = Complex64::new(0.0, 0.0);
            for kappa in &shell {
                let px = self.eval(kappa, x, &mut mx);
                let py = self.eval(kappa, y, &mut my);
                let denom = self.dprime(kappa) * self.at_ones(kappa, n) * divisor(kappa)?;
                s += px * py * self.alpha.powi(kappa.weight() as i32) / denom;
            }
            shells.push(s);
        }
        let value: Complex64 = shells.iter().sum();
        let tail = tail_estimate(&shells);
        Ok(SeriesValue {
            value,
            tail,
            converged: tail <= TAIL_TOLERANCE * value.norm().max(1.0),
        })
    }

    /// Truncated `0F0^{(alpha)}(x; y)`.
    pub fn hyper_0f0(&self, x: &[Complex64], y: &[Complex64], k_max: usize) -> Result<SeriesValue> {
        self.two_argument_series(x, y, k_max, |_| Ok(1.0))
    }

    /// Truncated `0F1^{(alpha)}(c; x; y)`.
    /// [`gaussian_source_density`] at `beta = 2 / alpha`, reusing this
    /// context's branching memo.
    pub fn gaussian_source_density(
        &self,
        lambda: &[f64],
        mu: &[f64],
        k_max: usize,
    ) -> Result<SeriesValue> {
        let n = lambda.len();
        if n != mu.len() || n == 0 || n > 3 {
            return Err(Error::InvalidArgument(format!(
                "density needs equal lengths 1..=3, got {} and {}",
                n,
                mu.len()
            )));
        }
        let beta = 2.0 / self.alpha;
        let mut vander = 1.0;
        for j in 0..n {
            for k in j + 1..n {
                vander *= (lambda[k] - lambda[j]).abs().powf(beta);
            }
        }
        let gauss = (-0.5
            * (lambda.iter().map(|l| l * l).sum::<f64>() + mu.iter().map(|m| m * m).sum::<f64>()))
        .exp();
        let f = if mu.iter().all(|&m| m == 0.0) {
            SeriesValue {
                value: Complex64::new(1.0, 0.0),
                tail: 0.0,
                converged: true,
            }
        } else {
            self.hyper_0f0(&real_vec(lambda), &real_vec(mu), k_max)?
        };
        let scale = vander * gauss;
        Ok(SeriesValue {
            value: f.value * scale,
            tail: f.tail * scale,
            converged: f.converged,
        })
    }

    pub fn hyper_0f1(
        &self,
        c: f64,
        x: &[Complex64],
        y: &[Complex64],
        k_max: usize,
    ) -> Result<SeriesValue> {
        self.two_argument_series(x, y, k_max, |k| gen_pochhammer(c, k, self.alpha))
    }
}

/// Visits every `mu` with `kappa_{i+1} <= mu_i <= kappa_i` on the given
/// rows; the caller guarantees `len(kappa) <= mu.len() + 1`.
fn strips(kappa: &Partition, i: usize, mu: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
    if i == mu.len() {
        visit(mu);
        return;
    }
    for m in kappa.part(i + 1)..=kappa.part(i) {
        mu[i] = m;
        strips(kappa, i + 1, mu, visit);
    }
}

fn tail_estimate(shells: &[Complex64]) -> f64 {
    let k = shells.len();
    if k < 2 {
        return if shells.first().is_some_and(|s| s.norm() > 0.0) {
            f64::INFINITY
        } else {
            0.0
        };
    }
    let (last, prev) = (shells[k - 1].norm(), shells[k - 2].norm());
    if last == 0.0 {
        return 0.0;
    }
    if prev == 0.0 {
        return f64::INFINITY;
    }
    let r = last / prev;
    if r >= 1.0 {
        f64::INFINITY
    } else {
        last * r / (1.0 - r)
    }
}

/// `d'_kappa = prod_{s in kappa} (alpha (a(s) + 1) + l(s))`.
pub fn dprime(kappa: &Partition, alpha: f64) -> f64 {
    let conj = kappa.conjugate();
    kappa
        .cells()
        .map(|(i, j)| {
            alpha * (kappa.arm(i, j) as f64 + 1.0) + Partition::leg_with(&conj, i, j) as f64
        })
        .product()
}

/// Generalized Pochhammer symbol
/// `[c]_kappa = prod_j (c - (j - 1)/alpha)_{kappa_j}`, as rising factorials.
pub fn gen_pochhammer(c: f64, kappa: &Partition, alpha: f64) -> Result<f64> {
    let mut out = 1.0;
    for (j, &kj) in kappa.parts().iter().enumerate() {
        let base = c - j as f64 / alpha;
        for t in 0..kj {
            let f = base + t as f64;
            if f == 0.0 {
                return Err(Error::PochhammerPole { row: j + 1 });
            }
            out *= f;
        }
    }
    Ok(out)
}

/// [`JackContext::jack_poly`] with a throwaway context.
pub fn jack_poly(kappa: &Partition, x: &[Complex64], alpha: f64) -> Result<Complex64> {
    JackContext::new(alpha, kappa.weight().max(DEFAULT_MAX_DEGREE))?.jack_poly(kappa, x)
}

fn real_vec(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&t| Complex64::new(t, 0.0)).collect()
}

/// Truncated `0F0^{(alpha)}(x; y)` for real arguments.
pub fn hyper_0f0(x: &[f64], y: &[f64], alpha: f64, k_max: usize) -> Result<SeriesValue> {
    JackContext::new(alpha, k_max)?.hyper_0f0(&real_vec(x), &real_vec(y), k_max)
}

/// Truncated `0F1^{(alpha)}(c; x; y)` for real arguments.
pub fn hyper_0f1(c: f64, x: &[f64], y: &[f64], alpha: f64, k_max: usize) -> Result<SeriesValue> {
    JackContext::new(alpha, k_max)?.hyper_0f1(c, &real_vec(x), &real_vec(y), k_max)
}

/// Unnormalized eigenvalue density of the Gaussian beta ensemble with source
/// `mu`: `prod_{j<k} |l_k - l_j|^beta exp(-sum l^2/2 - sum mu^2/2)
/// 0F0^{(2/beta)}(l; mu)`, for `N <= 3`.
///
/// Builds a fresh [`JackContext`]; use [`JackContext::gaussian_source_density`]
/// for repeated evaluation.
pub fn gaussian_source_density(
    lambda: &[f64],
    mu: &[f64],
    beta: f64,
    k_max: usize,
) -> Result<SeriesValue> {
    if !(beta > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "beta must be > 0, got {beta}"
        )));
    }
    JackContext::new(2.0 / beta, k_max)?.gaussian_source_density(lambda, mu, k_max)
}

#[cfg(test)]
mod tests;
