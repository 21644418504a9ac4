//! Monte Carlo mean and standard error of complex-valued statistics.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ensembles::{run_workers, EigenSample};
use crate::error::{Error, Result};
use rand_chacha::ChaCha8Rng;

/// Largest log-modulus decoded into a double.
const LOG_DECODE_LIMIT: f64 = 700.0;

/// Sample mean of a complex statistic with per-component standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: Complex64,
    /// `sqrt(se_re^2 + se_im^2)`.
    pub stderr: f64,
    pub se_re: f64,
    pub se_im: f64,
    pub n_samples: usize,
}

impl MCEstimate {
    /// Largest componentwise `|mean - exact| / se`; a zero standard error
    /// counts only if the component differs.
    pub fn z_against(&self, exact: Complex64) -> f64 {
        z_component(self.mean.re - exact.re, self.se_re)
            .max(z_component(self.mean.im - exact.im, self.se_im))
    }

    /// Componentwise z-score of the difference of two independent estimates.
    pub fn z_between(&self, other: &MCEstimate) -> f64 {
        let se_re = self.se_re.hypot(other.se_re);
        let se_im = self.se_im.hypot(other.se_im);
        z_component(self.mean.re - other.mean.re, se_re)
            .max(z_component(self.mean.im - other.mean.im, se_im))
    }
}

fn z_component(diff: f64, se: f64) -> f64 {
    if se > 0.0 {
        diff.abs() / se
    } else if diff.abs() <= 1e-12 * (1.0 + diff.abs()) {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Streaming Welford accumulator for the real and imaginary parts; partial
/// accumulators merge exactly (Chan et al.).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Accumulator {
    n: usize,
    mean: Complex64,
    m2_re: f64,
    m2_im: f64,
    overflow: bool,
    log_abs_sum: f64,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, z: Complex64) {
        self.n += 1;
        let n = self.n as f64;
        let d = z - self.mean;
        self.mean += d / n;
        let d2 = z - self.mean;
        self.m2_re += d.re * d2.re;
        self.m2_im += d.im * d2.im;
        self.log_abs_sum += z.norm().ln();
    }

    /// Pushes a product given as log-modulus and phase; products out of
    /// double range set the overflow flag instead.
    pub fn push_log(&mut self, log_abs: f64, phase: Complex64) {
        if log_abs > LOG_DECODE_LIMIT {
            self.overflow = true;
            self.n += 1;
            self.log_abs_sum += log_abs;
            return;
        }
        self.push(phase * log_abs.exp());
    }

    pub fn merge(&mut self, other: &Accumulator) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let (na, nb) = (self.n as f64, other.n as f64);
        let n = na + nb;
        let d = other.mean - self.mean;
        self.mean += d * (nb / n);
        self.m2_re += other.m2_re + d.re * d.re * na * nb / n;
        self.m2_im += other.m2_im + d.im * d.im * na * nb / n;
        self.n += other.n;
        self.overflow |= other.overflow;
        self.log_abs_sum += other.log_abs_sum;
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn finish(&self) -> Result<MCEstimate> {
        if self.n < 2 {
            return Err(Error::InvalidArgument("need at least 2 samples".into()));
        }
        if self.overflow {
            return Err(Error::ProductOverflow {
                log_abs_mean: self.log_abs_sum / self.n as f64,
            });
        }
        let n = self.n as f64;
        let se_re = (self.m2_re / (n - 1.0) / n).sqrt();
        let se_im = (self.m2_im / (n - 1.0) / n).sqrt();
        Ok(MCEstimate {
            mean: self.mean,
            stderr: se_re.hypot(se_im),
            se_re,
            se_im,
            n_samples: self.n,
        })
    }
}

/// `prod_k (lambda - y_k)` in log-modulus/phase form.
pub fn log_product(lambda: Complex64, ys: &[f64]) -> (f64, Complex64) {
    let mut log_abs = 0.0;
    let mut phase = Complex64::new(1.0, 0.0);
    for &y in ys {
        let f = lambda - y;
        let a = f.norm();
        if a == 0.0 {
            return (f64::NEG_INFINITY, Complex64::new(0.0, 0.0));
        }
        log_abs += a.ln();
        phase *= f / a;
    }
    (log_abs, phase)
}

/// Mean and standard error of `prod_k (lambda - y_k)` over the samples.
pub fn mc_product_estimate<'a, I>(samples: I, lambda: Complex64) -> Result<MCEstimate>
where
    I: IntoIterator<Item = &'a EigenSample>,
{
    let mut acc = Accumulator::new();
    for s in samples {
        let (l, ph) = log_product(lambda, &s.values);
        acc.push_log(l, ph);
    }
    acc.finish()
}

/// Parallel Monte Carlo of `statistic(sample)` over `total` draws of
/// `sampler`, with the deterministic worker streams of
/// [`crate::ensembles::stream`].
pub fn mc_estimate<S, F>(
    seed: u64,
    workers: usize,
    total: usize,
    sampler: S,
    statistic: F,
) -> Result<MCEstimate>
where
    S: Fn(&mut ChaCha8Rng) -> Result<EigenSample> + Sync,
    F: Fn(&EigenSample) -> (f64, Complex64) + Sync,
{
    let parts = run_workers(seed, workers, total, |_, rng, count| {
        let mut acc = Accumulator::new();
        for _ in 0..count {
            let s = sampler(rng)?;
            let (l, ph) = statistic(&s);
            acc.push_log(l, ph);
        }
        Ok(acc)
    })?;
    let mut acc = Accumulator::new();
    for p in &parts {
        acc.merge(p);
    }
    acc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_samples_have_zero_error() {
        let s = EigenSample::new(vec![0.5, 1.5], "fixed", 1.0);
        let samples = vec![s.clone(), s.clone(), s];
        let e = mc_product_estimate(&samples, Complex64::new(1.0, 0.0)).unwrap();
        assert!((e.mean.re + 0.25).abs() < 1e-15);
        assert_eq!(e.stderr, 0.0);
    }

    #[test]
    fn merge_equals_sequential() {
        let data: Vec<Complex64> = (0..101)
            .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos()))
            .collect();
        let mut whole = Accumulator::new();
        data.iter().for_each(|&z| whole.push(z));
        let mut a = Accumulator::new();
        let mut b = Accumulator::new();
        data[..40].iter().for_each(|&z| a.push(z));
        data[40..].iter().for_each(|&z| b.push(z));
        a.merge(&b);
        let (x, y) = (whole.finish().unwrap(), a.finish().unwrap());
        assert!((x.mean - y.mean).norm() < 1e-14);
        assert!((x.se_re - y.se_re).abs() < 1e-14 && (x.se_im - y.se_im).abs() < 1e-14);
    }

    #[test]
    fn overflow_is_flagged() {
        let s = EigenSample::new(vec![-1e200, 1e200, 3e200, -2e200], "huge", 1.0);
        let samples = vec![s.clone(), s];
        assert!(matches!(
            mc_product_estimate(&samples, Complex64::new(0.0, 0.0)),
            Err(Error::ProductOverflow { .. })
        ));
    }

    #[test]
    fn needs_two_samples() {
        let s = vec![EigenSample::new(vec![0.0], "x", 1.0)];
        assert!(mc_product_estimate(&s, Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn z_scores() {
        let e = MCEstimate {
            mean: Complex64::new(1.0, 0.1),
            stderr: 0.0,
            se_re: 0.5,
            se_im: 0.05,
            n_samples: 10,
        };
        assert!((e.z_against(Complex64::new(0.0, 0.0)) - 2.0).abs() < 1e-12);
    }
}
