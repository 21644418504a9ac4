//! General-beta Gaussian ensemble with a source by successive bordering.
//!
//! Step `k` draws a diagonal entry `x11 ~ N[mu_k, 1]` and squared couplings
//! `q_j ~ Gamma(beta/2, 1)`; the new eigenvalues are the roots of the secular
//! equation with the previous eigenvalues as poles. The output has density
//! proportional to `prod |l_k - l_j|^beta exp(-sum l^2/2) 0F0^{(2/beta)}(l; mu)`.

use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use super::secular::{secular_roots, RecursionStep};
use super::EigenSample;
use crate::error::{Error, Result};

fn check(beta: f64, mu: &[f64]) -> Result<Gamma<f64>> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "beta must be > 0, got {beta}"
        )));
    }
    if mu.is_empty() || mu.iter().any(|m| !m.is_finite()) {
        return Err(Error::InvalidArgument(
            "source must be finite with N >= 1".into(),
        ));
    }
    Gamma::new(0.5 * beta, 1.0).map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn run<R: Rng + ?Sized>(
    beta: f64,
    mu: &[f64],
    rng: &mut R,
    mut trace: Option<&mut Vec<RecursionStep>>,
) -> Result<EigenSample> {
    let gamma = check(beta, mu)?;
    let mut eig: Vec<f64> = Vec::with_capacity(mu.len());
    for (k, &m) in mu.iter().enumerate() {
        let x11 = m + rng.sample::<f64, _>(StandardNormal);
        let weights: Vec<f64> = (0..k).map(|_| gamma.sample(rng)).collect();
        let step = RecursionStep {
            poles: eig,
            weights,
            x11,
        };
        eig = secular_roots(&step).map_err(|e| at_step(e, k + 1))?;
        if let Some(t) = trace.as_deref_mut() {
            t.push(step);
        }
    }
    let mut out = EigenSample::new(eig, "beta-gaussian", beta);
    out.steps = mu.len();
    Ok(out)
}

fn at_step(e: Error, step: usize) -> Error {
    match e {
        Error::InterlacingViolation { .. } => Error::InterlacingViolation { step },
        Error::TraceViolation { residual, .. } => Error::TraceViolation { step, residual },
        other => other,
    }
}

/// One draw of the beta Gaussian ensemble with source `mu` (`N = mu.len()`).
pub fn sample_beta_gaussian_source<R: Rng + ?Sized>(
    beta: f64,
    mu: &[f64],
    rng: &mut R,
) -> Result<EigenSample> {
    run(beta, mu, rng, None)
}

/// As [`sample_beta_gaussian_source`], also returning every bordering step.
pub fn sample_beta_gaussian_source_traced<R: Rng + ?Sized>(
    beta: f64,
    mu: &[f64],
    rng: &mut R,
) -> Result<(EigenSample, Vec<RecursionStep>)> {
    let mut steps = Vec::with_capacity(mu.len());
    let s = run(beta, mu, rng, Some(&mut steps))?;
    Ok((s, steps))
}

/// Draw with weight `exp(-c sum y^2)` and source coupling
/// `0F0^{(2/beta)}(y; 2c x)`: the beta-Gaussian draw with source
/// `sqrt(2c) x`, rescaled by `1/sqrt(2c)`.
pub fn sample_me_weight<R: Rng + ?Sized>(
    beta: f64,
    c: f64,
    x: &[f64],
    rng: &mut R,
) -> Result<EigenSample> {
    if !(c > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "weight constant must be > 0, got {c}"
        )));
    }
    let k = (2.0 * c).sqrt();
    let mu: Vec<f64> = x.iter().map(|v| v * k).collect();
    let mut s = sample_beta_gaussian_source(beta, &mu, rng)?;
    for v in &mut s.values {
        *v /= k;
    }
    s.ensemble = "me-weight".into();
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn base_case_is_shifted_normal() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = 100_000;
        let m: f64 = (0..n)
            .map(|_| {
                sample_beta_gaussian_source(2.7, &[-0.4], &mut rng)
                    .unwrap()
                    .values[0]
            })
            .sum::<f64>()
            / n as f64;
        assert!((m + 0.4).abs() < 4.0 / (n as f64).sqrt());
    }

    #[test]
    fn traced_steps_interlace() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..2000 {
            let (s, steps) =
                sample_beta_gaussian_source_traced(0.7, &[0.5, 0.0, -1.0, 2.0, 0.1], &mut rng)
                    .unwrap();
            assert_eq!(steps.len(), 5);
            for (k, st) in steps.iter().enumerate() {
                assert_eq!(st.poles.len(), k);
                assert!(st.weights.iter().all(|&q| q > 0.0));
            }
            assert!(s.values.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn half_constant_is_identity_map() {
        let x = [0.3, -0.2];
        let a = sample_me_weight(1.5, 0.5, &x, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = sample_beta_gaussian_source(1.5, &x, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn rejects_bad_beta() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(sample_beta_gaussian_source(0.0, &[0.0], &mut rng).is_err());
        assert!(sample_me_weight(1.0, 0.0, &[0.0], &mut rng).is_err());
    }
}
