//! Matrix-model samplers: shifted GOE/GUE and Wishart with a source.

use nalgebra::{ComplexField, DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{ChiralSourceSpec, EigenSample, Field};
use crate::error::{Error, Result};

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Eigenvalues of a Hermitian matrix, sorted, with the residual
/// `||H V - V D|| <= 1e-10 ||H||` enforced.
fn hermitian_eigenvalues<T>(h: DMatrix<T>) -> Result<Vec<f64>>
where
    T: ComplexField<RealField = f64>,
{
    let norm = h.norm();
    let eig = SymmetricEigen::new(h.clone());
    let d = DMatrix::<T>::from_diagonal(&eig.eigenvalues.map(T::from_real));
    let residual = (&h * &eig.eigenvectors - &eig.eigenvectors * d).norm();
    if residual > 1e-10 * norm.max(f64::MIN_POSITIVE) {
        return Err(Error::EigenResidual {
            residual: residual / norm,
        });
    }
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Eigenvalues of `H + diag(s)` with `H = (X + X^T)/2`, `X` i.i.d.
/// standard normal: diagonal variance 1, off-diagonal variance 1/2.
pub fn sample_shifted_goe<R: Rng + ?Sized>(s: &[f64], rng: &mut R) -> Result<EigenSample> {
    let n = s.len();
    if n == 0 {
        return Err(Error::InvalidArgument("GOE needs N >= 1".into()));
    }
    let mut h = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = normal(rng) + s[i];
        for j in i + 1..n {
            let v = normal(rng) * std::f64::consts::FRAC_1_SQRT_2;
            h[(i, j)] = v;
            h[(j, i)] = v;
        }
    }
    Ok(EigenSample::new(hermitian_eigenvalues(h)?, "goe", 1.0))
}

/// Eigenvalues of `H + diag(s)`, `H` Hermitian with diagonal variance 1/2
/// and off-diagonal real and imaginary parts each of variance 1/4.
pub fn sample_shifted_gue<R: Rng + ?Sized>(s: &[f64], rng: &mut R) -> Result<EigenSample> {
    let n = s.len();
    if n == 0 {
        return Err(Error::InvalidArgument("GUE needs N >= 1".into()));
    }
    let mut h = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = Complex64::new(normal(rng) * std::f64::consts::FRAC_1_SQRT_2 + s[i], 0.0);
        for j in i + 1..n {
            let v = Complex64::new(0.5 * normal(rng), 0.5 * normal(rng));
            h[(i, j)] = v;
            h[(j, i)] = v.conj();
        }
    }
    Ok(EigenSample::new(hermitian_eigenvalues(h)?, "gue", 2.0))
}

/// Eigenvalues of `(X + X0)^dagger (X + X0)` with `X` an `n x p` Gaussian
/// matrix (`E|x|^2 = 1`) and `X0` diagonal with `(X0^T X0)_{ll} = mu_l`.
pub fn sample_wishart_source<R: Rng + ?Sized>(
    spec: &ChiralSourceSpec,
    rng: &mut R,
) -> Result<EigenSample> {
    spec.validate()?;
    let (n, p) = (spec.n, spec.p);
    match spec.field {
        Field::Real => {
            let mut y = DMatrix::<f64>::from_fn(n, p, |_, _| normal(rng));
            for l in 0..p {
                y[(l, l)] += spec.mu[l].sqrt();
            }
            let w = y.transpose() * &y;
            Ok(EigenSample::new(
                hermitian_eigenvalues(w)?,
                "wishart-real",
                1.0,
            ))
        }
        Field::Complex => {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let mut y = DMatrix::<Complex64>::from_fn(n, p, |_, _| {
                Complex64::new(r * normal(rng), r * normal(rng))
            });
            for l in 0..p {
                y[(l, l)] += spec.mu[l].sqrt();
            }
            let w = y.adjoint() * &y;
            Ok(EigenSample::new(
                hermitian_eigenvalues(w)?,
                "wishart-complex",
                2.0,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_by_one_goe_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = 100_000;
        let mu = 0.8;
        let m: f64 = (0..n)
            .map(|_| sample_shifted_goe(&[mu], &mut rng).unwrap().values[0])
            .sum::<f64>()
            / n as f64;
        assert!((m - mu).abs() < 4.0 / (n as f64).sqrt());
    }

    #[test]
    fn trace_mean_matches_source() {
        let s = [1.0, -0.5, 0.25];
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 40_000;
        for gue in [false, true] {
            let (mut sum, mut sq) = (0.0, 0.0);
            for _ in 0..n {
                let e = if gue {
                    sample_shifted_gue(&s, &mut rng)
                } else {
                    sample_shifted_goe(&s, &mut rng)
                }
                .unwrap();
                let t: f64 = e.values.iter().sum();
                sum += t;
                sq += t * t;
            }
            let mean = sum / n as f64;
            let se = ((sq / n as f64 - mean * mean) / n as f64).sqrt();
            assert!((mean - 0.75).abs() < 4.0 * se, "gue={gue} {mean} +- {se}");
        }
    }

    #[test]
    fn samples_are_sorted() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let e = sample_shifted_gue(&[0.0; 6], &mut rng).unwrap();
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(e.values.len(), 6);
    }

    #[test]
    fn scalar_wishart_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let spec = ChiralSourceSpec::new(1, 1, Field::Real, vec![1.5]).unwrap();
        let n = 100_000;
        let (mut sum, mut sq) = (0.0, 0.0);
        for _ in 0..n {
            let v = sample_wishart_source(&spec, &mut rng).unwrap().values[0];
            sum += v;
            sq += v * v;
        }
        let mean = sum / n as f64;
        let se = ((sq / n as f64 - mean * mean) / n as f64).sqrt();
        assert!((mean - 2.5).abs() < 4.0 * se);
    }

    #[test]
    fn zero_source_scalar_wishart_shift() {
        // <lambda - x> = lambda - 1 for x = |g|^2, E|g|^2 = 1
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for field in [Field::Real, Field::Complex] {
            let spec = ChiralSourceSpec::new(1, 1, field, vec![0.0]).unwrap();
            let n = 100_000;
            let lam = 0.3;
            let (mut sum, mut sq) = (0.0, 0.0);
            for _ in 0..n {
                let v = lam - sample_wishart_source(&spec, &mut rng).unwrap().values[0];
                sum += v;
                sq += v * v;
            }
            let mean = sum / n as f64;
            let se = ((sq / n as f64 - mean * mean) / n as f64).sqrt();
            assert!((mean - (lam - 1.0)).abs() < 4.0 * se);
        }
    }
}
