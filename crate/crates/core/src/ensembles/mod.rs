//! Eigenvalue samplers for Gaussian and Wishart ensembles with a source, and
//! the general-beta recursive construction.

mod matrix;
mod recursive;
mod secular;
pub mod stream;
pub mod validate;

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use matrix::{sample_shifted_goe, sample_shifted_gue, sample_wishart_source};
pub use recursive::{
    sample_beta_gaussian_source, sample_beta_gaussian_source_traced, sample_me_weight,
};
pub use secular::{secular_roots, RecursionStep};
pub use stream::{collect_samples, default_workers, run_workers, worker_rng};

/// Schema tag written at the top of sample dumps.
pub const SAMPLES_SCHEMA: &str = "rmt-source/samples/v1";

/// One sorted eigenvalue realization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSample {
    pub values: Vec<f64>,
    pub seed: u64,
    pub ensemble: String,
    pub beta: f64,
    /// Bordering steps taken by the recursive sampler; 0 for matrix models.
    pub steps: usize,
}

impl EigenSample {
    pub fn new(mut values: Vec<f64>, ensemble: &str, beta: f64) -> Self {
        values.sort_by(f64::total_cmp);
        EigenSample {
            values,
            seed: 0,
            ensemble: ensemble.to_string(),
            beta,
            steps: 0,
        }
    }
}

/// Gaussian ensemble with a source and weight `exp(-c sum y^2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianSourceSpec {
    pub beta: f64,
    pub source: Vec<f64>,
    pub weight_constant: f64,
}

impl GaussianSourceSpec {
    pub fn new(beta: f64, source: Vec<f64>, weight_constant: f64) -> Result<Self> {
        let s = GaussianSourceSpec {
            beta,
            source,
            weight_constant,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.source.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.source.is_empty() {
            return Err(Error::InvalidArgument("N must be >= 1".into()));
        }
        if !(self.beta > 0.0) || !(self.weight_constant > 0.0) {
            return Err(Error::InvalidArgument("beta and c must be > 0".into()));
        }
        if self.source.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("source must be finite".into()));
        }
        Ok(())
    }

    /// One draw via [`sample_me_weight`].
    pub fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Result<EigenSample> {
        sample_me_weight(self.beta, self.weight_constant, &self.source, rng)
    }
}

/// Real or complex matrix entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    pub fn beta(self) -> f64 {
        match self {
            Field::Real => 1.0,
            Field::Complex => 2.0,
        }
    }
}

/// Wishart-with-source specification: `n x p` data matrix, source
/// eigenvalues `mu` of `X0^T X0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiralSourceSpec {
    pub n: usize,
    pub p: usize,
    pub field: Field,
    pub mu: Vec<f64>,
}

impl ChiralSourceSpec {
    pub fn new(n: usize, p: usize, field: Field, mu: Vec<f64>) -> Result<Self> {
        let s = ChiralSourceSpec { n, p, field, mu };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 || self.n < self.p {
            return Err(Error::InvalidArgument(format!(
                "need n >= p >= 1, got n = {}, p = {}",
                self.n, self.p
            )));
        }
        if self.mu.len() != self.p || self.mu.iter().any(|&m| !(m >= 0.0) || !m.is_finite()) {
            return Err(Error::InvalidArgument(
                "mu must have p nonnegative entries".into(),
            ));
        }
        Ok(())
    }

    /// `a = n - p`.
    pub fn a(&self) -> usize {
        self.n - self.p
    }
}

/// Writes samples as CSV: schema line, `# ensemble,beta,N,seed` header and
/// its values, then one sorted eigenvalue tuple per row.
pub fn write_samples_csv<W: Write>(
    mut out: W,
    ensemble: &str,
    beta: f64,
    seed: u64,
    samples: &[EigenSample],
) -> Result<()> {
    let n = samples.first().map_or(0, |s| s.values.len());
    writeln!(out, "# schema: {SAMPLES_SCHEMA}")?;
    writeln!(out, "# ensemble,beta,N,seed")?;
    writeln!(out, "# {ensemble},{beta},{n},{seed}")?;
    for s in samples {
        let row: Vec<String> = s.values.iter().map(|v| format!("{v:.17e}")).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chiral_spec_validation() {
        assert!(ChiralSourceSpec::new(2, 3, Field::Real, vec![0.0; 3]).is_err());
        assert!(ChiralSourceSpec::new(3, 2, Field::Real, vec![0.0, -1.0]).is_err());
        assert_eq!(
            ChiralSourceSpec::new(4, 2, Field::Complex, vec![2.0, 0.0])
                .unwrap()
                .a(),
            2
        );
    }

    #[test]
    fn csv_layout() {
        let s = vec![EigenSample::new(vec![0.5, -1.0], "goe", 1.0)];
        let mut buf = Vec::new();
        write_samples_csv(&mut buf, "goe", 1.0, 7, &s).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "# ensemble,beta,N,seed");
        assert_eq!(lines[2], "# goe,1,2,7");
        assert!(lines[3].starts_with("-1.0"));
    }
}
