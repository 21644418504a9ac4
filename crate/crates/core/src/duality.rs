//! Two-sided numerical checks of the duality identities between an
//! `N`-particle average at `beta` and an `n`-particle average at `4/beta`.
//!
//! Each side is either a Monte Carlo estimate over one of the samplers or an
//! exact closed form. Sides are compared componentwise by z-score.

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::charpoly::{box_avg, gauss_avg, mc_estimate, MCEstimate};
use crate::ensembles::{
    default_workers, sample_me_weight, sample_wishart_source, ChiralSourceSpec, EigenSample, Field,
};
use crate::error::{Error, Result};

/// Schema tag of duality reports.
pub const REPORT_SCHEMA: &str = "rmt-source/duality/v1";

/// Default z-score threshold.
pub const DEFAULT_THRESHOLD: f64 = 4.0;

/// Default sample count per Monte Carlo side.
pub const DEFAULT_SAMPLES: usize = 1_000_000;

/// XOR-ed into the seed for the right-hand side's streams.
const RHS_SEED_MIX: u64 = 0xD1B5_4A32_D192_ED03;

/// Sampling configuration shared by both sides of a check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
    pub threshold: f64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            samples: DEFAULT_SAMPLES,
            seed: 0,
            workers: default_workers(),
            threshold: DEFAULT_THRESHOLD,
        }
    }
}

impl McConfig {
    pub fn with_samples(samples: usize, seed: u64) -> Self {
        McConfig {
            samples,
            seed,
            ..Self::default()
        }
    }
}

/// One side of a report: `se` is 0 for exact values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Side {
    pub re: f64,
    pub im: f64,
    pub se: f64,
    #[serde(skip)]
    pub se_re: f64,
    #[serde(skip)]
    pub se_im: f64,
}

impl Side {
    pub fn exact(v: Complex64) -> Self {
        Side {
            re: v.re,
            im: v.im,
            se: 0.0,
            se_re: 0.0,
            se_im: 0.0,
        }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    fn as_estimate(&self) -> MCEstimate {
        MCEstimate {
            mean: self.value(),
            stderr: self.se,
            se_re: self.se_re,
            se_im: self.se_im,
            n_samples: 0,
        }
    }
}

impl From<MCEstimate> for Side {
    fn from(e: MCEstimate) -> Self {
        Side {
            re: e.mean.re,
            im: e.mean.im,
            se: e.stderr,
            se_re: e.se_re,
            se_im: e.se_im,
        }
    }
}

/// Result of one duality check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityReport {
    pub schema: &'static str,
    pub check: String,
    pub params: serde_json::Value,
    pub lhs: Side,
    pub rhs: Side,
    /// Largest componentwise z-score between the sides.
    pub z: f64,
    pub pass: bool,
    pub seed: u64,
}

impl DualityReport {
    fn assemble(
        check: &str,
        params: serde_json::Value,
        lhs: Side,
        rhs: Side,
        real_expected: bool,
        cfg: &McConfig,
    ) -> Self {
        let z = lhs.as_estimate().z_between(&rhs.as_estimate());
        // a nominally real side must have imaginary part within its own error
        let real_ok = !real_expected
            || [lhs, rhs].iter().all(|s| {
                s.im.abs() <= cfg.threshold * s.se_im || s.im.abs() <= 1e-12 * (1.0 + s.re.abs())
            });
        DualityReport {
            schema: REPORT_SCHEMA,
            check: check.to_string(),
            params,
            lhs,
            rhs,
            z,
            pass: z <= cfg.threshold && real_ok,
            seed: cfg.seed,
        }
    }

    /// Compact JSON, one object.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// `(log|prod f|, phase)` of a product of complex factors.
fn log_product_of<I: IntoIterator<Item = Complex64>>(factors: I) -> (f64, Complex64) {
    let mut log_abs = 0.0;
    let mut phase = Complex64::new(1.0, 0.0);
    for f in factors {
        let a = f.norm();
        if a == 0.0 {
            return (f64::NEG_INFINITY, Complex64::new(0.0, 0.0));
        }
        log_abs += a.ln();
        phase *= f / a;
    }
    (log_abs, phase)
}

fn side<S, F>(cfg: &McConfig, seed: u64, sampler: S, statistic: F) -> Result<Side>
where
    S: Fn(&mut ChaCha8Rng) -> Result<EigenSample> + Sync,
    F: Fn(&EigenSample) -> (f64, Complex64) + Sync,
{
    Ok(mc_estimate(seed, cfg.workers, cfg.samples, sampler, statistic)?.into())
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "{name} must be > 0, got {v}"
        )));
    }
    Ok(())
}

/// Moment duality without source:
/// `< prod_j (x - sqrt(2/beta) l_j)^n >` over `ME_{beta,N}(e^{-l^2})` against
/// `< prod_j (x - i l_j)^N >` over `ME_{4/beta,n}(e^{-l^2})`.
pub fn check_w2(
    beta: f64,
    big_n: usize,
    n: usize,
    x: f64,
    cfg: &McConfig,
) -> Result<DualityReport> {
    check_positive("beta", beta)?;
    if big_n == 0 || n == 0 {
        return Err(Error::InvalidArgument("N and n must be >= 1".into()));
    }
    let scale = (2.0 / beta).sqrt();
    let lhs = side(
        cfg,
        cfg.seed,
        |r| sample_me_weight(beta, 1.0, &vec![0.0; big_n], r),
        |s| {
            let (l, ph) =
                log_product_of(s.values.iter().map(|&v| Complex64::new(x - scale * v, 0.0)));
            (l * n as f64, ph.powu(n as u32))
        },
    )?;
    let rhs = side(
        cfg,
        cfg.seed ^ RHS_SEED_MIX,
        |r| sample_me_weight(4.0 / beta, 1.0, &vec![0.0; n], r),
        |s| {
            let (l, ph) = log_product_of(s.values.iter().map(|&v| Complex64::new(x, -v)));
            (l * big_n as f64, ph.powu(big_n as u32))
        },
    )?;
    let params = json!({"beta": beta, "N": big_n, "n": n, "x": x, "samples": cfg.samples, "workers": cfg.workers});
    Ok(DualityReport::assemble("w2", params, lhs, rhs, true, cfg))
}

/// Averaged characteristic polynomial at general `beta`:
/// `< prod_k (lambda - y_k) >` over weight `exp(-beta y^2/2)` with source `x`,
/// against the beta-independent Gauss-Hermite closed form.
pub fn check_fr(beta: f64, x: &[f64], lambda: f64, cfg: &McConfig) -> Result<DualityReport> {
    check_positive("beta", beta)?;
    if x.is_empty() {
        return Err(Error::InvalidArgument("N must be >= 1".into()));
    }
    let lhs = side(
        cfg,
        cfg.seed,
        |r| sample_me_weight(beta, 0.5 * beta, x, r),
        |s| log_product_of(s.values.iter().map(|&v| Complex64::new(lambda - v, 0.0))),
    )?;
    let rhs = Side::exact(Complex64::new(gauss_avg(lambda, x)?, 0.0));
    let params = json!({"beta": beta, "N": x.len(), "x": x, "lambda": lambda, "samples": cfg.samples, "workers": cfg.workers});
    Ok(DualityReport::assemble("fr", params, lhs, rhs, true, cfg))
}

/// Source duality on the slice of imaginary sources `x = i xi`, `s = i sigma`:
/// `< prod_{j,k} (i sigma_j - sqrt(alpha) y_k) >` over `ME_{2/alpha,N}(e^{-y^2}; xi)`
/// against `i^{nN} < prod_{j,k} (y_k + i sqrt(alpha) xi_j) >` over
/// `ME_{2 alpha,n}(e^{-y^2}; sigma)`.
pub fn check_dr1(alpha: f64, xi: &[f64], sigma: &[f64], cfg: &McConfig) -> Result<DualityReport> {
    check_positive("alpha", alpha)?;
    let (big_n, n) = (xi.len(), sigma.len());
    if big_n == 0 || n == 0 {
        return Err(Error::InvalidArgument(
            "xi and sigma must be nonempty".into(),
        ));
    }
    let sa = alpha.sqrt();
    let lhs = side(
        cfg,
        cfg.seed,
        |r| sample_me_weight(2.0 / alpha, 1.0, xi, r),
        |s| {
            log_product_of(
                sigma
                    .iter()
                    .flat_map(|&sg| s.values.iter().map(move |&y| Complex64::new(-sa * y, sg))),
            )
        },
    )?;
    let i_pow = Complex64::new(0.0, 1.0).powu((n * big_n) as u32);
    let rhs = side(
        cfg,
        cfg.seed ^ RHS_SEED_MIX,
        |r| sample_me_weight(2.0 * alpha, 1.0, sigma, r),
        |s| {
            let (l, ph) = log_product_of(
                xi.iter()
                    .flat_map(|&x| s.values.iter().map(move |&y| Complex64::new(y, sa * x))),
            );
            (l, ph * i_pow)
        },
    )?;
    let params = json!({"alpha": alpha, "N": big_n, "n": n, "xi": xi, "sigma": sigma, "samples": cfg.samples, "workers": cfg.workers});
    Ok(DualityReport::assemble("dr1", params, lhs, rhs, false, cfg))
}

/// Chiral source duality, sampleable at `beta = 2` (both sides complex
/// Wishart) and, for `n = 1`, at `beta = 1, 2` against the closed form.
///
/// `beta = 2`: `< prod_{j,k} (s_j + x_k) >` over the `p`-dimensional Wishart
/// with `p + a` rows and source `m`, against `< prod_{j,k} (x_j + m_k) >` over
/// the `n`-dimensional Wishart with `n + a` rows and source `s`.
///
/// `n = 1`: `< prod_k (lambda - x_k) >` at `lambda = -s_1` against
/// [`box_avg`]`(lambda, a, m)`.
pub fn check_dr2(
    beta: f64,
    a: usize,
    s: &[f64],
    m: &[f64],
    cfg: &McConfig,
) -> Result<DualityReport> {
    let field = if beta == 1.0 {
        Field::Real
    } else if beta == 2.0 {
        Field::Complex
    } else {
        return Err(Error::InvalidArgument(format!(
            "dr2 is sampleable only for beta in {{1, 2}}, got {beta}"
        )));
    };
    let (n, p) = (s.len(), m.len());
    if n == 0 || p == 0 {
        return Err(Error::InvalidArgument("s and m must be nonempty".into()));
    }
    if field == Field::Real && n != 1 {
        return Err(Error::InvalidArgument(
            "beta = 1 supports only n = 1".into(),
        ));
    }
    let lhs_spec = ChiralSourceSpec::new(p + a, p, field, m.to_vec())?;
    let params = json!({"beta": beta, "n": n, "p": p, "a": a, "s": s, "m": m, "samples": cfg.samples, "workers": cfg.workers});
    if n == 1 {
        let lambda = -s[0];
        let lhs = side(
            cfg,
            cfg.seed,
            |r| sample_wishart_source(&lhs_spec, r),
            |x| log_product_of(x.values.iter().map(|&v| Complex64::new(lambda - v, 0.0))),
        )?;
        let rhs = Side::exact(Complex64::new(box_avg(lambda, a as f64, m)?, 0.0));
        return Ok(DualityReport::assemble("dr2", params, lhs, rhs, true, cfg));
    }
    let rhs_spec = ChiralSourceSpec::new(n + a, n, field, s.to_vec())?;
    let lhs = side(
        cfg,
        cfg.seed,
        |r| sample_wishart_source(&lhs_spec, r),
        |x| {
            log_product_of(
                s.iter()
                    .flat_map(|&sj| x.values.iter().map(move |&v| Complex64::new(sj + v, 0.0))),
            )
        },
    )?;
    let rhs = side(
        cfg,
        cfg.seed ^ RHS_SEED_MIX,
        |r| sample_wishart_source(&rhs_spec, r),
        |x| {
            log_product_of(
                m.iter()
                    .flat_map(|&mk| x.values.iter().map(move |&v| Complex64::new(v + mk, 0.0))),
            )
        },
    )?;
    Ok(DualityReport::assemble("dr2", params, lhs, rhs, true, cfg))
}
