//! Distributional checks for the samplers: two-sample Kolmogorov-Smirnov,
//! an independent audit of the recursive construction, and a binned
//! comparison of two-particle samples with a density.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::specfun::quadrature::{quadrature_rule, QuadratureKind, QuadratureRule};

use super::RecursionStep;

/// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsTest {
    pub statistic: f64,
    pub p_value: f64,
}

/// `P(K > x)` for the Kolmogorov distribution.
pub fn kolmogorov_survival(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x < 0.3 {
        // the alternating series converges slowly here; the value is 1 to 1e-15
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let kf = f64::from(k);
        let term = (-2.0 * kf * kf * x * x).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-17 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Two-sample KS test with the Stephens small-sample correction
/// `(sqrt(ne) + 0.12 + 0.11/sqrt(ne)) D`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsTest> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidArgument(
            "KS test needs two nonempty samples".into(),
        ));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let ne = (na * nb / (na + nb)).sqrt();
    Ok(KsTest {
        statistic: d,
        p_value: kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d),
    })
}

/// Outcome of re-checking every bordering step of a recursive draw.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StepAudit {
    pub steps: usize,
    pub interlacing_violations: usize,
    pub trace_violations: usize,
    pub max_trace_residual: f64,
}

impl StepAudit {
    pub fn merge(&mut self, other: &StepAudit) {
        self.steps += other.steps;
        self.interlacing_violations += other.interlacing_violations;
        self.trace_violations += other.trace_violations;
        self.max_trace_residual = self.max_trace_residual.max(other.max_trace_residual);
    }

    pub fn is_clean(&self) -> bool {
        self.interlacing_violations == 0 && self.trace_violations == 0
    }
}

/// Trace tolerance of the audit, relative to the step's spectral scale.
pub const AUDIT_TRACE_TOLERANCE: f64 = 1e-9;

/// Audits a traced draw: the roots of step `k` are the poles of step `k+1`
/// and the last step's roots are `values`. Checks `r_0 <= p_0 <= r_1 <= ...`
/// and `sum r = sum p + x11` at every step.
pub fn audit_steps(steps: &[RecursionStep], values: &[f64]) -> StepAudit {
    let mut audit = StepAudit::default();
    for (k, step) in steps.iter().enumerate() {
        let roots: &[f64] = match steps.get(k + 1) {
            Some(next) => &next.poles,
            None => values,
        };
        audit.steps += 1;
        let p = &step.poles;
        let interlaced = roots.len() == p.len() + 1
            && p.iter()
                .enumerate()
                .all(|(j, &pj)| roots[j] <= pj && pj <= roots[j + 1]);
        if !interlaced {
            audit.interlacing_violations += 1;
        }
        let scale = 1.0
            + p.iter()
                .chain(roots)
                .fold(step.x11.abs(), |m, v| m.max(v.abs()));
        let resid = (roots.iter().sum::<f64>() - p.iter().sum::<f64>() - step.x11).abs() / scale;
        audit.max_trace_residual = audit.max_trace_residual.max(resid);
        if resid > AUDIT_TRACE_TOLERANCE * roots.len() as f64 {
            audit.trace_violations += 1;
        }
    }
    audit
}

/// Binned comparison of ordered pairs `l1 <= l2` with a density.
#[derive(Debug, Clone, PartialEq)]
pub struct HistogramCheck {
    pub bins: usize,
    pub samples: usize,
    /// Largest per-bin `|observed - expected| / sd` over bins.
    pub max_z: f64,
    /// Sup-norm difference of empirical and model bin densities.
    pub sup_norm: f64,
    /// Standard error of the bin density at the worst bin.
    pub sup_norm_se: f64,
}

fn tensor<F: Fn(f64, f64) -> f64>(
    rule: &QuadratureRule,
    u: (f64, f64),
    v: (f64, f64),
    f: &F,
) -> f64 {
    let (hu, cu) = (0.5 * (u.1 - u.0), 0.5 * (u.1 + u.0));
    let (hv, cv) = (0.5 * (v.1 - v.0), 0.5 * (v.1 + v.0));
    let mut acc = 0.0;
    for (&xi, &wi) in rule.nodes.iter().zip(&rule.weights) {
        for (&xj, &wj) in rule.nodes.iter().zip(&rule.weights) {
            acc += wi * wj * f(cu + hu * xi, cv + hv * xj);
        }
    }
    acc * hu * hv
}

/// Panels per axis of the normalising quadrature.
const NORM_PANELS: usize = 16;

/// Compares pairs against an unnormalised symmetric density `f(l1, l2)`.
///
/// Bins form a `bins x bins` grid in `u = l1 + l2`, `v = l2 - l1 >= 0` over
/// the samples' 0.5%-99.5% quantile box. The density is normalised by
/// quadrature over `u in [u_lo - pad, u_hi + pad]`, `v in [0, v_hi + pad]`.
pub fn pair_histogram_check<F>(
    pairs: &[[f64; 2]],
    density: F,
    bins: usize,
    pad: f64,
) -> Result<HistogramCheck>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    if pairs.len() < 100 || bins == 0 {
        return Err(Error::InvalidArgument(
            "need >= 100 pairs and >= 1 bin".into(),
        ));
    }
    let mut us: Vec<f64> = pairs.iter().map(|p| p[0] + p[1]).collect();
    let mut vs: Vec<f64> = pairs.iter().map(|p| (p[1] - p[0]).abs()).collect();
    let coords: Vec<(f64, f64)> = us.iter().copied().zip(vs.iter().copied()).collect();
    us.sort_by(f64::total_cmp);
    vs.sort_by(f64::total_cmp);
    let q = |s: &[f64], f: f64| s[((s.len() - 1) as f64 * f) as usize];
    let (u0, u1) = (q(&us, 0.005), q(&us, 0.995));
    let (v0, v1) = (q(&vs, 0.005), q(&vs, 0.995));
    let (du, dv) = ((u1 - u0) / bins as f64, (v1 - v0) / bins as f64);

    let rule = quadrature_rule(QuadratureKind::GaussLegendre, 8)?;
    // density in (u, v): Jacobian of (l1, l2) -> (u, v) is 1/2
    let g = |u: f64, v: f64| 0.5 * density(0.5 * (u - v), 0.5 * (u + v));
    let (w0, w1, z1) = (u0 - pad, u1 + pad, v1 + pad);
    let edge = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / NORM_PANELS as f64;
    let total: f64 = (0..NORM_PANELS)
        .into_par_iter()
        .map(|i| {
            (0..NORM_PANELS)
                .map(|j| {
                    let u = (edge(w0, w1, i), edge(w0, w1, i + 1));
                    tensor(&rule, u, (edge(0.0, z1, j), edge(0.0, z1, j + 1)), &g)
                })
                .sum::<f64>()
        })
        .collect::<Vec<f64>>()
        .iter()
        .sum();
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "density normalisation {total} is not positive"
        )));
    }

    let mut counts = vec![0usize; bins * bins];
    for &(u, v) in &coords {
        let i = ((u - u0) / du).floor();
        let j = ((v - v0) / dv).floor();
        if i >= 0.0 && j >= 0.0 && (i as usize) < bins && (j as usize) < bins {
            counts[i as usize * bins + j as usize] += 1;
        }
    }
    let n = pairs.len() as f64;
    let area = du * dv;
    let probs: Vec<f64> = (0..bins * bins)
        .into_par_iter()
        .map(|b| {
            let ua = u0 + du * (b / bins) as f64;
            let va = v0 + dv * (b % bins) as f64;
            tensor(&rule, (ua, ua + du), (va, va + dv), &g) / total
        })
        .collect();
    let mut out = HistogramCheck {
        bins: bins * bins,
        samples: pairs.len(),
        max_z: 0.0,
        sup_norm: 0.0,
        sup_norm_se: 0.0,
    };
    for (&prob, &count) in probs.iter().zip(&counts) {
        let obs = count as f64 / n;
        let sd = (prob * (1.0 - prob) / n).sqrt();
        let z = if sd > 0.0 {
            (obs - prob).abs() / sd
        } else {
            0.0
        };
        out.max_z = out.max_z.max(z);
        let diff = (obs - prob).abs() / area;
        if diff > out.sup_norm {
            out.sup_norm = diff;
            out.sup_norm_se = sd / area;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn kolmogorov_reference_values() {
        // P(K > 1.36) ~ 0.049, P(K > 1.63) ~ 0.010
        assert!((kolmogorov_survival(1.36) - 0.0494).abs() < 5e-4);
        assert!((kolmogorov_survival(1.63) - 0.0098).abs() < 5e-4);
        assert_eq!(kolmogorov_survival(0.0), 1.0);
    }

    #[test]
    fn ks_same_and_shifted() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut draw = |shift: f64| -> Vec<f64> {
            (0..5000)
                .map(|_| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    z + shift
                })
                .collect::<Vec<f64>>()
        };
        let (a, b, c) = (draw(0.0), draw(0.0), draw(0.2));
        assert!(ks_two_sample(&a, &b).unwrap().p_value > 0.001);
        assert!(ks_two_sample(&a, &c).unwrap().p_value < 1e-6);
        let same = ks_two_sample(&a, &a).unwrap();
        assert_eq!(same.statistic, 0.0);
    }

    #[test]
    fn audit_flags_broken_steps() {
        let good = vec![RecursionStep {
            poles: vec![0.0],
            weights: vec![1.0],
            x11: 0.0,
        }];
        let a = audit_steps(&good, &[-1.0, 1.0]);
        assert!(a.is_clean());
        let a = audit_steps(&good, &[0.5, 1.0]);
        assert_eq!(a.interlacing_violations, 1);
        assert_eq!(a.trace_violations, 1);
    }

    #[test]
    fn histogram_accepts_iid_normal_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pairs: Vec<[f64; 2]> = (0..40_000)
            .map(|_| {
                let (a, b): (f64, f64) = (
                    StandardNormal.sample(&mut rng),
                    StandardNormal.sample(&mut rng),
                );
                [a.min(b), a.max(b)]
            })
            .collect();
        let f = |x: f64, y: f64| (-(x * x + y * y) / 2.0).exp();
        let h = pair_histogram_check(&pairs, f, 8, 4.0).unwrap();
        assert!(h.max_z < 4.0, "{h:?}");
        let skew = |x: f64, y: f64| (-(x * x + y * y) / 2.0 + 0.3 * x).exp();
        let h = pair_histogram_check(&pairs, skew, 8, 4.0).unwrap();
        assert!(h.max_z > 6.0, "{h:?}");
    }
}
