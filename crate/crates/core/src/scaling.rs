//! Soft-edge scaling of averaged characteristic polynomials.
//!
//! Finite-size values are assembled in [`ScaledValue`] arithmetic and only
//! decoded after division by the normalising constant.

use std::f64::consts::{LN_2, PI};
use std::io::Write;

use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

use crate::charpoly::incomplete_hermite_form;
use crate::error::{Error, Result};
use crate::specfun::{airy, hermite, incomplete_airy, laguerre_exp_weighted, ScaledValue};

/// Schema tag of convergence tables.
pub const TABLE_SCHEMA: &str = "rmt-source/softedge/v1";

/// Largest number of nonzero source entries in the Gaussian soft-edge limit.
pub const MAX_GAUSS_R: usize = 3;

/// One finite-size value against its limit.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub size: usize,
    pub x: f64,
    pub s: Vec<f64>,
    pub finite: f64,
    pub limit: f64,
    pub abs_error: f64,
}

impl ConvergenceRow {
    fn new(size: usize, x: f64, s: &[f64], finite: ScaledValue, limit: f64) -> Result<Self> {
        let finite = finite.to_finite().ok_or(Error::DecodeOverflow {
            log_abs: finite.log_abs(),
        })?;
        Ok(ConvergenceRow {
            size,
            x,
            s: s.to_vec(),
            finite,
            limit,
            abs_error: (finite - limit).abs(),
        })
    }

    /// `abs_error / |limit|`.
    pub fn relative_error(&self) -> f64 {
        self.abs_error / self.limit.abs()
    }
}

/// `ln C_N^{(1)}` of the classical Hermite soft-edge limit.
pub fn log_classic_constant(n: usize) -> f64 {
    let nf = n as f64;
    0.25 * PI.ln() + (0.25 - 0.5 * nf) * LN_2 + 0.5 * ln_gamma(nf + 1.0) - nf.ln() / 12.0
}

/// `ln C_N^{(r+1)}` for the Gaussian ensemble with `r` source entries at the
/// edge: `sqrt(pi) 2^{-(N-1)/2} N^{(N+1)/2-(r+1)/3} e^{-N/2}`.
pub fn log_gauss_constant(n: usize, r: usize) -> f64 {
    let nf = n as f64;
    0.5 * PI.ln() - 0.5 * (nf - 1.0) * LN_2 + ((nf + 1.0) / 2.0 - (r as f64 + 1.0) / 3.0) * nf.ln()
        - 0.5 * nf
}

/// `ln C_N^{(1)} - ln C_N^{(1)}(r = 0)`: the Stirling remainder between the
/// two normalisations, `-> 0` as `N -> inf`.
pub fn stirling_conversion(n: usize) -> f64 {
    log_classic_constant(n) - log_gauss_constant(n, 0)
}

/// `ln D_p^{(2)} = ln((p-1)! (2p)^{1/3} 2^{-a})`.
pub fn log_chiral_constant(p: usize, a: f64) -> f64 {
    let pf = p as f64;
    ln_gamma(pf) + (2.0 * pf).ln() / 3.0 - a * LN_2
}

/// `lambda = sqrt(2N) + X / (sqrt(2) N^{1/6})`.
pub fn gauss_lambda(n: usize, x: f64) -> f64 {
    let nf = n as f64;
    (2.0 * nf).sqrt() + x / (2f64.sqrt() * nf.powf(1.0 / 6.0))
}

/// `x_k = sqrt(N/2) - N^{1/6} s_k / sqrt(2)`.
pub fn gauss_source(n: usize, s: f64) -> f64 {
    let nf = n as f64;
    (nf / 2.0).sqrt() - nf.powf(1.0 / 6.0) * s / 2f64.sqrt()
}

/// `lambda = 4p + 2a + 2 + 2 (2p)^{1/3} X`.
pub fn chiral_lambda(p: usize, a: f64, x: f64) -> f64 {
    let pf = p as f64;
    4.0 * pf + 2.0 * a + 2.0 + 2.0 * (2.0 * pf).cbrt() * x
}

/// `m_1 = p - (2p)^{2/3} s_1`.
pub fn chiral_source(p: usize, s1: f64) -> f64 {
    let pf = p as f64;
    pf - (2.0 * pf).powf(2.0 / 3.0) * s1
}

/// `e^{-lambda^2/2} 2^{-N} H_N(lambda) / C_N^{(1)}` at
/// `lambda = sqrt(2N) + 2^{-1/2} N^{-1/6} y`, against `Ai(y)`.
pub fn classic_airy_limit(n: usize, y: f64) -> Result<ConvergenceRow> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("N must be >= 4, got {n}")));
    }
    let lambda = gauss_lambda(n, y);
    let finite = hermite(n, lambda)
        .scale_exp(-0.5 * lambda * lambda - n as f64 * LN_2 - log_classic_constant(n));
    ConvergenceRow::new(n, y, &[], finite, airy(y).0)
}

/// Gaussian ensemble with `r = s.len()` source entries scaled at the edge
/// and the remaining `N - r` zero, against the incomplete Airy function.
pub fn gauss_soft_edge(n: usize, x: f64, s: &[f64]) -> Result<ConvergenceRow> {
    let r = s.len();
    if r > MAX_GAUSS_R || r > n || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "need r <= min({MAX_GAUSS_R}, N), got r = {r}, N = {n}"
        )));
    }
    let lambda = gauss_lambda(n, x);
    let mut src = vec![0.0; n];
    for (slot, &sk) in src.iter_mut().zip(s) {
        *slot = gauss_source(n, sk);
    }
    let finite = incomplete_hermite_form(lambda, &src)?
        .scale_exp(-0.5 * lambda * lambda - log_gauss_constant(n, r));
    ConvergenceRow::new(n, x, s, finite, incomplete_airy(x, s))
}

/// `e^{-lambda/2} [(-1)^p p! L_p^a(lambda) - m_1 (-1)^{p-1} (p-1)! L_{p-1}^a(lambda)]`,
/// the chiral average with one nonzero source `m_1`, in log-scaled form.
pub fn chiral_edge_polynomial(p: usize, a: f64, lambda: f64, m1: f64) -> Result<ScaledValue> {
    if p == 0 {
        return Err(Error::InvalidArgument("p must be >= 1".into()));
    }
    let pf = p as f64;
    let parity = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let lp = laguerre_exp_weighted(p, a, lambda)? * parity(p);
    let lq = laguerre_exp_weighted(p - 1, a, lambda)? * parity(p - 1);
    let t1 = lp.scale_exp(ln_gamma(pf + 1.0));
    let t2 = (lq * -m1).scale_exp(ln_gamma(pf));
    Ok(t1 + t2)
}

/// Chiral ensemble with one source entry `m_1` scaled at the edge and
/// `m_2 = ... = m_p = 0`, against `s_1 Ai(X) - Ai'(X)`.
pub fn chiral_soft_edge(p: usize, a: f64, x: f64, s1: f64) -> Result<ConvergenceRow> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("p must be >= 2, got {p}")));
    }
    let lambda = chiral_lambda(p, a, x);
    let finite = chiral_edge_polynomial(p, a, lambda, chiral_source(p, s1))?
        .scale_exp(-log_chiral_constant(p, a));
    let (ai, aip) = airy(x);
    ConvergenceRow::new(p, x, &[s1], finite, s1 * ai - aip)
}

/// `e^{-lambda/2} (-1)^{p+k} L_{p+k}^a(lambda) / (2^{-a-1/3} p^{-1/3})` against
/// `Ai(X) - 2k (2p)^{-1/3} Ai'(X)`, with `lambda` as in [`chiral_lambda`].
pub fn szego_check(p: usize, a: f64, k: i32, x: f64) -> Result<ConvergenceRow> {
    if k.abs() > 2 {
        return Err(Error::InvalidArgument(format!("|k| must be <= 2, got {k}")));
    }
    let deg = p as i64 + i64::from(k);
    if deg < 0 || p == 0 {
        return Err(Error::InvalidArgument(format!(
            "p + k must be >= 0, got {deg}"
        )));
    }
    let lambda = chiral_lambda(p, a, x);
    let sign = if deg % 2 == 0 { 1.0 } else { -1.0 };
    let log_pref = -(a + 1.0 / 3.0) * LN_2 - (p as f64).ln() / 3.0;
    let finite = (laguerre_exp_weighted(deg as usize, a, lambda)? * sign).scale_exp(-log_pref);
    let (ai, aip) = airy(x);
    let limit = ai - 2.0 * f64::from(k) * (2.0 * p as f64).cbrt().recip() * aip;
    ConvergenceRow::new(p, x, &[], finite, limit)
}

/// A scaling operation for [`convergence_table`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalingOp {
    /// [`classic_airy_limit`]; grid points carry no `s`.
    Classic,
    /// [`gauss_soft_edge`]; `r` is the length of each grid point's `s`.
    Gauss,
    /// [`chiral_soft_edge`]; grid points carry `s = [s_1]`.
    Chiral { a: f64 },
    /// [`szego_check`]; grid points carry no `s`.
    Szego { a: f64, k: i32 },
}

impl ScalingOp {
    pub fn eval(&self, size: usize, x: f64, s: &[f64]) -> Result<ConvergenceRow> {
        match *self {
            ScalingOp::Classic => classic_airy_limit(size, x),
            ScalingOp::Gauss => gauss_soft_edge(size, x, s),
            ScalingOp::Chiral { a } => match s {
                [s1] => chiral_soft_edge(size, a, x, *s1),
                _ => Err(Error::InvalidArgument(
                    "chiral scaling takes exactly one s".into(),
                )),
            },
            ScalingOp::Szego { a, k } => szego_check(size, a, k, x),
        }
    }
}

/// A grid point `(X, s)`.
pub type GridPoint = (f64, Vec<f64>);

/// Evaluates `op` at every grid point and size. Rows are ordered by grid
/// point, then by size in the given order.
pub fn convergence_table(
    op: ScalingOp,
    sizes: &[usize],
    grid: &[GridPoint],
) -> Result<Vec<ConvergenceRow>> {
    let per_point: Vec<Result<Vec<ConvergenceRow>>> = grid
        .par_iter()
        .map(|(x, s)| sizes.iter().map(|&n| op.eval(n, *x, s)).collect())
        .collect();
    let mut rows = Vec::with_capacity(grid.len() * sizes.len());
    for r in per_point {
        rows.extend(r?);
    }
    Ok(rows)
}

/// Writes rows as CSV `size,X,s1..sr,finite,limit,abs_error` after a schema line.
pub fn write_table_csv<W: Write>(out: &mut W, rows: &[ConvergenceRow]) -> Result<()> {
    let r = rows.iter().map(|row| row.s.len()).max().unwrap_or(0);
    writeln!(out, "# schema: {TABLE_SCHEMA}")?;
    let mut header = String::from("size,X");
    for k in 1..=r {
        header.push_str(&format!(",s{k}"));
    }
    writeln!(out, "{header},finite,limit,abs_error")?;
    for row in rows {
        let mut line = format!("{},{:.17e}", row.size, row.x);
        for k in 0..r {
            match row.s.get(k) {
                Some(v) => line.push_str(&format!(",{v:.17e}")),
                None => line.push(','),
            }
        }
        writeln!(
            out,
            "{line},{:.17e},{:.17e},{:.17e}",
            row.finite, row.limit, row.abs_error
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests;
