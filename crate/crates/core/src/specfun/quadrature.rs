//! Gaussian quadrature rules from the Jacobi matrix of the weight.
//!
//! Nodes come from the eigenvalues of the symmetric tridiagonal Jacobi matrix
//! (Golub-Welsch), are polished by Newton steps on the orthonormal
//! polynomial, and weights use the Christoffel sum `1 / sum_k p_k(x)^2`, which
//! keeps full relative accuracy for the tiny weights at the outer nodes.

use nalgebra::{DMatrix, SymmetricEigen};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Weight function of a rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadratureKind {
    /// `exp(-x^2)` on the real line.
    GaussHermite,
    /// `x^a exp(-x)` on `[0, inf)`, `a > -1`.
    GaussLaguerre(f64),
    /// `1` on `[-1, 1]`.
    GaussLegendre,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: QuadratureKind,
}

impl QuadratureKind {
    /// Recurrence coefficients `(alpha_k, beta_k)` of the monic orthogonal
    /// polynomials, `beta_k` being the squared off-diagonal for `k >= 1`.
    fn recurrence(&self, k: usize) -> (f64, f64) {
        let kf = k as f64;
        match *self {
            QuadratureKind::GaussHermite => (0.0, kf / 2.0),
            QuadratureKind::GaussLaguerre(a) => (2.0 * kf + a + 1.0, kf * (kf + a)),
            QuadratureKind::GaussLegendre => (0.0, kf * kf / (4.0 * kf * kf - 1.0)),
        }
    }

    /// Total mass of the weight.
    pub fn mass(&self) -> f64 {
        match *self {
            QuadratureKind::GaussHermite => std::f64::consts::PI.sqrt(),
            QuadratureKind::GaussLaguerre(a) => gamma(a + 1.0),
            QuadratureKind::GaussLegendre => 2.0,
        }
    }
}

/// Builds the `m`-point Gauss rule of the given kind.
pub fn quadrature_rule(kind: QuadratureKind, m: usize) -> Result<QuadratureRule> {
    if m == 0 {
        return Err(Error::InvalidArgument("quadrature needs m >= 1".into()));
    }
    if let QuadratureKind::GaussLaguerre(a) = kind {
        if !(a > -1.0) {
            return Err(Error::LaguerreParameter(a));
        }
    }
    let mut jacobi = DMatrix::<f64>::zeros(m, m);
    for k in 0..m {
        jacobi[(k, k)] = kind.recurrence(k).0;
        if k + 1 < m {
            let b = kind.recurrence(k + 1).1.sqrt();
            jacobi[(k, k + 1)] = b;
            jacobi[(k + 1, k)] = b;
        }
    }
    let eig = SymmetricEigen::new(jacobi);
    let mut nodes: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    nodes.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));

    let mass = kind.mass();
    let mut weights = Vec::with_capacity(m);
    for i in 0..m {
        let spacing = neighbour_gap(&nodes, i);
        for _ in 0..3 {
            let step = newton_step(kind, m, mass, nodes[i]);
            if step.is_finite() && step.abs() < 0.1 * spacing {
                nodes[i] -= step;
            } else {
                break;
            }
        }
        weights.push(christoffel_weight(kind, m, mass, nodes[i]));
    }
    if kind == QuadratureKind::GaussHermite || kind == QuadratureKind::GaussLegendre {
        symmetrize(&mut nodes, &mut weights);
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        kind,
    })
}

fn neighbour_gap(nodes: &[f64], i: usize) -> f64 {
    let left = if i > 0 {
        nodes[i] - nodes[i - 1]
    } else {
        f64::INFINITY
    };
    let right = if i + 1 < nodes.len() {
        nodes[i + 1] - nodes[i]
    } else {
        f64::INFINITY
    };
    let g = left.min(right);
    if g.is_finite() {
        g
    } else {
        1.0
    }
}

/// Orthonormal polynomial values `p_0..p_{m-1}` are needed for the weight and
/// `p_m, p_m'` for the Newton step; both are run with a shared log-scale.
fn newton_step(kind: QuadratureKind, m: usize, mass: f64, x: f64) -> f64 {
    let (mut p_prev, mut p) = (0.0f64, 1.0 / mass.sqrt());
    let (mut d_prev, mut d) = (0.0f64, 0.0f64);
    let mut b_prev = 0.0f64;
    for k in 0..m {
        let (alpha, _) = kind.recurrence(k);
        let b_next = kind.recurrence(k + 1).1.sqrt();
        let p_next = ((x - alpha) * p - b_prev * p_prev) / b_next;
        let d_next = ((x - alpha) * d + p - b_prev * d_prev) / b_next;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
        b_prev = b_next;
        let s = p.abs().max(d.abs());
        if s > 1e100 {
            p /= s;
            p_prev /= s;
            d /= s;
            d_prev /= s;
        }
    }
    p / d
}

fn christoffel_weight(kind: QuadratureKind, m: usize, mass: f64, x: f64) -> f64 {
    let (mut p_prev, mut p) = (0.0f64, 1.0 / mass.sqrt());
    let mut sum = p * p;
    let mut log_scale = 0.0f64;
    let mut b_prev = 0.0f64;
    for k in 0..m - 1 {
        let (alpha, _) = kind.recurrence(k);
        let b_next = kind.recurrence(k + 1).1.sqrt();
        let p_next = ((x - alpha) * p - b_prev * p_prev) / b_next;
        p_prev = p;
        p = p_next;
        b_prev = b_next;
        sum += p * p;
        let s = p.abs().max(p_prev.abs());
        if s > 1e100 {
            p /= s;
            p_prev /= s;
            sum /= s * s;
            log_scale += 2.0 * s.ln();
        }
    }
    (-(sum.ln() + log_scale)).exp()
}

fn symmetrize(nodes: &mut [f64], weights: &mut [f64]) {
    let m = nodes.len();
    for i in 0..m / 2 {
        let j = m - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        let w = 0.5 * (weights[i] + weights[j]);
        nodes[i] = -x;
        nodes[j] = x;
        weights[i] = w;
        weights[j] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
}

impl QuadratureRule {
    /// `sum_i w_i f(x_i)`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Composite Gauss-Legendre integration of `f` over `[a, b]` with `panels`
/// equal panels.
pub fn composite_legendre<F: FnMut(f64) -> f64>(
    rule: &QuadratureRule,
    a: f64,
    b: f64,
    panels: usize,
    mut f: F,
) -> f64 {
    debug_assert_eq!(rule.kind, QuadratureKind::GaussLegendre);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        total += 0.5 * h * rule.integrate(|t| f(mid + 0.5 * h * t));
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::gamma::gamma;

    fn moment(kind: QuadratureKind, k: usize) -> f64 {
        match kind {
            QuadratureKind::GaussHermite => {
                if k % 2 == 1 {
                    0.0
                } else {
                    gamma((k as f64 + 1.0) / 2.0)
                }
            }
            QuadratureKind::GaussLaguerre(a) => gamma(k as f64 + a + 1.0),
            QuadratureKind::GaussLegendre => {
                if k % 2 == 1 {
                    0.0
                } else {
                    2.0 / (k as f64 + 1.0)
                }
            }
        }
    }

    #[test]
    fn one_point_hermite() {
        let r = quadrature_rule(QuadratureKind::GaussHermite, 1).unwrap();
        assert_eq!(r.nodes, vec![0.0]);
        assert!((r.weights[0] - std::f64::consts::PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn hermite_second_moment() {
        for m in 2..12 {
            let r = quadrature_rule(QuadratureKind::GaussHermite, m).unwrap();
            let v = r.integrate(|x| x * x);
            assert!((v - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-13);
        }
    }

    #[test]
    fn laguerre_total_mass() {
        for m in [1, 5, 40, 80] {
            let r = quadrature_rule(QuadratureKind::GaussLaguerre(0.0), m).unwrap();
            assert!((r.integrate(|_| 1.0) - 1.0).abs() < 1e-13, "m={m}");
        }
    }

    #[test]
    fn exact_up_to_degree_2m_minus_1() {
        let kinds = [
            QuadratureKind::GaussHermite,
            QuadratureKind::GaussLaguerre(0.0),
            QuadratureKind::GaussLaguerre(1.5),
            QuadratureKind::GaussLaguerre(-0.5),
            QuadratureKind::GaussLegendre,
        ];
        for kind in kinds {
            for m in 1..=20 {
                let r = quadrature_rule(kind, m).unwrap();
                assert!(r.weights.iter().all(|&w| w > 0.0));
                for k in 0..2 * m {
                    let exact = moment(kind, k);
                    let got = r.integrate(|x| x.powi(k as i32));
                    let scale = exact
                        .abs()
                        .max(r.integrate(|x| x.abs().powi(k as i32)) * 1e-3);
                    assert!(
                        (got - exact).abs() <= 1e-12 * scale.max(1e-300),
                        "{kind:?} m={m} k={k} got={got} exact={exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_zero_points() {
        assert!(quadrature_rule(QuadratureKind::GaussHermite, 0).is_err());
    }

    #[test]
    fn composite_integrates_smooth_function() {
        let r = quadrature_rule(QuadratureKind::GaussLegendre, 10).unwrap();
        let v = composite_legendre(&r, 0.0, std::f64::consts::PI, 4, f64::sin);
        assert!((v - 2.0).abs() < 1e-14);
    }
}
