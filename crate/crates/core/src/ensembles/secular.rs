//! Roots of the secular equation `lambda - x11 - sum_j q_j / (lambda - p_j) = 0`.

use crate::error::{Error, Result};

/// One bordering step of the recursive construction: the previous
/// eigenvalues (poles), the squared coupling weights, and the new diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct RecursionStep {
    pub poles: Vec<f64>,
    pub weights: Vec<f64>,
    pub x11: f64,
}

fn secular(poles: &[f64], weights: &[f64], x11: f64, l: f64) -> (f64, f64) {
    let mut f = l - x11;
    let mut df = 1.0;
    for (&p, &q) in poles.iter().zip(weights) {
        let d = l - p;
        f -= q / d;
        df += q / (d * d);
    }
    (f, df)
}

/// Increasing `f` with `f(lo) < 0 < f(hi)`: bisection safeguarding Newton.
fn solve_bracket<F: Fn(f64) -> (f64, f64)>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (v, dv) = f(x);
        if v == 0.0 {
            return x;
        }
        if v < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let tol = 1e-13 * (1.0 + x.abs());
        if hi - lo <= tol {
            break;
        }
        let newton = x - v / dv;
        // keep Newton while it stays well inside the bracket
        x = if newton > lo + 1e-3 * (hi - lo) && newton < hi - 1e-3 * (hi - lo) {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if x <= lo || x >= hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// The `k + 1` roots of the step's secular equation, sorted, strictly
/// interlacing the `k` poles.
///
/// Poles closer than `1e-12` of the spectral scale are merged (weights
/// summed) before solving; each merged cluster then contributes its own
/// interior points as roots.
pub fn secular_roots(step: &RecursionStep) -> Result<Vec<f64>> {
    let RecursionStep {
        poles,
        weights,
        x11,
    } = step;
    if poles.len() != weights.len() {
        return Err(Error::InvalidArgument(
            "poles and weights differ in length".into(),
        ));
    }
    if poles.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("poles must be sorted".into()));
    }
    if weights.iter().any(|&q| !(q >= 0.0)) {
        return Err(Error::InvalidArgument("weights must be nonnegative".into()));
    }
    let scale = 1.0 + poles.iter().map(|p| p.abs()).fold(x11.abs(), f64::max);

    // merge near-coincident poles
    let mut merged_poles: Vec<f64> = Vec::with_capacity(poles.len());
    let mut merged_weights: Vec<f64> = Vec::with_capacity(poles.len());
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for (&p, &q) in poles.iter().zip(weights) {
        match merged_poles.last() {
            Some(&last) if p - last < 1e-12 * scale => {
                *merged_weights.last_mut().expect("nonempty") += q;
                clusters.last_mut().expect("nonempty").push(p);
            }
            _ => {
                merged_poles.push(p);
                merged_weights.push(q);
                clusters.push(vec![p]);
            }
        }
    }
    let k = merged_poles.len();
    let f = |l: f64| secular(&merged_poles, &merged_weights, *x11, l);

    let mut roots = Vec::with_capacity(poles.len() + 1);
    if k == 0 {
        roots.push(*x11);
        return Ok(roots);
    }
    // left flank
    let mut width = scale;
    let right_end = merged_poles[0];
    let mut lo = right_end - width;
    while f(lo).0 >= 0.0 {
        width *= 2.0;
        lo = right_end - width;
        if !lo.is_finite() {
            return Err(Error::BracketFailure { index: 0 });
        }
    }
    roots.push(nudge_inside(
        solve_bracket(f, lo, right_end),
        f64::NEG_INFINITY,
        right_end,
    ));
    for i in 0..k {
        let left = merged_poles[i];
        let cluster = &clusters[i];
        // interior points of a merged cluster stand in for its own roots
        for w in cluster.windows(2) {
            roots.push(0.5 * (w[0] + w[1]));
        }
        if i + 1 < k {
            let right = merged_poles[i + 1];
            let r = solve_bracket(f, left, right);
            roots.push(nudge_inside(r, left, right));
        } else {
            let mut width = scale;
            let mut hi = left + width;
            while f(hi).0 <= 0.0 {
                width *= 2.0;
                hi = left + width;
                if !hi.is_finite() {
                    return Err(Error::BracketFailure { index: k });
                }
            }
            roots.push(nudge_inside(
                solve_bracket(f, left, hi),
                left,
                f64::INFINITY,
            ));
        }
    }

    for (i, w) in roots.windows(2).enumerate() {
        let pole = poles[i];
        if !(w[0] < pole && pole < w[1]) && !(w[0] <= pole && pole <= w[1] && poles.len() > k) {
            return Err(Error::InterlacingViolation {
                step: poles.len() + 1,
            });
        }
    }
    let residual = roots.iter().sum::<f64>() - poles.iter().sum::<f64>() - x11;
    if residual.abs() > 1e-9 * scale * (poles.len() + 1) as f64 {
        return Err(Error::TraceViolation {
            step: poles.len() + 1,
            residual,
        });
    }
    Ok(roots)
}

/// Moves a root that rounded onto a bracketing pole one ulp inside.
fn nudge_inside(r: f64, left: f64, right: f64) -> f64 {
    if r <= left {
        left.next_up()
    } else if r >= right {
        right.next_down()
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_pole_quadratic() {
        let r = secular_roots(&RecursionStep {
            poles: vec![0.0],
            weights: vec![1.0],
            x11: 0.0,
        })
        .unwrap();
        assert!((r[0] + 1.0).abs() < 1e-12 && (r[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn no_poles_returns_diagonal() {
        let r = secular_roots(&RecursionStep {
            poles: vec![],
            weights: vec![],
            x11: 0.7,
        })
        .unwrap();
        assert_eq!(r, vec![0.7]);
    }

    #[test]
    fn vanishing_weights_recover_poles_and_diagonal() {
        let poles = vec![-1.0, 0.5, 2.0];
        let r = secular_roots(&RecursionStep {
            poles: poles.clone(),
            weights: vec![1e-12; 3],
            x11: 1.0,
        })
        .unwrap();
        let mut expect = poles;
        expect.push(1.0);
        expect.sort_by(f64::total_cmp);
        for (a, b) in r.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-5);
        }
    }

    #[test]
    fn coincident_poles_are_merged() {
        let r = secular_roots(&RecursionStep {
            poles: vec![0.3, 0.3, 1.0],
            weights: vec![0.5, 0.5, 0.2],
            x11: 0.0,
        })
        .unwrap();
        assert_eq!(r.len(), 4);
        assert_eq!(r[1], 0.3);
    }

    proptest! {
        #[test]
        fn roots_interlace_and_match_trace(
            mut poles in proptest::collection::vec(-5.0f64..5.0, 1..8),
            seed_w in proptest::collection::vec(0.01f64..3.0, 8),
            x11 in -4.0f64..4.0,
        ) {
            poles.sort_by(f64::total_cmp);
            poles.dedup();
            let weights = seed_w[..poles.len()].to_vec();
            let step = RecursionStep { poles: poles.clone(), weights: weights.clone(), x11 };
            let r = secular_roots(&step).unwrap();
            prop_assert_eq!(r.len(), poles.len() + 1);
            for (i, &p) in poles.iter().enumerate() {
                prop_assert!(r[i] < p && p < r[i + 1]);
            }
            let resid = r.iter().sum::<f64>() - poles.iter().sum::<f64>() - x11;
            prop_assert!(resid.abs() < 1e-9 * 10.0);
            for &l in &r {
                let (v, _) = secular(&poles, &weights, x11, l);
                let d = 1.0 + weights.iter().zip(&poles).map(|(q, p)| q / (l - p).powi(2)).sum::<f64>();
                // residual measured as root displacement
                prop_assert!((v / d).abs() < 1e-12 * (1.0 + l.abs()));
            }
        }
    }
}
