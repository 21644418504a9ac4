use super::*;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;

fn part(p: &[usize]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

fn cvec(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&t| Complex64::new(t, 0.0)).collect()
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Schur polynomial as a ratio of alternants.
fn schur_bialternant(kappa: &Partition, x: &[f64]) -> f64 {
    let n = x.len();
    let num = DMatrix::from_fn(n, n, |i, j| x[i].powi((kappa.part(j) + n - 1 - j) as i32));
    let den = DMatrix::from_fn(n, n, |i, j| x[i].powi((n - 1 - j) as i32));
    num.determinant() / den.determinant()
}

#[test]
fn first_degree_is_power_sum() {
    let x = cvec(&[0.3, -1.2, 2.0]);
    let v = jack_poly(&part(&[1]), &x, 0.7).unwrap();
    assert!((v.re - 1.1).abs() < 1e-14);
}

#[test]
fn single_variable_monomial() {
    let v = jack_poly(&part(&[2]), &cvec(&[1.7]), 3.0).unwrap();
    assert!((v.re - 1.7 * 1.7).abs() < 1e-14);
}

#[test]
fn schur_at_ones() {
    let v = jack_poly(&part(&[2, 1]), &cvec(&[1.0, 1.0, 1.0]), 1.0).unwrap();
    assert!((v.re - 8.0).abs() < 1e-12);
}

#[test]
fn alpha_one_is_schur() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=4usize {
        let x: Vec<f64> = (0..n)
            .map(|i| 0.4 + 0.3 * i as f64 + 0.2 * rng.random::<f64>())
            .collect();
        for k in 0..=6 {
            for kappa in Partition::of_weight(k, n) {
                let jack = jack_poly(&kappa, &cvec(&x), 1.0).unwrap().re;
                let schur = schur_bialternant(&kappa, &x);
                assert!(
                    (jack - schur).abs() <= 1e-10 * schur.abs(),
                    "kappa={kappa} n={n}: {jack} vs {schur}"
                );
            }
        }
    }
}

#[test]
fn two_part_jack_closed_form() {
    // P_(2) = m_(2) + 2/(1 + alpha) m_(1,1)
    let alpha = 2.5;
    let (a, b) = (0.7, -1.3);
    let v = jack_poly(&part(&[2]), &cvec(&[a, b]), alpha).unwrap().re;
    let expect = a * a + b * b + 2.0 / (1.0 + alpha) * a * b;
    assert!((v - expect).abs() < 1e-14);
}

#[test]
fn product_formula_at_ones_matches_evaluation() {
    for &alpha in &[0.5, 1.0, 2.0, 2.0 / 3.0] {
        let ctx = JackContext::new(alpha, 12).unwrap();
        for n in 1..=4 {
            let ones = cvec(&vec![1.0; n]);
            for k in 0..=7 {
                for kappa in Partition::of_weight(k, n) {
                    let direct = ctx.jack_poly(&kappa, &ones).unwrap().re;
                    let formula = ctx.at_ones(&kappa, n);
                    assert!((direct - formula).abs() <= 1e-12 * formula, "{kappa} n={n}");
                }
            }
        }
    }
}

#[test]
fn degree_limit_is_reported() {
    let ctx = JackContext::new(1.0, 4).unwrap();
    assert_eq!(
        ctx.jack_poly(&part(&[3, 2]), &cvec(&[1.0, 2.0]))
            .unwrap_err(),
        Error::DegreeLimit {
            degree: 5,
            limit: 4
        }
    );
}

#[test]
fn dprime_row_partitions() {
    for &alpha in &[0.5, 1.0, 2.0, 3.7] {
        for k in 0..=12usize {
            let d = dprime(&Partition::new(vec![k]).unwrap(), alpha);
            let expect = alpha.powi(k as i32) * factorial(k);
            assert!((d - expect).abs() <= 1e-13 * expect);
        }
        assert!((dprime(&part(&[1, 1]), alpha) - alpha * (alpha + 1.0)).abs() < 1e-14);
    }
    assert_eq!(dprime(&Partition::empty(), 2.0), 1.0);
}

#[test]
fn pochhammer_values() {
    assert_eq!(gen_pochhammer(0.3, &Partition::empty(), 2.0).unwrap(), 1.0);
    assert!((gen_pochhammer(0.3, &part(&[1]), 2.0).unwrap() - 0.3).abs() < 1e-15);
    let c = 1.7;
    let v = gen_pochhammer(c, &part(&[1, 1]), 2.0).unwrap();
    assert!((v - c * (c - 0.5)).abs() < 1e-14);
    assert_eq!(
        gen_pochhammer(1.0, &part(&[2, 2]), 1.0).unwrap_err(),
        Error::PochhammerPole { row: 2 }
    );
}

#[test]
fn one_variable_exponential() {
    let k = DEFAULT_MAX_DEGREE;
    for &(x, y) in &[(1.0, 3.0), (-1.5, 2.0), (0.4, 0.4), (3.0, -1.0)] {
        let z: f64 = x * y;
        let v = hyper_0f0(&[x], &[y], 0.8, k).unwrap().value.re;
        // Lagrange remainder of the exponential series
        let bound = z.abs().powi(k as i32 + 1) / factorial(k + 1) * z.max(0.0).exp();
        assert!((v - z.exp()).abs() <= bound + 1e-15 * z.exp(), "z={z}");
    }
}

#[test]
fn hyper_0f0_symmetries() {
    let x = [0.3, -0.8, 1.1];
    let y = [0.5, 0.2, -0.4];
    let a = hyper_0f0(&x, &y, 1.5, 16).unwrap();
    let b = hyper_0f0(&y, &x, 1.5, 16).unwrap();
    assert!((a.value - b.value).norm() < 1e-14);
    assert!(a.converged);
    let c = 1.7;
    let xs: Vec<f64> = x.iter().map(|v| v * c).collect();
    let ys: Vec<f64> = y.iter().map(|v| v * c).collect();
    let l = hyper_0f0(&xs, &y, 1.5, 16).unwrap().value;
    let r = hyper_0f0(&x, &ys, 1.5, 16).unwrap().value;
    assert!((l - r).norm() < 1e-13);
    let xp = [x[2], x[0], x[1]];
    let yp = [y[2], y[0], y[1]];
    let p = hyper_0f0(&xp, &yp, 1.5, 16).unwrap().value;
    assert!((a.value - p).norm() < 1e-13);
}

#[test]
fn hyper_0f1_reductions() {
    let v = hyper_0f1(1.5, &[0.7], &[-1.3], 0.9, 20).unwrap().value.re;
    let s = crate::specfun::hyp0f1_real(1.5, -0.7 * 1.3).unwrap();
    assert!((v - s).abs() < 1e-14);
    let w = hyper_0f1(2.0, &[0.7, 0.2], &[0.0, 0.0], 1.0, 20)
        .unwrap()
        .value;
    assert_eq!(w, Complex64::new(1.0, 0.0));
}

fn haar_u2<R: Rng>(rng: &mut R) -> [[Complex64; 2]; 2] {
    let g: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
    let a = Complex64::new(g[0], g[1]) / norm;
    let b = Complex64::new(g[2], g[3]) / norm;
    let ph = Complex64::from_polar(1.0, 2.0 * PI * rng.random::<f64>());
    [[ph * a, ph * b], [-ph * b.conj(), ph * a.conj()]]
}

/// `int int exp(2 Re Tr(L U Lambda V^dagger))` over two Haar unitaries
/// against the series with `c = 2`, `alpha = 1` in the arguments
/// `Lambda^2`, `L^2`. Pins the sign inside the generalized Pochhammer symbol.
#[test]
fn unitary_group_integral_pins_pochhammer_convention() {
    let lam = [1.2, 0.9];
    let el = [1.0, 0.7];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let samples = 400_000;
    let (mut s1, mut s2) = (0.0, 0.0);
    for _ in 0..samples {
        let u = haar_u2(&mut rng);
        let v = haar_u2(&mut rng);
        // Tr(L U Lambda V^dagger) = sum_{i,k} L_i U_ik Lambda_k conj(V_ik)
        let mut tr = Complex64::new(0.0, 0.0);
        for i in 0..2 {
            for k in 0..2 {
                tr += el[i] * u[i][k] * lam[k] * v[i][k].conj();
            }
        }
        let f = (2.0 * tr.re).exp();
        s1 += f;
        s2 += f * f;
    }
    let mean = s1 / samples as f64;
    let se = ((s2 / samples as f64 - mean * mean) / samples as f64).sqrt();
    let x = [lam[0] * lam[0], lam[1] * lam[1]];
    let y = [el[0] * el[0], el[1] * el[1]];
    let series = hyper_0f1(2.0, &x, &y, 1.0, 20).unwrap().value.re;
    assert!(
        (mean - series).abs() <= 4.0 * se,
        "MC {mean} +- {se}, series {series}"
    );

    // the reading c + (j - 1)/alpha inside the symbol is far off
    let ctx = JackContext::new(1.0, 20).unwrap();
    let plus = ctx
        .two_argument_series(&cvec(&x), &cvec(&y), 20, |k| {
            Ok(k.parts()
                .iter()
                .enumerate()
                .map(|(j, &kj)| (0..kj).map(|t| 2.0 + j as f64 + t as f64).product::<f64>())
                .product())
        })
        .unwrap()
        .value
        .re;
    assert!((mean - plus).abs() > 20.0 * se, "plus reading {plus}");
}

#[test]
fn density_without_source() {
    let l = [-0.4, 1.1, 0.3];
    let d = gaussian_source_density(&l, &[0.0; 3], 2.0, 20)
        .unwrap()
        .value
        .re;
    let vander = ((1.1f64 + 0.4) * (0.3f64 + 0.4) * (0.3f64 - 1.1).abs()).powi(2);
    let expect = vander * (-0.5 * (0.16 + 1.21 + 0.09f64)).exp();
    assert!((d - expect).abs() < 1e-14);
}

#[test]
fn density_joint_permutation() {
    let l = [-0.4, 1.1, 0.3];
    let m = [0.5, -0.2, 0.9];
    let a = gaussian_source_density(&l, &m, 3.0, 20).unwrap().value.re;
    let b = gaussian_source_density(&[l[1], l[2], l[0]], &[m[1], m[2], m[0]], 3.0, 20)
        .unwrap()
        .value
        .re;
    assert!((a - b).abs() <= 1e-13 * a.abs());
}

#[test]
fn orthogonal_group_average_two_by_two() {
    // 0F0^{(2)}(l; m) = average over rotations of exp(Tr(R diag(l) R^T diag(m)))
    let l = [0.9, -0.6];
    let m = [0.8, 0.3];
    let steps = 400;
    let avg: f64 = (0..steps)
        .map(|i| {
            let th = 2.0 * PI * i as f64 / steps as f64;
            let (s, c) = th.sin_cos();
            (c * c * (l[0] * m[0] + l[1] * m[1]) + s * s * (l[1] * m[0] + l[0] * m[1])).exp()
        })
        .sum::<f64>()
        / steps as f64;
    let gauss = (-0.5 * (l[0] * l[0] + l[1] * l[1] + m[0] * m[0] + m[1] * m[1])).exp();
    let expect = (l[1] - l[0]).abs() * gauss * avg;
    let d = gaussian_source_density(&l, &m, 1.0, 20).unwrap();
    assert!(d.converged);
    assert!(
        (d.value.re - expect).abs() <= 1e-10 * expect,
        "{} vs {expect}",
        d.value.re
    );
}
