//! Fast invariant suite behind `rmt-source selftest`.

use crate::charpoly::{
    chiral_avg_integral, chiral_avg_series, gauss_avg, gauss_avg_combinatorial, mc_estimate,
};
use crate::duality::{check_dr2, check_fr, McConfig};
use crate::ensembles::validate::{audit_steps, ks_two_sample, StepAudit};
use crate::ensembles::{
    collect_samples, run_workers, sample_beta_gaussian_source, sample_beta_gaussian_source_traced,
    sample_shifted_goe,
};
use crate::jack::{dprime, hyper_0f0, jack_poly, Partition};
use crate::scaling::{classic_airy_limit, gauss_soft_edge, stirling_conversion};
use crate::specfun::{
    airy, hermite, incomplete_airy, incomplete_airy_contour, incomplete_hermite,
    incomplete_hermite_contour, AI_ZERO,
};
use num_complex::Complex64;

use super::commands::Outcome;

pub const SELFTEST_SCHEMA: &str = "rmt-source/selftest/v1";

type Check = std::result::Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn specfun() -> Check {
    ensure((airy(0.0).0 - AI_ZERO).abs() < 1e-15, || "Ai(0)".into())?;
    for s in [vec![], vec![0.3], vec![0.3, -0.2], vec![0.3, -0.2, 1.0]] {
        let a = incomplete_airy(0.5, &s);
        let c = incomplete_airy_contour(0.5, &s).map_err(err)?;
        ensure((a - c).abs() < 1e-8, || {
            format!("incomplete Airy r={}: {a} vs {c}", s.len())
        })?;
    }
    let e = incomplete_hermite(10, 1.3, &[0.5]).map_err(err)?.to_f64();
    let c = incomplete_hermite_contour(10, 1.3, &[0.5])
        .map_err(err)?
        .to_f64();
    ensure(rel(e, c) < 1e-8, || {
        format!("incomplete Hermite: {e} vs {c}")
    })?;
    let h = hermite(5, 0.7).to_f64();
    let direct = 32.0 * 0.7f64.powi(5) - 160.0 * 0.7f64.powi(3) + 120.0 * 0.7;
    ensure(rel(h, direct) < 1e-13, || format!("H_5: {h} vs {direct}"))
}

fn jack() -> Check {
    let k = Partition::new(vec![2, 1]).map_err(err)?;
    let ones = vec![Complex64::new(1.0, 0.0); 3];
    let v = jack_poly(&k, &ones, 1.0).map_err(err)?;
    ensure((v.re - 8.0).abs() < 1e-12, || {
        format!("s_(2,1)(1,1,1) = {v}")
    })?;
    let alpha = 1.5;
    let mut fact = 1.0;
    for k in 1..=8usize {
        fact *= k as f64;
        let d = dprime(&Partition::new(vec![k]).map_err(err)?, alpha);
        let want = alpha.powi(k as i32) * fact;
        ensure(rel(d, want) < 1e-12, || {
            format!("d'_({k}) = {d}, want {want}")
        })?;
    }
    let f = hyper_0f0(&[0.8], &[-1.1], alpha, 20).map_err(err)?;
    ensure((f.value.re - (-0.88f64).exp()).abs() < 1e-12, || {
        "N=1 0F0".into()
    })
}

fn ensembles(workers: usize) -> Check {
    let mu = [0.9, 0.1, -0.4, 0.0];
    let audits = run_workers(101, workers, 2000, |_, rng, count| {
        let mut a = StepAudit::default();
        for _ in 0..count {
            let (s, steps) = sample_beta_gaussian_source_traced(2.5, &mu, rng)?;
            a.merge(&audit_steps(&steps, &s.values));
        }
        Ok(a)
    })
    .map_err(err)?;
    let mut total = StepAudit::default();
    for a in &audits {
        total.merge(a);
    }
    ensure(total.is_clean() && total.steps == 8000, || {
        format!("{total:?}")
    })?;
    let src = [0.6, 0.0, -0.3];
    let a = collect_samples(102, workers, 20_000, |r| {
        sample_beta_gaussian_source(1.0, &src, r)
    })
    .map_err(err)?;
    let b = collect_samples(103, workers, 20_000, |r| sample_shifted_goe(&src, r)).map_err(err)?;
    let top =
        |v: &[crate::ensembles::EigenSample]| v.iter().map(|s| s.values[2]).collect::<Vec<f64>>();
    let ks = ks_two_sample(&top(&a), &top(&b)).map_err(err)?;
    ensure(ks.p_value > 0.001, || {
        format!("recursive vs GOE KS p = {}", ks.p_value)
    })
}

fn charpoly(workers: usize) -> Check {
    for k in 0..20 {
        let t = k as f64;
        let s = [0.3 * t.sin(), -0.7 + 0.05 * t, 0.0, 1.1 * (0.4 * t).cos()];
        let lambda = -2.0 + 0.2 * t;
        let q = gauss_avg(lambda, &s).map_err(err)?;
        let c = gauss_avg_combinatorial(lambda, &s).map_err(err)?;
        ensure((q - c).abs() <= 1e-10 * q.abs().max(1.0), || {
            format!("gauss routes at {lambda}: {q} vs {c}")
        })?;
    }
    let s = [0.5, 1.2];
    let a = chiral_avg_series(0.9, 4, 2, &s).map_err(err)?;
    let b = chiral_avg_integral(0.9, 4, 2, &s).map_err(err)?;
    ensure((a - b).abs() <= 1e-8 * a.abs().max(1.0), || {
        format!("chiral routes: {a} vs {b}")
    })?;
    let zero = [0.0; 5];
    let est = mc_estimate(
        104,
        workers,
        20_000,
        |r| sample_shifted_goe(&zero, r),
        |smp| crate::charpoly::log_product(Complex64::new(0.5, 0.0), &smp.values),
    )
    .map_err(err)?;
    let exact = gauss_avg(0.5, &zero).map_err(err)?;
    let z = est.z_against(Complex64::new(exact, 0.0));
    ensure(z <= 4.0, || format!("GOE N=5 MC z = {z}"))
}

fn duality(workers: usize) -> Check {
    let cfg = McConfig {
        samples: 20_000,
        seed: 105,
        workers,
        threshold: 4.0,
    };
    let r = check_fr(3.0, &[0.7, -0.7], 1.2, &cfg).map_err(err)?;
    ensure(r.pass, || format!("fr z = {}", r.z))?;
    let r = check_dr2(2.0, 1, &[0.5], &[1.5], &cfg).map_err(err)?;
    ensure(r.pass, || format!("dr2 z = {}", r.z))
}

fn scaling() -> Check {
    let row = gauss_soft_edge(200, 0.0, &[0.0]).map_err(err)?;
    ensure(row.abs_error <= 0.03, || {
        format!("gauss r=1 error {}", row.abs_error)
    })?;
    let g = gauss_soft_edge(100, 0.4, &[]).map_err(err)?.finite * (-stirling_conversion(100)).exp();
    let c = classic_airy_limit(100, 0.4).map_err(err)?.finite;
    ensure(rel(g, c) < 1e-6, || format!("r=0 vs classic: {g} vs {c}"))
}

fn cli(workers: usize) -> Check {
    let w = workers.to_string();
    let args = [
        "rmt-source",
        "--workers",
        &w,
        "charpoly",
        "--gauss",
        "--N",
        "2",
        "--s",
        "0,0",
        "--lambda",
        "1",
    ];
    let mut first = Vec::new();
    let mut second = Vec::new();
    let mut sink = Vec::new();
    let c1 = super::run(args, &mut first, &mut sink);
    let c2 = super::run(args, &mut second, &mut sink);
    ensure(c1 == 0 && c2 == 0 && first == second, || {
        "charpoly run not reproducible".into()
    })?;
    let v: serde_json::Value = serde_json::from_slice(&first).map_err(|e| e.to_string())?;
    let value = v["value"].as_f64().unwrap_or(f64::NAN);
    ensure((value - 0.5).abs() < 1e-14, || {
        format!("charpoly value {value}")
    })
}

type Suite<'a> = (&'a str, Box<dyn Fn() -> Check>);

/// Runs every module's checks and renders one line per module.
pub fn run(workers: usize) -> Outcome {
    let suites: [Suite; 7] = [
        ("specfun", Box::new(specfun)),
        ("jack", Box::new(jack)),
        ("ensembles", Box::new(move || ensembles(workers))),
        ("charpoly", Box::new(move || charpoly(workers))),
        ("duality", Box::new(move || duality(workers))),
        ("scaling", Box::new(scaling)),
        ("cli", Box::new(move || cli(workers))),
    ];
    let mut text = format!("# schema: {SELFTEST_SCHEMA}\n");
    let mut failed = Vec::new();
    for (name, suite) in suites.iter() {
        match suite() {
            Ok(()) => text.push_str(&format!("{name}: pass\n")),
            Err(why) => {
                text.push_str(&format!("{name}: fail ({why})\n"));
                failed.push(*name);
            }
        }
    }
    Outcome {
        bytes: text.into_bytes(),
        failure: (!failed.is_empty()).then(|| format!("selftest failed: {}", failed.join(", "))),
    }
}
