use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::charpoly::{
    box_avg, box_avg_series, chiral_avg_integral, chiral_avg_series, gauss_avg,
    gauss_avg_combinatorial, wishart_avg,
};
use crate::duality::{check_dr1, check_dr2, check_fr, check_w2, McConfig};
use crate::ensembles::{
    collect_samples, sample_beta_gaussian_source, sample_me_weight, sample_shifted_goe,
    sample_shifted_gue, sample_wishart_source, write_samples_csv, ChiralSourceSpec, EigenSample,
    Field, SAMPLES_SCHEMA,
};
use crate::scaling::{convergence_table, write_table_csv, ConvergenceRow, ScalingOp, TABLE_SCHEMA};
use crate::specfun::{
    airy, hermite, hyp0f1_real, incomplete_airy, incomplete_airy_contour, incomplete_hermite,
    incomplete_hermite_contour, laguerre, laguerre_exp_weighted, ScaledValue,
};

use super::{
    selftest, CharpolyArgs, CheckName, CliError, CliResult, Command, DualityArgs, EdgeName,
    EnsembleName, Format, Route, SampleArgs, SoftedgeArgs, SpecfunArgs, SpecfunName,
};

pub const SPECFUN_SCHEMA: &str = "rmt-source/specfun/v1";
pub const CHARPOLY_SCHEMA: &str = "rmt-source/charpoly/v1";

pub struct Context {
    pub seed: u64,
    pub workers: usize,
    pub format: Option<Format>,
}

/// Bytes to write, and a failure message when a numerical check failed.
pub struct Outcome {
    pub bytes: Vec<u8>,
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(bytes: Vec<u8>) -> Self {
        Outcome {
            bytes,
            failure: None,
        }
    }

    fn json(v: &Value) -> Self {
        let mut bytes = serde_json::to_vec(v).expect("json serializes");
        bytes.push(b'\n');
        Self::ok(bytes)
    }
}

fn invalid<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Invalid(msg.into()))
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Invalid(format!("--{flag} is required")))
}

fn format_or(ctx: &Context, default: Format, allowed: &[Format]) -> CliResult<Format> {
    let f = ctx.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        invalid(format!(
            "format {} is not available for this command",
            format!("{f:?}").to_lowercase()
        ))
    }
}

pub fn dispatch(cmd: &Command, ctx: &Context) -> CliResult<Outcome> {
    match cmd {
        Command::Specfun(a) => specfun(a, ctx),
        Command::Sample(a) => sample(a, ctx),
        Command::Charpoly(a) => charpoly(a, ctx),
        Command::Duality(a) => duality(a, ctx),
        Command::Softedge(a) => softedge(a, ctx),
        Command::Selftest => Ok(selftest::run(ctx.workers)),
    }
}

fn scaled_json(v: ScaledValue) -> Value {
    json!({"value": v.to_finite(), "sign": v.sign(), "log_abs": v.log_abs()})
}

fn specfun(a: &SpecfunArgs, ctx: &Context) -> CliResult<Outcome> {
    format_or(ctx, Format::Json, &[Format::Json])?;
    let mut params = BTreeMap::new();
    let result = match a.function {
        SpecfunName::Hermite => {
            let (n, x) = (need(a.n, "n")?, need(a.x, "x")?);
            params.insert("n", json!(n));
            params.insert("x", json!(x));
            scaled_json(hermite(n, x))
        }
        SpecfunName::Laguerre => {
            let (n, x) = (need(a.n, "n")?, need(a.x, "x")?);
            let [alpha] = a.a[..] else {
                return invalid("--a takes one Laguerre parameter");
            };
            params.insert("n", json!(n));
            params.insert("x", json!(x));
            params.insert("a", json!(alpha));
            params.insert("weighted", json!(a.weighted));
            let v = if a.weighted {
                laguerre_exp_weighted(n, alpha, x)?
            } else {
                laguerre(n, alpha, x)?
            };
            scaled_json(v)
        }
        SpecfunName::Airy => {
            let x = need(a.x, "x")?;
            params.insert("x", json!(x));
            let (ai, aip) = airy(x);
            json!({"ai": ai, "ai_prime": aip})
        }
        SpecfunName::IncompleteAiry => {
            let x = need(a.x, "x")?;
            params.insert("x", json!(x));
            params.insert("s", json!(a.s));
            params.insert("contour", json!(a.contour));
            let v = if a.contour {
                incomplete_airy_contour(x, &a.s)?
            } else {
                incomplete_airy(x, &a.s)
            };
            json!({"value": v})
        }
        SpecfunName::IncompleteHermite => {
            let (n, u) = (need(a.n, "n")?, need(a.x, "x")?);
            params.insert("n", json!(n));
            params.insert("u", json!(u));
            params.insert("a", json!(a.a));
            params.insert("contour", json!(a.contour));
            let v = if a.contour {
                incomplete_hermite_contour(n, u, &a.a)?
            } else {
                incomplete_hermite(n, u, &a.a)?
            };
            scaled_json(v)
        }
        SpecfunName::Hyp0f1 => {
            let (c, x) = (need(a.c, "c")?, need(a.x, "x")?);
            params.insert("c", json!(c));
            params.insert("x", json!(x));
            json!({"value": hyp0f1_real(c, x)?})
        }
    };
    let name = format!("{:?}", a.function).to_lowercase();
    Ok(Outcome::json(&json!({
        "schema": SPECFUN_SCHEMA,
        "fn": name,
        "params": params,
        "result": result,
    })))
}

fn sample(a: &SampleArgs, ctx: &Context) -> CliResult<Outcome> {
    let format = format_or(ctx, Format::Csv, &[Format::Csv, Format::Json])?;
    let (seed, workers, total) = (ctx.seed, ctx.workers, a.samples);
    if total == 0 {
        return invalid("--samples must be >= 1");
    }
    let wishart = |field: Field| -> CliResult<(Vec<EigenSample>, f64)> {
        let spec = ChiralSourceSpec::new(need(a.n, "n")?, need(a.p, "p")?, field, a.mu.clone())?;
        Ok((
            collect_samples(seed, workers, total, |r| sample_wishart_source(&spec, r))?,
            field.beta(),
        ))
    };
    let gauss_src = || -> CliResult<&[f64]> {
        if a.s.is_empty() {
            invalid("--s (source) is required")
        } else {
            Ok(&a.s)
        }
    };
    let (samples, beta) = match a.ensemble {
        EnsembleName::Goe => {
            let s = gauss_src()?;
            (
                collect_samples(seed, workers, total, |r| sample_shifted_goe(s, r))?,
                1.0,
            )
        }
        EnsembleName::Gue => {
            let s = gauss_src()?;
            (
                collect_samples(seed, workers, total, |r| sample_shifted_gue(s, r))?,
                2.0,
            )
        }
        EnsembleName::WishartReal => wishart(Field::Real)?,
        EnsembleName::WishartComplex => wishart(Field::Complex)?,
        EnsembleName::Beta => {
            let (s, beta) = (gauss_src()?, need(a.beta, "beta")?);
            let v = collect_samples(seed, workers, total, |r| {
                sample_beta_gaussian_source(beta, s, r)
            })?;
            (v, beta)
        }
        EnsembleName::MeWeight => {
            let (s, beta, c) = (gauss_src()?, need(a.beta, "beta")?, need(a.c, "c")?);
            (
                collect_samples(seed, workers, total, |r| sample_me_weight(beta, c, s, r))?,
                beta,
            )
        }
    };
    let tag = samples
        .first()
        .map_or_else(String::new, |s| s.ensemble.clone());
    match format {
        Format::Csv => {
            let mut bytes = Vec::new();
            write_samples_csv(&mut bytes, &tag, beta, seed, &samples)?;
            Ok(Outcome::ok(bytes))
        }
        Format::Json => {
            let values: Vec<&Vec<f64>> = samples.iter().map(|s| &s.values).collect();
            Ok(Outcome::json(&json!({
                "schema": SAMPLES_SCHEMA,
                "ensemble": tag,
                "beta": beta,
                "seed": seed,
                "workers": workers,
                "values": values,
            })))
        }
    }
}

fn charpoly(a: &CharpolyArgs, ctx: &Context) -> CliResult<Outcome> {
    format_or(ctx, Format::Json, &[Format::Json])?;
    let lambda = a.lambda;
    let mut params = BTreeMap::new();
    params.insert("lambda", json!(lambda));
    let (kind, route, value) = if a.gauss {
        let s = match (a.big_n, a.s.is_empty()) {
            (Some(n), true) => vec![0.0; n],
            (Some(n), false) if n != a.s.len() => {
                return invalid(format!(
                    "--N {n} does not match {} source entries",
                    a.s.len()
                ))
            }
            (None, true) => return invalid("--gauss needs --N or --s"),
            _ => a.s.clone(),
        };
        params.insert("s", json!(s));
        let route = a.route.unwrap_or(Route::Quadrature);
        let v = match route {
            Route::Quadrature => gauss_avg(lambda, &s)?,
            Route::Combinatorial => gauss_avg_combinatorial(lambda, &s)?,
            _ => return invalid("--gauss supports routes quadrature and combinatorial"),
        };
        ("gauss", route, v)
    } else if a.chiral {
        let (n, p) = (need(a.n, "n")?, need(a.p, "p")?);
        params.insert("n", json!(n));
        params.insert("p", json!(p));
        params.insert("s", json!(a.s));
        let route = a.route.unwrap_or(Route::Series);
        let v = match route {
            Route::Series => chiral_avg_series(lambda, n, p, &a.s)?,
            Route::Integral => chiral_avg_integral(lambda, n, p, &a.s)?,
            _ => return invalid("--chiral supports routes series and integral"),
        };
        ("chiral", route, v)
    } else if a.wishart {
        let (n, p) = (need(a.n, "n")?, need(a.p, "p")?);
        params.insert("n", json!(n));
        params.insert("p", json!(p));
        params.insert("m", json!(a.m));
        if a.route.is_some_and(|r| r != Route::Quadrature) {
            return invalid("--wishart supports route quadrature");
        }
        (
            "wishart",
            Route::Quadrature,
            wishart_avg(lambda, n, p, &a.m)?,
        )
    } else {
        let alpha = need(a.a, "a")?;
        params.insert("a", json!(alpha));
        params.insert("m", json!(a.m));
        let route = a.route.unwrap_or(Route::Quadrature);
        let v = match route {
            Route::Quadrature => box_avg(lambda, alpha, &a.m)?,
            Route::Series => box_avg_series(lambda, alpha, &a.m)?,
            _ => return invalid("--box supports routes quadrature and series"),
        };
        ("box", route, v)
    };
    params.insert("route", json!(format!("{route:?}").to_lowercase()));
    Ok(Outcome::json(&json!({
        "schema": CHARPOLY_SCHEMA,
        "kind": kind,
        "params": params,
        "value": value,
    })))
}

fn duality(a: &DualityArgs, ctx: &Context) -> CliResult<Outcome> {
    format_or(ctx, Format::Json, &[Format::Json])?;
    let cfg = McConfig {
        samples: a.samples,
        seed: ctx.seed,
        workers: ctx.workers,
        threshold: a.threshold,
    };
    if cfg.samples < 2 {
        return invalid("--samples must be >= 2");
    }
    let report = match a.check {
        CheckName::W2 => {
            let [x] = a.x[..] else {
                return invalid("w2 takes a single evaluation point --x");
            };
            check_w2(
                need(a.beta, "beta")?,
                need(a.big_n, "N")?,
                need(a.n, "n")?,
                x,
                &cfg,
            )?
        }
        CheckName::Fr => {
            if let Some(n) = a.big_n {
                if n != a.x.len() {
                    return invalid(format!(
                        "--N {n} does not match {} source entries",
                        a.x.len()
                    ));
                }
            }
            check_fr(need(a.beta, "beta")?, &a.x, need(a.lambda, "lambda")?, &cfg)?
        }
        CheckName::Dr1 => {
            for (flag, len, want) in [("N", a.xi.len(), a.big_n), ("n", a.sigma.len(), a.n)] {
                if want.is_some_and(|w| w != len) {
                    return invalid(format!("--{flag} does not match the source length {len}"));
                }
            }
            check_dr1(need(a.alpha, "alpha")?, &a.xi, &a.sigma, &cfg)?
        }
        CheckName::Dr2 => check_dr2(need(a.beta, "beta")?, need(a.a, "a")?, &a.s, &a.m, &cfg)?,
    };
    let mut bytes = report.to_json().into_bytes();
    bytes.push(b'\n');
    let failure = (!report.pass).then(|| format!("duality {} z = {}", report.check, report.z));
    Ok(Outcome { bytes, failure })
}

fn softedge(a: &SoftedgeArgs, ctx: &Context) -> CliResult<Outcome> {
    let format = format_or(ctx, Format::Csv, &[Format::Csv, Format::Json])?;
    if a.sizes.is_empty() || a.big_x.is_empty() {
        return invalid("--sizes and --X are required");
    }
    let op = match a.which {
        EdgeName::Classic => ScalingOp::Classic,
        EdgeName::Gauss => ScalingOp::Gauss,
        EdgeName::Chiral => ScalingOp::Chiral {
            a: a.a.unwrap_or(0.0),
        },
        EdgeName::Szego => ScalingOp::Szego {
            a: a.a.unwrap_or(0.0),
            k: a.k.unwrap_or(0),
        },
    };
    let s = match a.which {
        EdgeName::Gauss => match a.r {
            Some(r) if a.s.is_empty() => vec![0.0; r],
            Some(r) if r != a.s.len() => {
                return invalid(format!(
                    "--r {r} does not match {} entries of --s",
                    a.s.len()
                ))
            }
            _ => a.s.clone(),
        },
        EdgeName::Chiral => match a.s[..] {
            [] => vec![0.0],
            [s1] => vec![s1],
            _ => return invalid("chiral takes a single --s"),
        },
        _ if !a.s.is_empty() => return invalid("--s applies to gauss and chiral only"),
        _ => Vec::new(),
    };
    let grid: Vec<(f64, Vec<f64>)> = a.big_x.iter().map(|&x| (x, s.clone())).collect();
    let rows = convergence_table(op, &a.sizes, &grid)?;
    match format {
        Format::Csv => {
            let mut bytes = Vec::new();
            write_table_csv(&mut bytes, &rows)?;
            Ok(Outcome::ok(bytes))
        }
        Format::Json => {
            let rows: Vec<Value> = rows.iter().map(row_json).collect();
            Ok(Outcome::json(
                &json!({"schema": TABLE_SCHEMA, "which": format!("{:?}", a.which).to_lowercase(), "rows": rows}),
            ))
        }
    }
}

fn row_json(r: &ConvergenceRow) -> Value {
    json!({"size": r.size, "X": r.x, "s": r.s, "finite": r.finite, "limit": r.limit, "abs_error": r.abs_error})
}
