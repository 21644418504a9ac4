use num_complex::Complex64;
use rmt_source::charpoly::{
    box_avg, chiral_avg_integral, chiral_avg_series, log_product, mc_estimate, wishart_avg,
};
use rmt_source::ensembles::{sample_wishart_source, ChiralSourceSpec, Field};

fn main() -> rmt_source::Result<()> {
    let s = [0.6, 1.3];
    for lambda in [0.5, 1.5, 3.0] {
        println!(
            "lambda={lambda}: series {:.12}, integral {:.12}",
            chiral_avg_series(lambda, 5, 2, &s)?,
            chiral_avg_integral(lambda, 5, 2, &s)?
        );
    }
    let mu = [2.0, 0.0];
    let lambda = 3.0;
    let exact = wishart_avg(lambda, 4, 2, &mu)?;
    println!(
        "wishart n=4 p=2: {exact:.10} (box form {:.10})",
        box_avg(lambda, 2.0, &mu)?
    );
    for field in [Field::Real, Field::Complex] {
        let spec = ChiralSourceSpec::new(4, 2, field, mu.to_vec())?;
        let e = mc_estimate(
            5,
            4,
            100_000,
            |r| sample_wishart_source(&spec, r),
            |x| log_product(Complex64::new(lambda, 0.0), &x.values),
        )?;
        println!("{field:?} MC: {:.5} +- {:.5}", e.mean.re, e.stderr);
    }
    Ok(())
}
