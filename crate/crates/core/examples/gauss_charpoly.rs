//! Averaged characteristic polynomial of the Gaussian ensemble with a source:
//! closed form against Monte Carlo at beta = 1, 2 and a non-classical beta.

use num_complex::Complex64;
use rmt_source::charpoly::{gauss_avg, gauss_avg_combinatorial, log_product, mc_estimate};
use rmt_source::ensembles::{sample_me_weight, sample_shifted_goe, sample_shifted_gue};

fn main() -> rmt_source::Result<()> {
    let s = [1.0, -0.5, 0.0, 0.0];
    let lambda = 0.8;
    let exact = gauss_avg(lambda, &s)?;
    println!(
        "quadrature {exact:.15}, combinatorial {:.15}",
        gauss_avg_combinatorial(lambda, &s)?
    );
    let stat = |smp: &rmt_source::ensembles::EigenSample| {
        log_product(Complex64::new(lambda, 0.0), &smp.values)
    };
    let goe = mc_estimate(1, 4, 100_000, |r| sample_shifted_goe(&s, r), stat)?;
    let gue = mc_estimate(2, 4, 100_000, |r| sample_shifted_gue(&s, r), stat)?;
    let b5 = mc_estimate(3, 4, 100_000, |r| sample_me_weight(5.0, 2.5, &s, r), stat)?;
    for (name, e) in [("GOE", goe), ("GUE", gue), ("beta=5", b5)] {
        println!(
            "{name}: {:.5} +- {:.5}  z = {:.2}",
            e.mean.re,
            e.stderr,
            e.z_against(exact.into())
        );
    }
    Ok(())
}
