//! Jack polynomials, generalized Pochhammer symbols and the truncated
//! hypergeometric series of two matrix arguments.

use num_complex::Complex64;
use rmt_source::jack::{dprime, gen_pochhammer, hyper_0f0, hyper_0f1, jack_poly, Partition};

fn main() -> rmt_source::Result<()> {
    let alpha = 2.0;
    let x: Vec<Complex64> = [0.3, -0.8, 1.1]
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    for k in 1..=3 {
        for kappa in Partition::of_weight(k, 3) {
            let p = jack_poly(&kappa, &x, alpha)?;
            println!(
                "P_{kappa}(x) = {:+.6}  d' = {:.1}  [1.5]_kappa = {:.4}",
                p.re,
                dprime(&kappa, alpha),
                gen_pochhammer(1.5, &kappa, alpha)?
            );
        }
    }
    let f0 = hyper_0f0(&[0.3, -0.8], &[1.0, 0.5], alpha, 20)?;
    let f1 = hyper_0f1(2.5, &[0.3, -0.8], &[1.0, 0.5], alpha, 20)?;
    println!(
        "0F0 = {:.12} (tail {:.1e}), 0F1 = {:.12}",
        f0.value.re, f0.tail, f1.value.re
    );
    Ok(())
}
