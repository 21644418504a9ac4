//! Overflow-safe Hermite values near the soft edge and the Airy function.

use rmt_source::specfun::{airy, hermite, incomplete_airy, incomplete_airy_contour};

fn main() -> rmt_source::Result<()> {
    for n in [10, 100, 1000] {
        let x = (2.0 * n as f64).sqrt();
        let h = hermite(n, x);
        println!("H_{n}(sqrt(2N)) = {h}  (log|H| = {:.3})", h.log_abs());
    }
    for x in [-3.0, 0.0, 2.5] {
        let (ai, aip) = airy(x);
        println!("Ai({x}) = {ai:.15}, Ai'({x}) = {aip:.15}");
    }
    let s = [0.4, -1.0];
    let direct = incomplete_airy(0.7, &s);
    let contour = incomplete_airy_contour(0.7, &s)?;
    println!("incomplete Airy r=2: operator form {direct:.15}, contour {contour:.15}");
    Ok(())
}
