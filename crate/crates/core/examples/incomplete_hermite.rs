use rmt_source::specfun::{incomplete_hermite, incomplete_hermite_contour};

fn main() -> rmt_source::Result<()> {
    let a = [0.5, -1.5];
    for n in [4, 12, 20] {
        let exact = incomplete_hermite(n, 1.1, &a)?;
        let contour = incomplete_hermite_contour(n, 1.1, &a)?;
        println!("N={n}: expansion {exact}, contour {contour}");
    }
    Ok(())
}
