use rmt_source::jack::JackContext;

fn main() -> rmt_source::Result<()> {
    let beta = 3.0;
    let mu = [0.5, 0.0];
    let ctx = JackContext::new(2.0 / beta, 20)?;
    println!("l1,l2,density");
    for l1 in [-1.5, -0.5, 0.5] {
        for l2 in [0.0, 1.0, 2.0] {
            let d = ctx.gaussian_source_density(&[l1, l2], &mu, 20)?;
            println!("{l1},{l2},{:.10e}", d.value.re);
        }
    }
    Ok(())
}
