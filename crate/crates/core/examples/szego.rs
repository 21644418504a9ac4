use rmt_source::scaling::szego_check;

fn main() -> rmt_source::Result<()> {
    for k in [-1, 0, 1] {
        for p in [100, 400, 1600] {
            let r = szego_check(p, 0.5, k, 0.3)?;
            println!(
                "k={k:+} p={p:5}: {:.8} vs {:.8} (rel {:.2e})",
                r.finite,
                r.limit,
                r.relative_error()
            );
        }
    }
    Ok(())
}
