//! All four duality checks at modest sample counts, printed as JSON reports.

use rmt_source::duality::{check_dr1, check_dr2, check_fr, check_w2, McConfig};

fn main() -> rmt_source::Result<()> {
    let cfg = McConfig::with_samples(200_000, 11);
    let reports = [
        check_w2(3.0, 4, 2, 0.6, &cfg)?,
        check_fr(3.0, &[0.7, -0.7, 0.0], 1.2, &cfg)?,
        check_dr1(2.0 / 3.0, &[0.3, -0.6, 0.9], &[0.5, -0.2], &cfg)?,
        check_dr2(2.0, 1, &[0.4, 1.1], &[0.8, 0.3], &cfg)?,
        check_dr2(1.0, 2, &[-2.5], &[0.6, 1.4], &cfg)?,
    ];
    for r in &reports {
        println!("{}", r.to_json());
    }
    Ok(())
}
