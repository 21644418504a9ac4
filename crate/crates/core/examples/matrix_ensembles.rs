//! Shifted GOE/GUE and Wishart-with-source eigenvalue samples.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rmt_source::ensembles::{
    sample_shifted_goe, sample_shifted_gue, sample_wishart_source, write_samples_csv,
    ChiralSourceSpec, Field,
};

fn main() -> rmt_source::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let s = [1.0, -0.5, 0.0, 0.0];
    let goe: Vec<_> = (0..3)
        .map(|_| sample_shifted_goe(&s, &mut rng))
        .collect::<Result<_, _>>()?;
    write_samples_csv(std::io::stdout(), "goe", 1.0, 1, &goe)?;
    let gue = sample_shifted_gue(&s, &mut rng)?;
    println!("gue: {:?}", gue.values);
    let spec = ChiralSourceSpec::new(4, 2, Field::Complex, vec![2.0, 0.0])?;
    let w = sample_wishart_source(&spec, &mut rng)?;
    println!("complex wishart 4x2, mu=(2,0): {:?}", w.values);
    Ok(())
}
