//! General-beta eigenvalues with a source via the bordering recursion,
//! with an audit of every step.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rmt_source::ensembles::sample_beta_gaussian_source_traced;
use rmt_source::ensembles::validate::{audit_steps, StepAudit};

fn main() -> rmt_source::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mu = [1.2, 0.4, 0.0, -0.3, -1.0];
    let mut audit = StepAudit::default();
    for beta in [0.5, 1.0, 2.0, 4.0, 7.5] {
        let (s, steps) = sample_beta_gaussian_source_traced(beta, &mu, &mut rng)?;
        audit.merge(&audit_steps(&steps, &s.values));
        println!("beta={beta}: {:?}", s.values);
    }
    println!("{audit:?}");
    Ok(())
}
