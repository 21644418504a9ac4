//! Convergence of the finite-size soft-edge scalings to their Airy limits.

use rmt_source::scaling::{convergence_table, write_table_csv, ScalingOp};

fn main() -> rmt_source::Result<()> {
    let sizes = [50, 100, 200, 400, 800];
    let out = &mut std::io::stdout();
    let classic = convergence_table(ScalingOp::Classic, &sizes, &[(-1.0, vec![]), (0.0, vec![])])?;
    write_table_csv(out, &classic)?;
    let gauss = convergence_table(
        ScalingOp::Gauss,
        &sizes,
        &[(1.0, vec![0.5]), (0.0, vec![0.5, -0.5])],
    )?;
    write_table_csv(out, &gauss)?;
    let chiral = convergence_table(ScalingOp::Chiral { a: 2.0 }, &sizes, &[(1.0, vec![0.5])])?;
    write_table_csv(out, &chiral)?;
    Ok(())
}
