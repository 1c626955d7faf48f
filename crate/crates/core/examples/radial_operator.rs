//! The radial operator on a block, its constraint, and the second-order
//! equation for `a₄` compared with the printed one.

use hypspinor::radial::{assemble_radial, constraint_a0, reduce_to_ode, SecondOrderODE};
use hypspinor::BlockLabel;

fn main() -> hypspinor::Result<()> {
    let label = BlockLabel::new(0, 4);
    let op = assemble_radial(label)?;
    println!("{label}: {} components", op.dim());
    for i in 0..op.dim() {
        let row: Vec<String> = (0..op.dim())
            .map(|j| format!("{:8.3}", op.entry(i, j).eval_f64(1.0)))
            .collect();
        println!("  [{}]", row.join(" "));
    }

    let c = constraint_a0(label)?;
    println!(
        "a0 = ({:.4}) a2 + ({:.4}) a4 at u = 1",
        c.coeff_a2.eval_f64(1.0),
        c.coeff_a4.eval_f64(1.0)
    );

    let ode = reduce_to_ode(label)?;
    println!("p2 = {}\np1 = {}\np0 = {}", ode.p2, ode.p1, ode.p0);
    println!(
        "reduced == hypergeometric form: {}",
        ode == SecondOrderODE::hypergeometric(label)
    );
    println!("p0 - printed p0 = {}", ode.discrepancy_from_quoted());
    Ok(())
}
