//! Gauss 2F1 through the direct series and through the transformed
//! evaluation, plus the leading term at infinity.

use hypspinor::special_fn::{asympt_2f1, direct_series, gauss_2f1, HypergeomParams};
use hypspinor::BlockLabel;

fn main() -> hypspinor::Result<()> {
    let ln2 = gauss_2f1(&HypergeomParams::from_ints(1, 1, 2), -1.0)?;
    println!("F(1,1;2;-1) = {ln2:.17} (ln 2 = {:.17})", std::f64::consts::LN_2);

    let p = HypergeomParams::for_block(BlockLabel::new(4, 12));
    println!("block (4,12): a = {}, b = {}, c = {}", p.a, p.b, p.c);
    for z in [-0.9, -0.5, 0.5, 0.9] {
        let (t, d) = (gauss_2f1(&p, z)?, direct_series(&p, z)?);
        println!("  z = {z:5}: {t:.15e}  series {d:.15e}");
    }
    for z in [1e2, 1e4, 1e6] {
        let lead = asympt_2f1(&p, z)?;
        let f = gauss_2f1(&p, -z)?;
        println!("  F(-{z:e}) / leading term = {:.8}", f / lead.value);
    }
    Ok(())
}
