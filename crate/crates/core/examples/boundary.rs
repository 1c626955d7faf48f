//! The boundary coefficient `c∞` of full blocks: exact, and read off the
//! integrated profile at r = 12.

use hypspinor::special_fn::{boundary_value, c_infinity_formula};
use hypspinor::BlockLabel;

fn main() -> hypspinor::Result<()> {
    for (k, l) in [(0, 4), (2, 6), (0, 8), (4, 8), (-2, 10)] {
        let label = BlockLabel::new(k, l);
        let v = boundary_value(label, 1.0)?;
        println!(
            "{label}: c_inf = {} = {}, numeric {:.10}, rel err {:.1e}, top eigenspace {}",
            c_infinity_formula(label)?,
            v.c_inf,
            v.c_inf_numeric,
            v.relative_error,
            v.in_top_eigenspace
        );
    }
    Ok(())
}
