//! Order-zero spectrum of the Dirac square on `S₃ ⊗ S⁺`, critical weights,
//! and indicial exponents at the origin.

use hypspinor::radial::{critical_weights, dirac_sq_order0_spectrum, indicial_data};
use hypspinor::BlockLabel;

fn main() -> hypspinor::Result<()> {
    let s = dirac_sq_order0_spectrum();
    for (m3, mp, e) in &s.eigenvalues {
        println!("(m3, m+) = ({m3:2}, {mp:2}): {e}");
    }
    println!(
        "minimum {} at {:?}, lambda_min {}",
        s.min_eigenvalue, s.minimizers, s.lambda_min
    );
    let (lo, hi) = critical_weights(0.0)?;
    println!("critical weights ({lo}, {hi})");

    for l in [4, 6, 8] {
        let d = indicial_data(BlockLabel::new(0, l))?;
        println!(
            "L = {l}: regular exponent {:?}, rejected {}, decay {}",
            d.regular_exponent, d.rejected_exponent, d.decay_at_infinity
        );
    }
    Ok(())
}
