//! Integrates the first-order radial system from closed-form data near the
//! origin out to r = 12 and reports the residuals.

use hypspinor::radial::{closed_form_residuals, integrate};
use hypspinor::BlockLabel;

fn main() -> hypspinor::Result<()> {
    for (k, l) in [(0, 4), (0, 8), (2, 6), (4, 8)] {
        let label = BlockLabel::new(k, l);
        let p = integrate(label, 12.0, 64, 1.0)?;
        let last = p.components.last().unwrap();
        println!(
            "{label}: a4(12) = {:.3e}, constraint {:.1e}, dirac {:.1e}",
            last[0],
            p.max_constraint_residual(),
            p.max_dirac_residual()
        );
        let radii: Vec<f64> = (1..=50).map(|i| 0.1 * i as f64).collect();
        let worst = closed_form_residuals(label, &radii)?.into_iter().fold(0.0, f64::max);
        println!("  closed form on [0.1, 5]: {worst:.1e}");
    }
    Ok(())
}
